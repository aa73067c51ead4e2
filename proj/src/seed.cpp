#include "cmut/seed.hpp"

#include <algorithm>

namespace cmut {

Seed::Seed(std::vector<LaurentPolynomial> cluster, ExchangeMatrix matrix)
    : cluster_(std::move(cluster)), matrix_(std::move(matrix)) {
    const auto n = static_cast<std::size_t>(matrix_.size());
    if (cluster_.size() != n) {
        throw Error("ClusterSizeMismatch", "cluster has " + std::to_string(cluster_.size()) +
                                               " entries for a rank " + std::to_string(n) + " matrix");
    }
    for (const auto& x : cluster_) {
        if (x.nvars() != n) throw VariableCountMismatch(x.nvars(), n);
        if (x.is_zero()) throw ZeroPolynomial();
    }
}

Seed initial_seed(const ExchangeMatrix& b) {
    const auto n = static_cast<std::size_t>(b.size());
    std::vector<LaurentPolynomial> cluster;
    cluster.reserve(n);
    for (std::size_t i = 0; i < n; ++i) cluster.push_back(LaurentPolynomial::variable(n, i));
    return Seed(std::move(cluster), b);
}

namespace {

unsigned small_exponent(const Integer& e) {
    if (e > Integer(1u << 30)) throw PolynomialTooLarge();
    return e.convert_to<unsigned>();
}

}  // namespace

ExchangeBinomial exchange_binomial(const Seed& s, Index i) {
    const Index n = s.rank();
    if (i < 0 || i >= n) throw IndexOutOfRange(static_cast<std::size_t>(i), static_cast<std::size_t>(n));
    const auto nvars = static_cast<std::size_t>(n);
    auto plus = LaurentPolynomial::constant(nvars, Integer(1));
    auto minus = plus;
    for (Index j = 0; j < n; ++j) {
        const Integer& b = s.matrix()(j, i);
        const auto& x = s.cluster()[static_cast<std::size_t>(j)];
        if (b > 0) {
            plus = mul(plus, pow(x, small_exponent(b)));
        } else if (b < 0) {
            minus = mul(minus, pow(x, small_exponent(-b)));
        }
    }
    return {std::move(plus), std::move(minus)};
}

Seed mutate_seed(const Seed& s, Index i) {
    const auto [plus, minus] = exchange_binomial(s, i);
    std::vector<LaurentPolynomial> cluster = s.cluster();
    auto& xi = cluster[static_cast<std::size_t>(i)];
    try {
        xi = exact_div(add(plus, minus), xi);
    } catch (const DivisionNotExact&) {
        throw ExchangeDivisionFailed(static_cast<std::size_t>(i), {static_cast<std::size_t>(i)});
    }
    return Seed(std::move(cluster), mutate(s.matrix(), i));
}

Seed apply_sequence(const Seed& s, std::span<const Index> ks) {
    Seed current = s;
    for (std::size_t pos = 0; pos < ks.size(); ++pos) {
        try {
            current = mutate_seed(current, ks[pos]);
        } catch (const ExchangeDivisionFailed& e) {
            std::vector<std::size_t> prefix;
            for (std::size_t p = 0; p <= pos; ++p) prefix.push_back(static_cast<std::size_t>(ks[p]));
            throw ExchangeDivisionFailed(e.direction, std::move(prefix));
        }
    }
    return current;
}

SeedKey seed_key(const Seed& s) {
    std::vector<const std::string*> parts;
    parts.reserve(s.cluster().size());
    for (const auto& x : s.cluster()) parts.push_back(&x.str());
    std::sort(parts.begin(), parts.end(), [](const auto* a, const auto* b) { return *a < *b; });
    std::string bytes;
    for (const auto* p : parts) {
        bytes += *p;
        bytes += '\n';
    }
    return SeedKey{std::move(bytes)};
}

}  // namespace cmut
