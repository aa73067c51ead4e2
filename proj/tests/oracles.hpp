#pragma once

// Reference implementations used only by tests. They share no arithmetic code
// with the library: small matrices are plain nested vectors, polynomials are
// std::map term tables, and seeds are evaluated at rational points.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "cmut/exchange_matrix.hpp"
#include "cmut/laurent.hpp"

namespace oracle {

using cmut::Integer;
using Rat = boost::multiprecision::mpq_rational;
using SmallMatrix = std::vector<std::vector<long long>>;

inline SmallMatrix random_skew(std::mt19937_64& rng, int n, int bound) {
    std::uniform_int_distribution<int> entry(-bound, bound);
    SmallMatrix b(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            b[i][j] = entry(rng);
            b[j][i] = -b[i][j];
        }
    }
    return b;
}

// The literal halved formula. Records whether any numerator was odd.
inline SmallMatrix mutate_halved(const SmallMatrix& b, int k, bool* odd_numerator = nullptr) {
    const int n = static_cast<int>(b.size());
    SmallMatrix out = b;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == k || j == k) {
                out[i][j] = -b[i][j];
                continue;
            }
            const long long num = std::llabs(b[i][k]) * b[k][j] + b[i][k] * std::llabs(b[k][j]);
            if (num % 2 != 0 && odd_numerator) *odd_numerator = true;
            out[i][j] = b[i][j] + num / 2;
        }
    }
    return out;
}

inline SmallMatrix to_small(const cmut::ExchangeMatrix& b) {
    SmallMatrix out(b.size(), std::vector<long long>(b.size()));
    for (Eigen::Index i = 0; i < b.size(); ++i) {
        for (Eigen::Index j = 0; j < b.size(); ++j) out[i][j] = b(i, j).convert_to<long long>();
    }
    return out;
}

inline cmut::ExchangeMatrix from_small(const SmallMatrix& b) {
    const auto n = static_cast<Eigen::Index>(b.size());
    cmut::DenseMatrix<Integer> m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Integer(b[i][j]);
    }
    return cmut::ExchangeMatrix(std::move(m));
}

inline bool is_skew(const SmallMatrix& b) {
    for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[i][j] != -b[j][i]) return false;
        }
    }
    return true;
}

// Brute-force isomorphism over all relabelings.
inline bool isomorphic(const SmallMatrix& a, const SmallMatrix& b) {
    if (a.size() != b.size()) return false;
    std::vector<int> p(a.size());
    std::iota(p.begin(), p.end(), 0);
    do {
        bool same = true;
        for (std::size_t i = 0; i < a.size() && same; ++i) {
            for (std::size_t j = 0; j < a.size() && same; ++j) same = a[p[i]][p[j]] == b[i][j];
        }
        if (same) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

// Term table keyed by exponent vector.
using NaivePoly = std::map<std::vector<int>, Integer>;

inline NaivePoly naive(const cmut::LaurentPolynomial& p) {
    NaivePoly out;
    for (const auto& t : p.terms()) out[std::vector<int>(t.monomial.begin(), t.monomial.end())] = t.coefficient;
    return out;
}

inline NaivePoly naive_mul(const NaivePoly& a, const NaivePoly& b) {
    NaivePoly out;
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            std::vector<int> e(ea.size());
            for (std::size_t j = 0; j < e.size(); ++j) e[j] = ea[j] + eb[j];
            out[e] += ca * cb;
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

inline NaivePoly naive_add(NaivePoly a, const NaivePoly& b) {
    for (const auto& [e, c] : b) a[e] += c;
    std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
    return a;
}

inline cmut::LaurentPolynomial from_naive(std::size_t nvars, const NaivePoly& p) {
    std::vector<cmut::LaurentPolynomial::Term> terms;
    for (const auto& [e, c] : p) {
        cmut::Monomial m(nvars);
        for (std::size_t j = 0; j < nvars; ++j) m[j] = e[j];
        terms.push_back({m, c});
    }
    return cmut::LaurentPolynomial::from_terms(nvars, std::move(terms));
}

inline Rat rat_pow(const Rat& x, long long e) {
    Rat base = e < 0 ? Rat(1) / x : x;
    Rat out(1);
    for (long long i = 0; i < std::llabs(e); ++i) out *= base;
    return out;
}

inline Rat evaluate(const cmut::LaurentPolynomial& p, const std::vector<Rat>& point) {
    Rat sum(0);
    for (const auto& t : p.terms()) {
        Rat term{t.coefficient};
        for (std::size_t j = 0; j < point.size(); ++j) term *= rat_pow(point[j], t.monomial[j]);
        sum += term;
    }
    return sum;
}

inline std::vector<Rat> random_point(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> num(1, 97), den(2, 89);
    std::vector<Rat> out;
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(num(rng), den(rng));
    return out;
}

// A seed evaluated at a point: the exchange relation iterated over Q.
struct NumericSeed {
    std::vector<Rat> x;
    SmallMatrix b;
};

inline NumericSeed numeric_mutate(const NumericSeed& s, int k) {
    Rat plus(1), minus(1);
    for (std::size_t j = 0; j < s.x.size(); ++j) {
        const long long bjk = s.b[j][k];
        if (bjk > 0) plus *= rat_pow(s.x[j], bjk);
        if (bjk < 0) minus *= rat_pow(s.x[j], -bjk);
    }
    NumericSeed out{s.x, mutate_halved(s.b, k)};
    out.x[k] = (plus + minus) / s.x[k];
    return out;
}

struct NumericCounts {
    std::size_t clusters = 0;
    std::size_t variables = 0;
    bool complete = false;
};

// Breadth-first closure keyed by the set of cluster values.
inline NumericCounts numeric_enumerate(const SmallMatrix& b, const std::vector<Rat>& point, std::size_t max_seeds) {
    auto key = [](const NumericSeed& s) {
        std::vector<std::string> k;
        for (const auto& v : s.x) k.push_back(v.str());
        std::sort(k.begin(), k.end());
        return k;
    };
    std::vector<NumericSeed> queue{{point, b}};
    std::set<std::vector<std::string>> seen{key(queue[0])};
    std::set<std::string> values;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (const auto& v : queue[head].x) values.insert(v.str());
        for (int k = 0; k < static_cast<int>(b.size()); ++k) {
            NumericSeed next = numeric_mutate(queue[head], k);
            if (seen.insert(key(next)).second) {
                if (queue.size() >= max_seeds) return {queue.size(), values.size(), false};
                queue.push_back(std::move(next));
            }
        }
    }
    return {queue.size(), values.size(), true};
}

inline Integer binomial(unsigned n, unsigned k) {
    Integer out(1);
    for (unsigned i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

// Clusters of type A_n: Catalan(n + 1).
inline Integer catalan(unsigned m) { return binomial(2 * m, m) / (m + 1); }

}  // namespace oracle
