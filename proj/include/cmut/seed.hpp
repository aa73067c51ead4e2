#pragma once

#include <span>
#include <string>
#include <vector>

#include "cmut/exchange_matrix.hpp"
#include "cmut/laurent.hpp"

namespace cmut {

// A cluster (ordered n-tuple of nonzero Laurent polynomials in the n initial
// variables) together with its exchange matrix.
class Seed {
public:
    Seed(std::vector<LaurentPolynomial> cluster, ExchangeMatrix matrix);

    const std::vector<LaurentPolynomial>& cluster() const { return cluster_; }
    const ExchangeMatrix& matrix() const { return matrix_; }
    Index rank() const { return matrix_.size(); }

    friend bool operator==(const Seed&, const Seed&) = default;

private:
    std::vector<LaurentPolynomial> cluster_;
    ExchangeMatrix matrix_;
};

// Cluster (x1, ..., xn) paired with `b`.
Seed initial_seed(const ExchangeMatrix& b);

// Right-hand side of x_i x_i' = plus + minus.
struct ExchangeBinomial {
    LaurentPolynomial plus;   // prod over j with b_ji > 0 of x_j^{b_ji}
    LaurentPolynomial minus;  // prod over j with b_ji < 0 of x_j^{-b_ji}
};

ExchangeBinomial exchange_binomial(const Seed& s, Index i);

// Replaces x_i by (plus + minus) / x_i and mutates the matrix at i.
// Throws ExchangeDivisionFailed when the quotient is not a Laurent polynomial.
Seed mutate_seed(const Seed& s, Index i);

// Left-to-right composition. A division failure reports the prefix of `ks`
// up to and including the failing direction.
Seed apply_sequence(const Seed& s, std::span<const Index> ks);

// The cluster as an unordered multiset: sorted canonical renderings.
struct SeedKey {
    std::string bytes;
    friend auto operator<=>(const SeedKey&, const SeedKey&) = default;
};

SeedKey seed_key(const Seed& s);

}  // namespace cmut

template <>
struct std::hash<cmut::SeedKey> {
    std::size_t operator()(const cmut::SeedKey& k) const noexcept { return std::hash<std::string>{}(k.bytes); }
};
