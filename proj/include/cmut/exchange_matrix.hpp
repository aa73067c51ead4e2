#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "cmut/error.hpp"
#include "cmut/integer.hpp"

namespace cmut {

using Eigen::Index;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Throws NotSkewSymmetric at the first (row-major) pair with b_ij != -b_ji.
template <typename Derived>
void validate(const Eigen::MatrixBase<Derived>& b) {
    if (b.rows() != b.cols()) {
        throw Error("NotSquare", "exchange matrix must be square");
    }
    if (b.rows() < 1) {
        throw Error("EmptyMatrix", "exchange matrix needs at least one vertex");
    }
    for (Index i = 0; i < b.rows(); ++i) {
        for (Index j = i; j < b.cols(); ++j) {
            if (b(i, j) != -b(j, i)) {
                throw NotSkewSymmetric(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            }
        }
    }
}

// Mutation in direction k (0-based) of a skew-symmetric matrix:
//   b'_ij = -b_ij                           if i == k or j == k
//   b'_ij = b_ij + b+_ik b+_kj - b-_ik b-_kj  otherwise
// where x+ = max(x, 0) and x- = min(x, 0). This equals the halved form
// b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2 without the division.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> mutated(const Eigen::MatrixBase<Derived>& b, Index k) {
    using Scalar = typename Derived::Scalar;
    const Index n = b.rows();
    if (k < 0 || k >= n) {
        throw IndexOutOfRange(static_cast<std::size_t>(k), static_cast<std::size_t>(n));
    }
    const Scalar zero(0);
    const DenseMatrix<Scalar> col = b.col(k);
    const DenseMatrix<Scalar> row = b.row(k);
    DenseMatrix<Scalar> out = b;
    // b_kk = 0, so the correction vanishes on row k and column k.
    out.noalias() += col.cwiseMax(zero) * row.cwiseMax(zero);
    out.noalias() -= col.cwiseMin(zero) * row.cwiseMin(zero);
    out.row(k) = -b.row(k);
    out.col(k) = -b.col(k);
    return out;
}

// Principal submatrix on `vertices` (0-based), reindexed in the given order.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> restricted(const Eigen::MatrixBase<Derived>& b,
                                                 std::span<const Index> vertices) {
    if (vertices.empty()) {
        throw EmptySubset();
    }
    std::vector<Index> seen(vertices.begin(), vertices.end());
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw Error("DuplicateVertex", "vertex subset contains a repeated vertex");
    }
    for (Index v : vertices) {
        if (v < 0 || v >= b.rows()) {
            throw IndexOutOfRange(static_cast<std::size_t>(v), static_cast<std::size_t>(b.rows()));
        }
    }
    const std::vector<Index> idx(vertices.begin(), vertices.end());
    return b(idx, idx);
}

// Relabels vertices: out(i, j) = b(perm[i], perm[j]).
template <typename Derived>
DenseMatrix<typename Derived::Scalar> permuted(const Eigen::MatrixBase<Derived>& b,
                                               std::span<const Index> perm) {
    const std::vector<Index> idx(perm.begin(), perm.end());
    return b(idx, idx);
}

// Validated n x n skew-symmetric matrix; an immutable value.
template <typename Scalar>
class BasicExchangeMatrix {
public:
    using scalar_type = Scalar;
    using matrix_type = DenseMatrix<Scalar>;

    explicit BasicExchangeMatrix(matrix_type entries) : b_(std::move(entries)) { validate(b_); }

    static BasicExchangeMatrix zero(Index n) {
        return BasicExchangeMatrix(matrix_type::Constant(n, n, Scalar(0)));
    }

    Index size() const { return b_.rows(); }
    const Scalar& operator()(Index i, Index j) const { return b_(i, j); }
    const matrix_type& entries() const { return b_; }

    // Largest |b_ij|.
    Scalar max_abs() const {
        using std::abs;
        Scalar best(0);
        for (Index i = 0; i < b_.rows(); ++i) {
            for (Index j = 0; j < b_.cols(); ++j) {
                best = std::max(best, Scalar(abs(b_(i, j))));
            }
        }
        return best;
    }

    friend bool operator==(const BasicExchangeMatrix& a, const BasicExchangeMatrix& b) {
        return a.b_.rows() == b.b_.rows() && a.b_ == b.b_;
    }

private:
    struct trusted_t {};
    BasicExchangeMatrix(matrix_type entries, trusted_t) : b_(std::move(entries)) {}

    template <typename S>
    friend BasicExchangeMatrix<S> mutate(const BasicExchangeMatrix<S>&, Index);
    template <typename S>
    friend BasicExchangeMatrix<S> restrict_to(const BasicExchangeMatrix<S>&, std::span<const Index>);
    template <typename S>
    friend BasicExchangeMatrix<S> relabel(const BasicExchangeMatrix<S>&, std::span<const Index>);

    matrix_type b_;
};

using ExchangeMatrix = BasicExchangeMatrix<Integer>;

template <typename Scalar>
BasicExchangeMatrix<Scalar> mutate(const BasicExchangeMatrix<Scalar>& b, Index k) {
    return BasicExchangeMatrix<Scalar>(mutated(b.b_, k), typename BasicExchangeMatrix<Scalar>::trusted_t{});
}

template <typename Scalar>
BasicExchangeMatrix<Scalar> restrict_to(const BasicExchangeMatrix<Scalar>& b,
                                        std::span<const Index> vertices) {
    return BasicExchangeMatrix<Scalar>(restricted(b.b_, vertices),
                                       typename BasicExchangeMatrix<Scalar>::trusted_t{});
}

template <typename Scalar>
BasicExchangeMatrix<Scalar> relabel(const BasicExchangeMatrix<Scalar>& b, std::span<const Index> perm) {
    if (static_cast<Index>(perm.size()) != b.size()) {
        throw Error("BadPermutation", "permutation length differs from matrix size");
    }
    std::vector<Index> check(perm.begin(), perm.end());
    std::sort(check.begin(), check.end());
    for (Index i = 0; i < b.size(); ++i) {
        if (check[static_cast<std::size_t>(i)] != i) {
            throw Error("BadPermutation", "not a permutation of the vertex set");
        }
    }
    return BasicExchangeMatrix<Scalar>(permuted(b.b_, perm), typename BasicExchangeMatrix<Scalar>::trusted_t{});
}

// Applies mutations left to right.
template <typename Scalar>
BasicExchangeMatrix<Scalar> mutate_sequence(BasicExchangeMatrix<Scalar> b, std::span<const Index> ks) {
    for (Index k : ks) {
        b = mutate(b, k);
    }
    return b;
}

}  // namespace cmut
