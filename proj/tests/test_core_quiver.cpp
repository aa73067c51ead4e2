#include <doctest.h>

#include <random>

#include "cmut/quiver.hpp"
#include "oracles.hpp"

using namespace cmut;
using oracle::SmallMatrix;

namespace {

ExchangeMatrix mat(const SmallMatrix& b) { return oracle::from_small(b); }

Quiver random_quiver(std::mt19937_64& rng, Index n) {
    std::uniform_int_distribution<int> mult(-3, 3);
    std::vector<std::tuple<Index, Index, Integer>> arrows;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const int m = mult(rng);
            if (m > 0) arrows.emplace_back(i, j, Integer(m));
            if (m < 0) arrows.emplace_back(j, i, Integer(-m));
        }
    }
    return Quiver(n, arrows);
}

}  // namespace

TEST_SUITE("core-quiver") {

TEST_CASE("validate accepts skew-symmetric input and names the first bad pair") {
    CHECK_NOTHROW(ExchangeMatrix::zero(3));
    CHECK_NOTHROW(mat({{0, 1}, {-1, 0}}));
    try {
        mat({{0, 1}, {1, 0}});
        FAIL("expected NotSkewSymmetric");
    } catch (const NotSkewSymmetric& e) {
        CHECK(e.name() == "NotSkewSymmetric");
        CHECK(e.i == 0);
        CHECK(e.j == 1);
    }
    CHECK_THROWS_AS(mat({{1, 0}, {0, 0}}), NotSkewSymmetric);
    CHECK_THROWS_WITH_AS(ExchangeMatrix(DenseMatrix<Integer>(2, 3)), doctest::Contains("square"), Error);
    CHECK_THROWS_AS(ExchangeMatrix(DenseMatrix<Integer>(0, 0)), Error);
}

TEST_CASE("mutation examples") {
    // Path 1 -> 2 -> 3 at the middle vertex closes a 3-cycle.
    const auto path = mat({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
    CHECK(mutate(path, 1) == mat({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}}));

    const auto markov = mat({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}});
    CHECK(mutate(markov, 0) == mat({{0, -2, 2}, {2, 0, -2}, {-2, 2, 0}}));

    CHECK_THROWS_AS(mutate(path, 3), IndexOutOfRange);
    CHECK_THROWS_AS(mutate(path, -1), IndexOutOfRange);
}

TEST_CASE("mutation agrees with the halved formula, is skew and an involution") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 1 + trial % 8;
        const auto small = oracle::random_skew(rng, n, 5);
        const auto b = mat(small);
        for (int k = 0; k < n; ++k) {
            bool odd = false;
            const auto expected = oracle::mutate_halved(small, k, &odd);
            CHECK_FALSE(odd);
            const auto m = mutate(b, k);
            CHECK(oracle::to_small(m) == expected);
            CHECK(oracle::is_skew(oracle::to_small(m)));
            CHECK(mutate(m, k) == b);
        }
    }
}

TEST_CASE("entries beyond 64 bits mutate exactly") {
    const Integer big = Integer(1) << 70;
    DenseMatrix<Integer> b(3, 3);
    b << 0, big, 0, -big, 0, big, 0, -big, 0;
    const ExchangeMatrix m(b);
    const auto m2 = mutate(m, 1);
    CHECK(m2(0, 2) == big * big);
    CHECK(mutate(m2, 1) == m);
}

TEST_CASE("the kernel is scalar-generic") {
    BasicExchangeMatrix<long long> b(DenseMatrix<long long>{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
    const auto m = mutate(b, 1);
    CHECK(m(0, 2) == 1);
    CHECK(m(2, 0) == -1);
    CHECK(mutate(m, 1) == b);
}

TEST_CASE("matrix to quiver examples") {
    const auto one = matrix_to_quiver(mat({{0, 1}, {-1, 0}}));
    CHECK(one.arrows().size() == 1);
    CHECK(one.multiplicity(0, 1) == 1);
    CHECK(matrix_to_quiver(ExchangeMatrix::zero(3)).arrows().empty());
    CHECK(matrix_to_quiver(mat({{0, 3}, {-3, 0}})).multiplicity(0, 1) == 3);
}

TEST_CASE("quiver to matrix examples and errors") {
    CHECK(quiver_to_matrix(Quiver(3)) == ExchangeMatrix::zero(3));
    const Quiver cyc(3, {{0, 1, Integer(2)}, {1, 2, Integer(3)}, {2, 0, Integer(1)}});
    CHECK(quiver_to_matrix(cyc) == mat({{0, 2, -1}, {-2, 0, 3}, {1, -3, 0}}));

    CHECK_THROWS_AS(Quiver(2, {{0, 0, Integer(1)}}), LoopPresent);
    CHECK_THROWS_AS(Quiver(2, {{0, 1, Integer(1)}, {1, 0, Integer(1)}}), TwoCyclePresent);
    CHECK_THROWS_AS(Quiver(2, {{0, 2, Integer(1)}}), IndexOutOfRange);
    CHECK_THROWS_WITH_AS(Quiver(2, {{0, 1, Integer(0)}}), doctest::Contains("positive"), Error);
    // Repeated entries accumulate.
    CHECK(Quiver(2, {{0, 1, Integer(1)}, {0, 1, Integer(2)}}).multiplicity(0, 1) == 3);
}

TEST_CASE("quiver and matrix round trips on 500 random quivers") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const Index n = 1 + trial % 8;
        const Quiver q = random_quiver(rng, n);
        const auto b = quiver_to_matrix(q);
        CHECK(matrix_to_quiver(b) == q);
        CHECK(quiver_to_matrix(matrix_to_quiver(b)) == b);
        const Quiver back = matrix_to_quiver(b);
        for (const auto& [ij, m] : back.arrows()) {
            CHECK(ij.first != ij.second);
            CHECK(back.multiplicity(ij.second, ij.first) == 0);
            CHECK(m > 0);
        }
    }
}

TEST_CASE("restriction examples") {
    const auto path = mat({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
    const std::vector<Index> all{0, 1, 2}, ends{0, 2}, reordered{2, 0, 1}, dup{0, 0}, bad{0, 3};
    CHECK(restrict_to(path, all) == path);
    CHECK(restrict_to(path, ends) == ExchangeMatrix::zero(2));
    CHECK(restrict_to(path, reordered) == relabel(path, reordered));
    CHECK_THROWS_AS(restrict_to(path, std::span<const Index>{}), EmptySubset);
    CHECK_THROWS_AS(restrict_to(path, bad), IndexOutOfRange);
    CHECK_THROWS_AS(restrict_to(path, dup), Error);
}

TEST_CASE("restriction commutes with mutation") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + trial % 6;
        const auto b = mat(oracle::random_skew(rng, n, 5));
        for (Index k = 0; k < n; ++k) {
            for (Index i = 0; i < n; ++i) {
                for (Index j = i + 1; j < n; ++j) {
                    if (i == k || j == k) continue;
                    const std::vector<Index> s{i, j, k};
                    CHECK(restrict_to(mutate(b, k), s) == mutate(restrict_to(b, s), 2));
                }
            }
        }
    }
}

TEST_CASE("relabel rejects non-permutations") {
    const auto b = ExchangeMatrix::zero(3);
    const std::vector<Index> short_perm{0, 1}, repeated{0, 0, 1};
    CHECK_THROWS_AS(relabel(b, short_perm), Error);
    CHECK_THROWS_AS(relabel(b, repeated), Error);
}

TEST_CASE("acyclicity examples") {
    CHECK(is_acyclic(Quiver(3, {{0, 1, Integer(1)}, {1, 2, Integer(1)}})));
    CHECK_FALSE(is_acyclic(Quiver(3, {{0, 1, Integer(1)}, {1, 2, Integer(1)}, {2, 0, Integer(1)}})));
    CHECK(is_acyclic(Quiver(3, {{0, 1, Integer(2)}, {1, 2, Integer(3)}, {0, 2, Integer(4)}})));
    CHECK(is_acyclic(Quiver(1)));
    CHECK_FALSE(is_acyclic(
        Quiver(4, {{0, 1, Integer(1)}, {1, 2, Integer(1)}, {2, 3, Integer(1)}, {3, 1, Integer(1)}})));
}

TEST_CASE("connectivity") {
    CHECK(is_connected(Quiver(1)));
    CHECK_FALSE(is_connected(Quiver(2)));
    CHECK(is_connected(Quiver(3, {{0, 1, Integer(1)}, {2, 1, Integer(1)}})));
}

TEST_CASE("canonical key examples") {
    const Quiver path(3, {{0, 1, Integer(1)}, {1, 2, Integer(1)}});
    const Quiver reversed(3, {{2, 1, Integer(1)}, {1, 0, Integer(1)}});
    const Quiver relabeled(3, {{2, 0, Integer(1)}, {0, 1, Integer(1)}});
    CHECK(canonical_key(path) == canonical_key(relabeled));
    // Reversing every arrow gives the opposite quiver; for A_3 it is isomorphic.
    CHECK(canonical_key(path) == canonical_key(reversed));

    const Quiver markov(3, {{0, 1, Integer(2)}, {1, 2, Integer(2)}, {2, 0, Integer(2)}});
    const Quiver markov2(3, {{1, 0, Integer(2)}, {0, 2, Integer(2)}, {2, 1, Integer(2)}});
    CHECK(canonical_key(markov) == canonical_key(markov2));

    const Quiver cycle(3, {{0, 1, Integer(1)}, {1, 2, Integer(1)}, {2, 0, Integer(1)}});
    CHECK(canonical_key(path) != canonical_key(cycle));

    CHECK_THROWS_AS(canonical_key(Quiver(11)), TooLargeForCanonicalization);
    CHECK_NOTHROW(canonical_key(Quiver(11), 11));
}

TEST_CASE("canonical keys agree with brute-force isomorphism") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + trial % 4;
        std::uniform_int_distribution<int> bound(1, 2);
        const auto a = oracle::random_skew(rng, n, bound(rng));
        SmallMatrix b;
        if (trial % 2 == 0) {
            std::vector<Index> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            b = oracle::to_small(relabel(mat(a), perm));
        } else {
            b = oracle::random_skew(rng, n, 1);
        }
        CHECK((canonical_key(mat(a)) == canonical_key(mat(b))) == oracle::isomorphic(a, b));
    }
}

TEST_CASE("canonicalization scales to the default limit") {
    std::mt19937_64 rng(29);
    const auto b = mat(oracle::random_skew(rng, 10, 1));
    std::vector<Index> perm(10);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(canonical_key(b) == canonical_key(relabel(b, perm)));
}

}
