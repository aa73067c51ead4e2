#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "cmut/error.hpp"
#include "cmut/integer.hpp"

namespace cmut {

// Exponent vector of a Laurent monomial x1^e1 ... xn^en (negative allowed).
class Monomial {
public:
    using Exponents = boost::container::small_vector<std::int32_t, 8>;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    Monomial(std::initializer_list<std::int32_t> e) : e_(e) {}
    explicit Monomial(std::span<const std::int32_t> e) : e_(e.begin(), e.end()) {}

    std::size_t size() const { return e_.size(); }
    std::int32_t operator[](std::size_t i) const { return e_[i]; }
    std::int32_t& operator[](std::size_t i) { return e_[i]; }
    auto begin() const { return e_.begin(); }
    auto end() const { return e_.end(); }

    std::int64_t total_degree() const;
    bool is_one() const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend Monomial operator/(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    Exponents e_;
};

// Graded-lex: larger total degree first, ties broken by the first differing
// exponent (x1 > x2 > ... > xn).
bool graded_lex_greater(const Monomial& a, const Monomial& b);

// Multivariate Laurent polynomial with arbitrary-precision integer
// coefficients in a fixed number of variables. Immutable; copies share storage.
// Terms are kept in strictly descending graded-lex order with no zero
// coefficients, so equal polynomials have identical term lists.
class LaurentPolynomial {
public:
    struct Term {
        Monomial monomial;
        Integer coefficient;
        friend bool operator==(const Term&, const Term&) = default;
    };

    explicit LaurentPolynomial(std::size_t nvars = 0);

    // Sorts, merges equal monomials and drops zeros.
    static LaurentPolynomial from_terms(std::size_t nvars, std::vector<Term> terms);
    static LaurentPolynomial constant(std::size_t nvars, const Integer& c);
    static LaurentPolynomial monomial(const Monomial& m, const Integer& c = Integer(1));
    // The coordinate variable x_{i+1} (0-based i).
    static LaurentPolynomial variable(std::size_t nvars, std::size_t i);

    std::size_t nvars() const { return data_->nvars; }
    std::span<const Term> terms() const { return data_->terms; }
    std::size_t size() const { return data_->terms.size(); }
    bool is_zero() const { return data_->terms.empty(); }

    // Canonical text, e.g. "(x1 + x2 + 1)/(x1*x2)"; cached after first use.
    const std::string& str() const;

    std::size_t hash() const;

    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b);
    // Total order: nvars, then term count, then term-wise (monomial, coefficient).
    friend bool operator<(const LaurentPolynomial& a, const LaurentPolynomial& b);

private:
    struct Data {
        std::size_t nvars = 0;
        std::vector<Term> terms;
        mutable std::once_flag rendered;
        mutable std::string text;
        // Memoized powers (exponent >= 2); cluster variables are shared
        // across many seeds and get raised to the same exponents repeatedly.
        mutable std::mutex power_mutex;
        mutable std::vector<std::pair<unsigned, std::shared_ptr<const Data>>> powers;
    };

    friend LaurentPolynomial pow(const LaurentPolynomial& p, unsigned exponent);

    friend class PolynomialBuilder;

    std::shared_ptr<const Data> data_;
};

LaurentPolynomial add(const LaurentPolynomial& p, const LaurentPolynomial& q);
LaurentPolynomial sub(const LaurentPolynomial& p, const LaurentPolynomial& q);
LaurentPolynomial mul(const LaurentPolynomial& p, const LaurentPolynomial& q);
LaurentPolynomial neg(const LaurentPolynomial& p);
LaurentPolynomial pow(const LaurentPolynomial& p, unsigned exponent);

// Returns q with q * d == p. Throws DivisionByZero, DivisionNotExact,
// VariableCountMismatch.
LaurentPolynomial exact_div(const LaurentPolynomial& p, const LaurentPolynomial& d);

// Componentwise minimal d >= 0 such that p * x^d has no negative exponents.
// Throws ZeroPolynomial.
Monomial denominator_monomial(const LaurentPolynomial& p);

inline LaurentPolynomial operator+(const LaurentPolynomial& p, const LaurentPolynomial& q) { return add(p, q); }
inline LaurentPolynomial operator-(const LaurentPolynomial& p, const LaurentPolynomial& q) { return sub(p, q); }
inline LaurentPolynomial operator*(const LaurentPolynomial& p, const LaurentPolynomial& q) { return mul(p, q); }
inline LaurentPolynomial operator-(const LaurentPolynomial& p) { return neg(p); }

std::string render(const LaurentPolynomial& p);

// Inverse of render(); also accepts any sum of terms `c*x1^a*x2^b`, optionally
// as a parenthesized numerator over a monomial denominator. Throws ParseError.
LaurentPolynomial parse_laurent(std::string_view text, std::size_t nvars);

}  // namespace cmut

template <>
struct std::hash<cmut::LaurentPolynomial> {
    std::size_t operator()(const cmut::LaurentPolynomial& p) const noexcept { return p.hash(); }
};
