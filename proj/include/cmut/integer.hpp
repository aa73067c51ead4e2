#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace cmut {

// Arbitrary-precision integer used for matrix entries, arrow multiplicities and
// polynomial coefficients. Expression templates are disabled so the type
// behaves as a plain value inside Eigen expressions.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline int sign(const Integer& x) { return x.sign(); }

inline bool fits_int64(const Integer& x) {
    return x >= std::numeric_limits<std::int64_t>::min() &&
           x <= std::numeric_limits<std::int64_t>::max();
}

inline std::string to_string(const Integer& x) { return x.str(); }

// Parses an optionally signed decimal integer; returns nullopt on malformed text.
std::optional<Integer> parse_integer(std::string_view text);

}  // namespace cmut
