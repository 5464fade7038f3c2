#pragma once

// Exact integer and rational types shared by every counting module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace symsft {

/// Exact nonnegative pattern count (C_n, per-state counts, and products of them).
using BigCount = boost::multiprecision::cpp_int;

/// Exact rational with canonical (reduced, positive denominator) representation.
using ExactRational = boost::multiprecision::cpp_rational;

inline std::string to_decimal(const BigCount& x) { return x.str(); }

inline std::string to_fraction_string(const ExactRational& q) {
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

inline BigCount pow_big(const BigCount& base, std::uint64_t exponent) {
    BigCount result = 1;
    BigCount b = base;
    while (exponent != 0) {
        if (exponent & 1U) result *= b;
        exponent >>= 1U;
        if (exponent != 0) b *= b;
    }
    return result;
}

/// Natural log of an exact count; ln 0 = -inf.
///
/// The top 64 significant bits are converted to long double and the
/// discarded bits are accounted for as shift * ln 2, so the relative error
/// is bounded by a few ulps of long double independent of magnitude.
inline long double ln_big(const BigCount& x) {
    if (x < 0) throw std::domain_error("ln_big: negative argument");
    if (x == 0) return -std::numeric_limits<long double>::infinity();
    const std::size_t bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 64) return std::log(static_cast<long double>(static_cast<std::uint64_t>(x)));
    const std::size_t shift = bits - 64;
    const auto top = static_cast<std::uint64_t>(BigCount(x >> shift));
    constexpr long double ln2 = 0.693147180559945309417232121458176568L;
    return std::log(static_cast<long double>(top)) + static_cast<long double>(shift) * ln2;
}

inline long double to_long_double(const ExactRational& q) {
    // Numerator and denominator may both exceed long double range; go via logs
    // only when necessary.
    const BigCount& num = boost::multiprecision::numerator(q);
    const BigCount& den = boost::multiprecision::denominator(q);
    if (boost::multiprecision::msb(abs(num) + 1) < 1000 && boost::multiprecision::msb(den) < 1000)
        return num.convert_to<long double>() / den.convert_to<long double>();
    const long double sign = num < 0 ? -1.0L : 1.0L;
    return sign * std::exp(ln_big(abs(num)) - ln_big(den));
}

}  // namespace symsft
