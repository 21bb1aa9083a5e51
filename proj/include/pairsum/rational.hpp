#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pairsum {

/// Arbitrary-precision rational scalar. Always kept in lowest terms with a
/// positive denominator, so equality is plain value equality.
using Rational = boost::multiprecision::mpq_rational;

/// Arbitrary-precision integer.
using BigInt = boost::multiprecision::mpz_int;

namespace detail {

inline bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

} // namespace detail

/// Parses "p/q" or "p". The denominator must be a positive integer literal;
/// the result is reduced to lowest terms.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!detail::is_integer_literal(text)) {
            throw std::invalid_argument("not a rational literal: '" + text + "'");
        }
        return Rational(BigInt(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den)) {
        throw std::invalid_argument("not a rational literal: '" + text + "'");
    }
    const BigInt d(den);
    if (d <= 0) {
        throw std::invalid_argument("denominator must be positive: '" + text + "'");
    }
    // Division canonicalizes; mpq string assignment would not.
    return Rational(BigInt(num)) / Rational(d);
}

/// Serializes as "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational rational_pow(const Rational& base, unsigned exp) {
    if (exp == 0) return Rational(1);
    BigInt n = pow(numerator(base), exp);
    BigInt d = pow(denominator(base), exp);
    return Rational(n, d);
}

/// Floor of a rational, exact.
inline BigInt floor_rational(const Rational& q) {
    BigInt quot = numerator(q) / denominator(q); // truncates toward zero
    if (q < 0 && quot * denominator(q) != numerator(q)) --quot;
    return quot;
}

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

} // namespace pairsum
