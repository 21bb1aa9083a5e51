#pragma once

#include "pairsum/norms.hpp"
#include "pairsum/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>

namespace pairsum {

/// Closed-form cardinality bound floor(2 * (2/(2-delta))^d), exact.
inline BigInt closed_form_bound(std::size_t d, const Rational& delta) {
    require_delta_in_open_range(delta);
    const Rational base = Rational(2) / (2 - delta);
    return floor_rational(2 * rational_pow(base, static_cast<unsigned>(d)));
}

namespace detail {

inline BigInt integer_nth_root(const BigInt& a, unsigned d) {
    if (a < 0) throw std::invalid_argument("integer_nth_root of a negative number");
    if (a == 0 || d == 1) return a;
    BigInt lo(1), hi(2);
    while (pow(hi, d) <= a) hi <<= 1;
    while (lo < hi - 1) {
        BigInt mid = (lo + hi) >> 1;
        if (pow(mid, d) <= a) lo = mid;
        else hi = mid;
    }
    return lo;
}

/// Dyadic bracket (n/2^t, (n+1)/2^t) around the d-th root of an integer
/// that is not a perfect d-th power, so the root is irrational and never
/// hits a midpoint.
struct RootBracket {
    BigInt value; // the radicand
    unsigned degree;
    BigInt n;
    unsigned shift = 0;

    RootBracket(BigInt a, unsigned d) : value(std::move(a)), degree(d), n(integer_nth_root(value, d)) {}

    Rational low() const { return Rational(n, BigInt(1) << shift); }
    Rational high() const { return Rational(n + 1, BigInt(1) << shift); }

    void refine() {
        const BigInt mid = 2 * n + 1;
        // Compare (mid / 2^(shift+1))^d against the radicand using powers only.
        if (pow(mid, degree) < value * pow(BigInt(2), degree * (shift + 1))) {
            n = mid;
        } else {
            n = 2 * n;
        }
        ++shift;
    }
};

/// Exact decision of a^(1/d) + b^(1/d) <= r for positive integers a, b and
/// rational r. Perfect d-th powers reduce to a single power comparison;
/// otherwise both roots are bracketed dyadically and refined until the sum
/// separates from r, which it must since such a root sum is irrational.
inline bool root_sum_le(const BigInt& a, const BigInt& b, unsigned d, const Rational& r) {
    if (r <= 0) return false; // both roots are positive
    if (d == 1) return Rational(a) + Rational(b) <= r;
    const BigInt ra = integer_nth_root(a, d);
    const BigInt rb = integer_nth_root(b, d);
    const bool a_perfect = pow(ra, d) == a;
    const bool b_perfect = pow(rb, d) == b;
    if (a_perfect && b_perfect) return Rational(ra) + Rational(rb) <= r;
    if (a_perfect || b_perfect) {
        const BigInt exact = a_perfect ? ra : rb;
        const BigInt& other = a_perfect ? b : a;
        const Rational rest = r - exact;
        if (rest <= 0) return false;
        // other^(1/d) <= rest  <=>  other * den^d <= num^d
        return other * pow(denominator(rest), d) <= pow(numerator(rest), d);
    }
    RootBracket ba(a, d), bb(b, d);
    for (int iter = 0; iter < 4096; ++iter) {
        if (ba.high() + bb.high() <= r) return true;
        if (ba.low() + bb.low() > r) return false;
        ba.refine();
        bb.refine();
    }
    throw std::logic_error("root bracketing failed to separate; r equals an irrational sum?");
}

} // namespace detail

/// Largest N >= 2 with (floor(N/2)^(1/d) + ceil(N/2)^(1/d)) * (1 - delta/2)
/// bounded by the packing radius, decided exactly. Returns nullopt when even
/// N = 2 fails. The default radius 2 reproduces the closed form on even N;
/// the radius is a parameter so alternative values can be compared.
inline std::optional<BigInt> sharp_bound(std::size_t d, const Rational& delta,
                                         const Rational& radius = Rational(2)) {
    require_delta_in_open_range(delta);
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
    const Rational r = radius / (1 - delta / 2);
    const auto admissible = [&](const BigInt& n) {
        const BigInt half_lo = n / 2;
        const BigInt half_hi = (n + 1) / 2;
        if (half_lo == half_hi) {
            // 2 k^(1/d) <= r  <=>  k * (2 den)^d <= num^d
            return half_lo * pow(2 * denominator(r), static_cast<unsigned>(d)) <=
                   pow(numerator(r), static_cast<unsigned>(d));
        }
        return detail::root_sum_le(half_lo, half_hi, static_cast<unsigned>(d), r);
    };
    if (!admissible(BigInt(2))) return std::nullopt;
    BigInt hi(4);
    while (admissible(hi)) hi <<= 1;
    BigInt lo(2); // largest known admissible
    while (lo < hi - 1) {
        BigInt mid = (lo + hi) >> 1;
        if (admissible(mid)) lo = mid;
        else hi = mid;
    }
    return lo;
}

/// The bound forced by the triangle inequality alone: below delta = 2/3 no
/// third unit vector fits, so the answer is 2. Above it the triangle
/// inequality says nothing.
inline std::optional<int> trivial_bound(const Rational& delta) {
    require_delta_in_open_range(delta);
    if (delta < Rational(2, 3)) return 2;
    return std::nullopt;
}

/// Euclidean comparison bound: if the norm is within sqrt(d) of a Euclidean
/// norm, pairwise sums of norm <= delta force inner products of at most
/// (d * delta^2 - 2) / 2 between unit vectors.
inline Rational inner_product_bound(std::size_t d, const Rational& delta) {
    if (d < 1) throw std::invalid_argument("inner_product_bound: dimension must be >= 1");
    return (Rational(BigInt(d)) * delta * delta - 2) / 2;
}

/// Largest m unit vectors that can pairwise pair at most c < 0 in an inner
/// product space: the Gram sum m + m(m-1)c must stay nonnegative, so
/// m <= floor(1 - 1/c). No bound when c >= 0.
inline std::optional<BigInt> gram_bound(const Rational& c) {
    if (c >= 0) return std::nullopt;
    return floor_rational(1 - 1 / c);
}

/// Side-by-side report of the closed form and the sharp inequality it came
/// from. The two can differ only on odd counts, so agreement tolerates +1.
struct BoundReport {
    BigInt closed_form;
    std::optional<BigInt> sharp;
    Rational radius_used;
    bool agreement = false;

    bool operator==(const BoundReport&) const = default;
};

inline BoundReport bound_report(std::size_t d, const Rational& delta,
                                const Rational& radius = Rational(2)) {
    BoundReport report;
    report.closed_form = closed_form_bound(d, delta);
    report.sharp = sharp_bound(d, delta, radius);
    report.radius_used = radius;
    report.agreement = report.sharp.has_value() && *report.sharp <= report.closed_form + 1;
    return report;
}

} // namespace pairsum
