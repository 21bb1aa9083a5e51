#pragma once

#include "pairsum/duality.hpp"
#include "pairsum/linalg.hpp"
#include "pairsum/norms.hpp"
#include "pairsum/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pairsum {

/// A norm together with the vector family living in it.
struct Family {
    Norm norm;
    std::vector<QVector> vectors;
};

/// d unit vectors in the sup norm, the i-th carrying 1 in coordinate i and
/// -1/3 elsewhere. Every pairwise sum has sup norm exactly 2/3.
inline Family cube_family(std::size_t d) {
    if (d < 1) throw std::invalid_argument("cube_family: dimension must be >= 1");
    std::vector<QVector> vectors;
    vectors.reserve(d);
    for (std::size_t i = 0; i < d; ++i) {
        QVector v(d, Rational(-1, 3));
        v[i] = 1;
        vectors.push_back(std::move(v));
    }
    return {Norm::linf(d), std::move(vectors)};
}

/// The four-vector configuration in three-dimensional l1: centroids of four
/// alternate faces of the unit octahedron, (1/3)(+-1, +-1, +-1) with exactly
/// one +1 for the first three vectors and all +1 for the fourth. They sum to
/// zero and every pairwise sum has l1 norm exactly 2/3.
inline Family octahedron_instance() {
    const Rational third(1, 3);
    std::vector<QVector> vectors = {
        {third, -third, -third},
        {-third, third, -third},
        {-third, -third, third},
        {third, third, third},
    };
    return {Norm::l1(3), std::move(vectors)};
}

/// Stereographic lift of a rational point p in dimension d-1 to a rational
/// unit vector in dimension d: (2p, 1 - |p|^2) / (1 + |p|^2). The squared
/// norm is identically 1.
inline QVector rational_unit_vector(const QVector& p) {
    Rational norm_sq(0);
    for (const auto& c : p) norm_sq += c * c;
    const Rational denom = 1 + norm_sq;
    QVector v(p.size() + 1, Rational(0));
    for (std::size_t i = 0; i < p.size(); ++i) v[i] = 2 * p[i] / denom;
    v[p.size()] = (1 - norm_sq) / denom;
    return v;
}

/// Pairwise inner-product cap (3*delta - 2) / (6 - delta) under which a
/// spherical code lifts to a valid configuration. Positive exactly when
/// delta > 2/3.
inline Rational inner_product_cap(const Rational& delta) {
    return (3 * delta - 2) / (6 - delta);
}

/// Blend coefficient for the lifted duals, (6 - delta)/4. Satisfies both
/// identities the lift needs:
///   blend * cap + 1 - blend = delta - 1
///   1 - blend * (1 + cap)   = -delta / 2
inline Rational lift_blend(const Rational& delta) { return (6 - delta) / 4; }

/// A frequently quoted alternative value 2/3 - delta/4 for the blend. It
/// fails the first identity above (at delta = 1 the left side is 2/3, not
/// 0); kept so the identity table can demonstrate the failure.
inline Rational lift_blend_variant(const Rational& delta) {
    return Rational(2, 3) - delta / 4;
}

/// Parameters for the seeded lifted-code construction. Unit vectors are
/// sampled in `dimension`; the output instance lives in dimension + 1.
struct SphericalCodeParams {
    std::size_t dimension = 2;
    Rational delta;              // must lie in (2/3, 2)
    std::size_t target_count = 8;
    std::uint64_t seed = 1;
    std::size_t max_tries = 5000;
    std::optional<Rational> margin; // default: inner_product_cap(delta) / 10
};

struct LiftResult {
    Instance instance; // in dimension + 1
    Witness witness;
    std::vector<QVector> code; // the accepted unit vectors
    bool shortfall = false;    // max_tries ran out before target_count
    std::size_t tries_used = 0;
};

namespace detail {

/// Deterministic uniform draw in [0, bound]; mt19937_64 output mapped by
/// rejection, so results are identical across platforms.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound_inclusive) {
    const std::uint64_t n = bound_inclusive + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
        const std::uint64_t draw = rng();
        if (draw < limit) return draw % n;
    }
}

inline BigInt integer_sqrt(const BigInt& n) {
    if (n < 0) throw std::invalid_argument("integer_sqrt of a negative number");
    if (n == 0) return 0;
    BigInt lo(1), hi(1);
    while (hi * hi <= n) hi <<= 1;
    while (lo < hi - 1) {
        BigInt mid = (lo + hi) >> 1;
        if (mid * mid <= n) lo = mid;
        else hi = mid;
    }
    return lo;
}

} // namespace detail

/// Greedily samples rational unit vectors with pairwise inner products of
/// magnitude at most cap - margin, then lifts them one dimension up by
/// appending a shared unit coordinate. The duals blend each base vector
/// with that coordinate; the whole output verifies exactly.
///
/// Raw grid points in [-2, 2]^(d-1) at denominator 2^16 would concentrate
/// the stereographic lift near a pole, so the grid is rescaled by a dyadic
/// approximation of the radius that makes the expected squared length 1,
/// spreading the samples over the sphere.
inline LiftResult spherical_code_lift(const SphericalCodeParams& params) {
    if (params.delta <= Rational(2, 3) || params.delta >= 2) {
        throw DeltaRangeError("lifted code requires delta in (2/3, 2), got " +
                              to_string(params.delta));
    }
    if (params.dimension < 1) {
        throw std::invalid_argument("lifted code requires dimension >= 1");
    }
    const Rational cap = inner_product_cap(params.delta);
    const Rational margin = params.margin.value_or(cap / 10);
    if (margin <= 0 || margin >= cap) {
        throw std::invalid_argument("margin must lie strictly between 0 and the cap");
    }
    const Rational threshold = cap - margin;

    const std::size_t base_dim = params.dimension - 1; // p lives one below the sphere
    // Dyadic scale with scale^2 ~ 4 * base_dim / 3, the expected squared
    // length of a raw grid point.
    const BigInt scale_num =
        base_dim == 0 ? BigInt(1)
                      : detail::integer_sqrt((BigInt(base_dim) << 18) / 3);
    const Rational grid_scale =
        base_dim == 0 ? Rational(1) : Rational(scale_num, BigInt(1) << 8);

    std::mt19937_64 rng(params.seed);
    std::vector<QVector> code;
    std::size_t tries = 0;
    while (code.size() < params.target_count && tries < params.max_tries) {
        ++tries;
        QVector p(base_dim, Rational(0));
        for (std::size_t k = 0; k < base_dim; ++k) {
            // Numerator uniform on [-2^17, 2^17]: the grid [-2, 2] at
            // denominator 2^16, then divided by the dyadic scale.
            const std::int64_t raw =
                static_cast<std::int64_t>(detail::uniform_below(rng, 1 << 18)) - (1 << 17);
            p[k] = Rational(raw, std::int64_t(1) << 16) / grid_scale;
        }
        QVector v = rational_unit_vector(p);
        bool ok = true;
        for (const auto& kept : code) {
            if (detail::abs_rational(dot(v, kept)) > threshold) {
                ok = false;
                break;
            }
        }
        if (ok) code.push_back(std::move(v));
    }
    if (code.empty()) {
        // The very first sample is always accepted, so this needs max_tries = 0.
        throw std::invalid_argument("max_tries exhausted before any vector was kept");
    }

    const Rational blend = lift_blend(params.delta);
    std::vector<QVector> lifted, duals;
    lifted.reserve(code.size());
    duals.reserve(code.size());
    for (const auto& v : code) {
        QVector x(v);
        x.push_back(Rational(1));
        lifted.push_back(std::move(x));
        QVector y = scaled(v, blend);
        y.push_back(1 - blend);
        duals.push_back(std::move(y));
    }
    LiftResult out{Instance(params.delta, std::move(lifted)), Witness{std::move(duals)},
                   std::move(code), false, tries};
    out.shortfall = out.code.size() < params.target_count;
    return out;
}

} // namespace pairsum
