#pragma once

#include "pairsum/linalg.hpp"
#include "pairsum/lp.hpp"
#include "pairsum/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pairsum {

class DegenerateBallError : public std::runtime_error {
  public:
    explicit DegenerateBallError(const std::string& what) : std::runtime_error(what) {}
};

class DuplicateInputError : public std::invalid_argument {
  public:
    explicit DuplicateInputError(const std::string& what) : std::invalid_argument(what) {}
};

class DeltaRangeError : public std::invalid_argument {
  public:
    explicit DeltaRangeError(const std::string& what) : std::invalid_argument(what) {}
};

/// A norm given either in closed form (sup or sum of absolute coordinates)
/// or as the symmetric convex hull conv{+-g_1, ..., +-g_n} of a generator
/// list. Generators are stored one per antipodal pair.
struct Norm {
    enum class Kind { LInf, L1, Polytope };

    Kind kind = Kind::LInf;
    std::size_t dimension = 0;
    std::vector<QVector> generators; // Polytope only
    bool spanning = true;            // Polytope: generators span R^dimension

    static Norm linf(std::size_t d) { return Norm{Kind::LInf, d, {}, true}; }
    static Norm l1(std::size_t d) { return Norm{Kind::L1, d, {}, true}; }

    static Norm polytope(std::vector<QVector> gens) {
        if (gens.empty()) {
            throw std::invalid_argument("polytope norm needs at least one generator");
        }
        const std::size_t d = gens[0].size();
        for (const auto& g : gens) {
            if (g.size() != d) {
                throw DimensionMismatchError("polytope generators mix dimensions");
            }
            if (is_zero_vector(g)) {
                throw std::invalid_argument("polytope generator must be nonzero");
            }
        }
        Norm n{Kind::Polytope, d, std::move(gens), false};
        n.spanning = rank(n.generators) == d;
        return n;
    }

    bool operator==(const Norm& other) const {
        return kind == other.kind && dimension == other.dimension &&
               generators == other.generators;
    }
};

namespace detail {

inline Rational abs_rational(const Rational& q) { return q < 0 ? -q : q; }

/// Gauge of the symmetric hull: the least total weight expressing x as a
/// nonnegative combination of the signed generators.
inline Rational polytope_gauge(const Norm& norm, const QVector& x) {
    const std::size_t n = norm.generators.size();
    LinearProgram lp(2 * n);
    lp.mark_all_nonnegative();
    for (std::size_t r = 0; r < norm.dimension; ++r) {
        QVector row(2 * n, Rational(0));
        for (std::size_t g = 0; g < n; ++g) {
            row[2 * g] = norm.generators[g][r];
            row[2 * g + 1] = -norm.generators[g][r];
        }
        lp.add_constraint(std::move(row), Relation::Equal, x[r]);
    }
    lp.set_objective(QVector(2 * n, Rational(1)), Direction::Minimize);
    const LPResult res = solve_lp(lp);
    if (res.status != LPResult::Status::Optimal) {
        throw std::logic_error("gauge evaluation did not reach an optimum");
    }
    return res.value;
}

} // namespace detail

/// Exact Minkowski functional of the unit ball at x.
inline Rational gauge(const Norm& norm, const QVector& x) {
    if (x.size() != norm.dimension) {
        throw DimensionMismatchError("gauge: point of wrong dimension");
    }
    switch (norm.kind) {
        case Norm::Kind::LInf: {
            Rational best(0);
            for (const auto& c : x) {
                const Rational a = detail::abs_rational(c);
                if (a > best) best = a;
            }
            return best;
        }
        case Norm::Kind::L1: {
            Rational sum(0);
            for (const auto& c : x) sum += detail::abs_rational(c);
            return sum;
        }
        case Norm::Kind::Polytope: {
            if (!norm.spanning) {
                throw DegenerateBallError("polytope generators do not span the space");
            }
            if (is_zero_vector(x)) return Rational(0);
            return detail::polytope_gauge(norm, x);
        }
    }
    throw std::logic_error("unreachable norm kind");
}

/// True iff the half space {x : <x,y> <= c} contains the symmetric hull of
/// the generators, i.e. |<g,y>| <= c for every generator. Certifies boundary
/// membership without an LP when paired with an exact <x,y> = c.
inline bool support_check(const std::vector<QVector>& generators, const QVector& y,
                          const Rational& c) {
    for (const auto& g : generators) {
        if (detail::abs_rational(dot(g, y)) > c) return false;
    }
    return true;
}

struct UnitViolation {
    std::size_t index;
    Rational gauge_value;
    bool operator==(const UnitViolation&) const = default;
};

struct PairViolation {
    std::size_t i, j;
    Rational gauge_value;
    bool operator==(const PairViolation&) const = default;
};

/// Outcome of checking the defining conditions of a small-pairwise-sum set:
/// all gauges exactly 1 and all pairwise sums at most delta.
struct AdditivityReport {
    std::vector<UnitViolation> unit_violations;
    std::vector<PairViolation> pair_violations;
    std::vector<std::pair<std::size_t, std::size_t>> tight_pairs; // gauge == delta
    bool pass = false;

    bool operator==(const AdditivityReport&) const = default;
};

inline void require_delta_in_open_range(const Rational& delta) {
    if (delta <= 0 || delta >= 2) {
        throw DeltaRangeError("delta must lie strictly between 0 and 2, got " +
                              to_string(delta));
    }
}

/// Exact verification that `vectors` all have gauge 1 and pairwise sums of
/// gauge at most delta. Pairs landing exactly on delta are reported tight.
inline AdditivityReport verify_additive_set(const Norm& norm,
                                            const std::vector<QVector>& vectors,
                                            const Rational& delta) {
    require_delta_in_open_range(delta);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = i + 1; j < vectors.size(); ++j) {
            if (vectors[i] == vectors[j]) {
                throw DuplicateInputError("duplicate vector at indices " +
                                          std::to_string(i) + " and " + std::to_string(j));
            }
        }
    }
    AdditivityReport report;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const Rational g = gauge(norm, vectors[i]);
        if (g != 1) report.unit_violations.push_back({i, g});
    }
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = i + 1; j < vectors.size(); ++j) {
            const Rational g = gauge(norm, add(vectors[i], vectors[j]));
            if (g > delta) report.pair_violations.push_back({i, j, g});
            if (g == delta) report.tight_pairs.emplace_back(i, j);
        }
    }
    report.pass = report.unit_violations.empty() && report.pair_violations.empty();
    return report;
}

} // namespace pairsum
