#pragma once

#include "pairsum/linalg.hpp"
#include "pairsum/lp.hpp"
#include "pairsum/norms.hpp"
#include "pairsum/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pairsum {

class InvalidWitnessError : public std::invalid_argument {
  public:
    explicit InvalidWitnessError(const std::string& what) : std::invalid_argument(what) {}
};

/// A candidate configuration: nonzero, pairwise distinct vectors together
/// with the pairwise-sum budget delta in (0, 2].
struct Instance {
    Rational delta;
    std::vector<QVector> vectors;

    Instance(Rational delta_, std::vector<QVector> vectors_)
        : delta(std::move(delta_)), vectors(std::move(vectors_)) {
        if (delta <= 0 || delta > 2) {
            throw DeltaRangeError("instance delta must lie in (0, 2], got " + to_string(delta));
        }
        if (vectors.empty()) {
            throw std::invalid_argument("instance needs at least one vector");
        }
        detail::check_common_dimension(vectors);
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            if (is_zero_vector(vectors[i])) {
                throw std::invalid_argument("instance vector " + std::to_string(i) + " is zero");
            }
            for (std::size_t j = i + 1; j < vectors.size(); ++j) {
                if (vectors[i] == vectors[j]) {
                    throw DuplicateInputError("instance vectors " + std::to_string(i) + " and " +
                                              std::to_string(j) + " coincide");
                }
            }
        }
    }

    std::size_t size() const { return vectors.size(); }
    std::size_t dimension() const { return vectors[0].size(); }

    bool operator==(const Instance& other) const {
        return delta == other.delta && vectors == other.vectors;
    }
};

/// Dual vectors, one per instance vector, certifying that a realizing norm
/// exists. Valid iff verify_witness accepts it.
struct Witness {
    std::vector<QVector> duals;
    bool operator==(const Witness&) const = default;
};

struct WitnessResult {
    enum class Status { Feasible, Infeasible };
    Status status = Status::Infeasible;
    Witness witness;             // Feasible
    std::size_t failing_index = 0; // Infeasible: lowest index whose subsystem fails
    QVector farkas;              // Infeasible: multipliers for witness_subproblem(failing_index)
};

/// The linear system a single dual vector must satisfy: it pairs to 1 with
/// its own vector, lies in [-1, delta-1] against every other vector, and is
/// at least -delta against every pairwise sum. The subsystems for different
/// indices share no variables, so they are solved independently.
inline LinearProgram witness_subproblem(const Instance& instance, std::size_t index) {
    const std::size_t m = instance.size();
    if (index >= m) throw std::out_of_range("witness_subproblem: index out of range");
    LinearProgram lp(instance.dimension());
    lp.add_constraint(instance.vectors[index], Relation::Equal, Rational(1));
    for (std::size_t j = 0; j < m; ++j) {
        if (j == index) continue;
        lp.add_constraint(instance.vectors[j], Relation::GreaterEq, Rational(-1));
        lp.add_constraint(instance.vectors[j], Relation::LessEq, instance.delta - 1);
    }
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j + 1; k < m; ++k) {
            lp.add_constraint(add(instance.vectors[j], instance.vectors[k]),
                              Relation::GreaterEq, -instance.delta);
        }
    }
    return lp;
}

/// Decides whether the instance admits a realizing norm, by solving the m
/// independent dual subsystems in index order. Reports the first infeasible
/// index with its Farkas certificate, or a complete witness.
inline WitnessResult find_witness(const Instance& instance) {
    WitnessResult out;
    out.witness.duals.reserve(instance.size());
    for (std::size_t i = 0; i < instance.size(); ++i) {
        const LinearProgram lp = witness_subproblem(instance, i);
        const LPResult res = solve_lp(lp);
        if (res.status == LPResult::Status::Infeasible) {
            out.status = WitnessResult::Status::Infeasible;
            out.failing_index = i;
            out.farkas = res.farkas;
            return out;
        }
        out.witness.duals.push_back(res.point);
    }
    out.status = WitnessResult::Status::Feasible;
    return out;
}

/// Exact check of the full dual system, independent of the LP solver.
inline bool verify_witness(const Instance& instance, const Witness& witness) {
    const std::size_t m = instance.size();
    if (witness.duals.size() != m) return false;
    for (const auto& y : witness.duals) {
        if (y.size() != instance.dimension()) return false;
    }
    // pairing[i][j] = <x_j, y_i>
    std::vector<QVector> pairing(m, QVector(m, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            pairing[i][j] = dot(instance.vectors[j], witness.duals[i]);
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (pairing[i][i] != 1) return false;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            if (pairing[i][j] < -1 || pairing[i][j] > instance.delta - 1) return false;
        }
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = j + 1; k < m; ++k) {
                if (pairing[i][j] + pairing[i][k] < -instance.delta) return false;
            }
        }
    }
    return true;
}

namespace detail {

/// Flip so the first nonzero coordinate is positive; generators come in
/// antipodal pairs, so the sign is free.
inline QVector canonical_sign(QVector v) {
    for (const auto& c : v) {
        if (c < 0) return negated(v);
        if (c > 0) break;
    }
    return v;
}

} // namespace detail

/// Constructs the realizing norm for a verified witness: the symmetric hull
/// of the instance vectors together with the pairwise sums scaled by
/// 1/delta. If the hull is not full dimensional it is thickened by an
/// orthogonal-complement basis (at scale 1), which leaves the gauge on the
/// original span unchanged. The result satisfies gauge(x_i) = 1 exactly and
/// gauge(x_i + x_j) <= delta.
inline Norm build_norm(const Instance& instance, const Witness& witness) {
    if (!verify_witness(instance, witness)) {
        throw InvalidWitnessError("witness fails the dual system");
    }
    std::vector<QVector> gens;
    auto push_unique = [&gens](QVector v) {
        v = detail::canonical_sign(std::move(v));
        if (std::find(gens.begin(), gens.end(), v) == gens.end()) {
            gens.push_back(std::move(v));
        }
    };
    for (const auto& x : instance.vectors) push_unique(x);
    const Rational inv_delta = Rational(1) / instance.delta;
    for (std::size_t i = 0; i < instance.size(); ++i) {
        for (std::size_t j = i + 1; j < instance.size(); ++j) {
            QVector s = add(instance.vectors[i], instance.vectors[j]);
            if (is_zero_vector(s)) continue; // antipodal pair contributes nothing
            push_unique(scaled(s, inv_delta));
        }
    }
    const std::size_t d = instance.dimension();
    if (rank(gens) < d) {
        for (auto& w : orthogonal_complement_basis(gens, d)) {
            gens.push_back(std::move(w));
        }
    }
    return Norm::polytope(std::move(gens));
}

/// At delta = 2/3 with at least three vectors, any valid witness is forced
/// to pair each dual against every other vector at exactly -1/3. Returns
/// nullopt when the precondition does not apply.
inline std::optional<bool> forced_dual_values(const Instance& instance,
                                              const Witness& witness) {
    if (instance.delta != Rational(2, 3) || instance.size() < 3) return std::nullopt;
    const std::size_t m = instance.size();
    if (witness.duals.size() != m) return false;
    const Rational expected(-1, 3);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            if (dot(instance.vectors[j], witness.duals[i]) != expected) return false;
        }
    }
    return true;
}

/// True iff every linear dependence among the vectors has all coefficients
/// equal, i.e. the coefficient kernel sits inside span{(1,...,1)}.
inline bool kernel_equal_coefficients(const std::vector<QVector>& vectors) {
    for (const auto& basis_vec : kernel_basis(vectors)) {
        for (std::size_t i = 1; i < basis_vec.size(); ++i) {
            if (basis_vec[i] != basis_vec[0]) return false;
        }
    }
    return true;
}

} // namespace pairsum
