#pragma once

#include "pairsum/linalg.hpp"
#include "pairsum/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pairsum {

enum class Relation { LessEq, Equal, GreaterEq };
enum class Direction { Minimize, Maximize };

struct Constraint {
    QVector coeffs;
    Relation relation = Relation::LessEq;
    Rational rhs;
};

struct Objective {
    QVector coeffs;
    Direction direction = Direction::Minimize;
};

/// A linear program over free variables, stated as the caller thinks of it.
/// Variables may optionally be flagged nonnegative, which the solver exploits
/// instead of splitting them; certificates are checked against the program as
/// stated, bounds included.
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<Constraint> constraints;
    std::optional<Objective> objective;
    std::vector<bool> nonnegative; // empty means all variables free

    explicit LinearProgram(std::size_t n = 0) : num_vars(n) {}

    bool var_nonnegative(std::size_t j) const {
        return j < nonnegative.size() && nonnegative[j];
    }

    void mark_all_nonnegative() { nonnegative.assign(num_vars, true); }

    void add_constraint(QVector coeffs, Relation rel, Rational rhs) {
        if (coeffs.size() != num_vars) {
            throw DimensionMismatchError("constraint coefficient count != num_vars");
        }
        constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
    }

    void set_objective(QVector coeffs, Direction dir) {
        if (coeffs.size() != num_vars) {
            throw DimensionMismatchError("objective coefficient count != num_vars");
        }
        objective = Objective{std::move(coeffs), dir};
    }
};

/// Self-certifying solver outcome.
///
/// * Optimal: `point` satisfies every constraint, `value = c . point`, and
///   `duals` (one multiplier per constraint) proves optimality by weak
///   duality with `duals . rhs = value`.
/// * Feasible: `point` satisfies every constraint (no objective given).
/// * Infeasible: `farkas` combines the constraints, each taken in
///   less-or-equal orientation (greater-or-equal rows negated), into an
///   exact contradiction `0 <= negative`.
/// * Unbounded: from `point`, moving along `ray` preserves feasibility and
///   improves the objective forever.
struct LPResult {
    enum class Status { Optimal, Feasible, Infeasible, Unbounded };
    Status status = Status::Feasible;
    QVector point;
    Rational value;
    QVector duals;
    QVector farkas;
    QVector ray;
};

namespace detail {

// Dense exact tableau for the two-phase simplex. Columns are created for
// variable parts (one for a nonnegative variable, a plus/minus pair for a
// free one), one slack per inequality row, and artificials where needed.
class SimplexTableau {
  public:
    explicit SimplexTableau(const LinearProgram& lp) : lp_(lp) {
        const std::size_t m = lp.constraints.size();
        row_sign_.assign(m, 1);
        // Variable columns.
        plus_col_.assign(lp.num_vars, 0);
        minus_col_.assign(lp.num_vars, npos);
        for (std::size_t j = 0; j < lp.num_vars; ++j) {
            plus_col_[j] = new_column();
            if (!lp.var_nonnegative(j)) minus_col_[j] = new_column();
        }
        slack_col_.assign(m, npos);
        slack_sign_.assign(m, Rational(0));
        unit_col_.assign(m, npos);
        rows_.assign(m, QVector(num_cols_, Rational(0)));
        rhs_.assign(m, Rational(0));
        basis_.assign(m, npos);

        for (std::size_t i = 0; i < m; ++i) {
            const Constraint& c = lp.constraints[i];
            if (c.coeffs.size() != lp.num_vars) {
                throw DimensionMismatchError("constraint width mismatch");
            }
            if (c.rhs < 0) row_sign_[i] = -1;
            Relation rel = c.relation;
            if (row_sign_[i] < 0) {
                if (rel == Relation::LessEq) rel = Relation::GreaterEq;
                else if (rel == Relation::GreaterEq) rel = Relation::LessEq;
            }
            if (rel != Relation::Equal) {
                slack_col_[i] = new_column();
                slack_sign_[i] = (rel == Relation::LessEq) ? 1 : -1;
            }
            oriented_rel_.push_back(rel);
        }
        // Artificials for rows whose slack cannot start basic.
        artificial_col_.assign(m, npos);
        for (std::size_t i = 0; i < m; ++i) {
            if (oriented_rel_[i] == Relation::LessEq) continue;
            artificial_col_[i] = new_column();
        }
        first_artificial_ = npos;
        for (std::size_t i = 0; i < m; ++i) {
            if (artificial_col_[i] != npos &&
                (first_artificial_ == npos || artificial_col_[i] < first_artificial_)) {
                first_artificial_ = artificial_col_[i];
            }
        }
        if (first_artificial_ == npos) first_artificial_ = num_cols_;

        for (auto& r : rows_) r.assign(num_cols_, Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
            const Constraint& c = lp.constraints[i];
            for (std::size_t j = 0; j < lp.num_vars; ++j) {
                if (c.coeffs[j] == 0) continue;
                const Rational v = Rational(row_sign_[i]) * c.coeffs[j];
                rows_[i][plus_col_[j]] = v;
                if (minus_col_[j] != npos) rows_[i][minus_col_[j]] = -v;
            }
            if (slack_col_[i] != npos) rows_[i][slack_col_[i]] = slack_sign_[i];
            if (artificial_col_[i] != npos) rows_[i][artificial_col_[i]] = 1;
            rhs_[i] = Rational(row_sign_[i]) * c.rhs;
            if (artificial_col_[i] != npos) {
                basis_[i] = artificial_col_[i];
                unit_col_[i] = artificial_col_[i];
            } else {
                basis_[i] = slack_col_[i];
                unit_col_[i] = slack_col_[i];
            }
        }
    }

    /// Phase 1: drive the artificials to zero. Returns true when feasible.
    bool phase_one() {
        cost_.assign(num_cols_, Rational(0));
        cost_rhs_ = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (artificial_col_[i] == npos) continue;
            cost_[artificial_col_[i]] = 1;
        }
        // Price out the artificial starting basis.
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (basis_[i] != artificial_col_[i] || artificial_col_[i] == npos) continue;
            subtract_row_from_cost(i, Rational(1));
        }
        run_bland(num_cols_); // artificials may leave, never re-enter profitably
        if (-cost_rhs_ != 0) return false;
        pivot_out_artificials();
        return true;
    }

    /// Phase 2 over the given minimization costs on tableau columns.
    /// Returns false when unbounded (entering column stored for ray
    /// extraction).
    bool phase_two(const QVector& column_costs) {
        cost_ = column_costs;
        cost_rhs_ = 0;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (cost_[basis_[i]] != 0) subtract_row_from_cost(i, cost_[basis_[i]]);
        }
        return run_bland(first_artificial_);
    }

    Rational objective_value() const { return -cost_rhs_; }

    /// Value of tableau column `col` in the current basic solution.
    Rational column_value(std::size_t col) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (basis_[i] == col) return rhs_[i];
        }
        return Rational(0);
    }

    QVector extract_point() const {
        QVector x(lp_.num_vars, Rational(0));
        for (std::size_t j = 0; j < lp_.num_vars; ++j) {
            x[j] = column_value(plus_col_[j]);
            if (minus_col_[j] != npos) x[j] -= column_value(minus_col_[j]);
        }
        return x;
    }

    /// Row multipliers y with y = c_B B^-1 for the current cost row, mapped
    /// back to the original (unflipped) constraints.
    QVector extract_row_multipliers(bool phase_one_costs) const {
        QVector y(rows_.size(), Rational(0));
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const std::size_t col = unit_col_[i];
            const Rational c = phase_one_costs && col == artificial_col_[i] && col != npos
                                   ? Rational(1)
                                   : Rational(0);
            // Reduced cost of a unit column e_i is c - y_i * sign; solve for y_i.
            Rational sign = (col == artificial_col_[i]) ? Rational(1) : slack_sign_[i];
            y[i] = (c - cost_[col]) / sign;
            y[i] *= row_sign_[i];
        }
        return y;
    }

    /// Improving ray in original variables for the unbounded entering column.
    QVector extract_ray() const {
        QVector dir(num_cols_, Rational(0));
        dir[unbounded_col_] = 1;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            dir[basis_[i]] = -rows_[i][unbounded_col_];
        }
        QVector r(lp_.num_vars, Rational(0));
        for (std::size_t j = 0; j < lp_.num_vars; ++j) {
            r[j] = dir[plus_col_[j]];
            if (minus_col_[j] != npos) r[j] -= dir[minus_col_[j]];
        }
        return r;
    }

    QVector column_costs_for(const QVector& objective_coeffs) const {
        QVector c(num_cols_, Rational(0));
        for (std::size_t j = 0; j < lp_.num_vars; ++j) {
            c[plus_col_[j]] = objective_coeffs[j];
            if (minus_col_[j] != npos) c[minus_col_[j]] = -objective_coeffs[j];
        }
        return c;
    }

  private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t new_column() { return num_cols_++; }

    // factor by value: callers may pass an entry of cost_ itself
    void subtract_row_from_cost(std::size_t row, Rational factor) {
        for (std::size_t c = 0; c < num_cols_; ++c) {
            if (rows_[row][c] != 0) cost_[c] -= factor * rows_[row][c];
        }
        cost_rhs_ -= factor * rhs_[row];
    }

    void pivot(std::size_t row, std::size_t col) {
        const Rational inv = Rational(1) / rows_[row][col];
        if (inv != 1) {
            for (auto& v : rows_[row]) {
                if (v != 0) v *= inv;
            }
            rhs_[row] *= inv;
        }
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == row) continue;
            const Rational f = rows_[i][col];
            if (f == 0) continue;
            for (std::size_t c = 0; c < num_cols_; ++c) {
                if (rows_[row][c] != 0) rows_[i][c] -= f * rows_[row][c];
            }
            rhs_[i] -= f * rhs_[row];
        }
        const Rational fc = cost_[col];
        if (fc != 0) subtract_row_from_cost(row, fc);
        basis_[row] = col;
    }

    /// Bland's rule: smallest eligible entering column, ties in the ratio
    /// test broken by smallest basis column. Anti-cycling, so terminating.
    /// Columns at or past `col_limit` never enter. Returns false on an
    /// unbounded entering column.
    bool run_bland(std::size_t col_limit) {
        for (;;) {
            std::size_t entering = npos;
            for (std::size_t c = 0; c < col_limit; ++c) {
                if (cost_[c] < 0) {
                    entering = c;
                    break;
                }
            }
            if (entering == npos) return true;
            std::size_t leaving = npos;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i][entering] <= 0) continue;
                if (leaving == npos) {
                    leaving = i;
                    continue;
                }
                const Rational lhs = rhs_[i] * rows_[leaving][entering];
                const Rational rhs = rhs_[leaving] * rows_[i][entering];
                if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[leaving])) {
                    leaving = i;
                }
            }
            if (leaving == npos) {
                unbounded_col_ = entering;
                return false;
            }
            pivot(leaving, entering);
        }
    }

    /// After a zero-cost phase 1, swap any basic artificial for a real
    /// column. All-zero rows are redundant and keep their artificial basic
    /// at value zero, which later pivots cannot disturb.
    void pivot_out_artificials() {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (basis_[i] != artificial_col_[i] || artificial_col_[i] == npos) continue;
            for (std::size_t c = 0; c < first_artificial_; ++c) {
                if (rows_[i][c] != 0) {
                    pivot(i, c);
                    break;
                }
            }
        }
    }

    const LinearProgram& lp_;
    std::size_t num_cols_ = 0;
    std::vector<int> row_sign_;
    std::vector<Relation> oriented_rel_;
    std::vector<std::size_t> plus_col_, minus_col_, slack_col_, artificial_col_, unit_col_;
    std::vector<Rational> slack_sign_;
    QMatrix rows_;
    QVector rhs_;
    std::vector<std::size_t> basis_;
    QVector cost_;
    Rational cost_rhs_;
    std::size_t unbounded_col_ = npos;
    std::size_t first_artificial_ = npos;
};

/// Farkas multipliers for the original constraints from the phase-1 row
/// multipliers: lambda is nonnegative on inequality rows and combines the
/// rows, each oriented as <=, into 0 <= negative.
inline QVector farkas_from_phase_one(const LinearProgram& lp, const QVector& y) {
    QVector lambda(lp.constraints.size(), Rational(0));
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
        lambda[i] = (lp.constraints[i].relation == Relation::GreaterEq) ? y[i] : -y[i];
    }
    return lambda;
}

} // namespace detail

bool check_certificate(const LinearProgram& lp, const LPResult& result);

/// Exact simplex over the rationals with Bland's rule. Every outcome carries
/// the data needed for independent verification, and is re-verified by
/// check_certificate before it is returned.
inline LPResult solve_lp(const LinearProgram& lp) {
    detail::SimplexTableau tab(lp);
    LPResult res;
    const auto certified = [&lp](LPResult r) {
        if (!check_certificate(lp, r)) {
            throw std::logic_error("solver produced a result its certificate rejects");
        }
        return r;
    };
    if (!tab.phase_one()) {
        res.status = LPResult::Status::Infeasible;
        res.farkas = detail::farkas_from_phase_one(lp, tab.extract_row_multipliers(true));
        return certified(std::move(res));
    }
    if (!lp.objective) {
        res.status = LPResult::Status::Feasible;
        res.point = tab.extract_point();
        return certified(std::move(res));
    }
    const bool maximize = lp.objective->direction == Direction::Maximize;
    QVector obj = lp.objective->coeffs;
    if (maximize) obj = negated(obj);
    if (!tab.phase_two(tab.column_costs_for(obj))) {
        res.status = LPResult::Status::Unbounded;
        res.point = tab.extract_point();
        res.ray = tab.extract_ray();
        return certified(std::move(res));
    }
    res.status = LPResult::Status::Optimal;
    res.point = tab.extract_point();
    res.value = maximize ? -tab.objective_value() : tab.objective_value();
    res.duals = tab.extract_row_multipliers(false);
    if (maximize) res.duals = negated(res.duals);
    return certified(std::move(res));
}

namespace detail {

inline bool point_feasible(const LinearProgram& lp, const QVector& x) {
    if (x.size() != lp.num_vars) return false;
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        if (lp.var_nonnegative(j) && x[j] < 0) return false;
    }
    for (const auto& c : lp.constraints) {
        const Rational lhs = dot(c.coeffs, x);
        if (c.relation == Relation::LessEq && lhs > c.rhs) return false;
        if (c.relation == Relation::GreaterEq && lhs < c.rhs) return false;
        if (c.relation == Relation::Equal && lhs != c.rhs) return false;
    }
    return true;
}

inline bool dual_certifies_optimum(const LinearProgram& lp, const LPResult& r) {
    if (!lp.objective || r.duals.size() != lp.constraints.size()) return false;
    const bool maximize = lp.objective->direction == Direction::Maximize;
    // Row sign conditions.
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
        const Relation rel = lp.constraints[i].relation;
        if (rel == Relation::Equal) continue;
        const bool wants_nonpos = (rel == Relation::LessEq) != maximize;
        if (wants_nonpos ? r.duals[i] > 0 : r.duals[i] < 0) return false;
    }
    // Stationarity: y^T A == c on free variables; one-sided on nonnegative.
    Rational bound(0);
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        Rational comb(0);
        for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
            comb += r.duals[i] * lp.constraints[i].coeffs[j];
        }
        const Rational& cj = lp.objective->coeffs[j];
        if (lp.var_nonnegative(j)) {
            if (maximize ? comb < cj : comb > cj) return false;
        } else if (comb != cj) {
            return false;
        }
    }
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
        bound += r.duals[i] * lp.constraints[i].rhs;
    }
    return bound == r.value;
}

inline bool farkas_certifies_infeasible(const LinearProgram& lp, const QVector& lambda) {
    if (lambda.size() != lp.constraints.size()) return false;
    Rational combined_rhs(0);
    QVector combined(lp.num_vars, Rational(0));
    for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
        const Constraint& c = lp.constraints[i];
        const Rational sign = (c.relation == Relation::GreaterEq) ? Rational(-1) : Rational(1);
        if (c.relation != Relation::Equal && lambda[i] < 0) return false;
        if (lambda[i] == 0) continue;
        for (std::size_t j = 0; j < lp.num_vars; ++j) {
            combined[j] += lambda[i] * sign * c.coeffs[j];
        }
        combined_rhs += lambda[i] * sign * c.rhs;
    }
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        if (lp.var_nonnegative(j)) {
            if (combined[j] < 0) return false;
        } else if (combined[j] != 0) {
            return false;
        }
    }
    return combined_rhs < 0;
}

inline bool ray_certifies_unbounded(const LinearProgram& lp, const LPResult& r) {
    if (!lp.objective || r.ray.size() != lp.num_vars) return false;
    if (!point_feasible(lp, r.point)) return false;
    for (std::size_t j = 0; j < lp.num_vars; ++j) {
        if (lp.var_nonnegative(j) && r.ray[j] < 0) return false;
    }
    for (const auto& c : lp.constraints) {
        const Rational drift = dot(c.coeffs, r.ray);
        if (c.relation == Relation::LessEq && drift > 0) return false;
        if (c.relation == Relation::GreaterEq && drift < 0) return false;
        if (c.relation == Relation::Equal && drift != 0) return false;
    }
    const Rational gain = dot(lp.objective->coeffs, r.ray);
    return lp.objective->direction == Direction::Minimize ? gain < 0 : gain > 0;
}

} // namespace detail

/// Exact verification of a result against the stated program, independent of
/// how the result was produced.
inline bool check_certificate(const LinearProgram& lp, const LPResult& result) {
    switch (result.status) {
        case LPResult::Status::Feasible:
            return detail::point_feasible(lp, result.point);
        case LPResult::Status::Optimal:
            return lp.objective.has_value() && detail::point_feasible(lp, result.point) &&
                   dot(lp.objective->coeffs, result.point) == result.value &&
                   detail::dual_certifies_optimum(lp, result);
        case LPResult::Status::Infeasible:
            return detail::farkas_certifies_infeasible(lp, result.farkas);
        case LPResult::Status::Unbounded:
            return detail::ray_certifies_unbounded(lp, result);
    }
    return false;
}

} // namespace pairsum
