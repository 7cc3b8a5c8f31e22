#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace edgeoff::lp {

enum class Sense { maximize, minimize };
enum class Relation { less_equal, equal, greater_equal };

struct Row {
    std::vector<double> coeffs;
    Relation relation = Relation::less_equal;
    double rhs = 0.0;
};

/// Dense LP over nonnegative variables. Upper bounds are ordinary rows.
struct LinearProgram {
    Sense sense = Sense::maximize;
    std::size_t n_vars = 0;
    std::vector<double> objective;
    std::vector<Row> rows;

    LinearProgram() = default;
    explicit LinearProgram(std::size_t n, Sense s = Sense::maximize) : sense(s), n_vars(n), objective(n, 0.0) {}

    Row& add_row(std::vector<double> coeffs, Relation relation, double rhs);
    /// Row given as (variable index, coefficient) terms; repeated indices accumulate.
    Row& add_terms(const std::vector<std::pair<std::size_t, double>>& terms, Relation relation, double rhs);

    /// Throws ParameterError on dimension mismatch or non-finite data.
    void validate() const;
};

enum class Status { optimal, infeasible, unbounded, solver_failure };

std::string_view to_string(Status status);

struct LpSolution {
    Status status = Status::solver_failure;
    std::vector<double> x;                  // empty unless optimal
    std::optional<double> objective_value;  // set iff optimal
    /// d(objective)/d(rhs_i) for each original row; empty unless optimal.
    std::vector<double> duals;
    std::size_t iterations = 0;

    bool optimal() const { return status == Status::optimal; }
};

struct Tolerances {
    double feasibility = 1e-9;
    double pivot = 1e-12;
    /// 0 selects a cap proportional to the tableau size.
    std::size_t max_iterations = 0;
};

/// Two-phase dense tableau simplex with Bland's anti-cycling rule. Rows and
/// columns are equilibrated internally; the returned point and duals are in
/// the caller's units.
LpSolution solve(const LinearProgram& lp, const Tolerances& tol = {});

/// Largest constraint violation of `x`, each row measured relative to
/// 1 + |rhs| + sum |a_ij x_j|; negative entries of x count as violations too.
double max_violation(const LinearProgram& lp, std::span<const double> x);

double objective_at(const LinearProgram& lp, std::span<const double> x);

/// Plain-text dump used to reproduce solver failures:
///   max|min <n_vars>
///   obj c_0 ... c_{n-1}
///   row a_0 ... a_{n-1} <=|=|>= b
std::string to_text(const LinearProgram& lp);
LinearProgram from_text(std::string_view text);

}  // namespace edgeoff::lp
