#include "edgeoff/lp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "edgeoff/errors.hpp"

namespace edgeoff::lp {

Row& LinearProgram::add_row(std::vector<double> coeffs, Relation relation, double rhs) {
    rows.push_back(Row{std::move(coeffs), relation, rhs});
    return rows.back();
}

Row& LinearProgram::add_terms(const std::vector<std::pair<std::size_t, double>>& terms, Relation relation,
                              double rhs) {
    std::vector<double> coeffs(n_vars, 0.0);
    for (const auto& [j, a] : terms) {
        if (j >= n_vars) throw ParameterError("LP row term index out of range");
        coeffs[j] += a;
    }
    return add_row(std::move(coeffs), relation, rhs);
}

void LinearProgram::validate() const {
    if (objective.size() != n_vars) throw ParameterError("LP objective length does not match n_vars");
    for (double c : objective)
        if (!std::isfinite(c)) throw ParameterError("LP objective has a non-finite coefficient");
    for (const Row& row : rows) {
        if (row.coeffs.size() != n_vars) throw ParameterError("LP row length does not match n_vars");
        if (!std::isfinite(row.rhs)) throw ParameterError("LP right-hand side is not finite");
        for (double a : row.coeffs)
            if (!std::isfinite(a)) throw ParameterError("LP row has a non-finite coefficient");
    }
}

std::string_view to_string(Status status) {
    switch (status) {
        case Status::optimal: return "optimal";
        case Status::infeasible: return "infeasible";
        case Status::unbounded: return "unbounded";
        case Status::solver_failure: return "solver_failure";
    }
    return "unknown";
}

namespace {

enum class ColumnKind { structural, slack, artificial };

// Dense tableau for  max c'x  s.t.  A x = b, x >= 0, b >= 0, with an explicit
// basis. Reduced costs are kept as c_j - c_B B^-1 A_j (entering when > 0).
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), a_(rows * (cols + 1), 0.0), basis_(rows) {}

    double& at(std::size_t i, std::size_t j) { return a_[i * (n_ + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return a_[i * (n_ + 1) + j]; }
    double& rhs(std::size_t i) { return a_[i * (n_ + 1) + n_]; }
    double rhs(std::size_t i) const { return a_[i * (n_ + 1) + n_]; }

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void set_costs(const std::vector<double>& costs) {
        costs_ = costs;
        reduced_.assign(n_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) {
            double z = 0.0;
            for (std::size_t i = 0; i < m_; ++i) z += costs_[basis_[i]] * at(i, j);
            reduced_[j] = costs_[j] - z;
        }
    }

    double objective() const {
        double z = 0.0;
        for (std::size_t i = 0; i < m_; ++i) z += costs_[basis_[i]] * rhs(i);
        return z;
    }

    const std::vector<double>& reduced() const { return reduced_; }

    void snapshot() { original_ = a_; }

    // Rebuilds B^-1 [A | b] for the current basis from the original matrix
    // by Gauss-Jordan elimination with partial pivoting, then the reduced costs.
    bool refactor() {
        const std::vector<std::size_t> cols = basis_;
        a_ = original_;
        std::vector<bool> assigned(m_, false);
        for (std::size_t col : cols) {
            std::size_t best_row = m_;
            double best = 0.0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (assigned[i]) continue;
                const double v = std::abs(at(i, col));
                if (v > best) {
                    best = v;
                    best_row = i;
                }
            }
            if (best_row == m_ || best < 1e-13) return false;
            assigned[best_row] = true;
            eliminate(best_row, col);
            basis_[best_row] = col;
        }
        set_costs(costs_);
        return true;
    }

    void pivot(std::size_t r, std::size_t q) {
        eliminate(r, q);
        const double f = reduced_[q];
        if (f != 0.0) {
            const double* prow = &a_[r * (n_ + 1)];
            for (std::size_t j = 0; j < n_; ++j) reduced_[j] -= f * prow[j];
            reduced_[q] = 0.0;
        }
        basis_[r] = q;
    }

private:
    void eliminate(std::size_t r, std::size_t q) {
        const std::size_t w = n_ + 1;
        double* prow = &a_[r * w];
        const double inv = 1.0 / prow[q];
        for (std::size_t j = 0; j < w; ++j) prow[j] *= inv;
        prow[q] = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            double* row = &a_[i * w];
            const double f = row[q];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < w; ++j) row[j] -= f * prow[j];
            row[q] = 0.0;
        }
    }

    std::size_t m_;
    std::size_t n_;
    std::vector<double> a_;
    std::vector<std::size_t> basis_;
    std::vector<double> costs_;
    std::vector<double> reduced_;
    std::vector<double> original_;
};

enum class PhaseResult { optimal, unbounded, failure };

// Entering column: largest reduced cost, or the lowest improving index (Bland)
// while the objective has stalled on degenerate pivots. Leaving row: Harris
// two-pass test preferring the largest pivot; strict Bland ties in stall mode.
// Bland mode persists until a strictly improving pivot, so cycles cannot form.
PhaseResult run_phase(Tableau& t, const std::vector<bool>& may_enter, const Tolerances& tol, std::size_t& iterations,
                      std::size_t max_iterations) {
    const double opt_tol = tol.feasibility;
    const double harris = tol.feasibility;
    const std::size_t stall_limit = 20 + t.rows() / 4;
    std::size_t stalled = 0;
    std::size_t since_refactor = 0;
    bool fresh = false;
    while (true) {
        if (since_refactor >= 64) {
            if (!t.refactor()) return PhaseResult::failure;
            since_refactor = 0;
            fresh = true;
        }
        const bool bland = stalled >= stall_limit;
        const auto& d = t.reduced();
        std::vector<bool> basic(t.cols(), false);
        for (std::size_t b : t.basis()) basic[b] = true;
        std::size_t q = t.cols();
        double best_d = opt_tol;
        for (std::size_t j = 0; j < t.cols(); ++j) {
            if (!may_enter[j] || basic[j] || d[j] <= opt_tol) continue;
            if (bland) {
                q = j;
                break;
            }
            if (d[j] > best_d) {
                best_d = d[j];
                q = j;
            }
        }
        if (q == t.cols()) {
            if (fresh) return PhaseResult::optimal;
            since_refactor = 64;
            continue;
        }
        if (iterations >= max_iterations) return PhaseResult::failure;

        std::size_t r = t.rows();
        double max_entry = 0.0;
        for (std::size_t i = 0; i < t.rows(); ++i) max_entry = std::max(max_entry, t.at(i, q));
        const double piv_tol = std::max(tol.pivot, 1e-9 * max_entry);
        if (bland) {
            double best = std::numeric_limits<double>::infinity();
            double tied_max = 0.0;
            for (std::size_t i = 0; i < t.rows(); ++i) {
                const double a = t.at(i, q);
                if (a <= piv_tol) continue;
                const double ratio = std::max(t.rhs(i), 0.0) / a;
                if (ratio < best) {
                    best = ratio;
                    tied_max = a;
                } else if (ratio == best) {
                    tied_max = std::max(tied_max, a);
                }
            }
            for (std::size_t i = 0; i < t.rows(); ++i) {
                const double a = t.at(i, q);
                if (a < 1e-3 * tied_max || a <= piv_tol) continue;
                if (std::max(t.rhs(i), 0.0) / a != best) continue;
                if (r == t.rows() || t.basis()[i] < t.basis()[r]) r = i;
            }
        } else {
            double bound = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < t.rows(); ++i) {
                const double a = t.at(i, q);
                if (a <= piv_tol) continue;
                bound = std::min(bound, (std::max(t.rhs(i), 0.0) + harris) / a);
            }
            double best_a = 0.0;
            for (std::size_t i = 0; i < t.rows(); ++i) {
                const double a = t.at(i, q);
                if (a <= piv_tol) continue;
                if (std::max(t.rhs(i), 0.0) / a <= bound && a > best_a) {
                    best_a = a;
                    r = i;
                }
            }
        }
        if (r == t.rows()) return max_entry > 0.0 ? PhaseResult::failure : PhaseResult::unbounded;
        const double step = std::max(t.rhs(r), 0.0) / t.at(r, q);
        const bool improving = step * d[q] > 1e-14;
        t.pivot(r, q);
        ++iterations;
        ++since_refactor;
        fresh = false;
        stalled = improving ? 0 : stalled + 1;
    }
}

}  // namespace

LpSolution solve(const LinearProgram& lp, const Tolerances& tol) {
    lp.validate();
    const std::size_t n = lp.n_vars;
    const double sense_sign = lp.sense == Sense::maximize ? 1.0 : -1.0;

    LpSolution out;

    // Row equilibration; all-zero rows are checked directly and dropped.
    std::vector<std::size_t> kept;
    std::vector<double> row_scale(lp.rows.size(), 1.0);
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        const Row& row = lp.rows[i];
        double mx = 0.0;
        for (double a : row.coeffs) mx = std::max(mx, std::abs(a));
        if (mx == 0.0) {
            const double b = row.rhs;
            const double eps = tol.feasibility;
            const bool ok = (row.relation == Relation::less_equal && 0.0 <= b + eps) ||
                            (row.relation == Relation::greater_equal && 0.0 >= b - eps) ||
                            (row.relation == Relation::equal && std::abs(b) <= eps);
            if (!ok) {
                out.status = Status::infeasible;
                return out;
            }
            continue;
        }
        row_scale[i] = 1.0 / mx;
        kept.push_back(i);
    }

    // A few geometric-mean passes, then exact row/column equilibration.
    std::vector<double> col_scale(n, 1.0);
    auto scaled = [&](std::size_t i, std::size_t j) { return std::abs(lp.rows[i].coeffs[j]) * row_scale[i] * col_scale[j]; };
    for (int pass = 0; pass < 6; ++pass) {
        for (std::size_t i : kept) {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double a = scaled(i, j);
                if (a == 0.0) continue;
                lo = std::min(lo, a);
                hi = std::max(hi, a);
            }
            row_scale[i] /= std::sqrt(lo * hi);
        }
        for (std::size_t j = 0; j < n; ++j) {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (std::size_t i : kept) {
                const double a = scaled(i, j);
                if (a == 0.0) continue;
                lo = std::min(lo, a);
                hi = std::max(hi, a);
            }
            if (hi > 0.0) col_scale[j] /= std::sqrt(lo * hi);
        }
    }
    for (std::size_t i : kept) {
        double hi = 0.0;
        for (std::size_t j = 0; j < n; ++j) hi = std::max(hi, scaled(i, j));
        row_scale[i] /= hi;
    }

    std::vector<double> c(n);
    double cmax = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        c[j] = sense_sign * lp.objective[j] * col_scale[j];
        cmax = std::max(cmax, std::abs(c[j]));
    }
    const double obj_scale = cmax > 0.0 ? 1.0 / cmax : 1.0;
    for (double& cj : c) cj *= obj_scale;

    // Standard form bookkeeping.
    const std::size_t m = kept.size();
    std::vector<double> flip(m, 1.0);
    std::vector<Relation> rel(m);
    std::size_t n_slack = 0, n_art = 0;
    for (std::size_t k = 0; k < m; ++k) {
        const Row& row = lp.rows[kept[k]];
        Relation r = row.relation;
        if (row.rhs * row_scale[kept[k]] < 0.0) {
            flip[k] = -1.0;
            if (r == Relation::less_equal) r = Relation::greater_equal;
            else if (r == Relation::greater_equal) r = Relation::less_equal;
        }
        rel[k] = r;
        if (r != Relation::equal) ++n_slack;
        if (r != Relation::less_equal) ++n_art;
    }
    const std::size_t n_cols = n + n_slack + n_art;
    Tableau t(m, n_cols);
    std::vector<ColumnKind> kind(n_cols, ColumnKind::structural);
    std::vector<std::size_t> dual_col(m);
    std::vector<double> dual_col_sign(m);
    {
        std::size_t s = n, a = n + n_slack;
        for (std::size_t k = 0; k < m; ++k) {
            const Row& row = lp.rows[kept[k]];
            const double f = flip[k] * row_scale[kept[k]];
            for (std::size_t j = 0; j < n; ++j) t.at(k, j) = f * row.coeffs[j] * col_scale[j];
            t.rhs(k) = f * row.rhs;
            if (rel[k] == Relation::less_equal) {
                t.at(k, s) = 1.0;
                kind[s] = ColumnKind::slack;
                t.basis()[k] = s;
                dual_col[k] = s;
                dual_col_sign[k] = -1.0;
                ++s;
            } else {
                if (rel[k] == Relation::greater_equal) {
                    t.at(k, s) = -1.0;
                    kind[s] = ColumnKind::slack;
                    dual_col[k] = s;
                    dual_col_sign[k] = 1.0;
                    ++s;
                } else {
                    dual_col[k] = a;
                    dual_col_sign[k] = -1.0;
                }
                t.at(k, a) = 1.0;
                kind[a] = ColumnKind::artificial;
                t.basis()[k] = a;
                ++a;
            }
        }
    }

    t.snapshot();
    const std::size_t max_iter = tol.max_iterations ? tol.max_iterations : 50 * (m + n_cols) + 1000;
    std::size_t iterations = 0;

    if (n_art > 0) {
        std::vector<double> phase1(n_cols, 0.0);
        for (std::size_t j = 0; j < n_cols; ++j)
            if (kind[j] == ColumnKind::artificial) phase1[j] = -1.0;
        t.set_costs(phase1);
        std::vector<bool> may_enter(n_cols, true);
        const PhaseResult res = run_phase(t, may_enter, tol, iterations, max_iter);
        out.iterations = iterations;
        if (res != PhaseResult::optimal) {
            out.status = Status::solver_failure;
            return out;
        }
        double bmax = 0.0;
        for (std::size_t k = 0; k < m; ++k) bmax = std::max(bmax, std::abs(t.rhs(k)));
        if (t.objective() < -tol.feasibility * (1.0 + bmax)) {
            out.status = Status::infeasible;
            return out;
        }
        // Drive zero-level artificials out of the basis where possible.
        for (std::size_t k = 0; k < m; ++k) {
            if (kind[t.basis()[k]] != ColumnKind::artificial) continue;
            std::size_t q = n_cols, best_q = n_cols;
            double best = 0.0;
            for (std::size_t j = 0; j < n_cols; ++j) {
                if (kind[j] == ColumnKind::artificial) continue;
                const double a = std::abs(t.at(k, j));
                if (a > best) {
                    best = a;
                    best_q = j;
                }
            }
            if (best > tol.pivot) q = best_q;
            if (q < n_cols) t.pivot(k, q);
        }
    }

    std::vector<double> phase2(n_cols, 0.0);
    for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
    t.set_costs(phase2);
    std::vector<bool> may_enter(n_cols, true);
    for (std::size_t j = 0; j < n_cols; ++j)
        if (kind[j] == ColumnKind::artificial) may_enter[j] = false;
    const PhaseResult res = run_phase(t, may_enter, tol, iterations, max_iter);
    out.iterations = iterations;
    if (res == PhaseResult::unbounded) {
        out.status = Status::unbounded;
        return out;
    }
    if (res == PhaseResult::failure) {
        out.status = Status::solver_failure;
        return out;
    }

    std::vector<double> xs(n_cols, 0.0);
    for (std::size_t k = 0; k < m; ++k) xs[t.basis()[k]] = t.rhs(k);
    out.x.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) out.x[j] = std::max(xs[j], 0.0) * col_scale[j];
    // Residual check in the equilibrated system the simplex worked in.
    double xs_max = 1.0;
    for (std::size_t j = 0; j < n; ++j) xs_max = std::max(xs_max, std::abs(xs[j]));
    double worst = 0.0;
    for (std::size_t i : kept) {
        const Row& row = lp.rows[i];
        double ax = 0.0;
        for (std::size_t j = 0; j < n; ++j) ax += row.coeffs[j] * out.x[j];
        double v = 0.0;
        switch (row.relation) {
            case Relation::less_equal: v = ax - row.rhs; break;
            case Relation::greater_equal: v = row.rhs - ax; break;
            case Relation::equal: v = std::abs(ax - row.rhs); break;
        }
        worst = std::max(worst, v * row_scale[i]);
    }
    if (worst > 1e3 * tol.feasibility * xs_max) {
        out.status = Status::solver_failure;
        out.x.clear();
        return out;
    }
    out.objective_value = objective_at(lp, out.x);

    out.duals.assign(lp.rows.size(), 0.0);
    const auto& d = t.reduced();
    for (std::size_t k = 0; k < m; ++k) {
        const double y_scaled = dual_col_sign[k] * d[dual_col[k]];
        out.duals[kept[k]] = sense_sign * y_scaled * row_scale[kept[k]] * flip[k] / obj_scale;
    }
    out.status = Status::optimal;
    return out;
}

double objective_at(const LinearProgram& lp, std::span<const double> x) {
    double z = 0.0;
    for (std::size_t j = 0; j < lp.n_vars; ++j) z += lp.objective[j] * x[j];
    return z;
}

double max_violation(const LinearProgram& lp, std::span<const double> x) {
    if (x.size() != lp.n_vars) throw ParameterError("point dimension does not match LP");
    double worst = 0.0;
    for (double xj : x) worst = std::max(worst, -xj);
    for (const Row& row : lp.rows) {
        double ax = 0.0, mag = 0.0;
        for (std::size_t j = 0; j < lp.n_vars; ++j) {
            ax += row.coeffs[j] * x[j];
            mag += std::abs(row.coeffs[j] * x[j]);
        }
        double v = 0.0;
        switch (row.relation) {
            case Relation::less_equal: v = ax - row.rhs; break;
            case Relation::greater_equal: v = row.rhs - ax; break;
            case Relation::equal: v = std::abs(ax - row.rhs); break;
        }
        worst = std::max(worst, v / (1.0 + std::abs(row.rhs) + mag));
    }
    return worst;
}

std::string to_text(const LinearProgram& lp) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << (lp.sense == Sense::maximize ? "max " : "min ") << lp.n_vars << '\n';
    os << "obj";
    for (double c : lp.objective) os << ' ' << c;
    os << '\n';
    for (const Row& row : lp.rows) {
        os << "row";
        for (double a : row.coeffs) os << ' ' << a;
        switch (row.relation) {
            case Relation::less_equal: os << " <= "; break;
            case Relation::equal: os << " = "; break;
            case Relation::greater_equal: os << " >= "; break;
        }
        os << row.rhs << '\n';
    }
    return os.str();
}

LinearProgram from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string word;
    std::size_t n = 0;
    if (!(in >> word >> n) || (word != "max" && word != "min")) throw ParameterError("LP text: bad header");
    LinearProgram lp(n, word == "max" ? Sense::maximize : Sense::minimize);
    if (!(in >> word) || word != "obj") throw ParameterError("LP text: missing objective line");
    for (std::size_t j = 0; j < n; ++j)
        if (!(in >> lp.objective[j])) throw ParameterError("LP text: short objective line");
    while (in >> word) {
        if (word != "row") throw ParameterError("LP text: expected 'row'");
        std::vector<double> coeffs(n);
        for (std::size_t j = 0; j < n; ++j)
            if (!(in >> coeffs[j])) throw ParameterError("LP text: short row");
        std::string op;
        double rhs = 0.0;
        if (!(in >> op >> rhs)) throw ParameterError("LP text: row missing relation or rhs");
        Relation r;
        if (op == "<=") r = Relation::less_equal;
        else if (op == ">=") r = Relation::greater_equal;
        else if (op == "=") r = Relation::equal;
        else throw ParameterError("LP text: unknown relation '" + op + "'");
        lp.add_row(std::move(coeffs), r, rhs);
    }
    return lp;
}

}  // namespace edgeoff::lp
