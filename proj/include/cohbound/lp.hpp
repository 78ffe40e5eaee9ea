#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohbound/errors.hpp"

namespace cohbound::lp {

inline constexpr double kFree = -std::numeric_limits<double>::infinity();
inline constexpr std::size_t kMaxVariables = 200;
inline constexpr std::size_t kMaxRows = 1000;

struct Row {
    std::vector<double> coefficients;
    double rhs = 0;
};

/// minimize objective . x
/// subject to  equalities:   a . x == rhs
///             inequalities: a . x <= rhs
///             x_j >= lower_bounds[j]  (kFree for an unbounded variable;
///                                      an empty vector means all zero)
struct LinearProgram {
    std::vector<double> objective;
    std::vector<Row> equalities;
    std::vector<Row> inequalities;
    std::vector<double> lower_bounds;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char *to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal:
            return "optimal";
        case LpStatus::Infeasible:
            return "infeasible";
        case LpStatus::Unbounded:
            return "unbounded";
    }
    return "?";
}

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> solution;
    double objective = 0;
};

namespace detail {

inline constexpr double kPivotTol = 1e-9;
inline constexpr double kFeasibilityTol = 1e-8;
inline constexpr std::size_t kMaxPivots = 200000;

/// Dense simplex tableau with an explicit reduced-cost row.
class Tableau {
   public:
    Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), w_(cols + 1), a_(rows * (cols + 1)), z_(cols + 1), basis_(rows) {
    }

    double &at(std::size_t r, std::size_t c) {
        return a_[r * w_ + c];
    }
    double at(std::size_t r, std::size_t c) const {
        return a_[r * w_ + c];
    }
    double &rhs(std::size_t r) {
        return a_[r * w_ + n_];
    }
    double &cost(std::size_t c) {
        return z_[c];
    }
    double &cost_rhs() {
        return z_[n_];
    }
    std::size_t &basis(std::size_t r) {
        return basis_[r];
    }
    std::size_t rows() const {
        return m_;
    }
    std::size_t cols() const {
        return n_;
    }

    void pivot(std::size_t r, std::size_t c) {
        double *pr = &a_[r * w_];
        double inv = 1.0 / pr[c];
        for (std::size_t j = 0; j < w_; j++) {
            pr[j] *= inv;
        }
        pr[c] = 1.0;
        for (std::size_t i = 0; i < m_; i++) {
            if (i == r) {
                continue;
            }
            double *pi = &a_[i * w_];
            double f = pi[c];
            if (f == 0) {
                continue;
            }
            for (std::size_t j = 0; j < w_; j++) {
                pi[j] -= f * pr[j];
            }
            pi[c] = 0.0;
            if (pi[n_] < 0 && pi[n_] > -1e-12) {
                pi[n_] = 0.0;
            }
        }
        double f = z_[c];
        if (f != 0) {
            for (std::size_t j = 0; j < w_; j++) {
                z_[j] -= f * pr[j];
            }
            z_[c] = 0.0;
        }
        basis_[r] = c;
    }

    /// Runs Bland's-rule primal simplex over columns [0, allowed_cols).
    /// Returns false if the objective is unbounded below.
    bool optimize(std::size_t allowed_cols) {
        for (std::size_t iter = 0; iter < kMaxPivots; iter++) {
            std::size_t enter = allowed_cols;
            for (std::size_t j = 0; j < allowed_cols; j++) {
                if (z_[j] < -kPivotTol) {
                    enter = j;
                    break;
                }
            }
            if (enter == allowed_cols) {
                return true;
            }
            std::size_t leave = m_;
            double best = 0;
            for (std::size_t i = 0; i < m_; i++) {
                double coef = at(i, enter);
                if (coef <= kPivotTol) {
                    continue;
                }
                double ratio = std::max(0.0, at(i, n_)) / coef;
                if (leave == m_ || ratio < best - 1e-12) {
                    best = ratio;
                    leave = i;
                } else if (ratio <= best + 1e-12 && basis_[i] < basis_[leave]) {
                    leave = i;
                }
            }
            if (leave == m_) {
                return false;
            }
            pivot(leave, enter);
        }
        throw SolverError("simplex: pivot limit exceeded");
    }

   private:
    std::size_t m_, n_, w_;
    std::vector<double> a_;
    std::vector<double> z_;
    std::vector<std::size_t> basis_;
};

inline void check_row(const Row &row, std::size_t n, const char *what) {
    if (row.coefficients.size() != n) {
        throw std::invalid_argument(std::string("lp::solve: ") + what + " row length differs from variable count");
    }
    for (double a : row.coefficients) {
        if (!std::isfinite(a)) {
            throw std::invalid_argument("lp::solve: non-finite coefficient");
        }
    }
    if (!std::isfinite(row.rhs)) {
        throw std::invalid_argument("lp::solve: non-finite right-hand side");
    }
}

}  // namespace detail

/// Two-phase primal simplex on a dense standard-form tableau.
///
/// Variables with a finite lower bound are shifted to start at zero; free
/// variables are split into a positive and a negative part. Each inequality
/// gets a slack column, and rows whose slack cannot start basic get an
/// artificial. Artificials that stay basic at zero after phase 1 (redundant
/// equality rows) are left in place and barred from re-entering.
inline LpOutcome solve(const LinearProgram &prog) {
    const std::size_t n = prog.objective.size();
    if (n == 0) {
        throw std::invalid_argument("lp::solve: no variables");
    }
    if (n > kMaxVariables || prog.equalities.size() + prog.inequalities.size() > kMaxRows) {
        throw std::invalid_argument("lp::solve: problem exceeds size limits");
    }
    for (double c : prog.objective) {
        if (!std::isfinite(c)) {
            throw std::invalid_argument("lp::solve: non-finite objective");
        }
    }
    std::vector<double> lower = prog.lower_bounds.empty() ? std::vector<double>(n, 0.0) : prog.lower_bounds;
    if (lower.size() != n) {
        throw std::invalid_argument("lp::solve: lower bound count differs from variable count");
    }
    for (const auto &r : prog.equalities) {
        detail::check_row(r, n, "equality");
    }
    for (const auto &r : prog.inequalities) {
        detail::check_row(r, n, "inequality");
    }

    // Column layout: structural (shifted / split), then slacks, then artificials.
    std::vector<std::size_t> pos_col(n);
    std::vector<std::ptrdiff_t> neg_col(n, -1);
    std::vector<double> shift(n, 0.0);
    std::size_t ns = 0;
    for (std::size_t j = 0; j < n; j++) {
        pos_col[j] = ns++;
        if (std::isinf(lower[j]) && lower[j] < 0) {
            neg_col[j] = static_cast<std::ptrdiff_t>(ns++);
        } else if (!std::isfinite(lower[j])) {
            throw std::invalid_argument("lp::solve: invalid lower bound");
        } else {
            shift[j] = lower[j];
        }
    }
    const std::size_t neq = prog.equalities.size();
    const std::size_t nineq = prog.inequalities.size();
    const std::size_t m = neq + nineq;
    const std::size_t slack_start = ns;
    const std::size_t art_start = ns + nineq;

    struct Staged {
        std::vector<double> coef;  // structural part
        double rhs;
        double slack_sign;  // 0 for equality rows
        bool needs_artificial;
    };
    std::vector<Staged> staged;
    staged.reserve(m);
    auto stage = [&](const Row &row, bool is_ineq) {
        Staged s{std::vector<double>(ns, 0.0), row.rhs, is_ineq ? 1.0 : 0.0, !is_ineq};
        for (std::size_t j = 0; j < n; j++) {
            double a = row.coefficients[j];
            s.coef[pos_col[j]] = a;
            if (neg_col[j] >= 0) {
                s.coef[static_cast<std::size_t>(neg_col[j])] = -a;
            }
            s.rhs -= a * shift[j];
        }
        if (s.rhs < 0) {
            for (auto &a : s.coef) {
                a = -a;
            }
            s.rhs = -s.rhs;
            s.slack_sign = -s.slack_sign;
            s.needs_artificial = true;
        }
        staged.push_back(std::move(s));
    };
    for (const auto &r : prog.equalities) {
        stage(r, false);
    }
    for (const auto &r : prog.inequalities) {
        stage(r, true);
    }
    std::size_t nart = 0;
    for (const auto &s : staged) {
        nart += s.needs_artificial;
    }

    detail::Tableau t(m, art_start + nart);
    std::size_t next_art = art_start;
    for (std::size_t i = 0; i < m; i++) {
        const auto &s = staged[i];
        for (std::size_t j = 0; j < ns; j++) {
            t.at(i, j) = s.coef[j];
        }
        if (i >= neq) {
            t.at(i, slack_start + (i - neq)) = s.slack_sign;
        }
        t.rhs(i) = s.rhs;
        if (s.needs_artificial) {
            t.at(i, next_art) = 1.0;
            t.basis(i) = next_art++;
        } else {
            t.basis(i) = slack_start + (i - neq);
        }
    }

    if (nart > 0) {
        // Phase 1: minimize the sum of artificials.
        for (std::size_t i = 0; i < m; i++) {
            if (t.basis(i) >= art_start) {
                for (std::size_t j = 0; j < art_start; j++) {
                    t.cost(j) -= t.at(i, j);
                }
                t.cost_rhs() -= t.rhs(i);
            }
        }
        t.optimize(art_start + nart);
        if (-t.cost_rhs() > detail::kFeasibilityTol) {
            return {LpStatus::Infeasible, {}, 0};
        }
        for (std::size_t i = 0; i < m; i++) {
            if (t.basis(i) < art_start) {
                continue;
            }
            for (std::size_t j = 0; j < art_start; j++) {
                if (std::abs(t.at(i, j)) > detail::kPivotTol) {
                    t.pivot(i, j);
                    break;
                }
            }
        }
    }

    // Phase 2 with the true objective.
    t.cost_rhs() = 0;
    std::vector<double> col_cost(t.cols(), 0.0);
    for (std::size_t j = 0; j < n; j++) {
        col_cost[pos_col[j]] = prog.objective[j];
        if (neg_col[j] >= 0) {
            col_cost[static_cast<std::size_t>(neg_col[j])] = -prog.objective[j];
        }
    }
    for (std::size_t j = 0; j < t.cols(); j++) {
        t.cost(j) = col_cost[j];
    }
    for (std::size_t i = 0; i < m; i++) {
        double cb = col_cost[t.basis(i)];
        if (cb == 0) {
            continue;
        }
        for (std::size_t j = 0; j < t.cols(); j++) {
            t.cost(j) -= cb * t.at(i, j);
        }
        t.cost_rhs() -= cb * t.rhs(i);
    }
    if (!t.optimize(art_start)) {
        return {LpStatus::Unbounded, {}, 0};
    }

    std::vector<double> y(t.cols(), 0.0);
    for (std::size_t i = 0; i < m; i++) {
        y[t.basis(i)] = std::max(0.0, t.rhs(i));
    }
    LpOutcome out;
    out.status = LpStatus::Optimal;
    out.solution.resize(n);
    for (std::size_t j = 0; j < n; j++) {
        double v = shift[j] + y[pos_col[j]];
        if (neg_col[j] >= 0) {
            v -= y[static_cast<std::size_t>(neg_col[j])];
        }
        out.solution[j] = v;
        out.objective += prog.objective[j] * v;
    }
    return out;
}

}  // namespace cohbound::lp
