#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohbound/errors.hpp"
#include "cohbound/lp.hpp"
#include "cohbound/qsim.hpp"

namespace cohbound {

/// Partial sums s_1..s_dim of a distribution sorted in descending order (s_0 = 0 implied).
struct CumulativeCurve {
    std::vector<double> s;

    std::size_t dim() const {
        return s.size();
    }
    double at(std::size_t k) const {
        return k == 0 ? 0.0 : s[k - 1];
    }
};

inline CumulativeCurve cumulative_curve(const ProbVector &p) {
    auto sorted = p.sorted_descending();
    CumulativeCurve c;
    c.s.resize(p.dim());
    double acc = 0;
    for (std::size_t i = 0; i < p.dim(); i++) {
        acc += sorted[i];
        c.s[i] = acc;
    }
    return c;
}

/// Successive differences of a concave curve, returned in descending order.
inline ProbVector distribution_from_curve(const CumulativeCurve &curve) {
    std::vector<double> w(curve.dim());
    for (std::size_t k = 1; k <= curve.dim(); k++) {
        w[k - 1] = std::max(0.0, curve.at(k) - curve.at(k - 1));
    }
    double total = 0;
    for (double x : w) {
        total += x;
    }
    for (double &x : w) {
        x /= total;
    }
    return ProbVector(std::move(w)).sorted_descending();
}

/// a majorizes b (a is "peakier"): every sorted prefix sum of a is >= that of b, within 1e-9.
inline bool majorizes(const ProbVector &a, const ProbVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("majorizes: dimension mismatch");
    }
    auto ca = cumulative_curve(a);
    auto cb = cumulative_curve(b);
    for (std::size_t k = 0; k < ca.dim(); k++) {
        if (ca.s[k] < cb.s[k] - 1e-9) {
            return false;
        }
    }
    return true;
}

/// Upper concave envelope of (0,0), (1,s_1), ..., (dim,s_dim), by an upper-hull scan.
inline CumulativeCurve flatten(const std::vector<double> &raw) {
    if (raw.empty()) {
        throw std::invalid_argument("flatten: empty curve");
    }
    for (std::size_t k = 0; k < raw.size(); k++) {
        double prev = k == 0 ? 0.0 : raw[k - 1];
        if (raw[k] < prev - 1e-9) {
            throw std::invalid_argument("flatten: curve is not nondecreasing");
        }
    }
    if (std::abs(raw.back() - 1) > 1e-9) {
        throw std::invalid_argument("flatten: curve does not end at 1");
    }

    std::vector<std::size_t> hull;  // x coordinates; y = value(x)
    auto value = [&](std::size_t x) { return x == 0 ? 0.0 : raw[x - 1]; };
    for (std::size_t x = 0; x <= raw.size(); x++) {
        while (hull.size() >= 2) {
            std::size_t o = hull[hull.size() - 2];
            std::size_t a = hull.back();
            double cross = double(a - o) * (value(x) - value(o)) - (value(a) - value(o)) * double(x - o);
            if (cross >= 0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(x);
    }

    CumulativeCurve out;
    out.s.resize(raw.size());
    std::size_t seg = 0;
    for (std::size_t x = 1; x <= raw.size(); x++) {
        while (hull[seg + 1] < x) {
            seg++;
        }
        std::size_t x0 = hull[seg];
        std::size_t x1 = hull[seg + 1];
        double t = double(x - x0) / double(x1 - x0);
        out.s[x - 1] = value(x0) + t * (value(x1) - value(x0));
    }
    return out;
}

/// Greatest lower bound: the pointwise minimum of the two cumulative curves.
inline ProbVector meet_pair(const ProbVector &a, const ProbVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("meet_pair: dimension mismatch");
    }
    auto ca = cumulative_curve(a);
    auto cb = cumulative_curve(b);
    CumulativeCurve c;
    c.s.resize(a.dim());
    for (std::size_t k = 0; k < a.dim(); k++) {
        c.s[k] = std::min(ca.s[k], cb.s[k]);
    }
    return distribution_from_curve(c);
}

/// Least upper bound: the flattened pointwise maximum of the two cumulative curves.
inline ProbVector join_pair(const ProbVector &a, const ProbVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("join_pair: dimension mismatch");
    }
    auto ca = cumulative_curve(a);
    auto cb = cumulative_curve(b);
    std::vector<double> raw(a.dim());
    for (std::size_t k = 0; k < a.dim(); k++) {
        raw[k] = std::max(ca.s[k], cb.s[k]);
    }
    raw.back() = 1.0;
    return distribution_from_curve(flatten(raw));
}

struct ConstraintRow {
    std::vector<double> coefficients;
    double lower = 0;
    double upper = 0;
};

/// X = { p >= 0, sum p = 1, lower_r <= c_r . p <= upper_r for every row r }.
/// The nonnegativity and normalization constraints are implicit.
class ConstraintSet {
   public:
    explicit ConstraintSet(std::size_t dim) : dim_(dim) {
        if (dim < 1) {
            throw std::invalid_argument("ConstraintSet: dimension must be positive");
        }
    }

    void add_row(std::vector<double> coefficients, double lower, double upper) {
        if (coefficients.size() != dim_) {
            throw std::invalid_argument("ConstraintSet: row length differs from dimension");
        }
        if (!(lower <= upper)) {
            throw std::invalid_argument("ConstraintSet: lower bound exceeds upper bound");
        }
        rows_.push_back({std::move(coefficients), lower, upper});
    }

    std::size_t dim() const {
        return dim_;
    }
    const std::vector<ConstraintRow> &rows() const {
        return rows_;
    }

   private:
    std::size_t dim_;
    std::vector<ConstraintRow> rows_;
};

/// Appends the constraints of X to `prog`, where p occupies variables [0, dim).
/// The caller sets the objective size and the lower bounds of the remaining variables.
inline void add_polytope_constraints(lp::LinearProgram &prog, const ConstraintSet &cs, std::size_t num_vars) {
    const std::size_t dim = cs.dim();
    auto widen = [&](const std::vector<double> &c, double sign) {
        std::vector<double> r(num_vars, 0.0);
        for (std::size_t i = 0; i < dim; i++) {
            r[i] = sign * c[i];
        }
        return r;
    };
    prog.equalities.push_back({widen(std::vector<double>(dim, 1.0), 1), 1.0});
    for (const auto &row : cs.rows()) {
        if (row.upper - row.lower <= 1e-15) {
            prog.equalities.push_back({widen(row.coefficients, 1), 0.5 * (row.lower + row.upper)});
        } else {
            prog.inequalities.push_back({widen(row.coefficients, 1), row.upper});
            prog.inequalities.push_back({widen(row.coefficients, -1), -row.lower});
        }
    }
}

/// min over p in X of (sum of the k largest p_i), as the epigraph program
///   minimize k*theta + sum u_i  s.t.  u_i >= p_i - theta,  u >= 0,  p in X.
/// Variable layout: p_0..p_{dim-1}, theta, u_0..u_{dim-1}.
inline lp::LinearProgram top_k_program(const ConstraintSet &cs, std::size_t k) {
    const std::size_t dim = cs.dim();
    const std::size_t nv = 2 * dim + 1;
    lp::LinearProgram prog;
    prog.objective.assign(nv, 0.0);
    prog.objective[dim] = double(k);
    for (std::size_t i = 0; i < dim; i++) {
        prog.objective[dim + 1 + i] = 1.0;
    }
    prog.lower_bounds.assign(nv, 0.0);
    prog.lower_bounds[dim] = lp::kFree;
    for (std::size_t i = 0; i < dim; i++) {
        std::vector<double> r(nv, 0.0);
        r[i] = 1.0;
        r[dim] = -1.0;
        r[dim + 1 + i] = -1.0;
        prog.inequalities.push_back({std::move(r), 0.0});
    }
    add_polytope_constraints(prog, cs, nv);
    return prog;
}

/// Concavity repair tolerance for LP round-off in the meet curve.
inline constexpr double kMeetRepairTol = 1e-7;

/// Majorization meet of every distribution in X, or nullopt when X is empty.
///
/// Throws SolverError when the LP curve is non-concave beyond kMeetRepairTol.
inline std::optional<ProbVector> meet_over_polytope(const ConstraintSet &cs) {
    const std::size_t dim = cs.dim();
    std::vector<double> s(dim + 1, 0.0);
    for (std::size_t k = 1; k < dim; k++) {
        auto out = lp::solve(top_k_program(cs, k));
        if (out.status == lp::LpStatus::Infeasible) {
            return std::nullopt;
        }
        if (out.status != lp::LpStatus::Optimal) {
            throw SolverError("meet_over_polytope: top-k program is unbounded");
        }
        s[k] = std::clamp(out.objective, 0.0, 1.0);
    }
    if (dim == 1) {
        // X is {(1)} unless a row excludes it; check with a trivial program.
        auto out = lp::solve(top_k_program(cs, 1));
        if (out.status == lp::LpStatus::Infeasible) {
            return std::nullopt;
        }
    }
    s[dim] = 1.0;

    for (std::size_t k = 1; k < dim; k++) {
        double violation = (s[k + 1] - s[k]) - (s[k] - s[k - 1]);
        if (violation > kMeetRepairTol) {
            throw SolverError("meet_over_polytope: concavity violation " + std::to_string(violation) + " at k=" +
                              std::to_string(k));
        }
        if (violation > 0) {
            s[k] = std::max(s[k], 0.5 * (s[k - 1] + s[k + 1]));
        }
    }
    CumulativeCurve curve;
    curve.s.assign(s.begin() + 1, s.end());
    return distribution_from_curve(curve);
}

}  // namespace cohbound
