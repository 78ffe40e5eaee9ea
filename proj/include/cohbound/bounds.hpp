#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohbound/majorization.hpp"
#include "cohbound/qsim.hpp"
#include "cohbound/stabilizer.hpp"

namespace cohbound {

/// Measured expectation of stabilizer element `subset` with its standard error.
struct MeasurementRecord {
    std::size_t subset = 0;
    double mean = 0;
    double sigma = 0;
    std::uint64_t shots = 0;

    static MeasurementRecord make(std::size_t subset, double mean, double sigma, std::uint64_t shots) {
        if (subset == 0) {
            return {0, 1.0, 0.0, shots};
        }
        if (!(sigma >= 0)) {
            throw std::invalid_argument("MeasurementRecord: sigma must be nonnegative");
        }
        return {subset, std::clamp(mean, -1.0, 1.0), sigma, shots};
    }
};

enum class InvalidReason { None, NoSolution, NonPositive };

inline const char *to_string(InvalidReason r) {
    switch (r) {
        case InvalidReason::None:
            return "";
        case InvalidReason::NoSolution:
            return "no_solution";
        case InvalidReason::NonPositive:
            return "non_positive";
    }
    return "?";
}

/// l_c together with its validity. `value` is the raw entropy difference
/// (possibly <= 0) whenever the constraint set is feasible, NaN otherwise.
struct LowerBound {
    InvalidReason reason = InvalidReason::NoSolution;
    double value = std::numeric_limits<double>::quiet_NaN();

    bool valid() const {
        return reason == InvalidReason::None;
    }
    bool feasible() const {
        return reason != InvalidReason::NoSolution;
    }
};

/// One row per record: B[T] . p within [mean - w sigma, mean + w sigma], clipped to [-1, 1].
/// The identity record, if present, is absorbed by the implicit normalization row.
inline ConstraintSet build_constraints(const std::vector<MeasurementRecord> &records, double w, const EigenvalueMatrix &b) {
    if (records.empty()) {
        throw std::invalid_argument("build_constraints: no records");
    }
    if (!(w >= 0)) {
        throw std::invalid_argument("build_constraints: w must be nonnegative");
    }
    ConstraintSet cs(b.dim());
    std::set<std::size_t> seen;
    for (const auto &r : records) {
        if (r.subset >= b.dim()) {
            throw std::invalid_argument("build_constraints: subset index out of range");
        }
        if (!seen.insert(r.subset).second) {
            throw std::invalid_argument("build_constraints: duplicate subset " + std::to_string(r.subset));
        }
        if (r.subset == 0) {
            continue;
        }
        double lo = std::clamp(r.mean - w * r.sigma, -1.0, 1.0);
        double hi = std::clamp(r.mean + w * r.sigma, -1.0, 1.0);
        cs.add_row(b.row(r.subset), lo, hi);
    }
    return cs;
}

inline constexpr double kPositiveThreshold = 1e-12;

/// l_c = H(d) - H(d v meet(X)).
inline LowerBound lower_bound(const ProbVector &d, const ConstraintSet &cs) {
    if (d.dim() != cs.dim()) {
        throw std::invalid_argument("lower_bound: dimension mismatch");
    }
    auto q = meet_over_polytope(cs);
    if (!q) {
        return {InvalidReason::NoSolution, std::numeric_limits<double>::quiet_NaN()};
    }
    double value = shannon_entropy(d) - shannon_entropy(join_pair(d, *q));
    return {value > kPositiveThreshold ? InvalidReason::None : InvalidReason::NonPositive, value};
}

/// Coherence of sum_i sqrt(d_i)|i>, which is H(d).
inline double upper_bound(const ProbVector &d) {
    return shannon_entropy(d);
}

/// Bootstrap standard deviation of H over multinomial resamples of `counts`.
inline double uncertainty_u_c(const std::vector<std::uint64_t> &counts, std::size_t resamples, Rng &rng) {
    if (resamples < 100) {
        throw std::invalid_argument("uncertainty_u_c: need at least 100 resamples");
    }
    std::uint64_t shots = 0;
    for (auto c : counts) {
        shots += c;
    }
    if (shots == 0) {
        throw std::invalid_argument("uncertainty_u_c: no shots");
    }
    std::vector<double> probs(counts.size());
    for (std::size_t i = 0; i < counts.size(); i++) {
        probs[i] = double(counts[i]) / double(shots);
    }
    double sum = 0;
    double sum_sq = 0;
    for (std::size_t r = 0; r < resamples; r++) {
        auto resampled = sample_multinomial(probs, shots, rng);
        double h = 0;
        for (auto c : resampled) {
            h += entropy_term(double(c) / double(shots));
        }
        sum += h;
        sum_sq += h * h;
    }
    double n = double(resamples);
    double var = (sum_sq - sum * sum / n) / (n - 1);
    return std::sqrt(std::max(0.0, var));
}

/// (C_RE - l_c) / C_RE
inline double normalized_distance(double c_re, double l_c) {
    if (!(c_re > 0)) {
        throw std::invalid_argument("normalized_distance: C_RE must be positive");
    }
    return (c_re - l_c) / c_re;
}

/// Everything known about one lower/upper bound evaluation.
struct BoundReport {
    std::string state;
    std::size_t n = 0;
    std::string noise = "none";
    double noise_param = 0;
    std::uint64_t shots = 0;  // 0 in exact mode
    double w = 0;
    std::size_t m = 0;
    std::uint64_t subset_mask = 0;  // bit T set when element T constrains X
    LowerBound l_c;
    double u_c = 0;
    double u_c_sigma = 0;
    std::optional<double> c_re_exact;
    std::optional<double> distance;
    double fidelity = 0;
    std::uint64_t seed = 0;
    double elapsed_seconds = 0;
};

}  // namespace cohbound
