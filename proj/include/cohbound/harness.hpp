#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cohbound/bounds.hpp"
#include "cohbound/errors.hpp"
#include "cohbound/qsim.hpp"
#include "cohbound/stabilizer.hpp"

namespace cohbound {

// ---------------------------------------------------------------------------
// State registry

struct StateInfo {
    std::string label;
    std::string description;
    PureState ideal;
    StabilizerSet stabilizers;

    std::size_t num_qubits() const {
        return ideal.num_qubits();
    }
};

namespace detail {

inline PureState basis_superposition(std::size_t n, const std::vector<std::pair<std::size_t, double>> &entries) {
    std::vector<cplx> amps(std::size_t{1} << n);
    for (const auto &[index, a] : entries) {
        amps.at(index) = a;
    }
    return PureState::normalized(std::move(amps));
}

inline PureState ghz_state(std::size_t n) {
    std::size_t dim = std::size_t{1} << n;
    return basis_superposition(n, {{0, 1.0}, {dim - 1, 1.0}});
}

inline PureState w_state(std::size_t n) {
    std::vector<std::pair<std::size_t, double>> e;
    for (std::size_t q = 0; q < n; q++) {
        e.emplace_back(std::size_t{1} << q, 1.0);
    }
    return basis_superposition(n, e);
}

/// prod CZ |+>^n: amplitude (-1)^(sum_i x_i x_{i+1}) / 2^(n/2).
inline PureState linear_cluster_state(std::size_t n) {
    std::size_t dim = std::size_t{1} << n;
    std::vector<cplx> amps(dim);
    for (std::size_t x = 0; x < dim; x++) {
        int edges = std::popcount(x & (x >> 1));
        amps[x] = edges % 2 ? -1.0 : 1.0;
    }
    return PureState::normalized(std::move(amps));
}

}  // namespace detail

inline std::vector<std::string> state_labels() {
    return {"ghz3", "ghz4", "c4", "w3", "w4", "bell", "cluster-2", "cluster-3", "cluster-4", "cluster-5", "cluster-6"};
}

inline StateInfo lookup_state(const std::string &label) {
    using detail::basis_superposition;
    if (label == "ghz3") {
        return {label, "(|000> + |111>)/sqrt2", detail::ghz_state(3), ghz_generators(3)};
    }
    if (label == "ghz4") {
        return {label, "(|0000> + |1111>)/sqrt2", detail::ghz_state(4), ghz_generators(4)};
    }
    if (label == "c4") {
        return {label, "(|0000> + |0011> + |1100> - |1111>)/2",
                basis_superposition(4, {{0b0000, 1.0}, {0b0011, 1.0}, {0b1100, 1.0}, {0b1111, -1.0}}),
                cluster_c4_generators()};
    }
    if (label == "w3") {
        return {label, "(|100> + |010> + |001>)/sqrt3", detail::w_state(3), w3_generators()};
    }
    if (label == "w4") {
        return {label, "(|0001> + |0010> + |0100> + |1000>)/2", detail::w_state(4), w4_generators()};
    }
    if (label == "bell") {
        return {label, "(|00> + |11>)/sqrt2", detail::ghz_state(2), ghz_generators(2)};
    }
    if (label.rfind("cluster-", 0) == 0 && label.size() == 9 && label[8] >= '2' && label[8] <= '6') {
        std::size_t n = static_cast<std::size_t>(label[8] - '0');
        return {label, "linear cluster state on " + std::to_string(n) + " qubits", detail::linear_cluster_state(n),
                linear_cluster_generators(n)};
    }
    throw ConfigError("unknown state label '" + label + "'");
}

// ---------------------------------------------------------------------------
// Noise

enum class NoiseKind { None, Depolarizing, Dephasing };

struct NoiseModel {
    NoiseKind kind = NoiseKind::None;
    double param = 0;

    std::string kind_name() const {
        switch (kind) {
            case NoiseKind::None:
                return "none";
            case NoiseKind::Depolarizing:
                return "depolarizing";
            case NoiseKind::Dephasing:
                return "dephasing";
        }
        return "?";
    }

    std::string str() const {
        if (kind == NoiseKind::None) {
            return "none";
        }
        std::ostringstream out;
        out << kind_name() << ":" << param;
        return out.str();
    }

    /// "none", "depolarizing:<lambda>", "dephasing:<gamma>".
    static NoiseModel parse(const std::string &text) {
        if (text == "none" || text.empty()) {
            return {};
        }
        auto colon = text.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("noise must be none, depolarizing:<lambda> or dephasing:<gamma>, got '" + text + "'");
        }
        std::string kind = text.substr(0, colon);
        double param = 0;
        try {
            std::size_t used = 0;
            param = std::stod(text.substr(colon + 1), &used);
            if (used != text.size() - colon - 1) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception &) {
            throw ConfigError("bad noise parameter in '" + text + "'");
        }
        NoiseModel m;
        if (kind == "depolarizing") {
            m.kind = NoiseKind::Depolarizing;
        } else if (kind == "dephasing") {
            m.kind = NoiseKind::Dephasing;
        } else {
            throw ConfigError("unknown noise kind '" + kind + "'");
        }
        if (!(param >= 0 && param <= 1)) {
            throw ConfigError("noise parameter must lie in [0, 1]");
        }
        m.param = param;
        return m;
    }
};

inline DensityMatrix apply_noise(const DensityMatrix &rho, const NoiseModel &noise) {
    switch (noise.kind) {
        case NoiseKind::None:
            return rho;
        case NoiseKind::Depolarizing:
            return apply_depolarizing(rho, noise.param);
        case NoiseKind::Dephasing:
            return apply_dephasing(rho, noise.param);
    }
    return rho;
}

inline DensityMatrix prepare_state(const std::string &label, const NoiseModel &noise) {
    return apply_noise(DensityMatrix::from_pure(lookup_state(label).ideal), noise);
}

/// Bisection on the noise parameter so that the fidelity to `ideal` hits `target` within 1e-4.
inline NoiseModel calibrate_noise(const PureState &ideal, NoiseKind kind, double target_fidelity) {
    if (kind == NoiseKind::None) {
        throw ConfigError("calibrate_noise: pick a noise kind");
    }
    auto rho = DensityMatrix::from_pure(ideal);
    auto fid = [&](double p) { return fidelity(apply_noise(rho, {kind, p}), ideal); };
    double lo = 0;
    double hi = 1;
    if (target_fidelity > fid(lo) + 1e-12 || target_fidelity < fid(hi) - 1e-12) {
        throw ConfigError("calibrate_noise: target fidelity out of reach");
    }
    for (int i = 0; i < 60; i++) {
        double mid = 0.5 * (lo + hi);
        if (fid(mid) > target_fidelity) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    NoiseModel out{kind, 0.5 * (lo + hi)};
    if (std::abs(fid(out.param) - target_fidelity) > 1e-4) {
        throw SolverError("calibrate_noise: bisection did not converge");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Configuration

struct ExperimentConfig {
    std::string state = "ghz3";
    NoiseModel noise;
    std::uint64_t shots = 10000;
    bool exact = false;
    std::vector<double> w_values{3.0};
    std::size_t m_min = 1;
    std::size_t m_max = 0;  // 0 means 2^n - 1
    std::size_t max_subsets = 5000;
    std::size_t subset_samples = 5000;
    std::size_t bootstrap_resamples = 1000;
    std::uint64_t seed = 1;
    std::string output;
    std::string format = "csv";
};

/// Checks field ranges against the state's qubit count; fills m_max when unset.
inline ExperimentConfig validated(ExperimentConfig cfg) {
    auto info = lookup_state(cfg.state);
    std::size_t elements = (std::size_t{1} << info.num_qubits()) - 1;
    if (!cfg.exact && cfg.shots < 2) {
        throw ConfigError("shots must be >= 2 unless exact mode is on");
    }
    if (cfg.w_values.empty()) {
        throw ConfigError("w list must not be empty");
    }
    for (double w : cfg.w_values) {
        if (!(w >= 0) || !std::isfinite(w)) {
            throw ConfigError("w values must be finite and nonnegative");
        }
    }
    if (cfg.m_max == 0) {
        cfg.m_max = elements;
    }
    if (cfg.m_min < 1 || cfg.m_min > cfg.m_max || cfg.m_max > elements) {
        throw ConfigError("m range must satisfy 1 <= m_min <= m_max <= " + std::to_string(elements));
    }
    if (cfg.max_subsets < 1 || cfg.subset_samples < 1) {
        throw ConfigError("subset limits must be positive");
    }
    if (cfg.bootstrap_resamples < 100) {
        throw ConfigError("bootstrap resamples must be >= 100");
    }
    if (cfg.format != "csv" && cfg.format != "json") {
        throw ConfigError("format must be csv or json");
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// Random streams and parallel evaluation

enum class Stream : std::uint32_t { Stabilizers = 1, Basis = 2, Bootstrap = 3, Subsets = 4 };

/// Independent generator for (seed, stream, index); results never depend on scheduling.
inline Rng make_stream(std::uint64_t seed, Stream stream, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

/// Runs fn(i) for i in [0, count) on a small worker pool; rethrows the first failure.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)> &fn) {
    std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; i++) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; t++) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

// ---------------------------------------------------------------------------
// Measurements

/// Samples each listed group element with `shots` shots; the identity record is always first.
/// Element T draws from its own stream (seed, T) so a subset never perturbs another's values.
inline std::vector<MeasurementRecord> measure_stabilizers(const DensityMatrix &rho, const StabilizerSet &set,
                                                          const std::vector<std::size_t> &subsets,
                                                          std::uint64_t shots, std::uint64_t seed) {
    std::vector<MeasurementRecord> out{MeasurementRecord::make(0, 1.0, 0.0, shots)};
    for (std::size_t t : subsets) {
        if (t == 0) {
            continue;
        }
        Rng rng = make_stream(seed, Stream::Stabilizers, t);
        auto s = sample_observable(rho, set.element(t), shots, rng);
        out.push_back(MeasurementRecord::make(t, s.mean, s.sigma, shots));
    }
    return out;
}

/// Exact expectations with zero uncertainty.
inline std::vector<MeasurementRecord> measure_stabilizers_exact(const DensityMatrix &rho, const StabilizerSet &set,
                                                                const std::vector<std::size_t> &subsets) {
    std::vector<MeasurementRecord> out{MeasurementRecord::make(0, 1.0, 0.0, 0)};
    for (std::size_t t : subsets) {
        if (t != 0) {
            out.push_back(MeasurementRecord::make(t, expectation(rho, set.element(t)), 0.0, 0));
        }
    }
    return out;
}

/// One prepared state measured once: full stabilizer group plus the computational basis.
struct MeasurementCampaign {
    ExperimentConfig config;
    StateInfo info;
    DensityMatrix rho;
    double c_re = 0;
    double fidelity = 0;
    ProbVector d;
    std::vector<std::uint64_t> counts;  // empty in exact mode
    double u_c = 0;
    double u_c_sigma = 0;
    std::vector<MeasurementRecord> records;  // records[T] is element T
};

inline MeasurementCampaign run_measurements(const ExperimentConfig &raw_config) {
    MeasurementCampaign c{validated(raw_config), lookup_state(raw_config.state), {}, 0, 0, {}, {}, 0, 0, {}};
    c.rho = apply_noise(DensityMatrix::from_pure(c.info.ideal), c.config.noise);
    c.c_re = exact_relative_entropy_coherence(c.rho);
    c.fidelity = fidelity(c.rho, c.info.ideal);

    std::vector<std::size_t> all(c.info.stabilizers.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (c.config.exact) {
        c.records = measure_stabilizers_exact(c.rho, c.info.stabilizers, all);
        c.d = diagonal_distribution(c.rho);
        c.u_c = upper_bound(c.d);
        c.u_c_sigma = 0;
    } else {
        c.records = measure_stabilizers(c.rho, c.info.stabilizers, all, c.config.shots, c.config.seed);
        Rng basis_rng = make_stream(c.config.seed, Stream::Basis, 0);
        auto sample = sample_computational_basis(c.rho, c.config.shots, basis_rng);
        c.d = sample.frequencies;
        c.counts = sample.counts;
        c.u_c = upper_bound(c.d);
        Rng boot_rng = make_stream(c.config.seed, Stream::Bootstrap, 0);
        c.u_c_sigma = uncertainty_u_c(c.counts, c.config.bootstrap_resamples, boot_rng);
    }
    return c;
}

/// Elements set in `mask` (bit T <-> element T, identity bit ignored).
inline std::vector<std::size_t> mask_elements(std::uint64_t mask) {
    std::vector<std::size_t> out;
    for (std::size_t t = 1; t < 64; t++) {
        if (mask >> t & 1) {
            out.push_back(t);
        }
    }
    return out;
}

inline std::uint64_t full_mask(std::size_t n) {
    std::size_t dim = std::size_t{1} << n;
    return (dim == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1) & ~std::uint64_t{1};
}

/// Bounds from the records selected by `mask` at interval half-width w.
inline BoundReport evaluate(const MeasurementCampaign &c, std::uint64_t mask, double w) {
    auto start = std::chrono::steady_clock::now();
    std::vector<MeasurementRecord> chosen{c.records[0]};
    for (std::size_t t : mask_elements(mask)) {
        chosen.push_back(c.records.at(t));
    }
    EigenvalueMatrix b(c.info.num_qubits());
    auto cs = build_constraints(chosen, w, b);

    BoundReport r;
    r.state = c.info.label;
    r.n = c.info.num_qubits();
    r.noise = c.config.noise.kind_name();
    r.noise_param = c.config.noise.param;
    r.shots = c.config.exact ? 0 : c.config.shots;
    r.w = w;
    r.m = chosen.size() - 1;
    r.subset_mask = mask;
    r.l_c = lower_bound(c.d, cs);
    r.u_c = c.u_c;
    r.u_c_sigma = c.u_c_sigma;
    r.c_re_exact = c.c_re;
    if (r.l_c.valid() && c.c_re > 0) {
        r.distance = normalized_distance(c.c_re, r.l_c.value);
    }
    r.fidelity = c.fidelity;
    r.seed = c.config.seed;
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

// ---------------------------------------------------------------------------
// Scans

struct BoundViolation {
    double key = 0;
    std::uint64_t subset_mask = 0;
    double l_c = 0;
    double c_re = 0;
};

/// Aggregates for one scan coordinate (a w value or a subset size m).
struct ScanPoint {
    double key = 0;
    std::size_t tried = 0;
    std::size_t valid = 0;
    double percent_valid = 0;
    std::optional<double> mean_distance;    // over valid entries only
    std::optional<double> distance_stderr;  // standard error of mean_distance
    std::optional<double> mean_l_c;         // over valid entries only
    std::size_t bound_violations = 0;
};

struct ScanSummary {
    std::string axis;  // "w" or "m"
    std::vector<ScanPoint> points;
    std::vector<BoundViolation> violations;
};

struct ScanResult {
    ScanSummary summary;
    std::vector<BoundReport> reports;
};

/// A valid l_c above C_RE by more than three bootstrap sigmas of u_c (plus 1e-9).
inline bool is_bound_violation(const BoundReport &r) {
    return r.l_c.valid() && r.c_re_exact && r.l_c.value > *r.c_re_exact + 3 * r.u_c_sigma + 1e-9;
}

inline ScanPoint summarize(double key, const std::vector<BoundReport> &reports, std::vector<BoundViolation> &violations) {
    ScanPoint p;
    p.key = key;
    p.tried = reports.size();
    double sum_d = 0;
    double sum_d2 = 0;
    double sum_l = 0;
    std::size_t with_distance = 0;
    for (const auto &r : reports) {
        if (!r.l_c.valid()) {
            continue;
        }
        p.valid++;
        sum_l += r.l_c.value;
        if (r.distance) {
            with_distance++;
            sum_d += *r.distance;
            sum_d2 += *r.distance * *r.distance;
        }
        if (is_bound_violation(r)) {
            p.bound_violations++;
            violations.push_back({key, r.subset_mask, r.l_c.value, *r.c_re_exact});
        }
    }
    p.percent_valid = p.tried ? 100.0 * double(p.valid) / double(p.tried) : 0.0;
    if (p.valid) {
        p.mean_l_c = sum_l / double(p.valid);
    }
    if (with_distance) {
        double k = double(with_distance);
        double mean = sum_d / k;
        p.mean_distance = mean;
        double var = with_distance > 1 ? std::max(0.0, (sum_d2 - k * mean * mean) / (k - 1)) : 0.0;
        p.distance_stderr = std::sqrt(var / k);
    }
    return p;
}

inline BoundReport run_full(const ExperimentConfig &config) {
    auto c = run_measurements(config);
    return evaluate(c, full_mask(c.info.num_qubits()), c.config.w_values.front());
}

/// Every w on the same full-group records.
inline ScanResult run_w_scan(const MeasurementCampaign &c) {
    ScanResult out;
    out.summary.axis = "w";
    out.reports.resize(c.config.w_values.size());
    std::uint64_t mask = full_mask(c.info.num_qubits());
    parallel_for(out.reports.size(), [&](std::size_t i) { out.reports[i] = evaluate(c, mask, c.config.w_values[i]); });
    for (const auto &r : out.reports) {
        out.summary.points.push_back(summarize(r.w, {r}, out.summary.violations));
    }
    return out;
}

inline ScanResult run_w_scan(const ExperimentConfig &config) {
    return run_w_scan(run_measurements(config));
}

inline double binomial_count(std::size_t k_total, std::size_t m) {
    double c = 1;
    for (std::size_t i = 0; i < m; i++) {
        c = c * double(k_total - i) / double(i + 1);
    }
    return std::round(c);
}

/// Subsets of size m drawn from elements 1..elements, as bit masks over element indices.
/// All C(elements, m) subsets when that count is <= max_subsets, otherwise `samples`
/// distinct subsets drawn uniformly without replacement.
inline std::vector<std::uint64_t> choose_subsets(std::size_t elements, std::size_t m, std::size_t max_subsets,
                                                 std::size_t samples, Rng &rng) {
    if (m < 1 || m > elements || elements > 63) {
        throw std::invalid_argument("choose_subsets: bad subset size");
    }
    double total = binomial_count(elements, m);
    auto enumerate_all = [&] {
        std::vector<std::uint64_t> all;
        std::uint64_t v = (std::uint64_t{1} << m) - 1;
        std::uint64_t limit = std::uint64_t{1} << elements;
        while (v < limit) {
            all.push_back(v << 1);
            std::uint64_t t = v | (v - 1);
            v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
        }
        return all;
    };
    if (total <= double(max_subsets) || total <= double(samples)) {
        return enumerate_all();
    }
    std::vector<std::uint64_t> out;
    if (total <= 2e6) {
        auto all = enumerate_all();
        for (std::size_t i = 0; i < samples; i++) {
            std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
            std::swap(all[i], all[pick(rng)]);
        }
        all.resize(samples);
        return all;
    }
    std::set<std::uint64_t> seen;
    std::vector<std::size_t> idx(elements);
    std::iota(idx.begin(), idx.end(), std::size_t{1});
    while (out.size() < samples) {
        for (std::size_t i = 0; i < m; i++) {
            std::uniform_int_distribution<std::size_t> pick(i, elements - 1);
            std::swap(idx[i], idx[pick(rng)]);
        }
        std::uint64_t mask = 0;
        for (std::size_t i = 0; i < m; i++) {
            mask |= std::uint64_t{1} << idx[i];
        }
        if (seen.insert(mask).second) {
            out.push_back(mask);
        }
    }
    return out;
}

/// For every m in [m_min, m_max], l_c over subsets of m non-identity elements at w = w_values[0].
inline ScanResult run_subset_scan(const MeasurementCampaign &c) {
    ScanResult out;
    out.summary.axis = "m";
    std::size_t elements = c.info.stabilizers.size() - 1;
    double w = c.config.w_values.front();
    for (std::size_t m = c.config.m_min; m <= c.config.m_max; m++) {
        Rng rng = make_stream(c.config.seed, Stream::Subsets, m);
        auto masks = choose_subsets(elements, m, c.config.max_subsets, c.config.subset_samples, rng);
        std::vector<BoundReport> reports(masks.size());
        parallel_for(masks.size(), [&](std::size_t i) { reports[i] = evaluate(c, masks[i], w); });
        out.summary.points.push_back(summarize(double(m), reports, out.summary.violations));
        out.reports.insert(out.reports.end(), reports.begin(), reports.end());
    }
    return out;
}

inline ScanResult run_subset_scan(const ExperimentConfig &config) {
    return run_subset_scan(run_measurements(config));
}

// ---------------------------------------------------------------------------
// Five-state campaign

/// Fidelity targets for the five laboratory states, clipped into [0.95, 0.96].
inline std::vector<std::pair<std::string, double>> campaign_fidelity_targets() {
    return {{"ghz3", 0.96}, {"ghz4", 0.9571}, {"c4", 0.95}, {"w3", 0.9589}, {"w4", 0.95}};
}

/// Dephasing noise calibrated to each fidelity target, 10^4 shots, w = 0..10 for
/// the w-scan, and w = 3 for the subset scan and the full-group run.
inline std::vector<ExperimentConfig> campaign_configs(std::uint64_t seed) {
    std::vector<ExperimentConfig> out;
    for (const auto &[label, target] : campaign_fidelity_targets()) {
        ExperimentConfig cfg;
        cfg.state = label;
        cfg.noise = calibrate_noise(lookup_state(label).ideal, NoiseKind::Dephasing, target);
        cfg.seed = seed;
        out.push_back(cfg);
    }
    return out;
}

struct StateCampaignResult {
    std::string state;
    BoundReport full;
    ScanResult w_scan;
    ScanResult subset_scan;
};

inline std::vector<double> integer_w_grid(int max_w) {
    std::vector<double> w;
    for (int i = 0; i <= max_w; i++) {
        w.push_back(i);
    }
    return w;
}

inline StateCampaignResult run_state_campaign(const ExperimentConfig &config) {
    auto c = run_measurements(config);
    StateCampaignResult out;
    out.state = config.state;
    out.full = evaluate(c, full_mask(c.info.num_qubits()), 3.0);
    MeasurementCampaign scan = c;
    scan.config.w_values = integer_w_grid(10);
    out.w_scan = run_w_scan(scan);
    scan.config.w_values = {3.0};
    out.subset_scan = run_subset_scan(scan);
    return out;
}

inline std::vector<StateCampaignResult> run_campaign(const std::vector<ExperimentConfig> &configs) {
    std::vector<StateCampaignResult> out;
    for (const auto &cfg : configs) {
        out.push_back(run_state_campaign(cfg));
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV

inline const char *kCsvHeader =
    "state,n,noise,param,shots,w,m,subset_mask_hex,valid,invalid_reason,l_c,u_c,u_c_sigma,c_re_exact,distance_D,"
    "fidelity,seed";

namespace detail {

inline std::string number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string hex_mask(std::uint64_t mask, std::size_t n) {
    int width = static_cast<int>(std::max<std::size_t>(1, (std::size_t{1} << n) / 4));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%0*llx", width, static_cast<unsigned long long>(mask));
    return buf;
}

}  // namespace detail

inline std::string csv_row(const BoundReport &r) {
    using detail::number;
    std::ostringstream out;
    out << r.state << ',' << r.n << ',' << r.noise << ',' << number(r.noise_param) << ',' << r.shots << ','
        << number(r.w) << ',' << r.m << ',' << detail::hex_mask(r.subset_mask, r.n) << ','
        << (r.l_c.valid() ? "true" : "false") << ',' << to_string(r.l_c.reason) << ','
        << (r.l_c.valid() ? number(r.l_c.value) : "") << ',' << number(r.u_c) << ',' << number(r.u_c_sigma) << ','
        << (r.c_re_exact ? number(*r.c_re_exact) : "") << ',' << (r.distance ? number(*r.distance) : "") << ','
        << number(r.fidelity) << ',' << r.seed;
    return out.str();
}

inline std::string to_csv(const std::vector<BoundReport> &reports) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto &r : reports) {
        out += csv_row(r);
        out += '\n';
    }
    return out;
}

/// Full-group run, then the w-scan, then the subset scan, state by state.
inline std::vector<BoundReport> campaign_reports(const std::vector<StateCampaignResult> &results) {
    std::vector<BoundReport> out;
    for (const auto &s : results) {
        out.push_back(s.full);
        out.insert(out.end(), s.w_scan.reports.begin(), s.w_scan.reports.end());
        out.insert(out.end(), s.subset_scan.reports.begin(), s.subset_scan.reports.end());
    }
    return out;
}

}  // namespace cohbound
