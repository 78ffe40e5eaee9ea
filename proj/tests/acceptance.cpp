// Runs every acceptance criterion and prints one PASS/FAIL line each.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cohbound/cohbound.hpp"
#include "oracles.hpp"
#include "printed_tables.hpp"

using namespace cohbound;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome ideal_exactness() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, double>> cases{
        {"ghz3", 1.0}, {"ghz4", 1.0}, {"c4", 2.0}, {"w3", std::log2(3.0)}, {"w4", 2.0}};
    double worst = 0;
    bool all_valid = true;
    for (const auto &[label, value] : cases) {
        ExperimentConfig c;
        c.state = label;
        c.exact = true;
        auto r = run_full(c);
        all_valid = all_valid && r.l_c.valid();
        worst = std::max({worst, std::abs(r.l_c.value - value), std::abs(r.u_c - value),
                          std::abs(*r.c_re_exact - value)});
    }
    double t = seconds_since(t0);
    return {all_valid && worst <= 1e-6 && t < 10, fmt("max deviation %.2e, %.2fs", worst, t)};
}

Outcome sandwich() {
    auto t0 = std::chrono::steady_clock::now();
    std::size_t trials = 0;
    std::size_t ok = 0;
    std::size_t invalid = 0;
    for (const std::string label : {"ghz3", "ghz4", "c4", "w3", "w4"}) {
        for (double lambda : {0.02, 0.05, 0.1, 0.2}) {
            for (std::uint64_t s = 0; s < 10; s++) {
                ExperimentConfig c;
                c.state = label;
                c.noise = {NoiseKind::Depolarizing, lambda};
                c.seed = kSeed + s;
                auto r = run_full(c);
                trials++;
                bool lower_ok = !r.l_c.valid() || r.l_c.value <= *r.c_re_exact;
                bool upper_ok = *r.c_re_exact <= r.u_c + 3 * r.u_c_sigma;
                invalid += !r.l_c.valid();
                if (lower_ok && upper_ok) {
                    ok++;
                } else {
                    std::fprintf(stderr, "  sandwich violation: %s lambda=%g seed=%llu l_c=%.6f c_re=%.6f u_c=%.6f+-%.6f\n",
                                 label.c_str(), lambda, static_cast<unsigned long long>(c.seed), r.l_c.value,
                                 *r.c_re_exact, r.u_c, r.u_c_sigma);
                }
            }
        }
    }
    double t = seconds_since(t0);
    double frac = double(ok) / double(trials);
    return {trials == 200 && frac >= 0.95 && t < 300,
            fmt("%zu/%zu trials hold (%.1f%%), %zu invalid l_c, %.1fs", ok, trials, 100 * frac, invalid, t)};
}

Outcome lattice_oracle() {
    std::mt19937_64 rng(kSeed);
    double worst = 0;
    for (int trial = 0; trial < 1000; trial++) {
        std::size_t dim = 2 + trial % 7;
        auto a = oracle::random_distribution(dim, rng);
        auto b = oracle::random_distribution(dim, rng);
        auto j = join_pair(ProbVector(a), ProbVector(b));
        auto m = meet_pair(ProbVector(a), ProbVector(b));
        auto jo = oracle::join(a, b);
        auto mo = oracle::meet(a, b);
        for (std::size_t i = 0; i < dim; i++) {
            worst = std::max({worst, std::abs(j[i] - jo[i]), std::abs(m[i] - mo[i])});
        }
    }
    return {worst <= 1e-9, fmt("1000 pairs, max deviation %.2e", worst)};
}

Outcome polytope_cross_validation() {
    std::mt19937_64 rng(kSeed + 1);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_real_distribution<double> u(-1, 1);
    double worst = 0;
    std::size_t infeasible = 0;
    std::size_t disagreements = 0;
    for (int trial = 0; trial < 100; trial++) {
        std::size_t dim = 2 + trial % 5;
        ConstraintSet cs(dim);
        std::size_t rows = 1 + trial % 3;
        for (std::size_t r = 0; r < rows; r++) {
            std::vector<double> row(dim);
            for (auto &x : row) {
                x = coin(rng) ? 1.0 : -1.0;
            }
            double c = u(rng);
            double h = 0.05 + 0.3 * std::abs(u(rng));
            cs.add_row(row, std::max(-1.0, c - h), std::min(1.0, c + h));
        }
        if (trial % 4 == 3) {
            // Contradictory pair: a row and its negation both pinned near +1.
            std::vector<double> row(dim, 1.0);
            row[0] = -1;
            std::vector<double> neg(dim);
            for (std::size_t i = 0; i < dim; i++) {
                neg[i] = -row[i];
            }
            cs.add_row(row, 0.8, 1.0);
            cs.add_row(neg, 0.8, 1.0);
        }
        auto compact = meet_over_polytope(cs);
        auto brute = oracle::subset_enumeration_curve(cs);
        if (compact.has_value() != brute.has_value()) {
            disagreements++;
            continue;
        }
        if (!compact) {
            infeasible++;
            continue;
        }
        auto curve = cumulative_curve(*compact);
        for (std::size_t k = 0; k < dim; k++) {
            worst = std::max(worst, std::abs(curve.s[k] - (*brute)[k]));
        }
    }
    return {disagreements == 0 && worst <= 1e-7 && infeasible >= 25,
            fmt("100 sets, %zu infeasible (both agree), %zu feasibility disagreements, max deviation %.2e",
                infeasible, disagreements, worst)};
}

std::vector<MeasurementRecord> sampled_records(const std::string &label, double lambda, std::uint64_t seed,
                                               DensityMatrix &rho_out) {
    auto info = lookup_state(label);
    rho_out = apply_depolarizing(DensityMatrix::from_pure(info.ideal), lambda);
    std::vector<std::size_t> all(info.stabilizers.size() - 1);
    std::iota(all.begin(), all.end(), std::size_t{1});
    return measure_stabilizers(rho_out, info.stabilizers, all, 10000, seed);
}

Outcome monotonicity() {
    std::mt19937_64 rng(kSeed + 2);
    const std::vector<std::string> labels{"ghz3", "ghz4", "c4", "w3", "w4"};
    // (a) nested subsets
    std::size_t pairs = 0;
    std::size_t nested_fail = 0;
    std::size_t attempts = 0;
    while (pairs < 100 && attempts < 1000) {
        attempts++;
        const auto &label = labels[attempts % labels.size()];
        DensityMatrix rho;
        auto recs = sampled_records(label, 0.05, kSeed + attempts, rho);
        std::size_t n = rho.num_qubits();
        std::size_t elements = (std::size_t{1} << n) - 1;
        std::size_t m_small = 1 + rng() % (elements - 1);
        std::size_t m_big = m_small + 1 + rng() % (elements - m_small);
        std::vector<std::size_t> order(elements);
        std::iota(order.begin(), order.end(), std::size_t{1});
        std::shuffle(order.begin(), order.end(), rng);
        auto pick = [&](std::size_t m) {
            std::vector<MeasurementRecord> out{recs[0]};
            for (std::size_t i = 0; i < m; i++) {
                out.push_back(recs[order[i]]);
            }
            return out;
        };
        auto d = diagonal_distribution(rho);
        EigenvalueMatrix b(n);
        auto small = lower_bound(d, build_constraints(pick(m_small), 3, b));
        auto big = lower_bound(d, build_constraints(pick(m_big), 3, b));
        if (!small.feasible() || !big.feasible()) {
            continue;
        }
        pairs++;
        if (big.value < small.value - 1e-8) {
            nested_fail++;
        }
    }
    // (b) w scan on fixed records
    std::size_t w_fail = 0;
    std::size_t sets = 0;
    for (std::size_t s = 0; s < 20; s++) {
        const auto &label = labels[s % labels.size()];
        DensityMatrix rho;
        auto recs = sampled_records(label, 0.02 + 0.01 * double(s % 4), kSeed + 5000 + s, rho);
        auto d = diagonal_distribution(rho);
        EigenvalueMatrix b(rho.num_qubits());
        std::optional<double> prev;
        bool was_feasible = false;
        for (double w : {0.5, 1.0, 2.0, 3.0, 5.0, 8.0}) {
            auto lb = lower_bound(d, build_constraints(recs, w, b));
            if (was_feasible && !lb.feasible()) {
                w_fail++;
            }
            if (lb.feasible()) {
                if (prev && lb.value > *prev + 1e-8) {
                    w_fail++;
                }
                prev = lb.value;
                was_feasible = true;
            }
        }
        sets++;
    }
    return {pairs == 100 && nested_fail == 0 && w_fail == 0,
            fmt("(a) %zu nested pairs, %zu violations; (b) %zu record sets x 6 w, %zu violations", pairs, nested_fail,
                sets, w_fail)};
}

Outcome sio_channel() {
    std::mt19937_64 rng(kSeed + 3);
    double worst_rec = 0;
    double worst_comp = 0;
    std::size_t structural_fail = 0;
    std::size_t entropy_fail = 0;
    std::size_t deficient = 0;
    for (int trial = 0; trial < 200; trial++) {
        std::size_t dim = trial % 2 ? 8 : 4;
        std::size_t rank = 1 + rng() % dim;
        std::vector<std::size_t> zeros;
        if (trial % 4 < 2) {
            std::size_t count = 1 + rng() % (dim / 2);
            for (std::size_t i = 0; i < count; i++) {
                zeros.push_back(rng() % dim);
            }
            deficient++;
        }
        auto rho = DensityMatrix::from_matrix(oracle::random_density(dim, rank, rng, zeros));
        auto d = diagonal_distribution(rho);
        auto v = apply_and_verify(kraus_from_ensemble(eigen_ensemble(rho), d), d, rho);
        worst_rec = std::max(worst_rec, v.reconstruction_deviation);
        worst_comp = std::max(worst_comp, v.completeness_deviation);
        structural_fail += !v.strictly_incoherent;
        entropy_fail += exact_relative_entropy_coherence(rho) > shannon_entropy(d) + 1e-9;
    }
    return {worst_rec <= 1e-9 && worst_comp <= 1e-9 && structural_fail == 0 && entropy_fail == 0,
            fmt("200 states (%zu with zero diagonal entries), reconstruction %.2e, completeness %.2e, "
                "%zu structural and %zu entropy failures",
                deficient, worst_rec, worst_comp, structural_fail, entropy_fail)};
}

Outcome stabilizer_tables() {
    std::size_t checked = 0;
    std::size_t mismatched = 0;
    for (const auto &table : tables::printed_tables()) {
        auto info = lookup_state(table.state);
        auto masks = oracle::printed_order_masks(table.n);
        for (const auto &e : table.elements) {
            auto terms = e.terms;
            if (table.state == "w4" && e.index == 14) {
                // printed "ZXIZ" is a misprint of ZXIX: the printed form does not stabilize |W4>
                for (auto &t : terms) {
                    if (t.second == "ZXIZ") {
                        t.second = "ZXIX";
                    }
                }
            }
            checked++;
            if (!info.stabilizers.element(masks[e.index]).approx_equal(ObservableSum::from_text(table.n, terms), 1e-12)) {
                mismatched++;
                std::fprintf(stderr, "  table mismatch: %s S_%zu\n", table.state.c_str(), e.index);
            }
        }
    }
    return {mismatched == 0 && checked == 7 + 15 + 15 + 7 + 15,
            fmt("%zu printed elements, %zu mismatches (W4 S_14 compared with its corrected term ZXIX)", checked,
                mismatched)};
}

struct CampaignRun {
    std::vector<StateCampaignResult> results;
    std::string csv;
    double seconds;
};

CampaignRun campaign() {
    auto t0 = std::chrono::steady_clock::now();
    CampaignRun run;
    run.results = run_campaign(campaign_configs(kSeed));
    run.csv = to_csv(campaign_reports(run.results));
    run.seconds = seconds_since(t0);
    return run;
}

Outcome figure_trends(const CampaignRun &run) {
    std::size_t transitions = 0;
    std::size_t d_fail = 0;
    std::size_t u_fail = 0;
    std::string notes;
    for (const auto &s : run.results) {
        bool seen_invalid = false;
        bool transition = false;
        for (const auto &r : s.w_scan.reports) {
            if (!r.l_c.valid()) {
                seen_invalid = true;
            } else if (seen_invalid) {
                transition = true;
            }
        }
        transitions += transition;

        const auto &pts = s.subset_scan.summary.points;
        for (std::size_t i = 0; i + 1 < pts.size(); i++) {
            if (!pts[i].mean_distance || !pts[i + 1].mean_distance) {
                continue;
            }
            double se = std::hypot(pts[i].distance_stderr.value_or(0), pts[i + 1].distance_stderr.value_or(0));
            if (*pts[i + 1].mean_distance > *pts[i].mean_distance + 3 * se + 1e-12) {
                d_fail++;
                notes += fmt(" [%s D rises at m=%g]", s.state.c_str(), pts[i + 1].key);
            }
        }

        auto rho = prepare_state(s.state, NoiseModel::parse(s.full.noise + ":" + fmt("%.17g", s.full.noise_param)));
        double h_exact = shannon_entropy(diagonal_distribution(rho));
        if (std::abs(s.full.u_c - h_exact) > 3 * s.full.u_c_sigma) {
            u_fail++;
            notes += fmt(" [%s u_c %.6f vs %.6f +- %.6f]", s.state.c_str(), s.full.u_c, h_exact, s.full.u_c_sigma);
        }
    }
    return {transitions >= 1 && d_fail == 0 && u_fail == 0 && run.seconds < 900,
            fmt("(a) %zu/5 states go invalid->valid in w; (b) %zu D-bar rises beyond 3 se; (c) %zu u_c misses; "
                "%.1fs",
                transitions, d_fail, u_fail, run.seconds) +
                notes};
}

}  // namespace

int main(int argc, char **argv) {
    std::string csv_dir;
    for (int i = 1; i + 1 < argc; i++) {
        if (std::string(argv[i]) == "--csv-dir") {
            csv_dir = argv[i + 1];
        }
    }

    int failures = 0;
    auto report = [&](int id, const char *name, const Outcome &o) {
        std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    };

    report(1, "ideal-state exactness", ideal_exactness());
    report(2, "sandwich property", sandwich());
    report(3, "lattice oracle equivalence", lattice_oracle());
    report(4, "polytope meet cross-validation", polytope_cross_validation());
    report(5, "monotonicity suites", monotonicity());
    report(6, "incoherent channel construction", sio_channel());
    report(7, "stabilizer tables", stabilizer_tables());

    auto first = campaign();
    report(8, "figure trends", figure_trends(first));
    auto second = campaign();
    report(9, "determinism", {first.csv == second.csv && !first.csv.empty(),
                              fmt("%zu CSV bytes per run, %s", first.csv.size(),
                                  first.csv == second.csv ? "identical" : "different")});
    if (!csv_dir.empty()) {
        std::ofstream(csv_dir + "/campaign.csv", std::ios::binary) << first.csv;
    }

    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
