#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cohbound/cohbound.hpp"
#include "json_io.hpp"

using namespace cohbound;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

std::vector<double> parse_w_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            throw ConfigError("bad --w entry '" + item + "'");
        }
    }
    if (out.empty()) {
        throw ConfigError("--w must list at least one value");
    }
    return out;
}

/// "a..b" or a single "a".
std::pair<std::size_t, std::size_t> parse_m_range(const std::string &text) {
    auto to_size = [&](const std::string &s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw ConfigError("bad --m range '" + text + "'");
        }
        return static_cast<std::size_t>(std::stoull(s));
    };
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        auto m = to_size(text);
        return {m, m};
    }
    return {to_size(text.substr(0, dots)), to_size(text.substr(dots + 2))};
}

void write_output(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write '" + path + "'");
    }
    out << text;
}

void log_summary(const std::string &state, const ScanSummary &s) {
    for (const auto &p : s.points) {
        std::fprintf(stderr, "%s %s=%g tried=%zu valid=%zu (%.1f%%)", state.c_str(), s.axis.c_str(), p.key, p.tried,
                     p.valid, p.percent_valid);
        if (p.mean_distance) {
            std::fprintf(stderr, " D=%.6f+-%.6f", *p.mean_distance, p.distance_stderr.value_or(0));
        }
        if (p.mean_l_c) {
            std::fprintf(stderr, " mean_l_c=%.6f", *p.mean_l_c);
        }
        std::fprintf(stderr, "\n");
    }
    for (const auto &v : s.violations) {
        std::fprintf(stderr, "bound-violation: state=%s %s=%g mask=%llx l_c=%.9f c_re=%.9f\n", state.c_str(),
                     s.axis.c_str(), v.key, static_cast<unsigned long long>(v.subset_mask), v.l_c, v.c_re);
    }
}

std::string render(const ExperimentConfig &cfg, const std::vector<BoundReport> &reports,
                   const ScanSummary *summary) {
    if (cfg.format == "csv") {
        return to_csv(reports);
    }
    io::json j = {{"reports", io::to_json(reports)}};
    if (summary) {
        j["summary"] = io::to_json(*summary);
    }
    return j.dump(2) + "\n";
}

int verify_sio(const ExperimentConfig &cfg) {
    auto rho = prepare_state(cfg.state, cfg.noise);
    auto d = diagonal_distribution(rho);
    auto ks = kraus_from_ensemble(eigen_ensemble(rho), d);
    auto v = apply_and_verify(ks, d, rho);
    double c_re = exact_relative_entropy_coherence(rho);
    double h = shannon_entropy(d);
    std::ostringstream out;
    out << "state " << cfg.state << " (" << cfg.noise.str() << ")\n"
        << "kraus operators " << ks.operators.size() << ", support " << ks.support << "/" << ks.dim() << "\n"
        << "reconstruction deviation " << v.reconstruction_deviation << "\n"
        << "completeness deviation " << v.completeness_deviation << "\n"
        << "strictly incoherent " << (v.strictly_incoherent ? "yes" : "no") << "\n"
        << "C_RE " << c_re << " <= H(d) " << h << "\n"
        << (v.passed() && c_re <= h + 1e-9 ? "PASS" : "FAIL") << "\n";
    write_output(cfg.output, out.str());
    return v.passed() && c_re <= h + 1e-9 ? 0 : kExitSolver;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Lower and upper bounds on the relative entropy of coherence from stabilizer measurements"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string state;
    std::string noise;
    std::uint64_t shots = 0;
    bool exact = false;
    std::string w_list;
    std::string m_range;
    std::size_t max_subsets = 0;
    std::size_t subset_samples = 0;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string format;

    auto *o_config = app.add_option("--config", config_path, "JSON config file; flags override its values");
    auto *o_state = app.add_option("--state", state, "state label (see list-states)");
    auto *o_noise = app.add_option("--noise", noise, "none | depolarizing:<lambda> | dephasing:<gamma>");
    auto *o_shots = app.add_option("--shots", shots, "shots per measurement setting");
    auto *o_exact = app.add_flag("--exact", exact, "use exact expectations instead of sampling");
    auto *o_w = app.add_option("--w", w_list, "comma-separated interval widths");
    auto *o_m = app.add_option("--m", m_range, "subset size range a..b");
    auto *o_max = app.add_option("--max-subsets", max_subsets, "enumerate all subsets up to this count");
    auto *o_samples = app.add_option("--subset-samples", subset_samples, "subsets sampled above --max-subsets");
    auto *o_seed = app.add_option("--seed", seed, "random seed");
    auto *o_out = app.add_option("--out", out_path, "output path (default stdout)");
    auto *o_format = app.add_option("--format", format, "csv | json");

    auto *c_run = app.add_subcommand("run", "bounds from the full stabilizer group");
    auto *c_exact = app.add_subcommand("exact", "like run, with exact expectations");
    auto *c_w = app.add_subcommand("w-scan", "lower bound for each --w on one set of records");
    auto *c_subset = app.add_subcommand("subset-scan", "lower bound over stabilizer subsets of each size in --m");
    auto *c_sio = app.add_subcommand("verify-sio", "check the incoherent channel reaching the prepared state");
    auto *c_list = app.add_subcommand("list-states", "print the registered states");
    auto *c_campaign = app.add_subcommand("campaign", "five-state campaign with calibrated dephasing noise");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (c_list->parsed()) {
            std::ostringstream out;
            for (const auto &label : state_labels()) {
                auto info = lookup_state(label);
                out << label << "\t" << info.num_qubits() << " qubits\t" << info.description << "\n";
            }
            write_output(out_path, out.str());
            return 0;
        }

        ExperimentConfig cfg = o_config->count() ? io::load_config(config_path) : ExperimentConfig{};
        if (o_state->count()) cfg.state = state;
        if (o_noise->count()) cfg.noise = NoiseModel::parse(noise);
        if (o_shots->count()) cfg.shots = shots;
        if (o_exact->count()) cfg.exact = exact;
        if (o_w->count()) cfg.w_values = parse_w_list(w_list);
        if (o_m->count()) std::tie(cfg.m_min, cfg.m_max) = parse_m_range(m_range);
        if (o_max->count()) cfg.max_subsets = max_subsets;
        if (o_samples->count()) cfg.subset_samples = subset_samples;
        if (o_seed->count()) cfg.seed = seed;
        if (o_out->count()) cfg.output = out_path;
        if (o_format->count()) cfg.format = format;
        if (c_exact->parsed()) cfg.exact = true;
        cfg = validated(cfg);

        if (c_run->parsed() || c_exact->parsed()) {
            auto report = run_full(cfg);
            write_output(cfg.output, render(cfg, {report}, nullptr));
        } else if (c_w->parsed()) {
            auto result = run_w_scan(cfg);
            log_summary(cfg.state, result.summary);
            write_output(cfg.output, render(cfg, result.reports, &result.summary));
        } else if (c_subset->parsed()) {
            auto result = run_subset_scan(cfg);
            log_summary(cfg.state, result.summary);
            write_output(cfg.output, render(cfg, result.reports, &result.summary));
        } else if (c_sio->parsed()) {
            return verify_sio(cfg);
        } else if (c_campaign->parsed()) {
            auto configs = campaign_configs(cfg.seed);
            for (auto &c : configs) {
                c.shots = cfg.shots;
                c.max_subsets = cfg.max_subsets;
                c.subset_samples = cfg.subset_samples;
            }
            auto results = run_campaign(configs);
            for (const auto &r : results) {
                log_summary(r.state, r.w_scan.summary);
                log_summary(r.state, r.subset_scan.summary);
            }
            write_output(cfg.output, render(cfg, campaign_reports(results), nullptr));
        }
        return 0;
    } catch (const ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const SolverError &e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return kExitSolver;
    } catch (const std::invalid_argument &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "internal failure: %s\n", e.what());
        return kExitSolver;
    }
}
