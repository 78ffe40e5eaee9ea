#pragma once

#include <fstream>
#include <string>

#include "cohbound/harness.hpp"
#include "json.hpp"

namespace cohbound::io {

using nlohmann::json;

/// Reads the recognised keys of a JSON object into `cfg`; unknown keys are a ConfigError.
inline void merge_config(ExperimentConfig &cfg, const json &j) {
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    try {
        for (const auto &[key, value] : j.items()) {
            if (key == "state") {
                cfg.state = value.get<std::string>();
            } else if (key == "noise") {
                cfg.noise = NoiseModel::parse(value.get<std::string>());
            } else if (key == "shots") {
                cfg.shots = value.get<std::uint64_t>();
            } else if (key == "exact") {
                cfg.exact = value.get<bool>();
            } else if (key == "w_values") {
                cfg.w_values = value.get<std::vector<double>>();
            } else if (key == "m_min") {
                cfg.m_min = value.get<std::size_t>();
            } else if (key == "m_max") {
                cfg.m_max = value.get<std::size_t>();
            } else if (key == "max_subsets") {
                cfg.max_subsets = value.get<std::size_t>();
            } else if (key == "subset_samples") {
                cfg.subset_samples = value.get<std::size_t>();
            } else if (key == "bootstrap_resamples") {
                cfg.bootstrap_resamples = value.get<std::size_t>();
            } else if (key == "seed") {
                cfg.seed = value.get<std::uint64_t>();
            } else if (key == "output") {
                cfg.output = value.get<std::string>();
            } else if (key == "format") {
                cfg.format = value.get<std::string>();
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    } catch (const json::exception &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

inline ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    ExperimentConfig cfg;
    try {
        merge_config(cfg, json::parse(in));
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

inline json optional_number(const std::optional<double> &x) {
    return x ? json(*x) : json(nullptr);
}

inline json to_json(const BoundReport &r) {
    return {{"state", r.state},
            {"n", r.n},
            {"noise", r.noise},
            {"param", r.noise_param},
            {"shots", r.shots},
            {"w", r.w},
            {"m", r.m},
            {"subset_mask_hex", detail::hex_mask(r.subset_mask, r.n)},
            {"valid", r.l_c.valid()},
            {"invalid_reason", to_string(r.l_c.reason)},
            {"l_c", r.l_c.valid() ? json(r.l_c.value) : json(nullptr)},
            {"u_c", r.u_c},
            {"u_c_sigma", r.u_c_sigma},
            {"c_re_exact", optional_number(r.c_re_exact)},
            {"distance_D", optional_number(r.distance)},
            {"fidelity", r.fidelity},
            {"seed", r.seed}};
}

inline json to_json(const ScanSummary &s) {
    json points = json::array();
    for (const auto &p : s.points) {
        points.push_back({{s.axis, p.key},
                          {"tried", p.tried},
                          {"valid", p.valid},
                          {"percent_valid", p.percent_valid},
                          {"mean_distance_D", optional_number(p.mean_distance)},
                          {"distance_stderr", optional_number(p.distance_stderr)},
                          {"mean_l_c", optional_number(p.mean_l_c)},
                          {"bound_violations", p.bound_violations}});
    }
    return {{"axis", s.axis}, {"points", points}};
}

inline json to_json(const std::vector<BoundReport> &reports) {
    json out = json::array();
    for (const auto &r : reports) {
        out.push_back(to_json(r));
    }
    return out;
}

}  // namespace cohbound::io
