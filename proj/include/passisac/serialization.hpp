// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the pass-isac authors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "passisac/core_model.hpp"
#include "passisac/monte_carlo.hpp"
#include "passisac/multi_pinch.hpp"
#include "passisac/region.hpp"

namespace passisac {

inline nlohmann::json to_json(const SystemConfig& cfg) {
    return {{"carrier_freq_hz", cfg.carrier_freq_hz},
            {"eta_m2", cfg.eta_m2},
            {"wavenumber_k0", cfg.wavenumber_k0},
            {"n_eff", cfg.n_eff},
            {"waveguide_height_d", cfg.waveguide_height_d},
            {"y_tx", cfg.y_tx},
            {"y_rx", cfg.y_rx},
            {"feed_x_t0", cfg.feed_x_t0},
            {"feed_x_r0", cfg.feed_x_r0},
            {"deploy_max_x", cfg.deploy_max_x},
            {"power_w", cfg.power_w},
            {"noise_comm_w", cfg.noise_comm_w},
            {"noise_sense_w", cfg.noise_sense_w},
            {"frame_len_L", cfg.frame_len_L},
            {"alpha_s", cfg.alpha_s},
            {"num_antennas_N", cfg.num_antennas_N},
            {"min_spacing_delta", cfg.min_spacing_delta},
            {"waveguide_loss_db_per_m", cfg.waveguide_loss_db_per_m}};
}

/// Parse a flat SystemConfig object on top of the built-in defaults.  The
/// derived fields are recomputed when absent and cross-checked when present.
inline SystemConfig system_config_from_json(const nlohmann::json& j) {
    SystemConfig cfg = SystemConfig::defaults();
    const auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).template get<std::decay_t<decltype(field)>>();
    };
    get("carrier_freq_hz", cfg.carrier_freq_hz);
    get("n_eff", cfg.n_eff);
    get("waveguide_height_d", cfg.waveguide_height_d);
    get("y_tx", cfg.y_tx);
    get("y_rx", cfg.y_rx);
    get("feed_x_t0", cfg.feed_x_t0);
    get("feed_x_r0", cfg.feed_x_r0);
    get("deploy_max_x", cfg.deploy_max_x);
    get("power_w", cfg.power_w);
    get("noise_comm_w", cfg.noise_comm_w);
    get("noise_sense_w", cfg.noise_sense_w);
    get("frame_len_L", cfg.frame_len_L);
    get("alpha_s", cfg.alpha_s);
    get("num_antennas_N", cfg.num_antennas_N);
    get("waveguide_loss_db_per_m", cfg.waveguide_loss_db_per_m);
    cfg.min_spacing_delta = 0.0;  // rederive lambda/2 unless given explicitly
    get("min_spacing_delta", cfg.min_spacing_delta);
    cfg.eta_m2 = 0.0;
    cfg.wavenumber_k0 = 0.0;
    cfg.refresh_derived();
    get("eta_m2", cfg.eta_m2);
    get("wavenumber_k0", cfg.wavenumber_k0);
    cfg.validate();
    return cfg;
}

inline nlohmann::json to_json(const SearchConfig& sc) {
    const char* strategy = sc.init_strategy == InitStrategy::spread_midpoint ? "spread_midpoint"
                           : sc.init_strategy == InitStrategy::from_cc      ? "from_cc"
                                                                            : "from_sc";
    return {{"grid_points_Q", sc.grid_points_Q},
            {"max_iters", sc.max_iters},
            {"rel_improvement_eps", sc.rel_improvement_eps},
            {"init_strategy", strategy},
            {"restarts", sc.restarts}};
}

inline SearchConfig search_config_from_json(const nlohmann::json& j) {
    SearchConfig sc;
    if (j.contains("grid_points_Q")) sc.grid_points_Q = j.at("grid_points_Q").get<int>();
    if (j.contains("max_iters")) sc.max_iters = j.at("max_iters").get<int>();
    if (j.contains("rel_improvement_eps"))
        sc.rel_improvement_eps = j.at("rel_improvement_eps").get<double>();
    if (j.contains("restarts")) sc.restarts = j.at("restarts").get<int>();
    if (j.contains("init_strategy")) {
        const std::string s = j.at("init_strategy").get<std::string>();
        if (s == "spread_midpoint")
            sc.init_strategy = InitStrategy::spread_midpoint;
        else if (s == "from_cc")
            sc.init_strategy = InitStrategy::from_cc;
        else if (s == "from_sc")
            sc.init_strategy = InitStrategy::from_sc;
        else
            throw std::domain_error("unknown init_strategy: " + s);
    }
    sc.validate();
    return sc;
}

inline nlohmann::json to_json(const McConfig& mc) {
    return {{"dx_m", mc.dx_m},
            {"dy_m", mc.dy_m},
            {"trials", mc.trials},
            {"seed", mc.seed},
            {"alpha_grid", mc.alpha_grid}};
}

inline McConfig mc_config_from_json(const nlohmann::json& j) {
    McConfig mc;
    if (j.contains("dx_m")) mc.dx_m = j.at("dx_m").get<double>();
    if (j.contains("dy_m")) mc.dy_m = j.at("dy_m").get<double>();
    if (j.contains("trials")) mc.trials = j.at("trials").get<int>();
    if (j.contains("seed")) mc.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("alpha_grid")) mc.alpha_grid = j.at("alpha_grid").get<std::vector<double>>();
    mc.validate();
    return mc;
}

/// JSON array of [cr, sr] boundary vertices.
inline nlohmann::json region_to_json(const RateRegion& region) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : region.hull_vertices) arr.push_back({v.cr, v.sr});
    return arr;
}

/// FNV-1a 64-bit digest, hex-encoded; used to fingerprint resolved configs.
inline std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Provenance record written next to every command's outputs.
struct RunManifest {
    std::string config_hash;
    std::string command;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
    double wall_time_s = 0.0;

    nlohmann::json to_json() const {
        return {{"config_hash", config_hash},
                {"command", command},
                {"seed", seed},
                {"outputs", outputs},
                {"wall_time_s", wall_time_s}};
    }
};

}  // namespace passisac
