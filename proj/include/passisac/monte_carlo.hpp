// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the pass-isac authors

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "passisac/core_model.hpp"
#include "passisac/multi_pinch.hpp"
#include "passisac/outer_bound.hpp"
#include "passisac/region.hpp"
#include "passisac/rng.hpp"
#include "passisac/single_pinch.hpp"

namespace passisac {

/// Batch settings for randomized scenario generation: user and target are
/// drawn uniformly in a dx_m x dy_m rectangle centered at the origin.
struct McConfig {
    double dx_m = 20.0;
    double dy_m = 8.0;
    int trials = 1000;
    std::uint64_t seed = 1;
    std::vector<double> alpha_grid;  // empty: callers fall back to 101 uniform points

    void validate() const {
        detail::require(dx_m > 0.0 && dy_m > 0.0, "McConfig: region side lengths must be positive");
        detail::require(trials >= 1, "McConfig: trials must be >= 1");
        for (double a : alpha_grid)
            detail::require(a >= 0.0 && a <= 1.0, "McConfig: alpha grid outside [0, 1]");
    }
};

/// Scenario of one trial; deterministic in (seed, trial_index) via per-trial
/// substreams, so parallel and serial batch runs agree.
inline Scenario sample_scenario(const McConfig& mc, std::uint64_t trial_index) {
    SplitMix64 rng = SplitMix64::substream(mc.seed, trial_index);
    Scenario sc;
    sc.user_x = rng.uniform(-mc.dx_m / 2.0, mc.dx_m / 2.0);
    sc.user_y = rng.uniform(-mc.dy_m / 2.0, mc.dy_m / 2.0);
    sc.target_x = rng.uniform(-mc.dx_m / 2.0, mc.dx_m / 2.0);
    sc.target_y = rng.uniform(-mc.dy_m / 2.0, mc.dy_m / 2.0);
    return sc;
}

enum class Design { cc, sc, fixed };
enum class Mode { single, multi };

inline const char* design_name(Design d) {
    switch (d) {
        case Design::cc: return "cc";
        case Design::sc: return "sc";
        default: return "fixed";
    }
}

namespace detail {

/// Deployment geometry conventions: feed at -Dx/2 and range Dx/2 for the
/// single-pinch case, widened by 1 m on both sides for the multi-pinch case.
inline SystemConfig deployed_config(SystemConfig cfg, Mode mode, double dx_m, int antennas,
                                    double loss_db_per_m) {
    const double margin = mode == Mode::multi ? 1.0 : 0.0;
    cfg.feed_x_t0 = -dx_m / 2.0 - margin;
    cfg.feed_x_r0 = cfg.feed_x_t0;
    cfg.deploy_max_x = dx_m / 2.0 + margin;
    cfg.num_antennas_N = mode == Mode::multi ? antennas : 1;
    cfg.waveguide_loss_db_per_m = loss_db_per_m;
    return cfg;
}

inline void parallel_for(int jobs, int count, const std::function<void(int)>& body) {
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    const int workers = std::min(jobs, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += workers) body(i);
        });
    for (auto& t : pool) t.join();
}

struct Accumulator {
    double sum = 0.0, sum_sq = 0.0;
    int n = 0;
    void add(double v) {
        sum += v;
        sum_sq += v * v;
        ++n;
    }
    double mean() const { return n ? sum / n : 0.0; }
    double se() const {
        if (n < 2) return 0.0;
        const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1));
        return std::sqrt(var / n);
    }
};

}  // namespace detail

/// One sweep point of an averaged-rates run.
struct SweepPoint {
    double sweep_value = 0.0;
    RatePair mean_ideal, mean_lossy;
    RatePair se_ideal, se_lossy;
    int trials_used = 0;
    int failed_trials = 0;
};

/// Mean CR/SR of one design across the trial batch, for every sweep value
/// (region side length Dx in single mode, antenna count N in multi mode).
/// The same scenario batch is reused across sweep points for variance
/// reduction.  Ideal and lossy columns share the activated locations: the
/// design is optimized on the ideal guide and re-evaluated with loss.
/// Trials where the multi-pinch search is infeasible are excluded and counted.
inline std::vector<SweepPoint> average_rates(const SystemConfig& cfg, const McConfig& mc,
                                             Design design, Mode mode,
                                             std::span<const double> sweep_values,
                                             const SearchConfig& search,
                                             double lossy_db_per_m = 0.08, int jobs = 1) {
    mc.validate();
    search.validate();
    std::vector<SweepPoint> table;
    table.reserve(sweep_values.size());
    for (double sweep : sweep_values) {
        const double dx = mode == Mode::single ? sweep : mc.dx_m;
        const int antennas = mode == Mode::multi ? static_cast<int>(sweep) : 1;
        const SystemConfig ideal = detail::deployed_config(cfg, mode, dx, antennas, 0.0);
        const SystemConfig lossy = detail::deployed_config(cfg, mode, dx, antennas, lossy_db_per_m);
        ideal.validate();

        McConfig mc_sweep = mc;
        mc_sweep.dx_m = dx;

        struct TrialOut {
            RatePair ideal_rates, lossy_rates;
            bool failed = false;
        };
        std::vector<TrialOut> out(mc.trials);
        detail::parallel_for(jobs, mc.trials, [&](int i) {
            const Scenario sc = sample_scenario(mc_sweep, static_cast<std::uint64_t>(i));
            TrialOut& o = out[i];
            try {
                switch (design) {
                    case Design::fixed: {
                        o.ideal_rates = fixed_antenna_rates(ideal, sc, 0.0, 0.0);
                        o.lossy_rates = o.ideal_rates;  // no waveguide in the baseline
                        break;
                    }
                    case Design::cc:
                    case Design::sc: {
                        Beamformer bf;
                        if (mode == Mode::single) {
                            bf.positions = {design == Design::cc ? sc.user_x : sc.target_x};
                        } else {
                            const auto res = design == Design::cc ? cc_beamformer(ideal, sc, search)
                                                                  : sc_beamformer(ideal, sc, search);
                            bf = res.beamformer;
                        }
                        o.ideal_rates = rate_pair(ideal, sc, bf);
                        o.lossy_rates = rate_pair(lossy, sc, bf);
                        break;
                    }
                }
            } catch (const infeasible_placement_error&) {
                o.failed = true;
            }
        });

        SweepPoint pt;
        pt.sweep_value = sweep;
        detail::Accumulator ci, si, cl, sl;
        for (const auto& o : out) {
            if (o.failed) {
                ++pt.failed_trials;
                continue;
            }
            ci.add(o.ideal_rates.cr);
            si.add(o.ideal_rates.sr);
            cl.add(o.lossy_rates.cr);
            sl.add(o.lossy_rates.sr);
        }
        pt.trials_used = ci.n;
        pt.mean_ideal = {ci.mean(), si.mean()};
        pt.mean_lossy = {cl.mean(), sl.mean()};
        pt.se_ideal = {ci.se(), si.se()};
        pt.se_lossy = {cl.se(), sl.se()};
        table.push_back(pt);
    }
    return table;
}

/// Averaged rate regions across the trial batch, with the fixed-antenna
/// comparator.  Regions are averaged corner-wise at matched anchors (same
/// alpha grid, or same Z grid for the outer bound) and then hulled.
struct AverageRegionResult {
    RateRegion pass_ideal;
    RateRegion pass_lossy;
    RateRegion timeshare_ideal;
    RateRegion timeshare_lossy;
    RateRegion fixed;
    std::optional<RateRegion> outer_ideal;  // multi mode only
    std::optional<RateRegion> outer_lossy;  // multi mode only
    int trials_used = 0;
    int failed_trials = 0;
};

inline AverageRegionResult average_region(const SystemConfig& cfg, const McConfig& mc, Mode mode,
                                          const SearchConfig& search,
                                          double lossy_db_per_m = 0.08, int jobs = 1) {
    mc.validate();
    search.validate();
    std::vector<double> alpha_grid =
        mc.alpha_grid.empty() ? uniform_grid(0.0, 1.0, 101) : mc.alpha_grid;
    const SystemConfig ideal =
        detail::deployed_config(cfg, mode, mc.dx_m, cfg.num_antennas_N, 0.0);
    const SystemConfig lossy =
        detail::deployed_config(cfg, mode, mc.dx_m, cfg.num_antennas_N, lossy_db_per_m);
    ideal.validate();

    // Interior grid for the multi-pinch anchors; the engine adds the two
    // endpoint anchors itself.
    std::vector<double> interior;
    for (double a : alpha_grid)
        if (a > 0.0 && a < 1.0) interior.push_back(a);

    const std::vector<double> z_grid =
        uniform_grid(0.0, static_cast<double>(ideal.num_antennas_N), 201);

    struct TrialOut {
        std::vector<RatePair> pass_ideal, pass_lossy;
        std::vector<RatePair> timeshare_ideal, timeshare_lossy;
        std::vector<RatePair> outer_ideal, outer_lossy;
        RatePair fixed;
        bool failed = false;
    };
    std::vector<TrialOut> out(mc.trials);
    detail::parallel_for(jobs, mc.trials, [&](int i) {
        const Scenario sc = sample_scenario(mc, static_cast<std::uint64_t>(i));
        TrialOut& o = out[i];
        try {
            if (mode == Mode::single) {
                for (double a : alpha_grid) {
                    const auto sol = pareto_design(ideal, sc, a);
                    o.pass_ideal.push_back(sol.rates);
                    o.pass_lossy.push_back(rate_pair(lossy, sc, Beamformer{{sol.t_star}}));
                }
                const auto cc = cc_design(ideal, sc);
                const auto scd = sc_design(ideal, sc);
                o.timeshare_ideal = {scd.rates, cc.rates};
                o.timeshare_lossy = {rate_pair(lossy, sc, Beamformer{{scd.t_star}}),
                                     rate_pair(lossy, sc, Beamformer{{cc.t_star}})};
            } else {
                const auto anchors = rate_profile_anchors(ideal, sc, interior, search);
                for (const auto& a : anchors) {
                    o.pass_ideal.push_back(a.rates);
                    o.pass_lossy.push_back(rate_pair(lossy, sc, a.beamformer));
                }
                o.timeshare_ideal = {anchors.front().rates, anchors.back().rates};
                o.timeshare_lossy = {o.pass_lossy.front(), o.pass_lossy.back()};
                for (const auto& r : outer_region(ideal, sc, z_grid).corners)
                    o.outer_ideal.push_back(r);
                for (const auto& r : case2_outer(lossy, sc, z_grid).corners)
                    o.outer_lossy.push_back(r);
            }
            o.fixed = fixed_antenna_rates(ideal, sc, 0.0, 0.0);
        } catch (const infeasible_placement_error&) {
            o.failed = true;
        }
    });

    std::vector<RateRegion> pass_i, pass_l, ts_i, ts_l, out_i, out_l, fix;
    AverageRegionResult res;
    for (const auto& o : out) {
        if (o.failed) {
            ++res.failed_trials;
            continue;
        }
        pass_i.push_back(RateRegion{o.pass_ideal, {}});
        pass_l.push_back(RateRegion{o.pass_lossy, {}});
        ts_i.push_back(RateRegion{o.timeshare_ideal, {}});
        ts_l.push_back(RateRegion{o.timeshare_lossy, {}});
        fix.push_back(RateRegion{{o.fixed}, {}});
        if (mode == Mode::multi) {
            out_i.push_back(RateRegion{o.outer_ideal, {}});
            out_l.push_back(RateRegion{o.outer_lossy, {}});
        }
    }
    res.trials_used = static_cast<int>(pass_i.size());
    if (res.trials_used == 0)
        throw std::runtime_error("average_region: every trial failed");

    const int anchor_count = static_cast<int>(pass_i.front().corners.size());
    res.pass_ideal = average_regions(pass_i, anchor_count);
    res.pass_lossy = average_regions(pass_l, anchor_count);
    res.timeshare_ideal = average_regions(ts_i, 2);
    res.timeshare_lossy = average_regions(ts_l, 2);
    res.fixed = average_regions(fix, 1);
    if (mode == Mode::multi) {
        res.outer_ideal = average_regions(out_i, static_cast<int>(z_grid.size()));
        res.outer_lossy = average_regions(out_l, static_cast<int>(z_grid.size()));
    }
    return res;
}

/// CSV rows "sweep_value,design,case,mean_cr,mean_sr" for one design's sweep
/// table; the fixed-antenna design has no waveguide, so it only emits the
/// ideal case.
inline void append_rates_csv(std::string& out, Design design,
                             std::span<const SweepPoint> table) {
    char line[160];
    for (const auto& pt : table) {
        std::snprintf(line, sizeof line, "%.12g,%s,ideal,%.12g,%.12g\n", pt.sweep_value,
                      design_name(design), pt.mean_ideal.cr, pt.mean_ideal.sr);
        out += line;
        if (design == Design::fixed) continue;
        std::snprintf(line, sizeof line, "%.12g,%s,lossy,%.12g,%.12g\n", pt.sweep_value,
                      design_name(design), pt.mean_lossy.cr, pt.mean_lossy.sr);
        out += line;
    }
}

/// Companion CSV with standard errors and bookkeeping columns.
inline void append_rates_se_csv(std::string& out, Design design,
                                std::span<const SweepPoint> table) {
    char line[200];
    for (const auto& pt : table) {
        std::snprintf(line, sizeof line, "%.12g,%s,ideal,%.12g,%.12g,%d,%d\n", pt.sweep_value,
                      design_name(design), pt.se_ideal.cr, pt.se_ideal.sr, pt.trials_used,
                      pt.failed_trials);
        out += line;
        if (design == Design::fixed) continue;
        std::snprintf(line, sizeof line, "%.12g,%s,lossy,%.12g,%.12g,%d,%d\n", pt.sweep_value,
                      design_name(design), pt.se_lossy.cr, pt.se_lossy.sr, pt.trials_used,
                      pt.failed_trials);
        out += line;
    }
}

/// CSV rows "label,cr,sr" for one labeled region boundary.
inline void append_region_csv(std::string& out, const std::string& label,
                              const RateRegion& region) {
    char line[120];
    for (const auto& v : region.hull_vertices) {
        std::snprintf(line, sizeof line, "%s,%.12g,%.12g\n", label.c_str(), v.cr, v.sr);
        out += line;
    }
}

}  // namespace passisac
