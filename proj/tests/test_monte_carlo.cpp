// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the pass-isac authors

#include <catch2/catch_amalgamated.hpp>

#include "oracle_helpers.hpp"
#include "passisac/monte_carlo.hpp"
#include "passisac/single_pinch.hpp"

using namespace passisac;

TEST_CASE("scenario sampling is deterministic per (seed, trial)") {
    McConfig mc;
    mc.seed = 12345;
    const Scenario a = sample_scenario(mc, 7);
    const Scenario b = sample_scenario(mc, 7);
    REQUIRE(a.user_x == b.user_x);
    REQUIRE(a.user_y == b.user_y);
    REQUIRE(a.target_x == b.target_x);
    REQUIRE(a.target_y == b.target_y);
    const Scenario c = sample_scenario(mc, 8);
    REQUIRE(a.user_x != c.user_x);
    // Draws stay inside the configured rectangle.
    for (int i = 0; i < 1000; ++i) {
        const Scenario s = sample_scenario(mc, i);
        REQUIRE(std::abs(s.user_x) <= mc.dx_m / 2.0);
        REQUIRE(std::abs(s.user_y) <= mc.dy_m / 2.0);
        REQUIRE(std::abs(s.target_x) <= mc.dx_m / 2.0);
        REQUIRE(std::abs(s.target_y) <= mc.dy_m / 2.0);
    }
}

TEST_CASE("sampled coordinates have the right first moment") {
    McConfig mc;
    mc.seed = 9;
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_scenario(mc, i).user_x;
    const double mean = sum / n;
    const double sigma = mc.dx_m / std::sqrt(12.0) / std::sqrt(static_cast<double>(n));
    REQUIRE(std::abs(mean) <= 3.0 * sigma);
}

TEST_CASE("axial offset follows the triangular law") {
    McConfig mc;
    mc.seed = 2718;
    const int n = 20000;
    std::vector<double> offsets;
    offsets.reserve(n);
    for (int i = 0; i < n; ++i) offsets.push_back(sample_scenario(mc, i).delta_x());
    const double d = oracle::ks_statistic_triangular(std::move(offsets), mc.dx_m);
    REQUIRE(d < 1.6276 / std::sqrt(static_cast<double>(n)));  // 1% critical value
}

TEST_CASE("single-trial averages equal direct evaluation") {
    const auto cfg = SystemConfig::defaults();
    McConfig mc;
    mc.trials = 1;
    mc.seed = 55;
    const std::vector<double> sweep{20.0};
    const auto cc_tbl =
        average_rates(cfg, mc, Design::cc, Mode::single, sweep, SearchConfig{});
    const Scenario sc = sample_scenario(mc, 0);
    auto deployed = cfg;  // single-pinch deployment for Dx = 20
    deployed.feed_x_t0 = deployed.feed_x_r0 = -10.0;
    deployed.deploy_max_x = 10.0;
    const auto direct = cc_design(deployed, sc);
    REQUIRE(cc_tbl[0].mean_ideal.cr == direct.rates.cr);
    REQUIRE(cc_tbl[0].mean_ideal.sr == direct.rates.sr);
    REQUIRE(cc_tbl[0].trials_used == 1);
    REQUIRE(cc_tbl[0].failed_trials == 0);
}

TEST_CASE("identical (seed, config) reproduce identical tables") {
    const auto cfg = SystemConfig::defaults();
    McConfig mc;
    mc.trials = 50;
    mc.seed = 31337;
    const std::vector<double> sweep{10.0, 20.0};
    const auto a = average_rates(cfg, mc, Design::sc, Mode::single, sweep, SearchConfig{});
    const auto b = average_rates(cfg, mc, Design::sc, Mode::single, sweep, SearchConfig{});
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].mean_ideal.cr == b[i].mean_ideal.cr);
        REQUIRE(a[i].mean_lossy.sr == b[i].mean_lossy.sr);
        REQUIRE(a[i].se_ideal.cr == b[i].se_ideal.cr);
    }
    // Parallel execution reduces in trial order, so jobs > 1 is bit-identical.
    const auto c =
        average_rates(cfg, mc, Design::sc, Mode::single, sweep, SearchConfig{}, 0.08, 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].mean_ideal.cr == c[i].mean_ideal.cr);
        REQUIRE(a[i].mean_ideal.sr == c[i].mean_ideal.sr);
    }
}

TEST_CASE("C-C mean communication rate is invariant across the region sweep") {
    const auto cfg = SystemConfig::defaults();
    McConfig mc;
    mc.trials = 100;
    mc.seed = 7;
    const std::vector<double> sweep{10.0, 20.0, 30.0, 40.0};
    const auto tbl = average_rates(cfg, mc, Design::cc, Mode::single, sweep, SearchConfig{});
    // The common batch maps the same unit draws into every rectangle, so
    // the user's transverse distance (hence the C-C rate) is unchanged.
    for (std::size_t i = 1; i < tbl.size(); ++i)
        REQUIRE(tbl[i].mean_ideal.cr == tbl[0].mean_ideal.cr);
}

TEST_CASE("design ordering of the mean communication rate at Dx = 20") {
    const auto cfg = SystemConfig::defaults();
    McConfig mc;
    mc.trials = 100;
    mc.seed = 7;
    const std::vector<double> sweep{20.0};
    const auto cc = average_rates(cfg, mc, Design::cc, Mode::single, sweep, SearchConfig{});
    const auto scd = average_rates(cfg, mc, Design::sc, Mode::single, sweep, SearchConfig{});
    const auto fx = average_rates(cfg, mc, Design::fixed, Mode::single, sweep, SearchConfig{});
    REQUIRE(cc[0].mean_ideal.cr > fx[0].mean_ideal.cr);
    REQUIRE(fx[0].mean_ideal.cr > scd[0].mean_ideal.cr);
    // Sensing-side mirror: S-C beats the fixed baseline on the mean SR.
    REQUIRE(scd[0].mean_ideal.sr > fx[0].mean_ideal.sr);
}

TEST_CASE("single-trial average region equals the instantaneous region") {
    const auto cfg = SystemConfig::defaults();
    McConfig mc;
    mc.trials = 1;
    mc.seed = 90;
    mc.alpha_grid = uniform_grid(0.0, 1.0, 21);
    const auto res = average_region(cfg, mc, Mode::single, SearchConfig{});
    auto deployed = cfg;
    deployed.feed_x_t0 = deployed.feed_x_r0 = -10.0;
    deployed.deploy_max_x = 10.0;
    const Scenario sc = sample_scenario(mc, 0);
    const auto direct = single_pinch_region(deployed, sc, mc.alpha_grid);
    REQUIRE(res.pass_ideal.hull_vertices.size() == direct.hull_vertices.size());
    for (std::size_t i = 0; i < direct.hull_vertices.size(); ++i) {
        REQUIRE(res.pass_ideal.hull_vertices[i].cr == direct.hull_vertices[i].cr);
        REQUIRE(res.pass_ideal.hull_vertices[i].sr == direct.hull_vertices[i].sr);
    }
    REQUIRE(res.failed_trials == 0);
}

TEST_CASE("averaged regions: loss shrinks, the baseline stays inside") {
    const auto cfg = SystemConfig::defaults();
    McConfig mc;
    mc.trials = 50;
    mc.seed = 4242;
    mc.alpha_grid = uniform_grid(0.0, 1.0, 41);
    const auto res = average_region(cfg, mc, Mode::single, SearchConfig{});
    REQUIRE(region_subset(res.pass_lossy, res.pass_ideal, 1e-12));
    REQUIRE(region_subset(res.timeshare_ideal, res.pass_ideal, 1e-9));
    REQUIRE(region_subset(res.fixed, res.pass_ideal, 1e-9));
    REQUIRE(res.failed_trials == 0);
}

TEST_CASE("per-trial containment of the fixed-antenna region") {
    const auto cfg = SystemConfig::defaults();
    McConfig mc;
    mc.seed = 31415;
    auto deployed = cfg;
    deployed.feed_x_t0 = deployed.feed_x_r0 = -10.0;
    deployed.deploy_max_x = 10.0;
    for (int i = 0; i < 50; ++i) {
        const Scenario sc = sample_scenario(mc, i);
        auto grid = uniform_grid(0.0, 1.0, 101);
        grid.push_back(alpha_for_location(deployed, sc, 0.0));
        REQUIRE(region_subset(fixed_region(deployed, sc, 0.0, 0.0),
                              single_pinch_region(deployed, sc, grid), 1e-9));
    }
}

TEST_CASE("multi-pinch batch at reference defaults has no failed trials") {
    auto cfg = SystemConfig::defaults();
    cfg.num_antennas_N = 4;
    McConfig mc;
    mc.trials = 6;
    mc.seed = 77;
    mc.alpha_grid = {0.0, 0.5, 1.0};
    SearchConfig search;
    search.grid_points_Q = 1001;
    const auto res = average_region(cfg, mc, Mode::multi, search);
    REQUIRE(res.failed_trials == 0);
    REQUIRE(res.trials_used == 6);
    REQUIRE(res.outer_ideal.has_value());
    REQUIRE(region_subset(res.pass_ideal, *res.outer_ideal, 1e-9));
    REQUIRE(region_subset(*res.outer_lossy, *res.outer_ideal, 1e-12));
}
