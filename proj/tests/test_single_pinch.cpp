// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the pass-isac authors

#include <catch2/catch_amalgamated.hpp>

#include "oracle_helpers.hpp"
#include "passisac/monte_carlo.hpp"
#include "passisac/rng.hpp"
#include "passisac/single_pinch.hpp"

using namespace passisac;

namespace {

Scenario base_scenario(double user_x = 0.0) { return Scenario{user_x, 1.0, -8.0, -1.0}; }

}  // namespace

TEST_CASE("cc and sc designs: frozen reference values") {
    const auto cfg = SystemConfig::defaults();
    const auto sc = base_scenario();
    const auto cc = cc_design(cfg, sc);
    REQUIRE(cc.t_star == sc.user_x);
    check_rel(cc.rates.cr, 16.628367501847478);
    check_rel(cc.rates.sr, 0.013992917309057407);
    const auto scd = sc_design(cfg, sc);
    REQUIRE(scd.t_star == sc.target_x);
    check_rel(scd.rates.cr, 14.440791132059905);
    check_rel(scd.rates.sr, 0.090353060091435053);
}

TEST_CASE("aligned user and target remove the trade-off") {
    const auto cfg = SystemConfig::defaults();
    const Scenario sc{-3.0, 1.0, -3.0, -1.0};
    const auto cc = cc_design(cfg, sc);
    check_rel(cc.rates.sr, std::log2(1.0 + gamma_bar_s(cfg, sc) / sc.d_s_sq(cfg)) / 5.0);
}

TEST_CASE("large axial offset starves the off-task rate") {
    const auto cfg = SystemConfig::defaults();
    const Scenario far{0.0, 1.0, 4.0e5, -1.0};
    REQUIRE(cc_design(cfg, far).rates.sr < 1e-9);
    REQUIRE(sc_design(cfg, far).rates.cr < 1e-3);
}

TEST_CASE("rate-profile endpoints dispatch to the centric designs") {
    const auto cfg = SystemConfig::defaults();
    const auto sc = base_scenario();
    REQUIRE(pareto_design(cfg, sc, 1.0).t_star == sc.user_x);
    REQUIRE(pareto_design(cfg, sc, 0.0).t_star == sc.target_x);
    REQUIRE_THROWS_AS(pareto_design(cfg, sc, -0.1), std::domain_error);
    REQUIRE_THROWS_AS(pareto_design(cfg, sc, 1.1), std::domain_error);
    auto cfg2 = cfg;
    cfg2.num_antennas_N = 2;
    REQUIRE_THROWS_AS(pareto_design(cfg2, sc, 0.5), std::domain_error);
}

TEST_CASE("rate-profile placement matches an exhaustive grid search") {
    const auto cfg = SystemConfig::defaults();
    const Scenario sc{8.0, 1.0, -8.0, -1.0};
    SplitMix64 rng(31);
    for (int rep = 0; rep < 12; ++rep) {
        const double alpha = rep == 0 ? 0.5 : rng.uniform(0.01, 0.99);
        const auto sol = pareto_design(cfg, sc, alpha);
        const double lo = std::min(sc.user_x, sc.target_x);
        const double hi = std::max(sc.user_x, sc.target_x);
        const int points = 200000;
        const double step = (hi - lo) / (points - 1);
        double best = -1.0, best_t = lo;
        for (int i = 0; i < points; ++i) {
            const double t = lo + step * i;
            const double v = oracle::profile_objective(cfg, sc, Beamformer{{t}}, alpha);
            if (v > best) {
                best = v;
                best_t = t;
            }
        }
        REQUIRE(std::abs(sol.t_star - best_t) <= step);
        const double achieved = oracle::profile_objective(cfg, sc, Beamformer{{sol.t_star}}, alpha);
        REQUIRE(std::abs(achieved - best) <= 1e-6);
    }
}

TEST_CASE("interior bisection closes the scaled-rate gap") {
    const auto cfg = SystemConfig::defaults();
    const auto sc = base_scenario();
    // Pick alphas whose optimum is strictly interior via the inverse map.
    for (double t : {-6.0, -4.0, -2.0, -0.5}) {
        const double alpha = alpha_for_location(cfg, sc, t);
        REQUIRE(alpha > 0.0);
        REQUIRE(alpha < 1.0);
        const auto sol = pareto_design(cfg, sc, alpha);
        REQUIRE(sol.beta_star > 0.0);
        REQUIRE(sol.beta_star < 1.0);
        REQUIRE(std::abs(sol.t_star - t) < 1e-6);
        const double fc = sol.rates.cr / alpha;
        const double fs = sol.rates.sr / (1.0 - alpha);
        REQUIRE(std::abs(fc - fs) <= 1e-9);
    }
}

TEST_CASE("mirrored scenarios give mirrored placements") {
    const auto cfg = SystemConfig::defaults();
    const Scenario right{-8.0, 1.0, 8.0, -1.0};  // target to the right of the user
    const double alpha = alpha_for_location(cfg, right, 1.0);
    const auto sol = pareto_design(cfg, right, alpha);
    REQUIRE(std::abs(sol.t_star - 1.0) < 1e-6);
    REQUIRE(sol.t_star >= right.user_x);
    REQUIRE(sol.t_star <= right.target_x);
}

TEST_CASE("frontier is monotone in the profile parameter") {
    const auto cfg = SystemConfig::defaults();
    const auto sc = base_scenario(5.0);
    double prev_cr = -1.0, prev_sr = 1e9;
    for (double a : uniform_grid(0.0, 1.0, 41)) {
        const auto sol = pareto_design(cfg, sc, a);
        REQUIRE(sol.rates.cr >= prev_cr - 1e-12);
        REQUIRE(sol.rates.sr <= prev_sr + 1e-12);
        prev_cr = sol.rates.cr;
        prev_sr = sol.rates.sr;
        // Weak Pareto efficiency against the two anchors.
        REQUIRE(sol.rates.cr >= sc_design(cfg, sc).rates.cr - 1e-12);
        REQUIRE(sol.rates.sr >= cc_design(cfg, sc).rates.sr - 1e-12);
        REQUIRE(sol.t_star >= std::min(sc.user_x, sc.target_x));
        REQUIRE(sol.t_star <= std::max(sc.user_x, sc.target_x));
    }
}

TEST_CASE("solution rates are consistent with the core model") {
    const auto cfg = SystemConfig::defaults();
    const auto sc = base_scenario(3.0);
    for (double a : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        const auto sol = pareto_design(cfg, sc, a);
        const auto direct = rate_pair(cfg, sc, Beamformer{{sol.t_star}});
        check_rel(sol.rates.cr, direct.cr);
        check_rel(sol.rates.sr, direct.sr);
    }
}

TEST_CASE("single-pinch region: aligned scenario is a rectangle") {
    const auto cfg = SystemConfig::defaults();
    const Scenario sc{-3.0, 1.0, -3.0, -1.0};
    const auto region = single_pinch_region(cfg, sc, uniform_grid(0.0, 1.0, 11));
    REQUIRE(region.hull_vertices.size() == 3);
    check_rel(region.cr_max(), std::log2(1.0 + gamma_bar_c(cfg) / sc.d_c_sq(cfg)));
    check_rel(region.sr_max(), std::log2(1.0 + gamma_bar_s(cfg, sc) / sc.d_s_sq(cfg)) / 5.0);
}

TEST_CASE("single-pinch region: endpoint grid is the pure time-sharing hull") {
    const auto cfg = SystemConfig::defaults();
    const auto sc = base_scenario();
    const std::vector<double> ends{0.0, 1.0};
    const auto region = single_pinch_region(cfg, sc, ends);
    const auto direct =
        hull_of_rectangles({sc_design(cfg, sc).rates, cc_design(cfg, sc).rates});
    REQUIRE(region.hull_vertices.size() == direct.hull_vertices.size());
    for (std::size_t i = 0; i < region.hull_vertices.size(); ++i) {
        REQUIRE(region.hull_vertices[i].cr == direct.hull_vertices[i].cr);
        REQUIRE(region.hull_vertices[i].sr == direct.hull_vertices[i].sr);
    }
}

TEST_CASE("denser alpha grids enlarge the region") {
    const auto cfg = SystemConfig::defaults();
    const auto sc = base_scenario(2.0);
    const auto coarse = single_pinch_region(cfg, sc, uniform_grid(0.0, 1.0, 2));
    const auto dense = single_pinch_region(cfg, sc, uniform_grid(0.0, 1.0, 101));
    REQUIRE(region_subset(coarse, dense, 1e-12));
}

TEST_CASE("single-pinch region rejects bad grids") {
    const auto cfg = SystemConfig::defaults();
    const auto sc = base_scenario();
    REQUIRE_THROWS_AS(single_pinch_region(cfg, sc, std::vector<double>{}), std::domain_error);
    REQUIRE_THROWS_AS(single_pinch_region(cfg, sc, std::vector<double>{0.0, 0.5}),
                      std::domain_error);
    REQUIRE_THROWS_AS(single_pinch_region(cfg, sc, std::vector<double>{0.0, 1.0, 1.5}),
                      std::domain_error);
}

TEST_CASE("fixed region is a rectangle; vanishing power collapses it") {
    const auto cfg = SystemConfig::defaults();
    const auto sc = base_scenario();
    const auto region = fixed_region(cfg, sc, 0.0, 0.0);
    REQUIRE(region.hull_vertices.size() == 3);
    check_rel(region.cr_max(), 16.628367501847478);
    check_rel(region.sr_max(), 0.0031302736231451885);
    auto faint = cfg;
    faint.power_w = 1e-290;
    const auto tiny = fixed_region(faint, sc, 0.0, 0.0);
    REQUIRE(tiny.cr_max() < 1e-12);
    REQUIRE(tiny.sr_max() < 1e-12);
}

TEST_CASE("in-segment fixed antennas are dominated pointwise") {
    const auto cfg = SystemConfig::defaults();
    const auto sc = base_scenario(4.0);
    for (double tf : {-6.0, -2.0, 0.0, 3.0}) {
        auto grid = uniform_grid(0.0, 1.0, 101);
        grid.push_back(alpha_for_location(cfg, sc, tf));
        const auto region = single_pinch_region(cfg, sc, grid);
        REQUIRE(region_subset(fixed_region(cfg, sc, tf, 0.0), region, 1e-9));
    }
}

TEST_CASE("fixed-antenna region nests inside the single-pinch region") {
    const auto cfg = SystemConfig::defaults();
    McConfig mc;
    mc.seed = 99;
    for (int i = 0; i < 40; ++i) {
        const Scenario sc = sample_scenario(mc, i);
        auto grid = uniform_grid(0.0, 1.0, 101);
        grid.push_back(alpha_for_location(cfg, sc, 0.0));
        const auto region = single_pinch_region(cfg, sc, grid);
        const auto fixed = fixed_region(cfg, sc, 0.0, 0.0);
        REQUIRE(region_subset(fixed, region, 1e-9));
    }
}
