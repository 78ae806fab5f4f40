// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the pass-isac authors

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "oracle_helpers.hpp"
#include "passisac/monte_carlo.hpp"
#include "passisac/rng.hpp"
#include "passisac/sensing.hpp"

using namespace passisac;

namespace {

VirtualChannel random_channel(SplitMix64& rng, int L) {
    VirtualChannel vc;
    vc.alpha_s = 10.0;
    vc.sigma_sq = 1.0;
    vc.h_v.resize(L);
    for (auto& h : vc.h_v) h = rng.complex_normal(1.0);
    return vc;
}

}  // namespace

TEST_CASE("determinant and rank-one MI forms agree") {
    SplitMix64 rng(61);
    for (int i = 0; i < 1000; ++i) {
        const int L = 1 + static_cast<int>(rng.next_u64() % 16);
        const auto vc = random_channel(rng, L);
        REQUIRE(std::abs(mi_determinant(vc) - mi_scalar(vc)) <= 1e-10);
    }
}

TEST_CASE("MI edge cases") {
    VirtualChannel vc;
    vc.alpha_s = 10.0;
    vc.sigma_sq = 1.0;
    vc.h_v.assign(4, {0.0, 0.0});
    check_rel(mi_determinant(vc), 0.0);
    check_rel(mi_scalar(vc), 0.0);
    vc.h_v = {{1.5, -0.5}};
    check_rel(mi_determinant(vc), std::log2(1.0 + 10.0 * std::norm(vc.h_v[0])), 1e-12);
    vc.h_v.assign(80, {1.0, 0.0});
    REQUIRE_THROWS_AS(mi_determinant(vc), std::domain_error);
}

TEST_CASE("mmse closed form: prior variance and vanishing limits") {
    VirtualChannel vc;
    vc.alpha_s = 10.0;
    vc.sigma_sq = 2.0;
    vc.h_v.assign(5, {0.0, 0.0});
    check_rel(mmse(vc), 10.0);  // no observation: prior variance remains
    vc.h_v.assign(5, {1e6, 0.0});
    REQUIRE(mmse(vc) < 1e-9);
    SplitMix64 rng(62);
    for (int i = 0; i < 200; ++i) {
        const auto r = random_channel(rng, 6);
        REQUIRE(mmse(r) > 0.0);
        REQUIRE(mmse(r) <= r.alpha_s);
    }
}

TEST_CASE("mmse matches the simulated linear estimator") {
    SplitMix64 rng(63);
    const auto vc = random_channel(rng, 5);
    const double closed = mmse(vc);
    const int draws = 100000;
    const double est = empirical_mmse(vc, draws, 202608);
    // |err|^2 is exponential with mean mmse, so the sample-mean standard
    // error is mmse / sqrt(draws).
    const double se = closed / std::sqrt(static_cast<double>(draws));
    REQUIRE(std::abs(est - closed) <= 3.0 * se);
}

TEST_CASE("frame rate and virtual-channel MI are two views of one quantity") {
    const auto cfg = SystemConfig::defaults();
    const Scenario sc{0.0, 1.0, -8.0, -1.0};
    const auto stream = unit_power_stream(cfg.frame_len_L, 7);
    double norm_sq = 0.0;
    for (const auto& s : stream) norm_sq += std::norm(s);
    check_rel(norm_sq, static_cast<double>(cfg.frame_len_L), 1e-14);
    SplitMix64 rng(64);
    for (int i = 0; i < 50; ++i) {
        const Beamformer bf{{rng.uniform(-10.0, 10.0)}};
        const auto vc = induced_virtual_channel(cfg, sc, bf, stream);
        check_rel(cfg.frame_len_L * sense_rate(cfg, sc, bf), mi_scalar(vc), 1e-12);
    }
    // Also under a lossy guide.
    auto lossy = cfg;
    lossy.waveguide_loss_db_per_m = 0.08;
    const Beamformer bf{{-4.0}};
    const auto vc = induced_virtual_channel(lossy, sc, bf, stream);
    check_rel(lossy.frame_len_L * sense_rate(lossy, sc, bf), mi_scalar(vc), 1e-12);
}

TEST_CASE("MI is strictly decreasing in the estimator error") {
    SplitMix64 rng(65);
    std::vector<VirtualChannel> channels;
    for (int i = 0; i < 30; ++i) channels.push_back(random_channel(rng, 4));
    std::vector<std::size_t> by_rate(channels.size()), by_mse(channels.size());
    for (std::size_t i = 0; i < channels.size(); ++i) by_rate[i] = by_mse[i] = i;
    std::sort(by_rate.begin(), by_rate.end(), [&](std::size_t a, std::size_t b) {
        return mi_scalar(channels[a]) > mi_scalar(channels[b]);
    });
    std::sort(by_mse.begin(), by_mse.end(), [&](std::size_t a, std::size_t b) {
        return mmse(channels[a]) < mmse(channels[b]);
    });
    REQUIRE(by_rate == by_mse);  // rank correlation exactly -1 on distinct values
}

TEST_CASE("rate maximization and error minimization pick the same candidate") {
    const auto cfg = SystemConfig::defaults();
    SplitMix64 rng(66);
    McConfig mc;
    mc.seed = 404;

    // Two clearly distinct candidates.
    {
        const Scenario sc = sample_scenario(mc, 0);
        auto c1 = SystemConfig::defaults();
        std::vector<Beamformer> two{Beamformer{{sc.target_x}}, Beamformer{{sc.target_x + 4.0}}};
        REQUIRE(rate_mse_duality_holds(c1, sc, two));
    }
    // Identical candidates tie and resolve to the same index.
    {
        const Scenario sc = sample_scenario(mc, 1);
        std::vector<Beamformer> same{Beamformer{{0.0}}, Beamformer{{0.0}}};
        REQUIRE(rate_mse_duality_holds(cfg, sc, same));
    }
    // Random three-antenna candidate sets.
    auto cfg3 = SystemConfig::defaults();
    cfg3.num_antennas_N = 3;
    for (int rep = 0; rep < 20; ++rep) {
        const Scenario sc = sample_scenario(mc, 2 + rep);
        std::vector<Beamformer> cands;
        for (int k = 0; k < 100; ++k) {
            const double base = rng.uniform(-10.0, 7.0);
            cands.push_back(Beamformer{{base, base + rng.uniform(0.1, 1.0),
                                        base + rng.uniform(1.2, 3.0)}});
        }
        REQUIRE(rate_mse_duality_holds(cfg3, sc, cands));
    }
}

TEST_CASE("virtual channel input validation") {
    const auto cfg = SystemConfig::defaults();
    const Scenario sc{0.0, 1.0, -8.0, -1.0};
    REQUIRE_THROWS_AS(unit_power_stream(0, 1), std::domain_error);
    const auto stream = unit_power_stream(3, 1);  // wrong length for L = 5
    REQUIRE_THROWS_AS(induced_virtual_channel(cfg, sc, Beamformer{{0.0}}, stream),
                      std::invalid_argument);
    VirtualChannel vc;
    vc.alpha_s = -1.0;
    vc.sigma_sq = 1.0;
    vc.h_v = {{1.0, 0.0}};
    REQUIRE_THROWS_AS(mmse(vc), std::domain_error);
}
