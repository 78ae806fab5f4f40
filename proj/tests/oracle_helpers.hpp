// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the pass-isac authors
//
// Independent oracles used by the tests.  These deliberately evaluate the
// model from the defining quantities (explicit spatial channel vector,
// in-waveguide phasors and amplitudes, raw unreduced trig arguments)
// instead of the flattened closed forms the library computes, so the two
// paths only agree if the algebraic simplifications are right.

#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "passisac/core_model.hpp"

namespace oracle {

struct Vec3 {
    double x, y, z;
};

inline double dist(const Vec3& a, const Vec3& b) {
    return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                     (a.z - b.z) * (a.z - b.z));
}

/// Free-space spatial channel eta^{1/2} e^{-j k0 ||u - psi||} / ||u - psi||.
inline std::complex<double> spatial_channel(const passisac::SystemConfig& cfg, const Vec3& u,
                                            const Vec3& psi) {
    const double d = dist(u, psi);
    const double phase = cfg.wavenumber_k0 * d;
    return std::sqrt(cfg.eta_m2) * std::complex<double>(std::cos(phase), -std::sin(phase)) / d;
}

/// In-waveguide phasor e^{-j 2 pi |t - t0| / lambda_g} with the lossy-guide
/// amplitude folded in.
inline std::complex<double> guide_phasor(const passisac::SystemConfig& cfg, double t,
                                         double feed_x) {
    const double d = std::abs(t - feed_x);
    const double phase = cfg.wavenumber_k0 * cfg.n_eff * d;
    const double amp = std::pow(10.0, -cfg.waveguide_loss_db_per_m * d / 20.0);
    return amp * std::complex<double>(std::cos(phase), -std::sin(phase));
}

/// Decoding SNR from the defining signal model:
/// (P / (N sigma_c^2)) |h(u_c, t)^T phi_t|^2.
inline double comm_snr(const passisac::SystemConfig& cfg, const passisac::Scenario& sc,
                       const passisac::Beamformer& bf) {
    const Vec3 user{sc.user_x, sc.user_y, 0.0};
    std::complex<double> dot = 0.0;
    for (double t : bf.positions) {
        const Vec3 pinch{t, cfg.y_tx, cfg.waveguide_height_d};
        dot += spatial_channel(cfg, user, pinch) * guide_phasor(cfg, t, cfg.feed_x_t0);
    }
    return cfg.power_w / (bf.size() * cfg.noise_comm_w) * std::norm(dot);
}

/// Effective sensing SNR from the defining model with the receive pinch at
/// r = x_s: (P L alpha_s / (N sigma_s^2)) |g_r|^2 |h(u_s, t)^T phi_t|^2.
inline double sense_snr(const passisac::SystemConfig& cfg, const passisac::Scenario& sc,
                        const passisac::Beamformer& bf) {
    const Vec3 target{sc.target_x, sc.target_y, 0.0};
    std::complex<double> dot = 0.0;
    for (double t : bf.positions) {
        const Vec3 pinch{t, cfg.y_tx, cfg.waveguide_height_d};
        dot += spatial_channel(cfg, target, pinch) * guide_phasor(cfg, t, cfg.feed_x_t0);
    }
    const Vec3 rx_pinch{sc.target_x, cfg.y_rx, cfg.waveguide_height_d};
    const std::complex<double> g_r = spatial_channel(cfg, target, rx_pinch) *
                                     guide_phasor(cfg, sc.target_x, cfg.feed_x_r0);
    return cfg.power_w * cfg.frame_len_L * cfg.alpha_s / (bf.size() * cfg.noise_sense_w) *
           std::norm(g_r) * std::norm(dot);
}

inline double comm_rate(const passisac::SystemConfig& cfg, const passisac::Scenario& sc,
                        const passisac::Beamformer& bf) {
    return std::log2(1.0 + oracle::comm_snr(cfg, sc, bf));
}

inline double sense_rate(const passisac::SystemConfig& cfg, const passisac::Scenario& sc,
                         const passisac::Beamformer& bf) {
    return std::log2(1.0 + oracle::sense_snr(cfg, sc, bf)) / cfg.frame_len_L;
}

/// Rate-profile objective used by the exhaustive-search oracles.
inline double profile_objective(const passisac::SystemConfig& cfg, const passisac::Scenario& sc,
                                const passisac::Beamformer& bf, double alpha) {
    if (alpha == 1.0) return passisac::comm_rate(cfg, sc, bf);
    if (alpha == 0.0) return passisac::sense_rate(cfg, sc, bf);
    return std::min(passisac::comm_rate(cfg, sc, bf) / alpha,
                    passisac::sense_rate(cfg, sc, bf) / (1.0 - alpha));
}

/// Kolmogorov-Smirnov statistic of samples against the triangular CDF on
/// [0, width] with mode 0: F(x) = x (2 width - x) / width^2.
inline double ks_statistic_triangular(std::vector<double> samples, double width) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double x = samples[i];
        const double f = x * (2.0 * width - x) / (width * width);
        d = std::max(d, std::abs((i + 1) / n - f));
        d = std::max(d, std::abs(f - i / n));
    }
    return d;
}

}  // namespace oracle

inline void check_rel(double actual, double expected, double rel = 1e-12) {
    if (expected == 0.0) {
        REQUIRE_THAT(actual, Catch::Matchers::WithinAbs(0.0, 1e-300));
    } else {
        REQUIRE_THAT(actual, Catch::Matchers::WithinRel(expected, rel));
    }
}
