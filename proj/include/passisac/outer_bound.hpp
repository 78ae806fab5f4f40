// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the pass-isac authors

#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "passisac/core_model.hpp"
#include "passisac/region.hpp"

namespace passisac {

/// One point of the closed-form outer bound, indexed by Z_beta, i.e. the
/// sum of the normalized activated locations beta_n in [0, 1].
struct BoundPoint {
    double z_beta = 0.0;
    double cr_ub = 0.0;
    double sr_ub = 0.0;
};

/// Majorization upper bound on sum_n 1/(rho^2 + beta_n^2) over all
/// beta in [0,1]^N with sum beta_n^2 = s.  The maximum is attained by the
/// extremal profile (1, ..., 1, frac, 0, ..., 0) with floor(s) ones, so
///
///   f_ub = floor(s)/(rho^2 + 1) + 1/(rho^2 + s - floor(s))          [s not int]
///                               + (N - floor(s) - 1)/rho^2
///   f_ub = s/(rho^2 + 1) + (N - s)/rho^2                            [s int]
///
/// which is continuous in s on [0, N].
inline double f_ub(double rho_sq, double s, int n_antennas) {
    if (!(rho_sq > 0.0)) throw std::domain_error("f_ub: rho_sq must be positive");
    if (!(s >= 0.0 && s <= static_cast<double>(n_antennas)))
        throw std::domain_error("f_ub: s outside [0, N]");
    const double fl = std::floor(s);
    const double frac = s - fl;
    double value = fl / (rho_sq + 1.0);
    double zeros = static_cast<double>(n_antennas) - fl;
    if (frac > 0.0) {
        value += 1.0 / (rho_sq + frac);
        zeros -= 1.0;
    }
    return value + zeros / rho_sq;
}

namespace detail {

inline void check_outer_args(const SystemConfig& cfg, const Scenario& sc, double z_beta) {
    sc.validate();
    if (!(z_beta >= 0.0 && z_beta <= static_cast<double>(cfg.num_antennas_N)))
        throw std::domain_error("outer bound: z_beta outside [0, N]");
    if (sc.delta_x() < 1e-9)
        throw std::domain_error("outer bound: delta_x below the degenerate threshold");
}

inline double cr_outer_scaled(const SystemConfig& cfg, const Scenario& sc, double z_beta,
                              double gc_scale) {
    const double n = cfg.num_antennas_N;
    const double dx2 = sc.delta_x() * sc.delta_x();
    const double f = f_ub(sc.d_c_sq(cfg) / dx2, z_beta * z_beta / n, cfg.num_antennas_N);
    return log2_1p(gamma_bar_c(cfg) * gc_scale * n / dx2 * f);
}

inline double sr_outer_scaled(const SystemConfig& cfg, const Scenario& sc, double z_beta,
                              double gs_scale) {
    const double n = cfg.num_antennas_N;
    const double dx2 = sc.delta_x() * sc.delta_x();
    const double u = n - z_beta;
    const double f = f_ub(sc.d_s_sq(cfg) / dx2, u * u / n, cfg.num_antennas_N);
    return log2_1p(gamma_bar_s(cfg, sc) * gs_scale * n / dx2 * f) / cfg.frame_len_L;
}

inline RateRegion outer_region_scaled(const SystemConfig& cfg, const Scenario& sc,
                                      std::span<const double> z_grid, double gc_scale,
                                      double gs_scale) {
    const double n2 = static_cast<double>(cfg.num_antennas_N) * cfg.num_antennas_N;
    if (sc.delta_x() < 1e-9) {
        const double cr = log2_1p(gamma_bar_c(cfg) * gc_scale * n2 / sc.d_c_sq(cfg));
        const double sr =
            log2_1p(gamma_bar_s(cfg, sc) * gs_scale * n2 / sc.d_s_sq(cfg)) / cfg.frame_len_L;
        return hull_of_rectangles({RatePair{cr, sr}});
    }
    if (z_grid.empty()) throw std::domain_error("outer_region: empty z grid");
    std::vector<RatePair> corners;
    corners.reserve(z_grid.size());
    for (double z : z_grid) {
        check_outer_args(cfg, sc, z);
        corners.push_back({cr_outer_scaled(cfg, sc, z, gc_scale),
                           sr_outer_scaled(cfg, sc, z, gs_scale)});
    }
    return hull_of_rectangles(std::move(corners));
}

}  // namespace detail

/// Outer-bound CR for a given Z_beta (phase-ignored relaxation followed by
/// the Cauchy-Schwarz and majorization steps).  Requires delta_x > 0.
inline double cr_outer(const SystemConfig& cfg, const Scenario& sc, double z_beta) {
    detail::check_outer_args(cfg, sc, z_beta);
    return detail::cr_outer_scaled(cfg, sc, z_beta, 1.0);
}

/// Outer-bound SR for a given Z_beta; the f_ub argument mirrors the CR case
/// with (N - Z_beta)^2 / N.
inline double sr_outer(const SystemConfig& cfg, const Scenario& sc, double z_beta) {
    detail::check_outer_args(cfg, sc, z_beta);
    return detail::sr_outer_scaled(cfg, sc, z_beta, 1.0);
}

inline BoundPoint outer_bound_point(const SystemConfig& cfg, const Scenario& sc, double z_beta) {
    return {z_beta, cr_outer(cfg, sc, z_beta), sr_outer(cfg, sc, z_beta)};
}

/// Degenerate outer bound for delta_x = 0: the coherent N^2 array-gain cap
/// implied by the triangle inequality, as a single rectangle.
inline RateRegion degenerate_outer(const SystemConfig& cfg, const Scenario& sc) {
    sc.validate();
    const double n2 = static_cast<double>(cfg.num_antennas_N) * cfg.num_antennas_N;
    const double cr = log2_1p(gamma_bar_c(cfg) * n2 / sc.d_c_sq(cfg));
    const double sr = log2_1p(gamma_bar_s(cfg, sc) * n2 / sc.d_s_sq(cfg)) / cfg.frame_len_L;
    return hull_of_rectangles({RatePair{cr, sr}});
}

/// Closed-form outer bound on the multi-pinch rate region: hull of the
/// rectangles [0, cr_outer(Z)] x [0, sr_outer(Z)] over the Z grid.
/// Dispatches to degenerate_outer below the delta_x threshold of 1e-9 m.
inline RateRegion outer_region(const SystemConfig& cfg, const Scenario& sc,
                               std::span<const double> z_grid) {
    sc.validate();
    return detail::outer_region_scaled(cfg, sc, z_grid, 1.0, 1.0);
}

/// Lossy-guide outer bound: every antenna is credited with the smallest
/// possible in-waveguide attenuation, based on the feed distance to
/// min{x_c, x_s}; the receive side mirrors the transmit convention.
inline RateRegion case2_outer(const SystemConfig& cfg, const Scenario& sc,
                              std::span<const double> z_grid) {
    sc.validate();
    const double m = std::min(sc.user_x, sc.target_x);
    const double tx_amp = detail::guide_amplitude(cfg.waveguide_loss_db_per_m, m - cfg.feed_x_t0);
    const double rx_amp = detail::guide_amplitude(cfg.waveguide_loss_db_per_m, m - cfg.feed_x_r0);
    return detail::outer_region_scaled(cfg, sc, z_grid, tx_amp * tx_amp,
                                       tx_amp * tx_amp * rx_amp * rx_amp);
}

/// Uniform grid with `count` points on [lo, hi], endpoints included.
inline std::vector<double> uniform_grid(double lo, double hi, int count) {
    if (count < 2) throw std::domain_error("uniform_grid: need at least two points");
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

}  // namespace passisac
