// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the pass-isac authors

#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "passisac/core_model.hpp"
#include "passisac/region.hpp"

namespace passisac {

/// Single-pinch (N = 1) placement for one rate-profile parameter alpha.
/// The activated location is parameterized as t = x_c + beta (x_s - x_c),
/// beta in [0, 1]; beta_star is 0/1 in the boundary regimes.
struct ParetoSolution {
    double alpha = 0.0;
    double t_star = 0.0;
    double beta_star = 0.0;
    RatePair rates;
};

namespace detail {

inline void check_single_pinch(const SystemConfig& cfg, const Scenario& sc) {
    if (cfg.num_antennas_N != 1)
        throw std::domain_error("single-pinch design requires num_antennas_N == 1");
    sc.validate();
}

inline ParetoSolution make_solution(const SystemConfig& cfg, const Scenario& sc,
                                    double alpha, double beta) {
    ParetoSolution out;
    out.alpha = alpha;
    out.beta_star = beta;
    out.t_star = sc.user_x + beta * (sc.target_x - sc.user_x);
    out.rates = rate_pair(cfg, sc, Beamformer{{out.t_star}});
    return out;
}

}  // namespace detail

/// Communications-centric design: activate at the user's projection x_c.
inline ParetoSolution cc_design(const SystemConfig& cfg, const Scenario& sc) {
    detail::check_single_pinch(cfg, sc);
    return detail::make_solution(cfg, sc, 1.0, 0.0);
}

/// Sensing-centric design: activate at the target's projection x_s.
inline ParetoSolution sc_design(const SystemConfig& cfg, const Scenario& sc) {
    detail::check_single_pinch(cfg, sc);
    return detail::make_solution(cfg, sc, 0.0, 1.0);
}

/// Rate-profile optimal single-pinch placement.
///
/// Maximizes min{ R_c / alpha, R_s / (1 - alpha) } over the activated
/// location.  The optimum lies on the segment between the user and target
/// projections; with the scaled objectives
///     f_c(beta) = (1/alpha)      log2(1 + gc / (d_c^2 + beta^2  Dx^2)),
///     f_s(beta) = (1/(L(1-a)))   log2(1 + gs / (d_s^2 + (1-b)^2 Dx^2)),
/// the solution is x_s when f_s(1) < f_c(1), x_c when f_s(0) > f_c(0), and
/// otherwise the root of f_c = f_s found by bisection on beta in [0, 1].
/// Ties in the regime tests fall through to the bisection branch, which
/// then returns a boundary beta.  The placement math assumes the ideal
/// (lossless) guide; the reported rates are evaluated under cfg as given.
inline ParetoSolution pareto_design(const SystemConfig& cfg, const Scenario& sc, double alpha) {
    detail::check_single_pinch(cfg, sc);
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::domain_error("pareto_design: alpha must lie in [0, 1]");
    if (alpha == 1.0) return cc_design(cfg, sc);
    if (alpha == 0.0) return sc_design(cfg, sc);

    const double dx = sc.delta_x();
    if (dx == 0.0) return detail::make_solution(cfg, sc, alpha, 0.0);

    const double gc = gamma_bar_c(cfg);
    const double gs = gamma_bar_s(cfg, sc);
    const double dc2 = sc.d_c_sq(cfg);
    const double ds2 = sc.d_s_sq(cfg);
    const double L = cfg.frame_len_L;
    const auto f_c = [&](double beta) {
        return log2_1p(gc / (dc2 + beta * beta * dx * dx)) / alpha;
    };
    const auto f_s = [&](double beta) {
        const double u = 1.0 - beta;
        return log2_1p(gs / (ds2 + u * u * dx * dx)) / (L * (1.0 - alpha));
    };

    if (f_s(1.0) < f_c(1.0)) return detail::make_solution(cfg, sc, alpha, 1.0);
    if (f_s(0.0) > f_c(0.0)) return detail::make_solution(cfg, sc, alpha, 0.0);

    // f_c - f_s is strictly decreasing, nonnegative at 0 and nonpositive
    // at 1, so plain bisection is safe.
    double lo = 0.0, hi = 1.0;
    double mid = 0.5;
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double g = f_c(mid) - f_s(mid);
        if (std::abs(g) < 1e-9 || hi - lo < 1e-12) break;
        if (g > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return detail::make_solution(cfg, sc, alpha, mid);
}

/// Inverse of the rate-profile map: the alpha whose optimal activated
/// location is t (clamped to the user/target segment).  Useful to anchor
/// the frontier at a prescribed location, e.g. a fixed-antenna position.
inline double alpha_for_location(const SystemConfig& cfg, const Scenario& sc, double t) {
    detail::check_single_pinch(cfg, sc);
    const double lo = std::min(sc.user_x, sc.target_x);
    const double hi = std::max(sc.user_x, sc.target_x);
    const double tc = std::min(std::max(t, lo), hi);
    const double dx = sc.delta_x();
    if (dx == 0.0) return 1.0;
    const double beta = std::abs(tc - sc.user_x) / dx;
    if (beta == 0.0) return 1.0;
    if (beta == 1.0) return 0.0;
    const double a = log2_1p(gamma_bar_c(cfg) / (sc.d_c_sq(cfg) + beta * beta * dx * dx));
    const double u = 1.0 - beta;
    const double b = log2_1p(gamma_bar_s(cfg, sc) / (sc.d_s_sq(cfg) + u * u * dx * dx));
    // Solve f_c(beta) = f_s(beta) for alpha: a L (1 - alpha) = b alpha.
    return a * cfg.frame_len_L / (b + a * cfg.frame_len_L);
}

/// Alpha grid tracing the frontier at uniformly spaced activated locations
/// between the user and target projections (first entry 1, last entry 0).
/// With strongly asymmetric rates the Pareto trade-off occupies a narrow
/// alpha window, where uniform alpha sampling would collapse every anchor
/// onto the endpoint designs; mapping locations through the inverse
/// rate-profile relation spreads the anchors evenly along the boundary.
inline std::vector<double> frontier_alpha_grid(const SystemConfig& cfg, const Scenario& sc,
                                               int count) {
    if (count < 2) throw std::domain_error("frontier_alpha_grid: need at least two points");
    std::vector<double> grid(count);
    if (sc.delta_x() == 0.0) {
        for (int k = 0; k < count; ++k)
            grid[k] = 1.0 - static_cast<double>(k) / (count - 1);
        return grid;
    }
    for (int k = 0; k < count; ++k) {
        const double t =
            sc.user_x + (sc.target_x - sc.user_x) * static_cast<double>(k) / (count - 1);
        grid[k] = alpha_for_location(cfg, sc, t);
    }
    grid.front() = 1.0;
    grid.back() = 0.0;
    return grid;
}

/// Complete single-pinch rate region: time-sharing hull of the rectangles
/// anchored at the rate-profile optima over the alpha grid.  The grid must
/// contain 0 and 1 so the sensing- and communications-centric anchors are
/// always present.
inline RateRegion single_pinch_region(const SystemConfig& cfg, const Scenario& sc,
                                      std::span<const double> alpha_grid) {
    if (alpha_grid.empty()) throw std::domain_error("single_pinch_region: empty alpha grid");
    bool has0 = false, has1 = false;
    for (double a : alpha_grid) {
        if (!(a >= 0.0 && a <= 1.0))
            throw std::domain_error("single_pinch_region: alpha grid outside [0, 1]");
        has0 |= (a == 0.0);
        has1 |= (a == 1.0);
    }
    if (!has0 || !has1)
        throw std::domain_error("single_pinch_region: alpha grid must contain 0 and 1");
    std::vector<RatePair> corners;
    corners.reserve(alpha_grid.size());
    for (double a : alpha_grid) corners.push_back(pareto_design(cfg, sc, a).rates);
    return hull_of_rectangles(std::move(corners));
}

/// Rate region of the fixed-antenna baseline: a single rectangle.
inline RateRegion fixed_region(const SystemConfig& cfg, const Scenario& sc,
                               double tx_x, double rx_x) {
    return hull_of_rectangles({fixed_antenna_rates(cfg, sc, tx_x, rx_x)});
}

}  // namespace passisac
