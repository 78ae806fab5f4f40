// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the pass-isac authors

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "passisac/core_model.hpp"
#include "passisac/region.hpp"

namespace passisac {

enum class InitStrategy { spread_midpoint, from_cc, from_sc };

/// Knobs of the element-wise alternating one-dimensional search.
struct SearchConfig {
    int grid_points_Q = 10000;
    int max_iters = 50;
    double rel_improvement_eps = 1e-4;
    InitStrategy init_strategy = InitStrategy::spread_midpoint;
    /// Deterministic multi-start: restart 0 uses init_strategy, further
    /// restarts slide the initial block across the deployment range.
    int restarts = 1;

    void validate() const {
        detail::require(grid_points_Q >= 2, "grid_points_Q must be >= 2");
        detail::require(max_iters >= 1, "max_iters must be >= 1");
        detail::require(rel_improvement_eps >= 0.0, "rel_improvement_eps must be >= 0");
        detail::require(restarts >= 1, "restarts must be >= 1");
    }
};

/// Raised when the spacing exclusion empties the search grid for one element.
class infeasible_placement_error : public std::runtime_error {
public:
    infeasible_placement_error(int element, const std::string& what)
        : std::runtime_error(what), element_index(element) {}
    int element_index;
};

/// Rate-profile objective min{ R_c / alpha, R_s / (1 - alpha) }; alpha = 1
/// and alpha = 0 degenerate to the plain CR and SR.  Interior alphas are
/// clamped away from the endpoints before dividing.
inline double objective_profile(const SystemConfig& cfg, const Scenario& sc,
                                const Beamformer& bf, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::domain_error("objective_profile: alpha must lie in [0, 1]");
    if (alpha == 1.0) return comm_rate(cfg, sc, bf);
    if (alpha == 0.0) return sense_rate(cfg, sc, bf);
    const double a = std::min(std::max(alpha, 1e-9), 1.0 - 1e-9);
    return std::min(comm_rate(cfg, sc, bf) / a, sense_rate(cfg, sc, bf) / (1.0 - a));
}

namespace detail {

/// Per-run tables for the one-dimensional search: the complex channel term
/// of every grid point is position-independent, so it is computed once and
/// each element update only combines it with the partial sum of the other
/// antennas.
struct ElementSearchContext {
    std::vector<double> grid;
    std::vector<std::complex<double>> comm_term;   // a(t) e^{-j theta_c(t)} / rho_c(t)
    std::vector<std::complex<double>> sense_term;  // a(t) e^{-j theta_s(t)} / rho_s(t)
    double gc = 0.0;       // gamma_bar_c
    double gs_rx = 0.0;    // gamma_bar_s including the receive-side loss
    double inv_L = 0.0;
    double spacing = 0.0;
    int spacing_steps = 1;  // smallest index gap with gap * step >= spacing

    ElementSearchContext(const SystemConfig& cfg, const Scenario& sc, const SearchConfig& search) {
        const int q = search.grid_points_Q;
        const double step = (cfg.deploy_max_x - cfg.feed_x_t0) / (q - 1);
        grid.resize(q);
        comm_term.resize(q);
        sense_term.resize(q);
        for (int i = 0; i < q; ++i) {
            grid[i] = (i == q - 1) ? cfg.deploy_max_x : cfg.feed_x_t0 + step * i;
            comm_term[i] = term(cfg, sc.user_x, sc.d_c_sq(cfg), grid[i]);
            sense_term[i] = term(cfg, sc.target_x, sc.d_s_sq(cfg), grid[i]);
        }
        const double rx_amp =
            guide_amplitude(cfg.waveguide_loss_db_per_m, sc.target_x - cfg.feed_x_r0);
        gc = gamma_bar_c(cfg);
        gs_rx = gamma_bar_s(cfg, sc) * rx_amp * rx_amp;
        inv_L = 1.0 / cfg.frame_len_L;
        spacing = cfg.min_spacing_delta;
        if (spacing > 0.0 && step > 0.0) {
            spacing_steps = static_cast<int>(std::ceil(spacing / step));
            while (spacing_steps * step < spacing) ++spacing_steps;
        }
    }

    static std::complex<double> term(const SystemConfig& cfg, double x, double axis_dist_sq,
                                     double t) {
        const double dx = t - x;
        const double rho = std::sqrt(axis_dist_sq + dx * dx);
        const double phase =
            cfg.wavenumber_k0 * (rho + std::abs(t - cfg.feed_x_t0) * cfg.n_eff);
        const double amp = guide_amplitude(cfg.waveguide_loss_db_per_m, t - cfg.feed_x_t0);
        return (amp / rho) * unit_phasor_neg(phase);
    }

    double value(double gain_c_sq, double gain_s_sq, double alpha) const {
        const double cr = log2_1p(gc * gain_c_sq);
        const double sr = log2_1p(gs_rx * gain_s_sq) * inv_L;
        if (alpha == 1.0) return cr;
        if (alpha == 0.0) return sr;
        const double a = std::min(std::max(alpha, 1e-9), 1.0 - 1e-9);
        return std::min(cr / a, sr / (1.0 - a));
    }

    bool admissible(double x, const std::vector<double>& positions, std::size_t skip) const {
        for (std::size_t k = 0; k < positions.size(); ++k) {
            if (k == skip) continue;
            const double gap = std::abs(x - positions[k]);
            if (spacing > 0.0 ? gap < spacing : gap == 0.0) return false;
        }
        return true;
    }

    double full_objective(const SystemConfig& cfg, const Scenario& sc,
                          const std::vector<double>& positions, double alpha) const;

    /// One element update: replace positions[n] by the admissible grid
    /// argmax of the profile objective (ties to the smallest coordinate).
    /// The objective never decreases: the incumbent position is kept when
    /// it beats every grid point, and a move is rolled back in the rare
    /// case where the incremental candidate scan and the reference
    /// objective disagree at rounding level.  Returns true on a move.
    bool update_element(const SystemConfig& cfg, const Scenario& sc, std::vector<double>& positions,
                        std::size_t n, double alpha) const {
        std::complex<double> part_c = 0.0, part_s = 0.0;
        for (std::size_t k = 0; k < positions.size(); ++k) {
            if (k == n) continue;
            part_c += term(cfg, sc.user_x, sc.d_c_sq(cfg), positions[k]);
            part_s += term(cfg, sc.target_x, sc.d_s_sq(cfg), positions[k]);
        }

        double best_val = -1.0;
        int best_idx = -1;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!admissible(grid[i], positions, n)) continue;
            const double v = value(std::norm(part_c + comm_term[i]),
                                   std::norm(part_s + sense_term[i]), alpha);
            if (v > best_val) {
                best_val = v;
                best_idx = static_cast<int>(i);
            }
        }
        if (best_idx < 0)
            throw infeasible_placement_error(
                static_cast<int>(n), "spacing constraint excludes every grid point for element " +
                                         std::to_string(n));

        const double cur = positions[n];
        const bool cur_admissible = admissible(cur, positions, n);
        if (cur_admissible) {
            const double cur_val =
                value(std::norm(part_c + term(cfg, sc.user_x, sc.d_c_sq(cfg), cur)),
                      std::norm(part_s + term(cfg, sc.target_x, sc.d_s_sq(cfg), cur)), alpha);
            if (cur_val > best_val || (cur_val == best_val && cur <= grid[best_idx]))
                return false;
        }
        if (grid[best_idx] == cur) return false;
        const double before = full_objective(cfg, sc, positions, alpha);
        positions[n] = grid[best_idx];
        // Roll back rounding-level inversions between the incremental scan
        // and the reference objective, but never back onto an inadmissible
        // incumbent.
        if (cur_admissible && full_objective(cfg, sc, positions, alpha) < before) {
            positions[n] = cur;
            return false;
        }
        return true;
    }
};

inline double ElementSearchContext::full_objective(const SystemConfig& cfg, const Scenario& sc,
                                                   const std::vector<double>& positions,
                                                   double alpha) const {
    return objective_profile(cfg, sc, Beamformer{positions}, alpha);
}

/// Initial on-grid placement: a block of N indices separated by the spacing
/// quantum, centered at the user/target midpoint (restart 0) or slid across
/// the free index span (later restarts), clipped to the range.
inline std::vector<double> spread_block_init(const ElementSearchContext& ctx,
                                             const SystemConfig& cfg, const Scenario& sc,
                                             int restart, int restarts) {
    const int q = static_cast<int>(ctx.grid.size());
    const int n = cfg.num_antennas_N;
    const int m = std::max(1, ctx.spacing_steps);
    const int span = (n - 1) * m;
    if (span > q - 1)
        throw infeasible_placement_error(-1, "grid too coarse for N antennas at minimum spacing");
    int base;
    if (restart == 0) {
        const double mid = 0.5 * (sc.user_x + sc.target_x);
        const double step = (cfg.deploy_max_x - cfg.feed_x_t0) / (q - 1);
        const int mid_idx = static_cast<int>(std::lround((mid - cfg.feed_x_t0) / step));
        base = mid_idx - span / 2;
    } else {
        // Slide the block evenly across the free index span; once
        // restarts - 2 reaches the span, every base index is visited.
        const long long free = q - 1 - span;
        base = static_cast<int>(static_cast<long long>(restart - 1) * free /
                                std::max(1, restarts - 2));
    }
    base = std::clamp(base, 0, q - 1 - span);
    std::vector<double> positions(n);
    for (int k = 0; k < n; ++k) positions[k] = ctx.grid[base + k * m];
    return positions;
}

}  // namespace detail

/// Element-wise update of one activated location over the admissible grid.
/// `bf` must be feasible except possibly at coordinate n.
inline Beamformer optimize_element(const SystemConfig& cfg, const Scenario& sc,
                                   const Beamformer& bf, int n, double alpha,
                                   const SearchConfig& search) {
    cfg.validate();
    search.validate();
    detail::check_inputs(cfg, sc, bf);
    if (n < 0 || n >= static_cast<int>(bf.size()))
        throw std::invalid_argument("optimize_element: element index out of range");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::domain_error("optimize_element: alpha must lie in [0, 1]");
    const detail::ElementSearchContext ctx(cfg, sc, search);
    Beamformer out = bf;
    ctx.update_element(cfg, sc, out.positions, static_cast<std::size_t>(n), alpha);
    return out;
}

struct OptimizeResult {
    Beamformer beamformer;
    RatePair rates;
    double objective = 0.0;
    int iterations = 0;
    std::vector<double> objective_trace;  // objective after init and after each sweep
};

/// Alternating element-wise one-dimensional search for the rate-profile
/// problem.  Sweeps n = 1..N until the fractional objective improvement
/// falls below rel_improvement_eps (or a sweep moves nothing, or max_iters
/// is hit); the objective trace is nondecreasing.  Output positions are
/// returned sorted.
inline OptimizeResult optimize_beamformer(const SystemConfig& cfg, const Scenario& sc,
                                          double alpha, const SearchConfig& search) {
    cfg.validate();
    search.validate();
    sc.validate();
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::domain_error("optimize_beamformer: alpha must lie in [0, 1]");

    const detail::ElementSearchContext ctx(cfg, sc, search);
    const std::size_t n = static_cast<std::size_t>(cfg.num_antennas_N);

    OptimizeResult best;
    bool have_best = false;
    for (int restart = 0; restart < search.restarts; ++restart) {
        std::vector<double> positions;
        if (restart == 0 && search.init_strategy != InitStrategy::spread_midpoint) {
            SearchConfig inner = search;
            inner.init_strategy = InitStrategy::spread_midpoint;
            inner.restarts = 1;
            const double a0 = search.init_strategy == InitStrategy::from_cc ? 1.0 : 0.0;
            positions = optimize_beamformer(cfg, sc, a0, inner).beamformer.positions;
        } else {
            positions = detail::spread_block_init(ctx, cfg, sc, restart, search.restarts);
        }

        Beamformer bf{positions};
        double obj = objective_profile(cfg, sc, bf, alpha);
        std::vector<double> trace{obj};
        int iters = 0;
        for (; iters < search.max_iters; ++iters) {
            bool moved = false;
            for (std::size_t k = 0; k < n; ++k)
                moved |= ctx.update_element(cfg, sc, bf.positions, k, alpha);
            const double new_obj = objective_profile(cfg, sc, bf, alpha);
            trace.push_back(new_obj);
            const double frac = (new_obj - obj) / std::max(obj, 1e-300);
            obj = new_obj;
            if (!moved || frac < search.rel_improvement_eps) {
                ++iters;
                break;
            }
        }

        if (!have_best || obj > best.objective) {
            have_best = true;
            best.beamformer = bf;
            best.objective = obj;
            best.iterations = iters;
            best.objective_trace = std::move(trace);
        }
    }

    std::sort(best.beamformer.positions.begin(), best.beamformer.positions.end());
    best.rates = rate_pair(cfg, sc, best.beamformer);
    best.objective = objective_profile(cfg, sc, best.beamformer, alpha);
    return best;
}

/// Communications-centric multi-pinch beamformer (rate-profile engine with
/// alpha = 1, i.e. plain CR maximization).
inline OptimizeResult cc_beamformer(const SystemConfig& cfg, const Scenario& sc,
                                    const SearchConfig& search) {
    return optimize_beamformer(cfg, sc, 1.0, search);
}

/// Sensing-centric multi-pinch beamformer (alpha = 0).
inline OptimizeResult sc_beamformer(const SystemConfig& cfg, const Scenario& sc,
                                    const SearchConfig& search) {
    return optimize_beamformer(cfg, sc, 0.0, search);
}

/// Anchor solutions for the achievable region: the sensing-centric anchor,
/// one solution per interior grid alpha (in the given order), then the
/// communications-centric anchor.
inline std::vector<OptimizeResult> rate_profile_anchors(const SystemConfig& cfg,
                                                        const Scenario& sc,
                                                        std::span<const double> alpha_grid,
                                                        const SearchConfig& search) {
    std::vector<OptimizeResult> anchors;
    anchors.reserve(alpha_grid.size() + 2);
    anchors.push_back(sc_beamformer(cfg, sc, search));
    for (double a : alpha_grid) anchors.push_back(optimize_beamformer(cfg, sc, a, search));
    anchors.push_back(cc_beamformer(cfg, sc, search));
    return anchors;
}

/// Achievable inner bound on the multi-pinch rate region: time-sharing hull
/// of the C-C and S-C rectangles and the rate-profile rectangles over the
/// alpha grid.  An empty grid yields the plain C-C/S-C time-sharing region.
inline RateRegion inner_bound_region(const SystemConfig& cfg, const Scenario& sc,
                                     std::span<const double> alpha_grid,
                                     const SearchConfig& search) {
    const auto anchors = rate_profile_anchors(cfg, sc, alpha_grid, search);
    std::vector<RatePair> corners;
    corners.reserve(anchors.size());
    for (const auto& a : anchors) corners.push_back(a.rates);
    return hull_of_rectangles(std::move(corners));
}

}  // namespace passisac
