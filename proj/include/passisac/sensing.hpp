// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the pass-isac authors

#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "passisac/core_model.hpp"
#include "passisac/rng.hpp"

namespace passisac {

/// Virtual SIMO channel seen by the RCS estimator over one frame:
/// y_v = h_v beta + n_v with beta ~ CN(0, alpha_s) and n_v ~ CN(0, sigma^2 I).
struct VirtualChannel {
    std::vector<std::complex<double>> h_v;
    double alpha_s = 0.0;
    double sigma_sq = 0.0;

    void validate() const {
        if (h_v.empty()) throw std::domain_error("VirtualChannel: frame length must be >= 1");
        if (!(alpha_s > 0.0) || !(sigma_sq > 0.0))
            throw std::domain_error("VirtualChannel: alpha_s and sigma_sq must be positive");
        for (const auto& v : h_v)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::domain_error("VirtualChannel: non-finite entry");
    }

    double norm_sq() const {
        double s = 0.0;
        for (const auto& v : h_v) s += std::norm(v);
        return s;
    }
};

/// Unit-power constant-modulus probing stream with ||s||^2 = L exactly;
/// the phases are drawn from the seeded generator.
inline std::vector<std::complex<double>> unit_power_stream(int frame_len, std::uint64_t seed) {
    if (frame_len < 1) throw std::domain_error("unit_power_stream: frame length must be >= 1");
    SplitMix64 rng(seed);
    std::vector<std::complex<double>> s(frame_len);
    for (auto& v : s) {
        const double phase = rng.uniform(0.0, two_pi);
        v = {std::cos(phase), std::sin(phase)};
    }
    return s;
}

/// Virtual channel induced by a pinching beamformer:
/// h_v = sqrt(P/N) phi_r g_r (phi_t^T h) s^T, with the receive pinch aligned
/// at x_s.  In-waveguide loss, when configured, enters as the per-antenna
/// transmit amplitudes and one receive-side amplitude.
inline VirtualChannel induced_virtual_channel(const SystemConfig& cfg, const Scenario& sc,
                                              const Beamformer& bf,
                                              std::span<const std::complex<double>> stream) {
    detail::check_inputs(cfg, sc, bf);
    if (static_cast<int>(stream.size()) != cfg.frame_len_L)
        throw std::invalid_argument("induced_virtual_channel: stream length must equal L");

    std::complex<double> steer = 0.0;  // phi_t^T h(u_s, t), with loss amplitudes
    const double ds2 = sc.d_s_sq(cfg);
    for (double t : bf.positions) {
        const double dx = t - sc.target_x;
        const double rho = std::sqrt(ds2 + dx * dx);
        const double phase =
            cfg.wavenumber_k0 * (rho + std::abs(t - cfg.feed_x_t0) * cfg.n_eff);
        const double amp = detail::guide_amplitude(cfg.waveguide_loss_db_per_m, t - cfg.feed_x_t0);
        steer += std::sqrt(cfg.eta_m2) * (amp / rho) * detail::unit_phasor_neg(phase);
    }

    const double dr = std::sqrt(sc.d_r_sq(cfg));  // receive pinch at r = x_s
    const std::complex<double> g_r =
        std::sqrt(cfg.eta_m2) / dr * detail::unit_phasor_neg(cfg.wavenumber_k0 * dr);
    const double rx_dist = sc.target_x - cfg.feed_x_r0;
    const std::complex<double> phi_r =
        detail::guide_amplitude(cfg.waveguide_loss_db_per_m, rx_dist) *
        detail::unit_phasor_neg(cfg.wavenumber_k0 * std::abs(rx_dist) * cfg.n_eff);

    const std::complex<double> gain =
        std::sqrt(cfg.power_w / cfg.num_antennas_N) * phi_r * g_r * steer;
    VirtualChannel vc;
    vc.alpha_s = cfg.alpha_s;
    vc.sigma_sq = cfg.noise_sense_w;
    vc.h_v.resize(stream.size());
    for (std::size_t l = 0; l < stream.size(); ++l) vc.h_v[l] = gain * stream[l];
    return vc;
}

/// Sensing mutual information log2 det(I_L + alpha/sigma^2 h h^H) by an
/// explicit LU factorization of the L x L matrix.  Oracle-scale only.
inline double mi_determinant(const VirtualChannel& vc) {
    vc.validate();
    const std::size_t L = vc.h_v.size();
    if (L > 64) throw std::domain_error("mi_determinant: oracle limited to L <= 64");
    const double c = vc.alpha_s / vc.sigma_sq;
    std::vector<std::vector<std::complex<double>>> m(L,
                                                     std::vector<std::complex<double>>(L, 0.0));
    for (std::size_t i = 0; i < L; ++i) {
        for (std::size_t j = 0; j < L; ++j) m[i][j] = c * vc.h_v[i] * std::conj(vc.h_v[j]);
        m[i][i] += 1.0;
    }
    // LU with partial pivoting; the matrix is Hermitian positive definite,
    // so det is real positive and equals the product of |u_ii|.
    double log2_det = 0.0;
    for (std::size_t k = 0; k < L; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < L; ++i)
            if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
        if (piv != k) std::swap(m[piv], m[k]);
        const std::complex<double> pivot = m[k][k];
        if (pivot == 0.0) return -std::numeric_limits<double>::infinity();
        log2_det += std::log2(std::abs(pivot));
        for (std::size_t i = k + 1; i < L; ++i) {
            const std::complex<double> f = m[i][k] / pivot;
            for (std::size_t j = k; j < L; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return log2_det;
}

/// Rank-one closed form of the same mutual information:
/// log2(1 + alpha/sigma^2 ||h||^2).
inline double mi_scalar(const VirtualChannel& vc) {
    vc.validate();
    return log2_1p(vc.alpha_s / vc.sigma_sq * vc.norm_sq());
}

/// MSE of the conditional-mean RCS estimator:
/// alpha sigma^2 / (sigma^2 + alpha ||h||^2).
inline double mmse(const VirtualChannel& vc) {
    vc.validate();
    return vc.alpha_s * vc.sigma_sq / (vc.sigma_sq + vc.alpha_s * vc.norm_sq());
}

/// Empirical MSE of the linear estimator (alpha/omega) h^H y over simulated
/// draws of the RCS and the noise; converges to mmse().
inline double empirical_mmse(const VirtualChannel& vc, int draws, std::uint64_t seed) {
    vc.validate();
    if (draws < 1) throw std::domain_error("empirical_mmse: draws must be >= 1");
    const double omega = vc.sigma_sq + vc.alpha_s * vc.norm_sq();
    const double scale = vc.alpha_s / omega;
    SplitMix64 rng(seed);
    double acc = 0.0;
    for (int d = 0; d < draws; ++d) {
        const std::complex<double> beta = rng.complex_normal(vc.alpha_s);
        std::complex<double> proj = 0.0;  // h^H y accumulated on the fly
        for (const auto& h : vc.h_v) {
            const std::complex<double> y = h * beta + rng.complex_normal(vc.sigma_sq);
            proj += std::conj(h) * y;
        }
        acc += std::norm(scale * proj - beta);
    }
    return acc / draws;
}

/// True iff the candidate maximizing the sensing rate is the candidate
/// minimizing the estimator MSE (rate/error duality).  Ties resolve to the
/// first index on both sides.
inline bool rate_mse_duality_holds(const SystemConfig& cfg, const Scenario& sc,
                                   std::span<const Beamformer> candidates,
                                   std::uint64_t stream_seed = 1) {
    if (candidates.empty()) throw std::domain_error("rate_mse_duality_holds: no candidates");
    const auto stream = unit_power_stream(cfg.frame_len_L, stream_seed);
    std::size_t best_rate = 0, best_mse = 0;
    double rate_max = -1.0, mse_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double r = sense_rate(cfg, sc, candidates[i]);
        const double e = mmse(induced_virtual_channel(cfg, sc, candidates[i], stream));
        if (r > rate_max) {
            rate_max = r;
            best_rate = i;
        }
        if (e < mse_min) {
            mse_min = e;
            best_mse = i;
        }
    }
    return best_rate == best_mse;
}

}  // namespace passisac
