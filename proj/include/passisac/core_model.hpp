// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the pass-isac authors

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace passisac {

inline constexpr double speed_of_light_m_s = 299792458.0;
inline constexpr double two_pi = 6.283185307179586476925286766559;
inline constexpr double inv_ln2 = 1.4426950408889634073599246810019;

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

/// log2(1 + x) without cancellation for small x.
inline double log2_1p(double x) { return std::log1p(x) * inv_ln2; }

namespace detail {

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::domain_error(msg);
}

inline void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::domain_error(std::string(what) + " must be finite");
}

/// e^{-j*phase} with the argument reduced mod 2*pi first; at k0 ~ 586 rad/m
/// over +-11 m spans the raw phase reaches ~2e4 rad and reduction keeps the
/// trig evaluation well conditioned.
inline std::complex<double> unit_phasor_neg(double phase) {
    const double r = std::remainder(phase, two_pi);
    return {std::cos(r), -std::sin(r)};
}

/// Amplitude attenuation 10^{-loss_db/20} over `dist` metres of waveguide.
inline double guide_amplitude(double loss_db_per_m, double dist_m) {
    if (loss_db_per_m == 0.0) return 1.0;
    return std::pow(10.0, -loss_db_per_m * std::abs(dist_m) / 20.0);
}

}  // namespace detail

/// Physical and system constants.  Powers are held in watts internally;
/// dBm conversion happens at the CLI boundary.
struct SystemConfig {
    double carrier_freq_hz = 28e9;
    double eta_m2 = 0.0;         // derived: c^2 / (16 pi^2 f_c^2)
    double wavenumber_k0 = 0.0;  // derived: 2 pi f_c / c
    double n_eff = 1.4;          // effective refractive index of the waveguide
    double waveguide_height_d = 3.0;
    double y_tx = -2.0;          // transmit-waveguide y offset
    double y_rx = 2.0;           // receive-waveguide y offset
    double feed_x_t0 = -10.0;
    double feed_x_r0 = -10.0;
    double deploy_max_x = 10.0;
    double power_w = 0.01;                          // 10 dBm
    double noise_comm_w = 3.9810717055349695e-15;   // -114 dBm
    double noise_sense_w = 3.9810717055349695e-15;  // -114 dBm
    int frame_len_L = 5;
    double alpha_s = 10.0;  // mean reflection strength of the target
    int num_antennas_N = 1;
    double min_spacing_delta = 0.0;      // derived default: lambda / 2
    double waveguide_loss_db_per_m = 0.0;  // 0: ideal guide; 0.08: lossy guide

    double wavelength() const { return speed_of_light_m_s / carrier_freq_hz; }

    /// Recompute the derived fields from the carrier frequency.
    void refresh_derived() {
        eta_m2 = speed_of_light_m_s * speed_of_light_m_s /
                 (16.0 * M_PI * M_PI * carrier_freq_hz * carrier_freq_hz);
        wavenumber_k0 = two_pi * carrier_freq_hz / speed_of_light_m_s;
        if (min_spacing_delta <= 0.0) min_spacing_delta = wavelength() / 2.0;
    }

    static SystemConfig defaults() {
        SystemConfig cfg;
        cfg.refresh_derived();
        return cfg;
    }

    void validate() const {
        using detail::require;
        require(carrier_freq_hz > 0.0, "carrier_freq_hz must be positive");
        const double eta_ref = speed_of_light_m_s * speed_of_light_m_s /
                               (16.0 * M_PI * M_PI * carrier_freq_hz * carrier_freq_hz);
        require(std::abs(eta_m2 - eta_ref) <= 1e-12 * eta_ref,
                "eta_m2 inconsistent with carrier_freq_hz");
        const double k0_ref = two_pi * carrier_freq_hz / speed_of_light_m_s;
        require(std::abs(wavenumber_k0 - k0_ref) <= 1e-12 * k0_ref,
                "wavenumber_k0 inconsistent with carrier_freq_hz");
        require(n_eff > 0.0, "n_eff must be positive");
        require(power_w > 0.0, "power_w must be positive");
        require(noise_comm_w > 0.0, "noise_comm_w must be positive");
        require(noise_sense_w > 0.0, "noise_sense_w must be positive");
        require(frame_len_L >= 1, "frame_len_L must be a positive integer");
        require(alpha_s > 0.0, "alpha_s must be positive");
        require(num_antennas_N >= 1, "num_antennas_N must be a positive integer");
        require(min_spacing_delta >= 0.0, "min_spacing_delta must be nonnegative");
        require(waveguide_loss_db_per_m >= 0.0, "waveguide_loss_db_per_m must be nonnegative");
        require(feed_x_t0 <= deploy_max_x, "feed_x_t0 must not exceed deploy_max_x");
        require(min_spacing_delta * (num_antennas_N - 1) <= deploy_max_x - feed_x_t0,
                "deployment range too short for N antennas at the minimum spacing");
        for (double v : {carrier_freq_hz, n_eff, waveguide_height_d, y_tx, y_rx, feed_x_t0,
                         feed_x_r0, deploy_max_x, power_w, noise_comm_w, noise_sense_w,
                         alpha_s, min_spacing_delta, waveguide_loss_db_per_m})
            detail::require_finite(v, "SystemConfig field");
    }
};

/// User and target planar positions for one realization.
struct Scenario {
    double user_x = 0.0;
    double user_y = 0.0;
    double target_x = 0.0;
    double target_y = 0.0;

    /// Squared user distance to the transmit waveguide axis.
    double d_c_sq(const SystemConfig& cfg) const {
        const double dy = user_y - cfg.y_tx;
        return dy * dy + cfg.waveguide_height_d * cfg.waveguide_height_d;
    }
    /// Squared target distance to the transmit waveguide axis.
    double d_s_sq(const SystemConfig& cfg) const {
        const double dy = target_y - cfg.y_tx;
        return dy * dy + cfg.waveguide_height_d * cfg.waveguide_height_d;
    }
    /// Squared target distance to the receive waveguide axis.
    double d_r_sq(const SystemConfig& cfg) const {
        const double dy = target_y - cfg.y_rx;
        return dy * dy + cfg.waveguide_height_d * cfg.waveguide_height_d;
    }
    /// Axial user/target offset |x_c - x_s|.
    double delta_x() const { return std::abs(user_x - target_x); }

    void validate() const {
        for (double v : {user_x, user_y, target_x, target_y})
            detail::require_finite(v, "Scenario coordinate");
    }
};

/// Ordered activated x-coordinates t_1 < ... < t_N on the transmit waveguide.
struct Beamformer {
    std::vector<double> positions;

    Beamformer() = default;
    explicit Beamformer(std::vector<double> pos) : positions(std::move(pos)) {}

    std::size_t size() const { return positions.size(); }

    bool is_feasible(const SystemConfig& cfg) const {
        for (double t : positions) {
            if (!std::isfinite(t)) return false;
            if (t < cfg.feed_x_t0 || t > cfg.deploy_max_x) return false;
        }
        for (std::size_t i = 1; i < positions.size(); ++i) {
            if (positions[i] <= positions[i - 1]) return false;
            if (positions[i] - positions[i - 1] < cfg.min_spacing_delta) return false;
        }
        return true;
    }
};

/// Achieved (communication, sensing) rate pair in bit/s/Hz.
struct RatePair {
    double cr = 0.0;
    double sr = 0.0;
};

namespace detail {

inline void check_inputs(const SystemConfig& cfg, const Scenario& sc, const Beamformer& bf) {
    sc.validate();
    if (static_cast<int>(bf.size()) != cfg.num_antennas_N)
        throw std::invalid_argument("beamformer size does not match num_antennas_N");
    for (double t : bf.positions) require_finite(t, "beamformer position");
}

/// |sum_n a_n e^{-j k0 (rho_n + (t_n - t0) n_eff)} / rho_n|^2 with
/// rho_n = sqrt(axis_dist_sq + (t_n - x)^2).
inline double coherent_gain_sq(const SystemConfig& cfg, const Beamformer& bf,
                               double x, double axis_dist_sq) {
    std::complex<double> sum = 0.0;
    for (double t : bf.positions) {
        const double dx = t - x;
        const double rho = std::sqrt(axis_dist_sq + dx * dx);
        const double phase =
            cfg.wavenumber_k0 * (rho + std::abs(t - cfg.feed_x_t0) * cfg.n_eff);
        const double amp = guide_amplitude(cfg.waveguide_loss_db_per_m, t - cfg.feed_x_t0);
        sum += (amp / rho) * unit_phasor_neg(phase);
    }
    return std::norm(sum);
}

}  // namespace detail

/// Mean communication SNR factor P eta / (N sigma_c^2).
inline double gamma_bar_c(const SystemConfig& cfg) {
    return cfg.power_w * cfg.eta_m2 / (cfg.num_antennas_N * cfg.noise_comm_w);
}

/// Mean sensing SNR factor P L eta^2 alpha_s / (N sigma_s^2 d_r^2), with the
/// receive pinching antenna aligned at r = x_s.
inline double gamma_bar_s(const SystemConfig& cfg, const Scenario& sc) {
    return cfg.power_w * cfg.frame_len_L * cfg.eta_m2 * cfg.eta_m2 * cfg.alpha_s /
           (cfg.num_antennas_N * cfg.noise_sense_w * sc.d_r_sq(cfg));
}

/// Decoding SNR at the user for the given pinching beamformer.
inline double comm_snr(const SystemConfig& cfg, const Scenario& sc, const Beamformer& bf) {
    detail::check_inputs(cfg, sc, bf);
    return gamma_bar_c(cfg) * detail::coherent_gain_sq(cfg, bf, sc.user_x, sc.d_c_sq(cfg));
}

/// Communication rate log2(1 + gamma_c) in bit/s/Hz.
inline double comm_rate(const SystemConfig& cfg, const Scenario& sc, const Beamformer& bf) {
    return log2_1p(comm_snr(cfg, sc, bf));
}

/// Effective sensing SNR; the receive pinch sits at r = x_s and the lossy
/// guide contributes one extra receive-side amplitude factor.
inline double sense_snr(const SystemConfig& cfg, const Scenario& sc, const Beamformer& bf) {
    detail::check_inputs(cfg, sc, bf);
    const double rx_amp =
        detail::guide_amplitude(cfg.waveguide_loss_db_per_m, sc.target_x - cfg.feed_x_r0);
    return gamma_bar_s(cfg, sc) * rx_amp * rx_amp *
           detail::coherent_gain_sq(cfg, bf, sc.target_x, sc.d_s_sq(cfg));
}

/// Sensing rate (1/L) log2(1 + gamma_s) in bit/s/Hz.
inline double sense_rate(const SystemConfig& cfg, const Scenario& sc, const Beamformer& bf) {
    return log2_1p(sense_snr(cfg, sc, bf)) / cfg.frame_len_L;
}

inline RatePair rate_pair(const SystemConfig& cfg, const Scenario& sc, const Beamformer& bf) {
    return {comm_rate(cfg, sc, bf), sense_rate(cfg, sc, bf)};
}

/// Rates of the conventional fixed-antenna baseline with a single transmit
/// antenna at x = tx_x and a single receive antenna at x = rx_x.  No
/// waveguide is involved, so the in-waveguide loss never applies here.
inline RatePair fixed_antenna_rates(const SystemConfig& cfg, const Scenario& sc,
                                    double tx_x, double rx_x) {
    sc.validate();
    detail::require_finite(tx_x, "tx_x");
    detail::require_finite(rx_x, "rx_x");
    const double gc = cfg.power_w * cfg.eta_m2 / cfg.noise_comm_w;
    const double du = tx_x - sc.user_x;
    const double cr = log2_1p(gc / (sc.d_c_sq(cfg) + du * du));
    const double dr = rx_x - sc.target_x;
    const double gs = cfg.power_w * cfg.frame_len_L * cfg.eta_m2 * cfg.eta_m2 * cfg.alpha_s /
                      (cfg.noise_sense_w * (sc.d_r_sq(cfg) + dr * dr));
    const double dt = tx_x - sc.target_x;
    const double sr = log2_1p(gs / (sc.d_s_sq(cfg) + dt * dt)) / cfg.frame_len_L;
    return {cr, sr};
}

}  // namespace passisac
