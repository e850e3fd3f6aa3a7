#pragma once

// Optical elements between the source and the detectors: the rotated Dove
// prism pair, the adjustable path delay, and the 50:50 beamsplitter with
// joint projective detection behind it.
//
// Beamsplitter convention: the symmetric i-phase convention
//   a+ -> (c+ + i d+)/sqrt(2),  b+ -> (i c+ + d+)/sqrt(2).
// For an input sum c_uv a+_u b+_v |0>, the coincidence amplitude for
// detecting mode u at C and mode v at D is (c_uv - c_vu)/2 — only the
// exchange-antisymmetric part survives — giving
//   P(u,v) = |c_uv - c_vu|^2 / 4.
// Any lossless 50:50 convention yields the same formula.

#include <cmath>
#include <complex>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>

#include "homsim/biphoton_state.hpp"
#include "homsim/mode_index.hpp"

namespace homsim {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Relative angle between the two Dove prisms, radians.
struct DovePairSetting {
    double theta = 0.0;
};

/// Relative path delay and the two-photon coherence time, both seconds.
struct DelaySetting {
    double tau = 0.0;
    double coherence_time = 0.0;
};

struct CoincidenceResult {
    double probability = 0.0;
    ModePair mode_pair;
};

/// Dove-prism pair at relative angle theta: diagonal in the LG basis,
/// |L_p^l> -> exp(-i 2 l theta) |L_p^l| (image rotation by 2 theta).
/// Blocks are materialized for orders 0..max_order; apply to path B via
/// apply_local(state, LocalUnitary::identity(), dove).
inline LocalUnitary dove_pair_unitary(DovePairSetting setting, int max_order) {
    if (max_order < 0) throw std::invalid_argument("dove_pair_unitary: negative max order");
    LocalUnitary dove;
    for (int n = 0; n <= max_order; ++n) {
        const auto modes = lg_modes_of_order(n);
        Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n + 1, n + 1);
        for (int k = 0; k <= n; ++k) {
            const double phase = -2.0 * modes[k].ell * setting.theta;
            block(k, k) = Complex(std::cos(phase), std::sin(phase));
        }
        dove.set_block(n, std::move(block));
    }
    return dove;
}

inline LocalUnitary dove_pair_unitary(double theta, int max_order) {
    return dove_pair_unitary(DovePairSetting{theta}, max_order);
}

namespace detail {

inline void check_detection_basis(const TwoPhotonState& state, const ModeId& u, const ModeId& v,
                                  const char* who) {
    if (basis_of(u) != state.basis || basis_of(v) != state.basis)
        throw std::invalid_argument(std::string(who) + ": detection modes do not match the state basis");
}

inline double clamp_probability(double p) {
    if (p < 0.0) {
        if (p < -1e-12) throw std::logic_error("coincidence probability below zero");
        return 0.0;
    }
    if (p > 1.0 + 1e-12) throw std::logic_error("coincidence probability above one");
    return p;
}

}  // namespace detail

/// Coincidence probability with full two-photon interference (zero delay):
/// |c_uv - c_vu|^2 / 4. Vanishes for every pair when the state is
/// symmetric under path exchange.
inline CoincidenceResult coincidence_interfering(const TwoPhotonState& state, const ModeId& u,
                                                 const ModeId& v) {
    detail::check_detection_basis(state, u, v, "coincidence_interfering");
    const Complex cuv = state.amplitude(u, v);
    const Complex cvu = state.amplitude(v, u);
    return {detail::clamp_probability(0.25 * std::norm(cuv - cvu)), {u, v}};
}

/// Coincidence probability with the photons fully distinguishable (large
/// delay): (|c_uv|^2 + |c_vu|^2) / 4, no interference term.
inline CoincidenceResult coincidence_distinguishable(const TwoPhotonState& state, const ModeId& u,
                                                     const ModeId& v) {
    detail::check_detection_basis(state, u, v, "coincidence_distinguishable");
    const double suv = std::norm(state.amplitude(u, v));
    const double svu = std::norm(state.amplitude(v, u));
    return {detail::clamp_probability(0.25 * (suv + svu)), {u, v}};
}

/// Coincidence probability at finite delay, with a Gaussian visibility
/// envelope V(tau) = exp(-(tau/tau_c)^2) interpolating between the
/// interfering (tau = 0) and distinguishable (|tau| -> inf) limits.
inline CoincidenceResult coincidence_with_delay(const TwoPhotonState& state, const ModeId& u,
                                                const ModeId& v, DelaySetting delay) {
    detail::check_detection_basis(state, u, v, "coincidence_with_delay");
    if (!(delay.coherence_time > 0.0))
        throw std::invalid_argument("coincidence_with_delay: coherence_time must be positive");
    const Complex cuv = state.amplitude(u, v);
    const Complex cvu = state.amplitude(v, u);
    const double ratio = delay.tau / delay.coherence_time;
    const double visibility = std::exp(-ratio * ratio);
    const double p = 0.25 * (std::norm(cuv) + std::norm(cvu)) -
                     0.5 * std::real(cuv * std::conj(cvu)) * visibility;
    return {detail::clamp_probability(p), {u, v}};
}

/// Coherence time of photons behind a spectral filter:
/// tau_c = lambda^2 / (c * delta_lambda).
inline double coherence_time_from_filter(double center_wavelength_m, double bandwidth_m) {
    if (!(center_wavelength_m > 0.0) || !(bandwidth_m > 0.0))
        throw std::invalid_argument("coherence_time_from_filter: wavelengths must be positive");
    return center_wavelength_m * center_wavelength_m / (kSpeedOfLight * bandwidth_m);
}

/// Total interfering coincidence probability over all ordered mode pairs.
/// Equals the squared norm of the exchange-antisymmetric part of the
/// state: 0 for symmetric states, 1 for normalized antisymmetric ones.
inline double total_coincidence_probability(const TwoPhotonState& state) {
    std::set<ModePair> pairs;
    for (const auto& [pair, amp] : state.amplitudes) {
        pairs.insert(pair);
        pairs.insert({pair.second, pair.first});
    }
    double total = 0.0;
    for (const auto& pair : pairs) {
        const Complex cuv = state.amplitude(pair.first, pair.second);
        const Complex cvu = state.amplitude(pair.second, pair.first);
        total += 0.25 * std::norm(cuv - cvu);
    }
    return total;
}

}  // namespace homsim
