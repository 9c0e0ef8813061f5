#ifndef ARNOLDWAVE_QAT_HPP
#define ARNOLDWAVE_QAT_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "arnoldwave/grid.hpp"
#include "arnoldwave/scales.hpp"
#include "arnoldwave/special_functions.hpp"

namespace aw {

/// Two independent solutions u1, u2 of the classical equation
/// x'' + f'(t') x' + omega(t')^2 x = 0 with u1(0) = 0, u2(0) = 1, so the
/// transform built from them is the identity at t = 0.
///
/// Only the constant-frequency oscillator pair (and its omega -> 0 free limit)
/// is validated; a general damped pair (wronskian != 1) is accepted but the
/// phase convention for it has not been cross-checked.
struct ClassicalSolutionPair {
    std::function<double(double)> u1, u2, du1, du2;

    double wronskian(double tp) const { return du1(tp) * u2(tp) - u1(tp) * du2(tp); }
};

/// u1 = sin(omega t')/omega, u2 = cos(omega t'); wronskian identically 1.
inline ClassicalSolutionPair harmonic_solutions(double omega) {
    if (!(omega > 0.0)) throw std::domain_error("harmonic_solutions: omega must be positive");
    return ClassicalSolutionPair{
        [omega](double tp) { return std::sin(omega * tp) / omega; },
        [omega](double tp) { return std::cos(omega * tp); },
        [omega](double tp) { return std::cos(omega * tp); },
        [omega](double tp) { return -omega * std::sin(omega * tp); },
    };
}

/// Time leg of the classical transform: t = u1(t')/u2(t').
inline double arnold_map(double t_prime, const ClassicalSolutionPair& sols) {
    const double u2 = sols.u2(t_prime);
    if (std::abs(u2) < 1e-12)
        throw std::domain_error("arnold_map: focal point u2(t') = 0, transform degenerates");
    return sols.u1(t_prime) / u2;
}

/// Inverse time map for the oscillator pair: t' = atan(omega t)/omega.
inline double arnold_map_inverse_harmonic(double t, double omega) {
    return std::atan(omega * t) / omega;
}

namespace detail {

inline void check_focal(double u2) {
    if (!(u2 > 1e-12))
        throw std::domain_error("qat: u2(t') <= 0; outside the first focal cell");
}

}  // namespace detail

/// Map a free-particle grid state at t = u1/u2 into the oscillator frame at
/// t'. The grid is rescaled exactly (x' = u2 x), so no interpolation enters;
/// use resample() afterwards if a specific target axis is needed.
inline GridState qat_inverse(const GridState& free_state, const ClassicalSolutionPair& sols,
                             double t_prime) {
    const double u2 = sols.u2(t_prime);
    detail::check_focal(u2);
    const double du2 = sols.du2(t_prime);
    const double w = sols.wronskian(t_prime);
    const double m = free_state.scales.mass;
    const double hbar = free_state.scales.hbar;

    GridState osc = free_state;
    osc.time = t_prime;
    osc.axis = Axis{free_state.axis.min * u2, free_state.axis.step * u2,
                    free_state.axis.count};
    const double chirp = 0.5 * m * du2 / (hbar * w * u2);
    for (std::size_t i = 0; i < osc.samples.size(); ++i) {
        const double xp = osc.axis.coord(i);
        osc.samples[i] = free_state.samples[i] / std::sqrt(u2) *
                         std::exp(cplx(0.0, chirp * xp * xp));
    }
    return osc;
}

/// Inverse of qat_inverse: oscillator frame at t' back to the free frame at
/// t = u1/u2. Unitary, so norms and overlaps are preserved.
inline GridState qat_forward(const GridState& osc_state, const ClassicalSolutionPair& sols,
                             double t_prime) {
    const double u2 = sols.u2(t_prime);
    detail::check_focal(u2);
    const double du2 = sols.du2(t_prime);
    const double w = sols.wronskian(t_prime);
    const double m = osc_state.scales.mass;
    const double hbar = osc_state.scales.hbar;

    GridState free_state = osc_state;
    free_state.time = arnold_map(t_prime, sols);
    free_state.axis = Axis{osc_state.axis.min / u2, osc_state.axis.step / u2,
                           osc_state.axis.count};
    const double chirp = 0.5 * m * du2 / (hbar * w * u2);
    for (std::size_t i = 0; i < free_state.samples.size(); ++i) {
        const double xp = osc_state.axis.coord(i);
        free_state.samples[i] = osc_state.samples[i] * std::sqrt(u2) *
                                std::exp(cplx(0.0, -chirp * xp * xp));
    }
    return free_state;
}

/// Stationary oscillator eigenstate psi'_n(x', t') sampled on an axis, for
/// cross-checks of the transform.
inline GridState sample_oscillator_eigenstate(int n, const PhysicalScales& s,
                                              const Axis& axis, double t_prime) {
    if (n < 0) throw std::domain_error("sample_oscillator_eigenstate: n >= 0");
    GridState g;
    g.axis = axis;
    g.time = t_prime;
    g.scales = s;
    g.samples.resize(axis.count);
    const double mwh = s.mass * s.omega / s.hbar;
    double lg = 0.0;
    for (int k = 1; k <= n; ++k) lg += std::log(2.0 * k);
    const double norm = std::pow(mwh / M_PI, 0.25) * std::exp(-0.5 * lg);
    const cplx phase = std::exp(cplx(0.0, -s.omega * (n + 0.5) * t_prime));
    for (std::size_t i = 0; i < axis.count; ++i) {
        const double xp = axis.coord(i);
        g.samples[i] = norm * phase * std::exp(-0.5 * mwh * xp * xp) *
                       hermite(n, std::sqrt(mwh) * xp);
    }
    return g;
}

}  // namespace aw

#endif
