#ifndef ARNOLDWAVE_STATES_HPP
#define ARNOLDWAVE_STATES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "arnoldwave/grid.hpp"
#include "arnoldwave/scales.hpp"
#include "arnoldwave/special_functions.hpp"

namespace aw {

enum class Family1D { Basis, CoherentNumber, SqueezedVacuum, SqueezedNumber };

/// Symbolic descriptor of a 1D analytic state. The displacement a encodes the
/// initial centroid through a = x0/(2L) + i p0 L / hbar.
struct StateSpec1D {
    Family1D family = Family1D::Basis;
    int n = 0;
    cplx a{0.0, 0.0};
    double r = 0.0;
    PhysicalScales scales;

    double x0() const { return 2.0 * scales.length * a.real(); }
    double p0() const { return scales.hbar * a.imag() / scales.length; }
    double v0() const { return p0() / scales.mass; }
};

inline StateSpec1D basis_state(int n, const PhysicalScales& s) {
    if (n < 0) throw std::domain_error("basis_state: n must be non-negative");
    return StateSpec1D{Family1D::Basis, n, cplx(0.0, 0.0), 0.0, s};
}

inline StateSpec1D coherent_state(int n, cplx a, const PhysicalScales& s) {
    if (n < 0) throw std::domain_error("coherent_state: n must be non-negative");
    return StateSpec1D{Family1D::CoherentNumber, n, a, 0.0, s};
}

inline cplx displacement_from_phase_space(double x0, double p0, const PhysicalScales& s) {
    return cplx(x0 / (2.0 * s.length), p0 * s.length / s.hbar);
}

inline StateSpec1D squeezed_vacuum_state(double r, const PhysicalScales& s) {
    return StateSpec1D{Family1D::SqueezedVacuum, 0, cplx(0.0, 0.0), r, s};
}

inline StateSpec1D squeezed_number_state(int n, cplx a, double r, const PhysicalScales& s) {
    if (n < 0) throw std::domain_error("squeezed_number_state: n must be non-negative");
    return StateSpec1D{Family1D::SqueezedNumber, n, a, r, s};
}

namespace detail {

/// (2 pi)^{-1/4} / sqrt(2^n n! L)
inline double hermite_norm(int n, double L) {
    double lg = 0.0;  // log(2^n n!)
    for (int k = 1; k <= n; ++k) lg += std::log(2.0 * k);
    return std::pow(2.0 * M_PI, -0.25) * std::exp(-0.5 * lg) / std::sqrt(L);
}

}  // namespace detail

/// Spreading discrete-basis state psi_n: a Gaussian of initial width L times a
/// Hermite factor, with n zeros and n+1 humps that scale with |delta|.
inline cplx eval_basis(const StateSpec1D& spec, double x, double t) {
    const auto& s = spec.scales;
    const double L = s.length;
    const DeltaFactor d = delta(s, t);
    const double ad = d.modulus();
    const cplx gauss = std::exp(-x * x * d.conj() / (4.0 * L * L * ad * ad));
    const cplx phase = std::exp(cplx(0.0, -(spec.n + 0.5) * d.phase()));
    return detail::hermite_norm(spec.n, L) / std::sqrt(ad) * gauss * phase *
           hermite(spec.n, x / (std::sqrt(2.0) * L * ad));
}

/// General displaced, squeezed number state for the free particle.
/// Reduces (up to nothing: exactly) to eval_basis at a = 0, r = 0.
inline cplx eval_squeezed_number(const StateSpec1D& spec, double x, double t) {
    const auto& s = spec.scales;
    const double L = s.length;
    const double m = s.mass;
    const double hbar = s.hbar;
    const double om = s.omega;
    const double r = spec.r;
    const double x0 = spec.x0();
    const double p0 = spec.p0();

    const DeltaFactor d = delta(s, t);
    const DeltaFactor dr = delta(s, t, r);
    const double ad = d.modulus();
    const double adr = dr.modulus();

    const double q = (x - x0 - (p0 / m) * t) / (std::sqrt(2.0) * L * std::exp(-r) * adr);
    const double theta =
        (0.5 * (p0 * p0 / (m * hbar * om) - m * om / hbar * x0 * x0) * om * t +
         p0 * x0 / hbar +
         std::exp(-r) * adr *
             (p0 / std::sqrt(m * hbar * om) - std::sqrt(m * om / hbar) * x0 * om * t) * q +
         std::sinh(2.0 * r) * om * t * q * q) /
        (ad * ad);

    const cplx phase = std::exp(cplx(0.0, -(spec.n + 0.5) * dr.phase() +
                                              om * t * x * x / (4.0 * L * L * ad * ad) +
                                              theta));
    return detail::hermite_norm(spec.n, L) * std::exp(0.5 * r) / std::sqrt(adr) * phase *
           std::exp(-0.5 * q * q) * hermite(spec.n, q);
}

/// Traveling n-hump packet phi_a^n (displaced number state, no squeezing),
/// written from its own closed form. Carries the constant phase
/// e^{i p0 x0 / (2 hbar)} so that it agrees pointwise with the general
/// squeezed-number expression at r = 0.
inline cplx eval_coherent_number(const StateSpec1D& spec, double x, double t) {
    const auto& s = spec.scales;
    const double L = s.length;
    const double tau = s.tau;
    const double x0 = spec.x0();
    const double p0 = spec.p0();
    const double v0 = spec.v0();

    const DeltaFactor d = delta(s, t);
    const double ad = d.modulus();
    const cplx expo = -(cplx((x - x0) * (x - x0) + x0 * v0 * t, 0.0) +
                        cplx(0.0, tau * v0 * (v0 * t - 2.0 * x + x0))) /
                      (4.0 * L * L * d.value);
    const cplx phase = std::exp(cplx(0.0, -(spec.n + 0.5) * d.phase() +
                                              p0 * x0 / (2.0 * s.hbar)));
    return detail::hermite_norm(spec.n, L) / std::sqrt(ad) * phase * std::exp(expo) *
           hermite(spec.n, (x - x0 - v0 * t) / (std::sqrt(2.0) * L * ad));
}

/// Squeezed vacuum: the width-rescaled Gaussian packet
/// phi_r(x, t) = e^{r/2} psi_0(e^r x, e^{2r} t).
inline cplx eval_squeezed_vacuum(const StateSpec1D& spec, double x, double t) {
    const auto& s = spec.scales;
    const double L = s.length;
    const double r = spec.r;
    const DeltaFactor dr = delta(s, t, r);
    const double adr = dr.modulus();
    const cplx gauss =
        std::exp(-x * x * std::exp(2.0 * r) * dr.conj() / (4.0 * L * L * adr * adr));
    const cplx phase = std::exp(cplx(0.0, -0.5 * dr.phase()));
    return std::pow(2.0 * M_PI, -0.25) / std::sqrt(L * adr) * std::exp(0.5 * r) * gauss *
           phase;
}

inline cplx eval(const StateSpec1D& spec, double x, double t) {
    switch (spec.family) {
        case Family1D::Basis:
            return eval_basis(spec, x, t);
        case Family1D::CoherentNumber:
            return eval_coherent_number(spec, x, t);
        case Family1D::SqueezedVacuum:
            return eval_squeezed_vacuum(spec, x, t);
        case Family1D::SqueezedNumber:
            return eval_squeezed_number(spec, x, t);
    }
    throw std::logic_error("eval: unknown family");
}

inline GridState sample(const StateSpec1D& spec, const Axis& axis, double t) {
    GridState g;
    g.axis = axis;
    g.time = t;
    g.scales = spec.scales;
    g.samples.resize(axis.count);
    for (std::size_t i = 0; i < axis.count; ++i) g.samples[i] = eval(spec, axis.coord(i), t);
    return g;
}

struct HumpReport {
    std::vector<double> zero_positions;
    int hump_count = 0;
};

/// Zeros of the Hermite factor mapped to x, and the resulting hump count
/// (zeros + 1). Roots are located by sign-change bisection on the real Hermite
/// factor; the Gaussian and phase factors never vanish.
inline HumpReport humps_and_zeros(const StateSpec1D& spec, double t,
                                  std::pair<double, double> window) {
    const auto& s = spec.scales;
    const double width =
        s.length * std::exp(-spec.r) * delta(s, t, spec.r).modulus();  // packet width scale
    const double center = spec.x0() + spec.v0() * t;

    // All Hermite roots lie inside |q| < sqrt(2n+1); demand the window covers
    // them with margin, and at least the documented 10 width units.
    const double qmax = std::sqrt(2.0 * spec.n + 2.0);
    const double need = std::max(std::sqrt(2.0) * width * qmax, 5.0 * width);
    if (window.first > center - need || window.second < center + need)
        throw std::invalid_argument(
            "humps_and_zeros: window too small; widen it to at least the packet centroid "
            "plus/minus 5 width units");

    auto qcoord = [&](double x) { return (x - center) / (std::sqrt(2.0) * width); };
    auto f = [&](double x) { return hermite(spec.n, qcoord(x)); };

    HumpReport rep;
    const int steps = 64 * (spec.n + 1);
    const double lo = center - std::sqrt(2.0) * width * qmax;
    const double hi = center + std::sqrt(2.0) * width * qmax;
    const double h = (hi - lo) / steps;
    const double tol = 1e-12 * s.length;
    double xa = lo, fa = f(lo);
    for (int i = 1; i <= steps; ++i) {
        const double xb = lo + i * h;
        double fb = f(xb);
        if (fa == 0.0) rep.zero_positions.push_back(xa);
        if (fa * fb < 0.0) {
            double a = xa, b = xb, va = fa;
            while (b - a > tol) {
                const double mid = 0.5 * (a + b);
                const double vm = f(mid);
                if (va * vm <= 0.0) {
                    b = mid;
                } else {
                    a = mid;
                    va = vm;
                }
            }
            rep.zero_positions.push_back(0.5 * (a + b));
        }
        xa = xb;
        fa = fb;
    }
    rep.hump_count = static_cast<int>(rep.zero_positions.size()) + 1;
    return rep;
}

}  // namespace aw

#endif
