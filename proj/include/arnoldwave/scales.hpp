#ifndef ARNOLDWAVE_SCALES_HPP
#define ARNOLDWAVE_SCALES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace aw {

using cplx = std::complex<double>;

/// Unit system of the toolkit: particle mass, hbar and the reference trap
/// frequency omega, together with the derived width L = sqrt(hbar/(2 m omega))
/// and the dispersion time tau = 2 m L^2 / hbar = 1/omega.
struct PhysicalScales {
    double mass;
    double hbar;
    double omega;
    double length;  // L
    double tau;     // dispersion time, equals 1/omega
};

inline PhysicalScales make_scales(double mass, double hbar, double omega) {
    if (!(std::isfinite(mass) && std::isfinite(hbar) && std::isfinite(omega)))
        throw std::domain_error("make_scales: arguments must be finite");
    if (mass <= 0.0 || hbar <= 0.0 || omega <= 0.0)
        throw std::domain_error("make_scales: arguments must be strictly positive");
    PhysicalScales s;
    s.mass = mass;
    s.hbar = hbar;
    s.omega = omega;
    s.length = std::sqrt(hbar / (2.0 * mass * omega));
    s.tau = 2.0 * mass * s.length * s.length / hbar;
    return s;
}

/// The dimensionless complex factor delta_r(t) = 1 + i e^{2r} omega t.
/// r = 0 gives the plain dispersion factor delta(t) = 1 + i omega t.
struct DeltaFactor {
    cplx value;

    double modulus() const { return std::abs(value); }
    double phase() const { return std::arg(value); }  // in (-pi/2, pi/2)
    cplx conj() const { return std::conj(value); }
    /// Unit phasor delta*/|delta| = e^{-i atan(e^{2r} omega t)}.
    cplx unit_conj() const { return std::conj(value) / std::abs(value); }
};

inline DeltaFactor delta(const PhysicalScales& s, double t, double r = 0.0) {
    if (!(std::isfinite(t) && std::isfinite(r)))
        throw std::domain_error("delta: t and r must be finite");
    return DeltaFactor{cplx(1.0, std::exp(2.0 * r) * s.omega * t)};
}

}  // namespace aw

#endif
