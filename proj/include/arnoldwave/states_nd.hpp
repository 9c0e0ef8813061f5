#ifndef ARNOLDWAVE_STATES_ND_HPP
#define ARNOLDWAVE_STATES_ND_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "arnoldwave/fft.hpp"
#include "arnoldwave/grid.hpp"
#include "arnoldwave/scales.hpp"
#include "arnoldwave/special_functions.hpp"
#include "arnoldwave/states.hpp"

namespace aw {

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence. Used for the radial quadratures below.
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline Quadrature gauss_legendre(int n) {
    if (n < 1) throw std::domain_error("gauss_legendre: need at least one node");
    Quadrature q;
    q.nodes.resize(n);
    q.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Tricomi-style initial guess, then Newton.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        q.nodes[i] = x;
        q.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return q;
}

/// Product of one-dimensional states, one factor per Cartesian axis. The
/// factors may use different frequencies (anisotropic source oscillator) but
/// must share mass and hbar.
struct CartesianSpec {
    std::vector<StateSpec1D> factors;
};

inline CartesianSpec make_cartesian(std::vector<StateSpec1D> factors) {
    if (factors.empty()) throw std::domain_error("make_cartesian: no factors");
    const double m = factors.front().scales.mass;
    const double hb = factors.front().scales.hbar;
    for (const auto& f : factors)
        if (f.scales.mass != m || f.scales.hbar != hb)
            throw std::domain_error("make_cartesian: factors must share mass and hbar");
    return CartesianSpec{std::move(factors)};
}

/// Two-dimensional state with definite angular momentum l * chirality * hbar
/// (chirality = +1 or -1) and radial label n >= 0.
struct PolarSpec {
    int n = 0;
    int l = 0;
    int chirality = +1;
    PhysicalScales scales;
};

inline PolarSpec make_polar(int n, int l, int chirality, const PhysicalScales& s) {
    if (n < 0 || l < 0) throw std::domain_error("make_polar: n, l must be non-negative");
    if (chirality != 1 && chirality != -1)
        throw std::domain_error("make_polar: chirality must be +1 or -1");
    return PolarSpec{n, l, chirality, s};
}

/// Three-dimensional state labelled by the radial quantum number n >= 1
/// (the lowest radial state is n = 1, matching the hydrogen-like convention),
/// orbital l >= 0 and magnetic m with |m| <= l.
struct SphericalSpec {
    int n = 1;
    int l = 0;
    int m = 0;
    PhysicalScales scales;
};

inline SphericalSpec make_spherical(int n, int l, int m, const PhysicalScales& s) {
    if (n < 1) throw std::domain_error("make_spherical: radial label starts at n = 1");
    if (l < 0 || std::abs(m) > l)
        throw std::domain_error("make_spherical: need l >= 0 and |m| <= l");
    return SphericalSpec{n, l, m, s};
}

/// Energy of the mapped oscillator eigenstate. The conserved free-particle
/// kinetic energy <p^2>/2m equals half this value (virial theorem at the
/// matching instant).
inline double oscillator_energy(const CartesianSpec& spec) {
    double e = 0.0;
    for (const auto& f : spec.factors) {
        if (f.family != Family1D::Basis)
            throw std::domain_error("oscillator_energy: cartesian factors must be basis states");
        e += f.scales.hbar * f.scales.omega * (f.n + 0.5);
    }
    return e;
}

inline double oscillator_energy(const PolarSpec& spec) {
    return spec.scales.hbar * spec.scales.omega * (2.0 * spec.n + spec.l + 1.0);
}

inline double oscillator_energy(const SphericalSpec& spec) {
    return spec.scales.hbar * spec.scales.omega * (2.0 * (spec.n - 1) + spec.l + 1.5);
}

inline cplx eval(const CartesianSpec& spec, std::span<const double> x, double t) {
    if (x.size() != spec.factors.size())
        throw std::invalid_argument("eval: coordinate count does not match factor count");
    cplx v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) v *= eval(spec.factors[i], x[i], t);
    return v;
}

inline cplx eval(const PolarSpec& spec, double r, double phi, double t) {
    const auto& s = spec.scales;
    const double L = s.length;
    const DeltaFactor d = delta(s, t);
    const double ad = d.modulus();
    const int n = spec.n, l = spec.l;
    const double pref =
        std::sqrt(std::exp(std::lgamma(n + 1.0) - std::lgamma(n + l + 1.0)) /
                  (2.0 * M_PI * L * L * ad * ad));
    const double u = r * r / (2.0 * L * L * ad * ad);
    const cplx gauss = std::exp(-r * r / (4.0 * L * L * d.value));
    const cplx phase = std::exp(cplx(0.0, -(2.0 * n + l + 1.0) * std::atan(s.omega * t) +
                                              spec.chirality * l * phi));
    return pref * phase * std::pow(r / (std::sqrt(2.0) * L * ad), l) *
           laguerre(n, l, u) * gauss;
}

inline cplx eval(const SphericalSpec& spec, double r, double theta, double phi, double t) {
    const auto& s = spec.scales;
    const double L = s.length;
    const DeltaFactor d = delta(s, t);
    const double ad = d.modulus();
    const int n = spec.n, l = spec.l;
    const double pref = std::sqrt(
        std::exp(std::lgamma(n + l + 0.5) - std::lgamma(static_cast<double>(n)) -
                 2.0 * std::lgamma(l + 1.5)) /
        (std::sqrt(2.0) * L * L * L * ad * ad * ad));
    const double u = r * r / (2.0 * L * L * ad * ad);
    const cplx gauss = std::exp(-r * r / (4.0 * L * L * d.value));
    const cplx phase =
        std::exp(cplx(0.0, -(2.0 * (n - 1) + l + 1.5) * std::atan(s.omega * t)));
    return pref * phase * spherical_harmonic(l, spec.m, theta, phi) *
           std::pow(r / (std::sqrt(2.0) * L * ad), l) * confluent_m(1 - n, l + 1.5, u) *
           gauss;
}

/// Norm from the radial quadrature alone (the angular factor is orthonormal
/// by construction). Exact for these states up to the quadrature error.
inline double radial_norm(const PolarSpec& spec, double t, int points = 400) {
    const auto& s = spec.scales;
    const double ad = delta(s, t).modulus();
    const double rmax = 40.0 * s.length * ad;
    const Quadrature q = gauss_legendre(points);
    double acc = 0.0;
    for (int j = 0; j < points; ++j) {
        const double r = 0.5 * (q.nodes[j] + 1.0) * rmax;
        const double w = 0.5 * q.weights[j] * rmax;
        acc += std::norm(eval(spec, r, 0.0, t)) * r * w;
    }
    return std::sqrt(2.0 * M_PI * acc);
}

inline double radial_norm(const SphericalSpec& spec, double t, int points = 400) {
    const auto& s = spec.scales;
    const double ad = delta(s, t).modulus();
    const double rmax = 40.0 * s.length * ad;
    const Quadrature q = gauss_legendre(points);
    // Divide out the (unit-normalized) spherical harmonic at a fixed angle.
    const cplx y = spherical_harmonic(spec.l, spec.m, 0.7, 0.3);
    double acc = 0.0;
    for (int j = 0; j < points; ++j) {
        const double r = 0.5 * (q.nodes[j] + 1.0) * rmax;
        const double w = 0.5 * q.weights[j] * rmax;
        const cplx radial = eval(spec, r, 0.7, 0.3, t) / y;
        acc += std::norm(radial) * r * r * w;
    }
    return std::sqrt(acc);
}

/// Wavefunction sampled on a Cartesian tensor grid, row-major with the first
/// axis slowest. Grid quadratures on this field are the reference checks for
/// the closed-form moments.
struct FieldND {
    std::vector<Axis> axes;
    std::vector<cplx> samples;
    double time = 0.0;
    double mass = 1.0;
    double hbar = 1.0;

    std::size_t size() const {
        std::size_t n = 1;
        for (const auto& a : axes) n *= a.count;
        return n;
    }
    double cell() const {
        double v = 1.0;
        for (const auto& a : axes) v *= a.step;
        return v;
    }
};

namespace detail {

inline void unravel(std::size_t flat, const std::vector<Axis>& axes,
                    std::vector<std::size_t>& idx) {
    for (std::size_t d = axes.size(); d-- > 0;) {
        idx[d] = flat % axes[d].count;
        flat /= axes[d].count;
    }
}

}  // namespace detail

inline FieldND sample(const CartesianSpec& spec, const std::vector<Axis>& axes, double t) {
    if (axes.size() != spec.factors.size())
        throw std::invalid_argument("sample: axis count does not match factor count");
    FieldND f;
    f.axes = axes;
    f.time = t;
    f.mass = spec.factors.front().scales.mass;
    f.hbar = spec.factors.front().scales.hbar;
    // Evaluate each 1D factor once per axis, then take tensor products.
    std::vector<std::vector<cplx>> lines(axes.size());
    for (std::size_t d = 0; d < axes.size(); ++d) {
        lines[d].resize(axes[d].count);
        for (std::size_t i = 0; i < axes[d].count; ++i)
            lines[d][i] = eval(spec.factors[d], axes[d].coord(i), t);
    }
    f.samples.resize(f.size());
    std::vector<std::size_t> idx(axes.size());
    for (std::size_t flat = 0; flat < f.samples.size(); ++flat) {
        detail::unravel(flat, axes, idx);
        cplx v = 1.0;
        for (std::size_t d = 0; d < axes.size(); ++d) v *= lines[d][idx[d]];
        f.samples[flat] = v;
    }
    return f;
}

inline FieldND sample(const PolarSpec& spec, const Axis& axis, double t) {
    FieldND f;
    f.axes = {axis, axis};
    f.time = t;
    f.mass = spec.scales.mass;
    f.hbar = spec.scales.hbar;
    f.samples.resize(f.size());
    for (std::size_t i = 0; i < axis.count; ++i) {
        const double x = axis.coord(i);
        for (std::size_t j = 0; j < axis.count; ++j) {
            const double y = axis.coord(j);
            f.samples[i * axis.count + j] =
                eval(spec, std::hypot(x, y), std::atan2(y, x), t);
        }
    }
    return f;
}

inline FieldND sample(const SphericalSpec& spec, const Axis& axis, double t) {
    FieldND f;
    f.axes = {axis, axis, axis};
    f.time = t;
    f.mass = spec.scales.mass;
    f.hbar = spec.scales.hbar;
    f.samples.resize(f.size());
    const std::size_t n = axis.count;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = axis.coord(i);
        for (std::size_t j = 0; j < n; ++j) {
            const double y = axis.coord(j);
            const double rho = std::hypot(x, y);
            const double phi = std::atan2(y, x);
            for (std::size_t k = 0; k < n; ++k) {
                const double z = axis.coord(k);
                const double r = std::hypot(rho, z);
                const double theta = std::atan2(rho, z);
                f.samples[(i * n + j) * n + k] = eval(spec, r, theta, phi, t);
            }
        }
    }
    return f;
}

struct AxisMoments {
    double mean_x = 0.0;
    double sigma_x = 0.0;
    double mean_p = 0.0;
    double sigma_p = 0.0;
    double product = 0.0;  // sigma_x * sigma_p
};

struct NdMomentReport {
    double norm = 0.0;
    double kinetic_energy = 0.0;  // sum_i <p_i^2>/2m
    std::vector<AxisMoments> axes;
    double mean_product = 0.0;  // axis average of sigma_x * sigma_p
    double time = 0.0;
};

/// Per-axis first and second moments by grid quadrature: position moments
/// directly, momentum moments through a full rank-N DFT.
inline NdMomentReport nd_moments(const FieldND& f) {
    NdMomentReport rep;
    rep.time = f.time;
    const std::size_t dims = f.axes.size();
    rep.axes.resize(dims);
    const double cell = f.cell();

    std::vector<std::size_t> idx(dims);
    double nrm2 = 0.0;
    std::vector<double> mx(dims, 0.0), mx2(dims, 0.0);
    for (std::size_t flat = 0; flat < f.samples.size(); ++flat) {
        const double rho = std::norm(f.samples[flat]);
        if (rho == 0.0) continue;
        detail::unravel(flat, f.axes, idx);
        nrm2 += rho;
        for (std::size_t d = 0; d < dims; ++d) {
            const double x = f.axes[d].coord(idx[d]);
            mx[d] += x * rho;
            mx2[d] += x * x * rho;
        }
    }
    nrm2 *= cell;
    rep.norm = std::sqrt(nrm2);
    if (nrm2 < 1.0 - 1e-6)
        throw std::runtime_error("nd_moments: norm deficit exceeds 1e-6; grid under-resolved");

    std::vector<cplx> hat = f.samples;
    std::vector<int> extents(dims);
    for (std::size_t d = 0; d < dims; ++d) extents[d] = static_cast<int>(f.axes[d].count);
    fft_forward_nd(hat, extents);

    double np2 = 0.0;
    std::vector<double> mp(dims, 0.0), mp2(dims, 0.0);
    for (std::size_t flat = 0; flat < hat.size(); ++flat) {
        const double rho = std::norm(hat[flat]);
        if (rho == 0.0) continue;
        detail::unravel(flat, f.axes, idx);
        np2 += rho;
        for (std::size_t d = 0; d < dims; ++d) {
            const double p =
                f.hbar * fft_wavenumber(idx[d], f.axes[d].count, f.axes[d].step);
            mp[d] += p * rho;
            mp2[d] += p * p * rho;
        }
    }

    double prod_sum = 0.0;
    for (std::size_t d = 0; d < dims; ++d) {
        auto& ax = rep.axes[d];
        ax.mean_x = mx[d] * cell / nrm2;
        const double x2 = mx2[d] * cell / nrm2;
        ax.sigma_x = std::sqrt(std::max(0.0, x2 - ax.mean_x * ax.mean_x));
        ax.mean_p = mp[d] / np2;
        const double p2 = mp2[d] / np2;
        ax.sigma_p = std::sqrt(std::max(0.0, p2 - ax.mean_p * ax.mean_p));
        ax.product = ax.sigma_x * ax.sigma_p;
        prod_sum += ax.product;
        rep.kinetic_energy += p2 / (2.0 * f.mass);
    }
    rep.mean_product = prod_sum / static_cast<double>(dims);
    return rep;
}

namespace detail {

/// <-i hbar d/dphi> along one azimuthal ring of nphi uniform samples,
/// weighted so that summing rows reproduces the full quadrature. Returns
/// the ring's contributions to (numerator, norm).
inline std::pair<double, double> ring_lz(std::vector<cplx>& ring, double hbar) {
    const std::size_t nphi = ring.size();
    fft_forward(ring);
    const double w = 2.0 * M_PI / static_cast<double>(nphi * nphi);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < nphi; ++k) {
        const double mk = (k < nphi / 2) ? static_cast<double>(k)
                                         : static_cast<double>(k) - static_cast<double>(nphi);
        const double rho = std::norm(ring[k]) * w;
        num += hbar * mk * rho;
        den += rho;
    }
    return {num, den};
}

}  // namespace detail

/// <L_z> by quadrature: Gauss-Legendre radially, DFT derivative azimuthally.
/// For the states above this reproduces chirality * l * hbar.
inline double angular_momentum(const PolarSpec& spec, double t, int nr = 200,
                               int nphi = 64) {
    const auto& s = spec.scales;
    const double rmax = 40.0 * s.length * delta(s, t).modulus();
    const Quadrature q = gauss_legendre(nr);
    double num = 0.0, den = 0.0;
    std::vector<cplx> ring(nphi);
    for (int j = 0; j < nr; ++j) {
        const double r = 0.5 * (q.nodes[j] + 1.0) * rmax;
        const double w = 0.5 * q.weights[j] * rmax * r;
        for (int k = 0; k < nphi; ++k)
            ring[k] = eval(spec, r, 2.0 * M_PI * k / nphi, t);
        auto [rn, rd] = detail::ring_lz(ring, s.hbar);
        num += w * rn;
        den += w * rd;
    }
    return num / den;
}

inline double angular_momentum(const SphericalSpec& spec, double t, int nr = 160,
                               int ntheta = 48, int nphi = 64) {
    const auto& s = spec.scales;
    const double rmax = 40.0 * s.length * delta(s, t).modulus();
    const Quadrature qr = gauss_legendre(nr);
    const Quadrature qu = gauss_legendre(ntheta);  // u = cos(theta) on [-1, 1]
    double num = 0.0, den = 0.0;
    std::vector<cplx> ring(nphi);
    for (int j = 0; j < nr; ++j) {
        const double r = 0.5 * (qr.nodes[j] + 1.0) * rmax;
        const double wr = 0.5 * qr.weights[j] * rmax * r * r;
        for (int i = 0; i < ntheta; ++i) {
            const double theta = std::acos(qu.nodes[i]);
            const double w = wr * qu.weights[i];
            for (int k = 0; k < nphi; ++k)
                ring[k] = eval(spec, r, theta, 2.0 * M_PI * k / nphi, t);
            auto [rn, rd] = detail::ring_lz(ring, s.hbar);
            num += w * rn;
            den += w * rd;
        }
    }
    return num / den;
}

}  // namespace aw

#endif
