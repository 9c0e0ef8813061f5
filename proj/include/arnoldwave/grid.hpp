#ifndef ARNOLDWAVE_GRID_HPP
#define ARNOLDWAVE_GRID_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "arnoldwave/fft.hpp"
#include "arnoldwave/scales.hpp"

namespace aw {

/// Uniform spatial grid. The FFT treats it as periodic with period count*step,
/// so states must decay to negligible amplitude at both ends.
struct Axis {
    double min;
    double step;
    std::size_t count;

    double coord(std::size_t i) const { return min + step * static_cast<double>(i); }
    double length() const { return step * static_cast<double>(count); }

    bool operator==(const Axis& o) const {
        return count == o.count && std::abs(min - o.min) < 1e-12 * (std::abs(min) + 1.0) &&
               std::abs(step - o.step) < 1e-14 * step;
    }
};

inline Axis make_axis(double x_min, double x_max, std::size_t count) {
    if (count < 2 || !(x_max > x_min))
        throw std::invalid_argument("make_axis: need x_max > x_min and count >= 2");
    return Axis{x_min, (x_max - x_min) / static_cast<double>(count), count};
}

/// Sampled complex wavefunction on a uniform grid at one instant.
struct GridState {
    Axis axis;
    double time = 0.0;
    PhysicalScales scales;
    std::vector<cplx> samples;

    double norm_squared() const {
        double s = 0.0;
        for (const auto& v : samples) s += std::norm(v);
        return s * axis.step;
    }
    double norm() const { return std::sqrt(norm_squared()); }

    double edge_density() const {
        if (samples.empty()) return 0.0;
        double peak = 0.0;
        for (const auto& v : samples) peak = std::max(peak, std::norm(v));
        if (peak == 0.0) return 0.0;
        return std::max(std::norm(samples.front()), std::norm(samples.back())) / peak;
    }
};

/// d^k/dx^k by Fourier multiplication with (ik)^k.
inline GridState spectral_derivative(const GridState& state, int order = 1) {
    GridState out = state;
    fft_forward(out.samples);
    const std::size_t n = out.samples.size();
    for (std::size_t j = 0; j < n; ++j) {
        const cplx ik(0.0, fft_wavenumber(j, n, out.axis.step));
        cplx factor = 1.0;
        for (int p = 0; p < order; ++p) factor *= ik;
        out.samples[j] *= factor;
    }
    fft_inverse(out.samples);
    return out;
}

/// Band-limited (trigonometric) interpolation of a periodic grid state onto an
/// arbitrary uniform target axis. Exact for states resolved on the source grid.
inline GridState resample(const GridState& state, const Axis& target) {
    GridState out;
    out.axis = target;
    out.time = state.time;
    out.scales = state.scales;
    out.samples.assign(target.count, cplx(0.0, 0.0));

    std::vector<cplx> coeff = state.samples;
    fft_forward(coeff);
    const std::size_t n = coeff.size();
    for (auto& c : coeff) c /= static_cast<double>(n);

    for (std::size_t i = 0; i < target.count; ++i) {
        const double x = target.coord(i) - state.axis.min;
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double k = fft_wavenumber(j, n, state.axis.step);
            acc += coeff[j] * std::exp(cplx(0.0, k * x));
        }
        out.samples[i] = acc;
    }
    return out;
}

/// Conjugate-linear-in-first-argument inner product on a common grid.
inline cplx overlap(const GridState& a, const GridState& b) {
    if (!(a.axis == b.axis))
        throw std::invalid_argument("overlap: states live on different grids");
    cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        s += std::conj(a.samples[i]) * b.samples[i];
    return s * a.axis.step;
}

inline double l2_distance(const GridState& a, const GridState& b) {
    if (!(a.axis == b.axis))
        throw std::invalid_argument("l2_distance: states live on different grids");
    double s = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        s += std::norm(a.samples[i] - b.samples[i]);
    return std::sqrt(s * a.axis.step);
}

}  // namespace aw

#endif
