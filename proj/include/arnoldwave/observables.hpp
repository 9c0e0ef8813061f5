#ifndef ARNOLDWAVE_OBSERVABLES_HPP
#define ARNOLDWAVE_OBSERVABLES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "arnoldwave/fft.hpp"
#include "arnoldwave/grid.hpp"
#include "arnoldwave/operators.hpp"

namespace aw {

struct MomentReport {
    double norm = 0.0;
    double mean_x = 0.0;
    double mean_p = 0.0;
    double sigma_x = 0.0;
    double sigma_p = 0.0;
    double uncertainty_product = 0.0;
    double mean_number = 0.0;    // <N>, dimensionless eigenvalue scale (n + 1/2)
    double mean_energy = 0.0;    // <p^2>/2m, the free Hamiltonian
    double mean_p_squared = 0.0;
    double mean_x_squared = 0.0;
    double time = 0.0;
};

/// Norms and first/second moments of a grid state. Position moments are direct
/// quadratures, momentum moments are computed in Fourier space; both are
/// spectrally accurate for smooth decaying states.
inline MomentReport moments(const GridState& state) {
    MomentReport rep;
    rep.time = state.time;
    const double dx = state.axis.step;

    double nrm2 = 0.0, mx = 0.0, mx2 = 0.0;
    for (std::size_t i = 0; i < state.samples.size(); ++i) {
        const double rho = std::norm(state.samples[i]);
        const double x = state.axis.coord(i);
        nrm2 += rho;
        mx += x * rho;
        mx2 += x * x * rho;
    }
    nrm2 *= dx;
    mx *= dx;
    mx2 *= dx;
    rep.norm = std::sqrt(nrm2);
    if (nrm2 < 1.0 - 1e-6)
        throw std::runtime_error("moments: norm deficit exceeds 1e-6; grid under-resolved");

    std::vector<cplx> hat = state.samples;
    fft_forward(hat);
    const std::size_t n = hat.size();
    // Fourier-space quadrature with the DFT Parseval weight dx/n.
    const double wk = dx / static_cast<double>(n);
    double np2 = 0.0, mp = 0.0, mp2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double p = state.scales.hbar * fft_wavenumber(j, n, dx);
        const double rho = std::norm(hat[j]) * wk;
        np2 += rho;
        mp += p * rho;
        mp2 += p * p * rho;
    }
    mp /= np2;
    mp2 /= np2;

    rep.mean_x = mx / nrm2;
    rep.mean_x_squared = mx2 / nrm2;
    rep.mean_p = mp;
    rep.mean_p_squared = mp2;
    rep.sigma_x = std::sqrt(std::max(0.0, rep.mean_x_squared - rep.mean_x * rep.mean_x));
    rep.sigma_p = std::sqrt(std::max(0.0, mp2 - mp * mp));
    rep.uncertainty_product = rep.sigma_x * rep.sigma_p;
    rep.mean_energy = mp2 / (2.0 * state.scales.mass);

    const LinearOperator1D nop{OpTag::N, state.scales, state.time};
    rep.mean_number = std::real(overlap(state, apply(nop, state))) / nrm2;
    return rep;
}

}  // namespace aw

#endif
