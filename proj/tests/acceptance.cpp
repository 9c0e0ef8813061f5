// Acceptance gate: one criterion per function, each printing a single
// PASS/FAIL line with its measured figure and pinned tolerance. Run with a
// criterion number (1-10) to execute one, or no argument for all.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "arnoldwave/observables.hpp"
#include "arnoldwave/operators.hpp"
#include "arnoldwave/propagator.hpp"
#include "arnoldwave/qat.hpp"
#include "arnoldwave/states.hpp"
#include "arnoldwave/states_nd.hpp"

using namespace aw;

namespace {

const PhysicalScales S = make_scales(1.0, 1.0, 0.5);  // L = 1, tau = 2

bool report(int id, bool ok, const char* what, double measured, double tol) {
    std::printf("criterion %2d: %s  %s (measured %.3e, tolerance %.1e)\n", id,
                ok ? "PASS" : "FAIL", what, measured, tol);
    return ok;
}

// 1. Ladder and number actions, n <= 8, 4096-point grid, relative error < 1e-8.
bool criterion_ladder() {
    const double tol = 1e-8;
    const Axis ax = make_axis(-32.0, 32.0, 4096);
    double worst = 0.0;
    for (double t : {0.0, 0.8}) {
        std::vector<GridState> psi;
        for (int n = 0; n <= 9; ++n) psi.push_back(sample(basis_state(n, S), ax, t));
        for (int n = 0; n <= 8; ++n) {
            const GridState down = apply(make_operator(OpTag::A, S, t), psi[n]);
            if (n == 0) {
                worst = std::max(worst, down.norm());
            } else {
                GridState want = psi[n - 1];
                for (auto& v : want.samples) v *= std::sqrt(static_cast<double>(n));
                worst = std::max(worst, l2_distance(down, want) / want.norm());
            }
            const GridState up = apply(make_operator(OpTag::Adag, S, t), psi[n]);
            GridState want_up = psi[n + 1];
            for (auto& v : want_up.samples) v *= std::sqrt(n + 1.0);
            worst = std::max(worst, l2_distance(up, want_up) / want_up.norm());

            const GridState num = apply(make_operator(OpTag::N, S, t), psi[n]);
            GridState want_n = psi[n];
            for (auto& v : want_n.samples) v *= (n + 0.5);
            worst = std::max(worst, l2_distance(num, want_n) / want_n.norm());
        }
    }
    return report(1, worst < tol, "ladder/number actions n <= 8", worst, tol);
}

// 2. Uncertainty product (n + 1/2) hbar |delta|, relative error < 1e-7.
bool criterion_uncertainty() {
    const double tol = 1e-7;
    const Axis ax = make_axis(-40.0, 40.0, 4096);
    double worst = 0.0;
    for (int n : {0, 1, 2, 5}) {
        for (double t : {0.0, S.tau, 2.0 * S.tau}) {
            const auto rep = moments(sample(basis_state(n, S), ax, t));
            const double want = (n + 0.5) * S.hbar * delta(S, t).modulus();
            worst = std::max(worst, std::abs(rep.uncertainty_product - want) / want);
        }
    }
    return report(2, worst < tol, "uncertainty law incl. minimal hbar/2", worst, tol);
}

// 3. Ten commutators < 1e-7; algebraic number-operator rebuild < 1e-8.
bool criterion_algebra() {
    const Axis ax = make_axis(-32.0, 32.0, 4096);
    const GridState probe =
        sample(squeezed_number_state(1, cplx(0.5, 0.3), 0.2, S), ax, 0.0);
    double worst_comm = 0.0;
    for (double t : {0.0, 0.9}) {
        for (const auto& rel : commutator_table(S))
            worst_comm = std::max(worst_comm, commutator_deviation(rel, S, t, probe));
    }
    double worst_n = 0.0;
    for (double t : {0.0, 1.1}) {
        const GridState direct = apply(make_operator(OpTag::N, S, t), probe);
        const GridState rebuilt = apply(number_from_algebra(S, t), probe);
        worst_n = std::max(worst_n, l2_distance(direct, rebuilt) / direct.norm());
    }
    const bool ok = worst_comm < 1e-7 && worst_n < 1e-8;
    return report(3, ok, "commutator table + number rebuild",
                  std::max(worst_comm, worst_n), 1e-7);
}

// 4. QAT unitarity < 1e-9, eigenstate map < 1e-8 pointwise, diagram < 1e-6 L2.
bool criterion_qat() {
    const auto sols = harmonic_solutions(S.omega);
    const Axis ax = make_axis(-30.0, 30.0, 2048);

    const double tp = 0.8;
    const double t = arnold_map(tp, sols);
    const GridState a = sample(basis_state(2, S), ax, t);
    const GridState b = sample(coherent_state(0, cplx(0.8, 0.5), S), ax, t);
    const double unit_dev =
        std::abs(overlap(qat_inverse(a, sols, tp), qat_inverse(b, sols, tp)) -
                 overlap(a, b));

    double map_dev = 0.0;
    for (int n : {0, 1, 4}) {
        const GridState osc =
            sample_oscillator_eigenstate(n, S, make_axis(-20.0, 20.0, 2048), tp);
        const GridState mapped = qat_forward(osc, sols, tp);
        const GridState want = sample(basis_state(n, S), mapped.axis, arnold_map(tp, sols));
        for (std::size_t i = 0; i < mapped.samples.size(); ++i)
            map_dev = std::max(map_dev, std::abs(mapped.samples[i] - want.samples[i]));
    }

    const Axis bx = make_axis(-24.0, 24.0, 2048);
    GridState osc0 = sample_oscillator_eigenstate(0, S, bx, 0.0);
    const GridState one = sample_oscillator_eigenstate(1, S, bx, 0.0);
    const GridState three = sample_oscillator_eigenstate(3, S, bx, 0.0);
    for (std::size_t i = 0; i < bx.count; ++i)
        osc0.samples[i] =
            (osc0.samples[i] + one.samples[i] + 0.5 * three.samples[i]) / std::sqrt(2.25);
    const double tpd = 0.6;
    const double dt = stable_timestep(bx, Potential::harmonic(S.omega), S);
    const GridState mapped =
        qat_forward(evolve(osc0, Potential::harmonic(S.omega), tpd, dt), sols, tpd);
    const GridState freed =
        resample(evolve(osc0, Potential::free(), arnold_map(tpd, sols), dt), mapped.axis);
    const double diagram = l2_distance(mapped, freed);

    const bool ok = unit_dev < 1e-9 && map_dev < 1e-8 && diagram < 1e-6;
    std::printf("criterion  4: %s  QAT unitarity %.3e (<1e-9), eigenstate map %.3e "
                "(<1e-8), diagram %.3e (<1e-6)\n",
                ok ? "PASS" : "FAIL", unit_dev, map_dev, diagram);
    return ok;
}

// 5. Split-step vs closed forms < 1e-7 L2 at tau; convergence order 2.0 +- 0.1.
bool criterion_propagator() {
    const Axis ax = make_axis(-30.0, 30.0, 2048);
    const double dt = stable_timestep(ax, Potential::free(), S);
    double worst = 0.0;
    const std::vector<StateSpec1D> specs = {
        basis_state(2, S),
        coherent_state(1, cplx(0.8, 0.6), S),
        squeezed_vacuum_state(0.4, S),
    };
    for (const auto& spec : specs) {
        const GridState got = evolve(sample(spec, ax, 0.0), Potential::free(), S.tau, dt);
        worst = std::max(worst, l2_distance(got, sample(spec, ax, S.tau)));
    }

    const Axis bx = make_axis(-20.0, 20.0, 512);
    GridState init = sample_oscillator_eigenstate(0, S, bx, 0.0);
    const GridState one = sample_oscillator_eigenstate(1, S, bx, 0.0);
    for (std::size_t i = 0; i < bx.count; ++i)
        init.samples[i] = (init.samples[i] + one.samples[i]) / std::sqrt(2.0);
    const double T = 1.3;
    GridState exact = sample_oscillator_eigenstate(0, S, bx, T);
    const GridState one_t = sample_oscillator_eigenstate(1, S, bx, T);
    for (std::size_t i = 0; i < bx.count; ++i)
        exact.samples[i] = (exact.samples[i] + one_t.samples[i]) / std::sqrt(2.0);
    const double e1 = l2_distance(evolve(init, Potential::harmonic(S.omega), T, T / 400), exact);
    const double e2 = l2_distance(evolve(init, Potential::harmonic(S.omega), T, T / 800), exact);
    const double order = std::log2(e1 / e2);

    const bool ok = worst < 1e-7 && std::abs(order - 2.0) <= 0.1;
    std::printf("criterion  5: %s  oracle distance %.3e (<1e-7), dt order %.3f "
                "(2.0 +- 0.1)\n",
                ok ? "PASS" : "FAIL", worst, order);
    return ok;
}

// 6. Sling: retuned capture stationarity (< 1e-4 period-max L1 drift) and
//    same-frequency capture squeeze fit r = -log 2 / 2 within 1e-3.
bool criterion_sling() {
    const Axis ax = make_axis(-30.0, 30.0, 2048);
    const double t1 = S.tau;
    const double ad1 = delta(S, t1).modulus();  // sqrt(2)

    // Ground state of the original trap, released and flown for one tau.
    GridState cur = sample(basis_state(0, S), ax, 0.0);
    const double dt_free = stable_timestep(ax, Potential::free(), S);
    cur = evolve(cur, Potential::free(), t1, dt_free);

    // Part one: capture with omega_1 = omega/|delta_1|^2 and watch the density
    // over one full period of the new trap.
    const double om1 = S.omega / (ad1 * ad1);
    const Potential trap1 = Potential::harmonic(om1);
    const double period = 2.0 * M_PI / om1;
    const double dt = stable_timestep(ax, trap1, S);
    std::vector<double> rho0(ax.count);
    for (std::size_t i = 0; i < ax.count; ++i) rho0[i] = std::norm(cur.samples[i]);
    GridState held = cur;
    double drift = 0.0;
    const int slices = 64;
    for (int k = 0; k < slices; ++k) {
        held = evolve(held, trap1, period / slices, dt);
        double l1 = 0.0;
        for (std::size_t i = 0; i < ax.count; ++i)
            l1 += std::abs(std::norm(held.samples[i]) - rho0[i]);
        drift = std::max(drift, l1 * ax.step);
    }
    const bool part1 = drift < 1e-4;

    // Part two: capture with the original omega; fit the squeeze parameter
    // from the packet width against the trap's ground-state width L.
    const double sigma = moments(cur).sigma_x;
    const double fitted_r = -std::log(sigma / S.length);
    const double target = -0.5 * std::log(2.0);
    const bool part2 = std::abs(fitted_r - target) < 1e-3;

    const bool ok = part1 && part2;
    std::printf("criterion  6: %s  capture drift %.3e (<1e-4)%s, fitted r %.6f vs "
                "%.6f (+-1e-3)%s\n",
                ok ? "PASS" : "FAIL", drift, part1 ? "" : " [exceeded]", fitted_r,
                target, part2 ? "" : " [exceeded]");
    return ok;
}

// 7. <N> on displaced packets equals |a|^2 + n + 1/2 within 1e-7.
bool criterion_mean_number() {
    const double tol = 1e-7;
    const Axis ax = make_axis(-40.0, 40.0, 4096);
    double worst = 0.0;
    for (cplx a : {cplx(1.0, 0.0), cplx(1.0, 1.0), cplx(0.0, 2.0)}) {
        for (int n : {0, 1, 3}) {
            const auto rep = moments(sample(coherent_state(n, a, S), ax, 0.6));
            const double want = std::norm(a) + n + 0.5;
            worst = std::max(worst, std::abs(rep.mean_number - want) / want);
        }
    }
    return report(7, worst < tol, "mean number |a|^2 + n + 1/2", worst, tol);
}

// 8. Higher dimensions: norms and kinetic energies (indices <= 4) within 1e-6,
//    polar angular momenta within 1e-8, Cartesian uncertainty law within 1e-6.
bool criterion_higher_d() {
    const PhysicalScales sn = make_scales(1.0, 1.0, 0.7);
    double worst_e = 0.0, worst_l = 0.0, worst_u = 0.0;

    const Axis cax = make_axis(-35.0, 35.0, 512);
    const auto cart = make_cartesian({basis_state(2, sn), basis_state(4, sn)});
    for (double t : {0.0, 1.1}) {
        const auto rep = nd_moments(sample(cart, {cax, cax}, t));
        worst_e = std::max(worst_e, std::abs(rep.norm - 1.0));
        const double energy = 0.5 * sn.hbar * sn.omega * (2.5 + 4.5);
        worst_e = std::max(worst_e, std::abs(rep.kinetic_energy - energy) / energy);
        const double ad = delta(sn, t).modulus();
        worst_u = std::max(worst_u,
                           std::abs(rep.axes[0].product - 2.5 * sn.hbar * ad) /
                               (2.5 * sn.hbar * ad));
        worst_u = std::max(worst_u,
                           std::abs(rep.axes[1].product - 4.5 * sn.hbar * ad) /
                               (4.5 * sn.hbar * ad));
    }

    const Axis pax = make_axis(-25.0, 25.0, 256);
    for (auto [n, l, chi] :
         std::vector<std::tuple<int, int, int>>{{0, 1, 1}, {1, 1, -1}, {4, 4, 1}}) {
        const auto spec = make_polar(n, l, chi, sn);
        worst_e = std::max(worst_e, std::abs(radial_norm(spec, 1.3) - 1.0));
        const auto rep = nd_moments(sample(spec, pax, 0.9));
        const double e = oscillator_energy(spec);
        worst_e = std::max(worst_e, std::abs(rep.kinetic_energy - 0.5 * e) / (0.5 * e));
        worst_l = std::max(worst_l,
                           std::abs(angular_momentum(spec, 0.9) - chi * l * sn.hbar));
    }

    const Axis sax = make_axis(-14.0, 14.0, 96);
    for (auto [n, l, m] :
         std::vector<std::tuple<int, int, int>>{{1, 0, 0}, {2, 1, 1}, {4, 3, -2}}) {
        const auto spec = make_spherical(n, l, m, sn);
        worst_e = std::max(worst_e, std::abs(radial_norm(spec, 1.3) - 1.0));
        if (n <= 2) {  // grid sweep kept modest; norms cover the larger indices
            const auto rep = nd_moments(sample(spec, sax, 0.0));
            const double e = oscillator_energy(spec);
            worst_e = std::max(worst_e, std::abs(rep.kinetic_energy - 0.5 * e) / (0.5 * e));
        }
    }

    const bool ok = worst_e < 1e-6 && worst_l < 1e-8 && worst_u < 1e-6;
    std::printf("criterion  8: %s  energy/norm dev %.3e (<1e-6), angular momentum dev "
                "%.3e (<1e-8), uncertainty dev %.3e (<1e-6)\n",
                ok ? "PASS" : "FAIL", worst_e, worst_l, worst_u);
    return ok;
}

// 9. Two-hump packet crosses a thin weak barrier with humps and shape intact.
bool criterion_barrier() {
    const auto packet = coherent_state(1, displacement_from_phase_space(0.0, 20.0, S), S);
    const Axis ax = make_axis(-25.0, 65.0, 4096);
    const auto res =
        barrier_robustness(packet, Potential::square(8.0, 14.9, 15.2), 1.5, ax, 1.5e-4);
    const bool ok = res.regime_ok && res.humps_before == 2 && res.humps_after == 2 &&
                    res.shape_correlation > 0.99;
    std::printf("criterion  9: %s  humps %d -> %d (want 2 -> 2), shape correlation "
                "%.6f (>0.99)\n",
                ok ? "PASS" : "FAIL", res.humps_before, res.humps_after,
                res.shape_correlation);
    return ok;
}

// 10. The general evaluator reduces to each special case to 1e-10 pointwise.
bool criterion_reductions() {
    const double tol = 1e-10;
    const Axis ax = make_axis(-30.0, 30.0, 1024);
    const std::vector<double> times = {0.0, 0.31, S.tau, 1.7, 2.0 * S.tau};
    double worst = 0.0;
    const cplx a(0.9, -0.6);
    const double r = 0.45;
    const auto basis_pair = std::make_pair(squeezed_number_state(4, cplx(0.0, 0.0), 0.0, S),
                                           basis_state(4, S));
    const auto coh_pair =
        std::make_pair(squeezed_number_state(2, a, 0.0, S), coherent_state(2, a, S));
    const auto sv_pair = std::make_pair(squeezed_number_state(0, cplx(0.0, 0.0), r, S),
                                        squeezed_vacuum_state(r, S));
    for (const auto& [general, special] : {basis_pair, coh_pair, sv_pair}) {
        for (double t : times) {
            for (std::size_t i = 0; i < ax.count; ++i) {
                worst = std::max(worst, std::abs(eval(general, ax.coord(i), t) -
                                                 eval(special, ax.coord(i), t)));
            }
        }
    }
    return report(10, worst < tol, "general evaluator reductions", worst, tol);
}

}  // namespace

int main(int argc, char** argv) {
    using Fn = bool (*)();
    const Fn criteria[10] = {
        criterion_ladder,      criterion_uncertainty, criterion_algebra,
        criterion_qat,         criterion_propagator,  criterion_sling,
        criterion_mean_number, criterion_higher_d,    criterion_barrier,
        criterion_reductions,
    };
    int failures = 0;
    if (argc > 1) {
        const int id = std::atoi(argv[1]);
        if (id < 1 || id > 10) {
            std::fprintf(stderr, "usage: %s [criterion 1-10]\n", argv[0]);
            return 2;
        }
        if (!criteria[id - 1]()) ++failures;
    } else {
        for (const auto& fn : criteria)
            if (!fn()) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
