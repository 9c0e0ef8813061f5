#ifndef ARNOLDWAVE_PROPAGATOR_HPP
#define ARNOLDWAVE_PROPAGATOR_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "arnoldwave/fft.hpp"
#include "arnoldwave/grid.hpp"
#include "arnoldwave/observables.hpp"
#include "arnoldwave/states.hpp"

namespace aw {

/// Sum of elementary potential terms evaluated pointwise on the grid.
struct PotentialTerm {
    enum class Kind { Harmonic, LinearForce, Square };
    Kind kind;
    double omega = 0.0;                        // Harmonic
    std::function<double(double)> force;       // LinearForce: V = -f(t) x
    double height = 0.0, left = 0.0, right = 0.0;  // Square
};

struct Potential {
    std::vector<PotentialTerm> terms;

    bool time_dependent() const {
        for (const auto& t : terms)
            if (t.kind == PotentialTerm::Kind::LinearForce) return true;
        return false;
    }

    double operator()(double x, double t, const PhysicalScales& s) const {
        double v = 0.0;
        for (const auto& term : terms) {
            switch (term.kind) {
                case PotentialTerm::Kind::Harmonic:
                    v += 0.5 * s.mass * term.omega * term.omega * x * x;
                    break;
                case PotentialTerm::Kind::LinearForce:
                    v -= term.force(t) * x;
                    break;
                case PotentialTerm::Kind::Square:
                    if (x >= term.left && x <= term.right) v += term.height;
                    break;
            }
        }
        return v;
    }

    static Potential free() { return Potential{}; }
    static Potential harmonic(double omega) {
        Potential p;
        p.terms.push_back({PotentialTerm::Kind::Harmonic, omega, nullptr, 0, 0, 0});
        return p;
    }
    static Potential linear_force(std::function<double(double)> f) {
        Potential p;
        p.terms.push_back({PotentialTerm::Kind::LinearForce, 0.0, std::move(f), 0, 0, 0});
        return p;
    }
    static Potential square(double height, double left, double right) {
        if (!(right > left)) throw std::invalid_argument("square potential: right <= left");
        Potential p;
        p.terms.push_back({PotentialTerm::Kind::Square, 0.0, nullptr, height, left, right});
        return p;
    }
    Potential plus(const Potential& other) const {
        Potential p = *this;
        p.terms.insert(p.terms.end(), other.terms.begin(), other.terms.end());
        return p;
    }
};

/// Largest stable step for the grid/potential pair, with a safety factor of 10
/// on the stricter of the kinetic and potential phase-rotation criteria.
inline double stable_timestep(const Axis& axis, const Potential& potential,
                              const PhysicalScales& s, double t = 0.0) {
    const double kmax = M_PI / axis.step;
    const double dt_kin = 2.0 * M_PI * s.mass / (s.hbar * kmax * kmax);
    double vmax = 0.0;
    for (std::size_t i = 0; i < axis.count; ++i)
        vmax = std::max(vmax, std::abs(potential(axis.coord(i), t, s)));
    double dt = dt_kin;
    if (vmax > 0.0) dt = std::min(dt, 2.0 * M_PI * s.hbar / vmax);
    return dt / 10.0;
}

/// Second-order Strang (kick-drift-kick) split-step evolution over a time
/// span. Time-dependent forces are sampled at the midpoint of each step.
inline GridState evolve(const GridState& state, const Potential& potential, double span,
                        double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
    if (span == 0.0) return state;
    if (span < 0.0) throw std::invalid_argument("evolve: span must be non-negative");

    const auto& s = state.scales;
    const std::size_t n = state.axis.count;
    const double kmax = M_PI / state.axis.step;

    const long steps = std::max(1L, std::lround(std::ceil(span / dt - 1e-12)));
    const double h = span / static_cast<double>(steps);

    // Stability: neither phase may rotate past pi in one step.
    if (s.hbar * kmax * kmax * h / (2.0 * s.mass) >= M_PI)
        throw std::runtime_error("evolve: kinetic phase exceeds pi at the grid Nyquist; "
                                 "reduce dt or refine the grid");
    double vmax = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        vmax = std::max(vmax, std::abs(potential(state.axis.coord(i), state.time, s)));
    if (vmax * h / s.hbar >= M_PI)
        throw std::runtime_error("evolve: potential phase exceeds pi per step; reduce dt");

    std::vector<cplx> kinetic(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double k = fft_wavenumber(j, n, state.axis.step);
        kinetic[j] = std::exp(cplx(0.0, -s.hbar * k * k * h / (2.0 * s.mass)));
    }

    const bool tdep = potential.time_dependent();
    std::vector<cplx> half_kick(n);
    auto fill_kick = [&](double t) {
        for (std::size_t i = 0; i < n; ++i)
            half_kick[i] =
                std::exp(cplx(0.0, -potential(state.axis.coord(i), t, s) * h / (2.0 * s.hbar)));
    };
    if (!tdep) fill_kick(state.time);

    GridState out = state;
    for (long step = 0; step < steps; ++step) {
        if (tdep) fill_kick(out.time + 0.5 * h);
        for (std::size_t i = 0; i < n; ++i) out.samples[i] *= half_kick[i];
        fft_forward(out.samples);
        for (std::size_t j = 0; j < n; ++j) out.samples[j] *= kinetic[j];
        fft_inverse(out.samples);
        for (std::size_t i = 0; i < n; ++i) out.samples[i] *= half_kick[i];
        out.time += h;
    }
    out.time = state.time + span;

    if (out.edge_density() > 1e-10)
        throw std::runtime_error("evolve: wave packet reached the grid boundary; "
                                 "widen the window");
    return out;
}

struct ScheduleSegment {
    double t_start;
    double t_end;
    Potential potential;
};

/// Ordered, contiguous, non-overlapping trap timeline for the release /
/// free-flight / recapture protocol.
struct TrapSchedule {
    std::vector<ScheduleSegment> segments;

    void validate() const {
        for (std::size_t i = 0; i < segments.size(); ++i) {
            if (!(segments[i].t_end > segments[i].t_start))
                throw std::invalid_argument("TrapSchedule: segment times must increase");
            if (i > 0 && std::abs(segments[i].t_start - segments[i - 1].t_end) > 1e-12)
                throw std::invalid_argument("TrapSchedule: segments must be contiguous");
        }
    }
};

struct Trajectory {
    std::vector<GridState> snapshots;
    std::vector<MomentReport> observables;
};

/// Evolve through every segment, recording a snapshot (and its moments) at the
/// start and at each segment boundary, plus optional intermediate snapshots.
inline Trajectory run_schedule(const GridState& initial, const TrapSchedule& schedule,
                               double dt, int snapshots_per_segment = 1) {
    schedule.validate();
    if (snapshots_per_segment < 1)
        throw std::invalid_argument("run_schedule: snapshots_per_segment >= 1");
    Trajectory traj;
    traj.snapshots.push_back(initial);
    traj.observables.push_back(moments(initial));
    GridState current = initial;
    for (const auto& seg : schedule.segments) {
        const double span = seg.t_end - seg.t_start;
        const double piece = span / snapshots_per_segment;
        for (int k = 0; k < snapshots_per_segment; ++k) {
            current = evolve(current, seg.potential, piece, dt);
            traj.snapshots.push_back(current);
            traj.observables.push_back(moments(current));
        }
    }
    return traj;
}

/// Hump count of a density profile: local maxima of the 3-cell smoothed
/// density above a fixed fraction of the peak (suppresses numerical ripple).
inline int count_humps(const std::vector<double>& density, double threshold_frac = 1e-6) {
    const std::size_t n = density.size();
    if (n < 3) return 0;
    std::vector<double> smooth(n);
    smooth[0] = density[0];
    smooth[n - 1] = density[n - 1];
    for (std::size_t i = 1; i + 1 < n; ++i)
        smooth[i] = (density[i - 1] + density[i] + density[i + 1]) / 3.0;
    const double peak = *std::max_element(smooth.begin(), smooth.end());
    const double thresh = threshold_frac * peak;
    int humps = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (smooth[i] > thresh && smooth[i] >= smooth[i - 1] && smooth[i] > smooth[i + 1])
            ++humps;
    }
    return humps;
}

struct GlauberResult {
    GridState final_state;
    cplx fitted_a;
    double fidelity = 0.0;
    bool coherent = false;  // false flags a drive too violent to stay coherent
};

/// Drive the oscillator vacuum with a classical force V = -f(t) x for a fixed
/// duration and fit the resulting displacement from the first moments via the
/// conserved ladder combination a = e^{i omega T}(<x>/2L + i <p> L/hbar).
inline GlauberResult glauber_drive(const std::function<double(double)>& f, double duration,
                                   const PhysicalScales& s, const Axis& axis, double dt) {
    GridState vac;
    vac.axis = axis;
    vac.time = 0.0;
    vac.scales = s;
    vac.samples.resize(axis.count);
    const double mwh = s.mass * s.omega / s.hbar;
    for (std::size_t i = 0; i < axis.count; ++i) {
        const double x = axis.coord(i);
        vac.samples[i] = std::pow(mwh / M_PI, 0.25) * std::exp(-0.5 * mwh * x * x);
    }

    const Potential pot = Potential::harmonic(s.omega).plus(Potential::linear_force(f));
    GlauberResult res;
    res.final_state = evolve(vac, pot, duration, dt);

    const MomentReport rep = moments(res.final_state);
    const double L = s.length;
    const cplx rotating(rep.mean_x / (2.0 * L), rep.mean_p * L / s.hbar);
    res.fitted_a = std::exp(cplx(0.0, s.omega * duration)) * rotating;

    // Reference oscillator coherent state with the fitted displacement at T;
    // the unknown global phase drops out of |<ref, result>|.
    const cplx back = res.fitted_a * std::exp(cplx(0.0, -s.omega * duration));
    const double xc = 2.0 * L * back.real();
    const double pc = s.hbar * back.imag() / L;
    GridState ref = vac;
    ref.time = duration;
    for (std::size_t i = 0; i < axis.count; ++i) {
        const double x = axis.coord(i);
        ref.samples[i] = std::pow(mwh / M_PI, 0.25) *
                         std::exp(cplx(-0.25 * (x - xc) * (x - xc) / (L * L),
                                       pc * x / s.hbar));
    }
    res.fidelity = std::abs(overlap(ref, res.final_state)) / (ref.norm() * res.final_state.norm());
    res.coherent = res.fidelity >= 0.99;
    return res;
}

struct BarrierResult {
    int humps_before = 0;
    int humps_after = 0;
    double attenuation = 0.0;       // transmitted amplitude fraction vs free reference
    double delay = 0.0;             // centroid time delay across the barrier
    double shape_correlation = 0.0; // density correlation after recentring
    bool regime_ok = true;          // false: reflection-dominated, conclusions void
};

/// Send a traveling multi-hump packet across a square barrier and compare the
/// transmitted packet against a barrier-free reference run.
inline BarrierResult barrier_robustness(const StateSpec1D& packet, const Potential& barrier,
                                        double flight_time, const Axis& axis, double dt) {
    if (barrier.terms.size() != 1 || barrier.terms[0].kind != PotentialTerm::Kind::Square)
        throw std::invalid_argument("barrier_robustness: potential must be a single square term");
    const auto& term = barrier.terms[0];
    const auto& s = packet.scales;

    GridState init = sample(packet, axis, 0.0);
    const MomentReport m0 = moments(init);

    BarrierResult res;
    res.humps_before = count_humps([&] {
        std::vector<double> rho(init.samples.size());
        for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(init.samples[i]);
        return rho;
    }());

    const double p0 = packet.p0();
    const double energy = m0.mean_p_squared / (2.0 * s.mass);
    if (p0 <= 0.0 || m0.sigma_p / p0 > 0.1 || energy < 2.0 * std::abs(term.height))
        res.regime_ok = false;

    GridState hit = evolve(init, barrier, flight_time, dt);
    GridState free_ref = evolve(init, Potential::free(), flight_time, dt);

    // Transmitted region: beyond the barrier's right edge.
    std::vector<double> rho_t, rho_f;
    double nt = 0.0, nf = 0.0, ct = 0.0, cf = 0.0;
    for (std::size_t i = 0; i < axis.count; ++i) {
        const double x = axis.coord(i);
        if (x <= term.right) continue;
        const double dt_ = std::norm(hit.samples[i]);
        const double df_ = std::norm(free_ref.samples[i]);
        rho_t.push_back(dt_);
        rho_f.push_back(df_);
        nt += dt_;
        nf += df_;
        ct += x * dt_;
        cf += x * df_;
    }
    if (nt <= 0.0 || nf <= 0.0)
        throw std::runtime_error("barrier_robustness: no transmitted amplitude; "
                                 "extend the flight time");
    res.attenuation = std::sqrt(nt / nf);
    res.humps_after = count_humps(rho_t);
    const double v0 = packet.v0();
    res.delay = (cf / nf - ct / nt) / v0;

    // Recenter by an integer cell shift and correlate the density profiles.
    const long shift = std::lround((cf / nf - ct / nt) / axis.step);
    double num = 0.0, d1 = 0.0, d2 = 0.0;
    for (std::size_t i = 0; i < rho_t.size(); ++i) {
        const long j = static_cast<long>(i) + shift;
        if (j < 0 || j >= static_cast<long>(rho_f.size())) continue;
        num += rho_t[i] * rho_f[static_cast<std::size_t>(j)];
        d1 += rho_t[i] * rho_t[i];
        d2 += rho_f[static_cast<std::size_t>(j)] * rho_f[static_cast<std::size_t>(j)];
    }
    res.shape_correlation = num / std::sqrt(d1 * d2);
    return res;
}

}  // namespace aw

#endif
