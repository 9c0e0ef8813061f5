#ifndef ARNOLDWAVE_OPERATORS_HPP
#define ARNOLDWAVE_OPERATORS_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "arnoldwave/grid.hpp"
#include "arnoldwave/scales.hpp"

namespace aw {

/// Conserved operators of the free particle and the quadratic generators of
/// its kinematical symmetry algebra. Each acts on a sampled wavefunction with
/// the coefficient functions frozen at the operator's time stamp.
enum class OpTag { Identity, X, P, A, Adag, N, NAlgebra, P2, X2, XP };

struct LinearOperator1D {
    OpTag tag;
    PhysicalScales scales;
    double time = 0.0;
};

inline LinearOperator1D make_operator(OpTag tag, const PhysicalScales& s, double t) {
    return LinearOperator1D{tag, s, t};
}

/// N reconstructed from the algebra as (P^2/2m + m omega^2 X^2/2)/(hbar omega),
/// i.e. the mapped oscillator Hamiltonian divided by hbar omega.
inline LinearOperator1D number_from_algebra(const PhysicalScales& s, double t) {
    return LinearOperator1D{OpTag::NAlgebra, s, t};
}

namespace detail {

inline void check_boundary(const GridState& state) {
    if (state.edge_density() > 1e-12)
        throw std::runtime_error(
            "operator apply: wavefunction does not vanish at the grid edges; "
            "widen the window");
}

inline GridState multiply_x(const GridState& in, int power) {
    GridState out = in;
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        double f = 1.0;
        const double x = out.axis.coord(i);
        for (int p = 0; p < power; ++p) f *= x;
        out.samples[i] *= f;
    }
    return out;
}

inline GridState lincomb(cplx ca, const GridState& a, cplx cb, const GridState& b) {
    GridState out = a;
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] = ca * a.samples[i] + cb * b.samples[i];
    return out;
}

}  // namespace detail

inline GridState apply(const LinearOperator1D& op, const GridState& state);

namespace detail {

inline GridState apply_primitive(OpTag tag, const PhysicalScales& s, double t,
                                 const GridState& state) {
    const double L = s.length;
    const double hbar = s.hbar;
    const double m = s.mass;
    const DeltaFactor d = delta(s, t);

    switch (tag) {
        case OpTag::Identity:
            return state;
        case OpTag::X: {
            // x + (i hbar t / m) d/dx
            GridState dx = spectral_derivative(state);
            return lincomb(1.0, multiply_x(state, 1), cplx(0.0, hbar * t / m), dx);
        }
        case OpTag::P: {
            GridState dx = spectral_derivative(state);
            for (auto& v : dx.samples) v *= cplx(0.0, -hbar);
            return dx;
        }
        case OpTag::A: {
            // L delta d/dx + x/(2L)
            GridState dx = spectral_derivative(state);
            return lincomb(1.0 / (2.0 * L), multiply_x(state, 1), L * d.value, dx);
        }
        case OpTag::Adag: {
            GridState dx = spectral_derivative(state);
            return lincomb(1.0 / (2.0 * L), multiply_x(state, 1), -L * d.conj(), dx);
        }
        case OpTag::N: {
            // -|delta|^2 L^2 d^2/dx^2 + i (t/tau)(x d/dx + 1/2) + x^2/(4 L^2)
            const double ad2 = d.modulus() * d.modulus();
            GridState d2 = spectral_derivative(state, 2);
            GridState dx = spectral_derivative(state);
            GridState xdx = multiply_x(dx, 1);
            GridState out = state;
            const cplx it(0.0, t / s.tau);
            for (std::size_t i = 0; i < out.samples.size(); ++i) {
                const double x = out.axis.coord(i);
                out.samples[i] = -ad2 * L * L * d2.samples[i] +
                                 it * (xdx.samples[i] + 0.5 * state.samples[i]) +
                                 x * x / (4.0 * L * L) * state.samples[i];
            }
            return out;
        }
        default:
            throw std::logic_error("apply_primitive: composite tag");
    }
}

}  // namespace detail

/// Apply an operator to a grid state. Derivatives are spectral; composite
/// quadratic operators are built by successive application.
inline GridState apply(const LinearOperator1D& op, const GridState& state) {
    detail::check_boundary(state);
    const auto& s = op.scales;
    switch (op.tag) {
        case OpTag::P2: {
            const LinearOperator1D p{OpTag::P, s, op.time};
            return apply(p, detail::apply_primitive(OpTag::P, s, op.time, state));
        }
        case OpTag::X2: {
            return detail::apply_primitive(
                OpTag::X, s, op.time, detail::apply_primitive(OpTag::X, s, op.time, state));
        }
        case OpTag::XP: {
            // symmetrized (XP + PX)/2
            GridState xp = detail::apply_primitive(
                OpTag::X, s, op.time, detail::apply_primitive(OpTag::P, s, op.time, state));
            GridState px = detail::apply_primitive(
                OpTag::P, s, op.time, detail::apply_primitive(OpTag::X, s, op.time, state));
            return detail::lincomb(0.5, xp, 0.5, px);
        }
        case OpTag::NAlgebra: {
            const LinearOperator1D p2{OpTag::P2, s, op.time};
            const LinearOperator1D x2{OpTag::X2, s, op.time};
            GridState kin = apply(p2, state);
            GridState pot = apply(x2, state);
            const double om = s.omega;
            return detail::lincomb(1.0 / (2.0 * s.mass * s.hbar * om), kin,
                                   s.mass * om / (2.0 * s.hbar), pot);
        }
        default:
            return detail::apply_primitive(op.tag, s, op.time, state);
    }
}

/// One entry of the symmetry-algebra commutator table:
/// [a, b] = coefficient * expected (expected == Identity with coefficient 0
/// encodes a vanishing commutator).
struct CommutatorRelation {
    OpTag a;
    OpTag b;
    cplx coefficient;
    OpTag expected;
};

inline std::vector<CommutatorRelation> commutator_table(const PhysicalScales& s) {
    const cplx ih(0.0, s.hbar);
    return {
        {OpTag::X, OpTag::P, ih, OpTag::Identity},
        {OpTag::X, OpTag::P2, 2.0 * ih, OpTag::P},
        {OpTag::X, OpTag::X2, 0.0, OpTag::Identity},
        {OpTag::X, OpTag::XP, ih, OpTag::X},
        {OpTag::P, OpTag::P2, 0.0, OpTag::Identity},
        {OpTag::P, OpTag::X2, -2.0 * ih, OpTag::X},
        {OpTag::P, OpTag::XP, -ih, OpTag::P},
        {OpTag::X2, OpTag::P2, 4.0 * ih, OpTag::XP},
        {OpTag::X2, OpTag::XP, 2.0 * ih, OpTag::X2},
        {OpTag::P2, OpTag::XP, -2.0 * ih, OpTag::P2},
    };
}

/// Relative deviation of ([a,b] - coefficient*expected) applied to a probe.
/// Normalized by the magnitude of the two composition branches so that the
/// figure is scale-free.
inline double commutator_deviation(const CommutatorRelation& rel, const PhysicalScales& s,
                                   double t, const GridState& probe) {
    const LinearOperator1D a{rel.a, s, t};
    const LinearOperator1D b{rel.b, s, t};
    GridState ab = apply(a, apply(b, probe));
    GridState ba = apply(b, apply(a, probe));
    GridState expect = apply(LinearOperator1D{rel.expected, s, t}, probe);
    double num = 0.0;
    for (std::size_t i = 0; i < probe.samples.size(); ++i) {
        const cplx dev =
            ab.samples[i] - ba.samples[i] - rel.coefficient * expect.samples[i];
        num += std::norm(dev);
    }
    const double denom = ab.norm() + ba.norm() + s.hbar * probe.norm();
    return std::sqrt(num * probe.axis.step) / denom;
}

}  // namespace aw

#endif
