#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "arnoldwave/states_nd.hpp"

using namespace aw;

namespace {

const PhysicalScales S = make_scales(1.0, 1.0, 0.7);

}  // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(make_polar(-1, 0, 1, S), std::domain_error);
    CHECK_THROWS_AS(make_polar(0, 0, 2, S), std::domain_error);
    CHECK_THROWS_AS(make_spherical(0, 0, 0, S), std::domain_error);
    CHECK_THROWS_AS(make_spherical(1, 1, 2, S), std::domain_error);
    CHECK_THROWS_AS(make_cartesian({}), std::domain_error);
    CHECK_THROWS_AS(
        make_cartesian({basis_state(0, S), basis_state(0, make_scales(2.0, 1.0, 0.7))}),
        std::domain_error);
}

TEST_CASE("polar states stay normalized while spreading") {
    for (double t : {0.0, 1.3}) {
        for (auto [n, l] : std::vector<std::pair<int, int>>{
                 {0, 0}, {0, 1}, {1, 1}, {2, 3}, {4, 4}}) {
            CHECK(radial_norm(make_polar(n, l, 1, S), t) ==
                  Catch::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("spherical states stay normalized while spreading") {
    for (double t : {0.0, 1.3}) {
        for (auto [n, l, m] : std::vector<std::tuple<int, int, int>>{
                 {1, 0, 0}, {1, 1, 0}, {2, 1, 1}, {3, 2, -1}, {4, 3, 2}}) {
            CHECK(radial_norm(make_spherical(n, l, m, S), t) ==
                  Catch::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("cartesian product evaluation") {
    const auto spec = make_cartesian({basis_state(1, S), basis_state(2, S)});
    const double x[2] = {0.7, -0.4};
    const cplx got = eval(spec, x, 0.9);
    const cplx want = eval(basis_state(1, S), 0.7, 0.9) * eval(basis_state(2, S), -0.4, 0.9);
    CHECK(std::abs(got - want) < 1e-15);
    const double bad[3] = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(eval(spec, bad, 0.0), std::invalid_argument);
}

TEST_CASE("cartesian uncertainty law per axis") {
    // Each axis carries its own (n_i + 1/2) hbar |delta_i|, including an
    // anisotropic pair of trap frequencies.
    const auto s2 = make_scales(1.0, 1.0, 0.35);
    const auto spec = make_cartesian({basis_state(1, S), basis_state(3, s2)});
    const Axis ax = make_axis(-35.0, 35.0, 512);
    for (double t : {0.0, 1.1}) {
        const auto rep = nd_moments(sample(spec, {ax, ax}, t));
        CHECK(rep.norm == Catch::Approx(1.0).epsilon(1e-8));
        CHECK(rep.axes[0].product ==
              Catch::Approx(1.5 * S.hbar * delta(S, t).modulus()).epsilon(1e-6));
        CHECK(rep.axes[1].product ==
              Catch::Approx(3.5 * s2.hbar * delta(s2, t).modulus()).epsilon(1e-6));
        const double energy = 0.5 * (S.hbar * S.omega * 1.5 + s2.hbar * s2.omega * 3.5);
        CHECK(rep.kinetic_energy == Catch::Approx(energy).epsilon(1e-6));
    }
}

TEST_CASE("polar energies, uncertainties and angular momentum") {
    const Axis ax = make_axis(-25.0, 25.0, 256);
    for (auto [n, l, chi] :
         std::vector<std::tuple<int, int, int>>{{0, 1, 1}, {1, 1, -1}, {2, 3, 1}, {4, 4, -1}}) {
        const auto spec = make_polar(n, l, chi, S);
        const double e = oscillator_energy(spec);
        CHECK(e == Catch::Approx(S.hbar * S.omega * (2 * n + l + 1)).epsilon(1e-15));
        for (double t : {0.0, 0.9}) {
            const auto rep = nd_moments(sample(spec, ax, t));
            CHECK(rep.norm == Catch::Approx(1.0).epsilon(1e-7));
            CHECK(rep.kinetic_energy == Catch::Approx(0.5 * e).epsilon(1e-6));
            // Both axes carry half the energy: product |delta| E / (2 omega).
            const double want = delta(S, t).modulus() * e / (2.0 * S.omega);
            CHECK(rep.axes[0].product == Catch::Approx(want).epsilon(1e-6));
            CHECK(rep.axes[1].product == Catch::Approx(want).epsilon(1e-6));
            CHECK(angular_momentum(spec, t) ==
                  Catch::Approx(chi * l * S.hbar).margin(1e-8));
        }
    }
}

TEST_CASE("spherical energies and angular momentum") {
    const Axis ax = make_axis(-14.0, 14.0, 96);
    for (auto [n, l, m] :
         std::vector<std::tuple<int, int, int>>{{1, 0, 0}, {2, 1, 1}, {1, 2, -2}}) {
        const auto spec = make_spherical(n, l, m, S);
        const double e = oscillator_energy(spec);
        CHECK(e == Catch::Approx(S.hbar * S.omega * (2 * (n - 1) + l + 1.5)).epsilon(1e-15));
        const auto rep = nd_moments(sample(spec, ax, 0.0));
        CHECK(rep.norm == Catch::Approx(1.0).epsilon(1e-7));
        CHECK(rep.kinetic_energy == Catch::Approx(0.5 * e).epsilon(1e-6));
        CHECK(angular_momentum(spec, 0.9) == Catch::Approx(m * S.hbar).margin(1e-8));
    }
}

TEST_CASE("spherical uncertainty products average to |delta| E / (3 omega)") {
    // The per-axis products are anisotropic whenever the harmonic weight of an
    // axis differs from 1/3 (e.g. l > 0 with m = 0); the axis average obeys the
    // isotropic law exactly.
    const Axis ax = make_axis(-14.0, 14.0, 96);
    for (auto [n, l, m] :
         std::vector<std::tuple<int, int, int>>{{1, 0, 0}, {2, 0, 0}, {1, 1, 0}, {2, 1, 1}}) {
        const auto spec = make_spherical(n, l, m, S);
        for (double t : {0.0, 0.9}) {
            const auto rep = nd_moments(sample(spec, ax, t));
            const double want =
                delta(S, t).modulus() * oscillator_energy(spec) / (3.0 * S.omega);
            CHECK(rep.mean_product == Catch::Approx(want).epsilon(1e-6));
        }
    }
    // s-states are isotropic, so there each individual axis obeys the law too.
    const auto iso = nd_moments(sample(make_spherical(2, 0, 0, S), ax, 0.9));
    const double want =
        delta(S, 0.9).modulus() * oscillator_energy(make_spherical(2, 0, 0, S)) /
        (3.0 * S.omega);
    for (const auto& axm : iso.axes) CHECK(axm.product == Catch::Approx(want).epsilon(1e-6));
}

TEST_CASE("chirality flips the angular momentum sign only") {
    const auto left = make_polar(1, 2, -1, S);
    const auto right = make_polar(1, 2, 1, S);
    CHECK(std::abs(eval(left, 1.3, 0.8, 0.5)) ==
          Catch::Approx(std::abs(eval(right, 1.3, 0.8, 0.5))).epsilon(1e-14));
    CHECK(angular_momentum(left, 0.0) == Catch::Approx(-2.0 * S.hbar).margin(1e-8));
    CHECK(angular_momentum(right, 0.0) == Catch::Approx(2.0 * S.hbar).margin(1e-8));
}
