#include <catch2/catch_amalgamated.hpp>

#include "arnoldwave/scales.hpp"

using namespace aw;

TEST_CASE("derived scales follow from m, hbar, omega") {
    const auto s = make_scales(1.0, 1.0, 0.7);
    CHECK(s.length == Catch::Approx(std::sqrt(1.0 / (2.0 * 0.7))).epsilon(1e-15));
    CHECK(s.tau == Catch::Approx(1.0 / 0.7).epsilon(1e-15));
    // tau is the dispersion time 2 m L^2 / hbar.
    CHECK(s.tau == Catch::Approx(2.0 * s.mass * s.length * s.length / s.hbar).epsilon(1e-15));
}

TEST_CASE("scale validation") {
    CHECK_THROWS_AS(make_scales(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_scales(1.0, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_scales(1.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(make_scales(1.0, 1.0, std::nan("")), std::domain_error);
}

TEST_CASE("delta factor 1 + i omega t") {
    const auto s = make_scales(1.0, 1.0, 0.7);
    const auto d = delta(s, 1.3);
    CHECK(d.value.real() == 1.0);
    CHECK(d.value.imag() == Catch::Approx(0.7 * 1.3).epsilon(1e-15));
    CHECK(d.modulus() == Catch::Approx(std::sqrt(1.0 + 0.91 * 0.91)).epsilon(1e-15));
    CHECK(d.phase() == Catch::Approx(std::atan(0.91)).epsilon(1e-15));
    CHECK(d.conj() == std::conj(d.value));
    CHECK(std::abs(d.unit_conj()) == Catch::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("one dispersion time doubles the spread measure") {
    const auto s = make_scales(2.0, 1.0, 0.4);
    const auto d = delta(s, s.tau);
    CHECK(d.modulus() * d.modulus() == Catch::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("squeezed delta rescales time by e^{2r}") {
    const auto s = make_scales(1.0, 1.0, 0.7);
    const double r = -0.35;
    const auto dr = delta(s, 1.3, r);
    CHECK(dr.value.imag() ==
          Catch::Approx(std::exp(2.0 * r) * 0.7 * 1.3).epsilon(1e-15));
    CHECK(dr.value.real() == 1.0);
}
