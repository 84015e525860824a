#include <catch2/catch.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "bosecasimir/physics.hpp"
#include "helpers.hpp"

using namespace bosecasimir;
using physics::PhysicalParams;
using physics::Regime;
using testutil::abs_err;
using testutil::rel_err;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("derived scalars by direct substitution") {
  const PhysicalParams p = physics::unit_params(0.02);
  const auto d = physics::derive(p);
  CHECK(d.omega_c == Approx(0.02).epsilon(1e-15));
  CHECK(d.hbar == Approx(1.0 / (2.0 * kPi)).epsilon(1e-15));
  CHECK(d.beta == 1.0);
  CHECK(d.lambda_thermal == Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-15));
  // A = 1/(2 B^2) - B/(2 pi) under unit parameters
  const double expected_A = 1.0 / (2.0 * 0.02 * 0.02) - 0.02 / (2.0 * kPi);
  CHECK(d.field_shift_A == Approx(expected_A).epsilon(1e-14));
  CHECK(d.field_shift_A == Approx(1249.99682).epsilon(1e-8));
}

TEST_CASE("parameter validation") {
  PhysicalParams p = physics::unit_params(1.0);
  p.mass = 0.0;
  CHECK_THROWS_AS(physics::derive(p), DomainError);
  p = physics::unit_params(0.0);  // B = 0 is the singular limit
  CHECK_THROWS_AS(physics::derive(p), DomainError);
  p = physics::unit_params(-2.0);
  CHECK_THROWS_AS(physics::derive(p), DomainError);
  p = physics::unit_params(1.0);
  p.temperature = -1.0;
  CHECK_THROWS_AS(physics::derive(p), DomainError);
  // positive but singular input: derived field shift overflows
  p = physics::unit_params(1e-300);
  CHECK_THROWS_AS(physics::derive(p), DomainError);
}

TEST_CASE("single-particle energy") {
  const PhysicalParams p = physics::unit_params(2.0);
  SECTION("ground level at B = 2, d = 1 by substitution") {
    // hbar*2*3 + hbar^2 pi^2/2 - 1/8 = 3/pi + 1/8 - 1/8
    const double e = physics::single_particle_energy(p, 1.0, 1, 1, 1);
    CHECK(e == Approx(3.0 / kPi).epsilon(1e-14));
  }
  SECTION("quadratic level spacing in n_z") {
    const double hbar = 1.0 / (2.0 * kPi);
    const double base = hbar * hbar * kPi * kPi / 2.0;  // m = d = 1
    const double e1 = physics::single_particle_energy(p, 1.0, 1, 1, 1);
    const double e2 = physics::single_particle_energy(p, 1.0, 1, 1, 2);
    CHECK(e2 - e1 == Approx(3.0 * base).epsilon(1e-13));
  }
  SECTION("strictly increasing in each quantum number") {
    const double e = physics::single_particle_energy(p, 0.7, 2, 3, 4);
    CHECK(physics::single_particle_energy(p, 0.7, 3, 3, 4) > e);
    CHECK(physics::single_particle_energy(p, 0.7, 2, 4, 4) > e);
    CHECK(physics::single_particle_energy(p, 0.7, 2, 3, 5) > e);
  }
  SECTION("large B grows linearly through the Landau term") {
    const double e1 =
        physics::single_particle_energy(physics::unit_params(100.0), 1.0, 1, 1, 1);
    const double e2 =
        physics::single_particle_energy(physics::unit_params(200.0), 1.0, 1, 1, 1);
    CHECK(e2 / e1 == Approx(2.0).margin(0.01));
  }
  SECTION("domain errors") {
    CHECK_THROWS_AS(physics::single_particle_energy(p, 0.0, 1, 1, 1),
                    DomainError);
    CHECK_THROWS_AS(physics::single_particle_energy(p, -1.0, 1, 1, 1),
                    DomainError);
    CHECK_THROWS_AS(physics::single_particle_energy(p, 1.0, 0, 1, 1),
                    DomainError);
  }
}

TEST_CASE("u parameter branches") {
  SECTION("decaying regime: real positive") {
    const PhysicalParams p = physics::unit_params(2.0);
    const Complex u = physics::u_parameter(p, 1.0);
    // (d/lambda)^2 = 2 pi, A = 1/8 - 1/pi
    const double expected =
        std::sqrt(2.0 * 2.0 * kPi * (1.0 / kPi - 0.125));
    CHECK(u.real() == Approx(expected).epsilon(1e-14));
    CHECK(u.real() == Approx(1.5586).epsilon(1e-4));
    CHECK(u.imag() == 0.0);
  }
  SECTION("oscillatory regime: purely imaginary, positive imaginary part") {
    const PhysicalParams p = physics::unit_params(0.02);
    const Complex u = physics::u_parameter(p, 1.0);
    CHECK(u.real() == 0.0);
    const double expected_mag =
        std::sqrt(2.0 * 2.0 * kPi * (1.0 / (2.0 * 0.02 * 0.02) - 0.02 / (2.0 * kPi)));
    CHECK(u.imag() == Approx(expected_mag).epsilon(1e-14));
    CHECK(u.imag() == Approx(125.33).epsilon(1e-4));
  }
  SECTION("critical point: u vanishes") {
    // h = 2 pi makes hbar = 1, so A = F^2/2 - B vanishes at F = sqrt(2), B = 1
    PhysicalParams p = physics::unit_params(1.0);
    p.planck_h = 2.0 * kPi;
    p.electric_field = std::sqrt(2.0);
    CHECK(physics::classify_regime(p) == Regime::Critical);
    CHECK(std::abs(physics::u_parameter(p, 1.0)) < 1e-6);
  }
}

TEST_CASE("phi is exactly -sqrt(2 pi) u on both branches") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> b_dist(0.01, 8.0);
  std::uniform_real_distribution<double> d_dist(0.05, 4.0);
  const double root = std::sqrt(2.0 * kPi);
  for (int i = 0; i < 100; ++i) {
    const PhysicalParams p = physics::unit_params(b_dist(rng));
    const double d = d_dist(rng);
    const Complex u = physics::u_parameter(p, d);
    const Complex phi = physics::phi_parameter(p, d);
    REQUIRE(rel_err(phi, -root * u) < 1e-14);
    REQUIRE(phi.real() <= 1e-14);
    if (u.imag() > 0.0) REQUIRE(phi.imag() < 0.0);
  }
}

TEST_CASE("phi scales linearly in d") {
  const PhysicalParams p = physics::unit_params(0.04);
  const Complex phi1 = physics::phi_parameter(p, 0.9);
  const Complex phi2 = physics::phi_parameter(p, 1.8);
  CHECK(rel_err(phi2, 2.0 * phi1) < 1e-14);
}

TEST_CASE("regime classification across the reference field values") {
  for (double b : {0.02, 0.04, 0.06, 0.08}) {
    CHECK(physics::classify_regime(physics::unit_params(b)) ==
          Regime::Oscillatory);
  }
  CHECK(physics::classify_regime(physics::unit_params(2.0)) ==
        Regime::Decaying);
  // sign of A flips at B = pi^(1/3) ~ 1.4646 under unit parameters
  CHECK(physics::classify_regime(physics::unit_params(1.46)) ==
        Regime::Oscillatory);
  CHECK(physics::classify_regime(physics::unit_params(1.47)) ==
        Regime::Decaying);
  const double critical_b = std::cbrt(kPi);
  CHECK(physics::derive(physics::unit_params(critical_b - 1e-4)).field_shift_A >
        0.0);
  CHECK(physics::derive(physics::unit_params(critical_b + 1e-4)).field_shift_A <
        0.0);
}
