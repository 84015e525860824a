#pragma once

// Physical parameter set and every derived scalar the potential and force
// formulas consume: cyclotron frequency, thermal de Broglie wavelength, the
// field shift A and the series parameters u and phi.
//
// Unit conventions: the Planck constant is the unreduced h (hbar = h / 2pi
// is derived), the cyclotron frequency carries the magnitude convention
// omega_c = |q| B / (m c), and the chemical potential is fixed at zero
// (condensation) throughout -- there is deliberately no field for it.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "bosecasimir/errors.hpp"
#include "bosecasimir/types.hpp"

namespace bosecasimir::physics {

struct PhysicalParams {
  double mass = 1.0;
  double charge = 1.0;
  double light_speed = 1.0;
  double planck_h = 1.0;  // unreduced
  double boltzmann_k = 1.0;
  double temperature = 1.0;  // the condensation temperature T_c in all sweeps
  double electric_field = 1.0;
  double magnetic_field = 1.0;

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string("PhysicalParams: ") + name +
                          " must be strictly positive and finite");
      }
    };
    positive(mass, "mass");
    positive(charge, "charge");
    positive(light_speed, "light_speed");
    positive(planck_h, "planck_h");
    positive(boltzmann_k, "boltzmann_k");
    positive(temperature, "temperature");
    positive(electric_field, "electric_field");
    // B = 0 is a singular limit: omega_c -> 0 and the field shift A -> inf.
    positive(magnetic_field, "magnetic_field");
  }
};

/// Canonical configuration m = q = c = h = k_B = T = F = 1 with the given B.
inline PhysicalParams unit_params(double magnetic_field) {
  PhysicalParams p;
  p.magnetic_field = magnetic_field;
  return p;
}

struct DerivedScalars {
  double omega_c;         // |q| B / (m c)
  double hbar;            // h / 2pi
  double beta;            // 1 / (k_B T)
  double lambda_thermal;  // h / sqrt(2 pi m k_B T)
  double field_shift_A;   // (m c^2 / 2)(F/B)^2 - hbar omega_c
};

inline DerivedScalars derive(const PhysicalParams& p) {
  p.validate();
  DerivedScalars d{};
  d.hbar = p.planck_h / (2.0 * std::numbers::pi);
  d.omega_c = std::abs(p.charge) * p.magnetic_field / (p.mass * p.light_speed);
  d.beta = 1.0 / (p.boltzmann_k * p.temperature);
  d.lambda_thermal =
      p.planck_h / std::sqrt(2.0 * std::numbers::pi * p.mass * p.boltzmann_k *
                             p.temperature);
  const double ratio = p.electric_field / p.magnetic_field;
  d.field_shift_A =
      0.5 * p.mass * p.light_speed * p.light_speed * ratio * ratio -
      d.hbar * d.omega_c;
  ensure_finite(d.omega_c, "derive: omega_c");
  ensure_finite(d.lambda_thermal, "derive: lambda_thermal");
  ensure_finite(d.beta, "derive: beta");
  ensure_finite(d.field_shift_A, "derive: field_shift_A");
  return d;
}

// Sign of the field shift selects the qualitative behavior: A > 0 puts
// e^phi on the unit circle (oscillating force), A < 0 makes every series
// converge absolutely (where the brute-force oracles run).
enum class Regime { Oscillatory, Decaying, Critical };

inline constexpr double kRegimeTol = 1e-12;

inline Regime classify_regime(double field_shift_A) {
  if (std::abs(field_shift_A) <= kRegimeTol) return Regime::Critical;
  return field_shift_A > 0.0 ? Regime::Oscillatory : Regime::Decaying;
}

inline Regime classify_regime(const PhysicalParams& p) {
  return classify_regime(derive(p).field_shift_A);
}

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Oscillatory: return "oscillatory";
    case Regime::Decaying: return "decaying";
    case Regime::Critical: return "critical";
  }
  return "unknown";
}

/// Landau-level energy between plates a distance d apart, with the drift
/// term at k_x = 0 folded in; the net constant offset is -(m c^2/2)(F/B)^2:
///   eps = hbar omega_c (n_x + n_y + 1) + hbar^2 pi^2 n_z^2 / (2 m d^2)
///         - (m c^2 / 2)(F/B)^2
inline double single_particle_energy(const PhysicalParams& p, double d,
                                     int n_x, int n_y, int n_z) {
  if (!(d > 0.0)) throw DomainError("single_particle_energy: d must be > 0");
  if (n_x < 1 || n_y < 1 || n_z < 1) {
    throw DomainError("single_particle_energy: quantum numbers start at 1");
  }
  const DerivedScalars ds = derive(p);
  const double pi = std::numbers::pi;
  const double ratio = p.electric_field / p.magnetic_field;
  const double confinement = ds.hbar * ds.hbar * pi * pi /
                             (2.0 * p.mass * d * d) *
                             static_cast<double>(n_z) * n_z;
  const double offset =
      0.5 * p.mass * p.light_speed * p.light_speed * ratio * ratio;
  return ensure_finite(
      ds.hbar * ds.omega_c * (n_x + n_y + 1.0) + confinement - offset,
      "single_particle_energy");
}

/// u = sqrt(-2 (d/lambda)^2 beta A), principal branch: real positive in the
/// decaying regime, +i |u| in the oscillatory one.
inline Complex u_parameter(const PhysicalParams& p, double d) {
  if (!(d > 0.0)) throw DomainError("u_parameter: d must be > 0");
  const DerivedScalars ds = derive(p);
  const double scaled = d / ds.lambda_thermal;
  const double radicand = -2.0 * scaled * scaled * ds.beta * ds.field_shift_A;
  return ensure_finite(std::sqrt(Complex(radicand, 0.0)), "u_parameter");
}

/// Canonical series exponent phi = -sqrt(2 pi) u, so the summand factor
/// exp(-sqrt(2 pi) u n) is exp(phi n) term by term.  Re(phi) <= 0 always;
/// for A > 0 phi is purely imaginary with negative imaginary part.
inline Complex phi_parameter(const PhysicalParams& p, double d) {
  const double root_two_pi = std::sqrt(2.0 * std::numbers::pi);
  return -root_two_pi * u_parameter(p, d);
}

}  // namespace bosecasimir::physics
