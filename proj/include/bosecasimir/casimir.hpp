#pragma once

// Casimir potential and force of the trapped gas, per summand family and
// total.  The potential between plates a distance d apart is
//
//   phi_C(d) = K / d^4 * sum_n [ (2/3) pi u^2 n^2 + sqrt(2 pi) u n + 1 ] / n^5
//              * e^{phi n},          K = 3 k_B T hbar^2 / (m^2 omega_c^2),
//
// whose three pieces resum to polylogarithms of e^phi (phi = -sqrt(2pi) u):
//
//   OrderN5:  K d^-4            Li5      OrderN4:  K d^-4 (-phi)    Li4
//   OrderN3:  K d^-4 (phi^2/3)  Li3      All:      their sum.
//
// Forces come from analytic differentiation in d (phi' = phi / d):
//
//   OrderN5:  K d^-5 [4 Li5 - phi Li4]
//   OrderN4:  K d^-5 [phi^2 Li3 - 3 phi Li4]
//   OrderN3:  (K/3) d^-5 phi^2 [2 Li3 - phi Li2]
//   All:     -(K/3) d^-5 [phi^3 Li2 - 5 phi^2 Li3 + 12 phi Li4 - 12 Li5]
//
// printed_form_force() carries two variant closed forms of the OrderN4 and
// OrderN3 forces (one drops a phi factor on Li4, the other scales the
// prefactor by 1/(4 pi^3)); they fail the finite-difference oracle and exist
// only so the verify report can quantify the disagreement.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include "bosecasimir/detail/kahan.hpp"
#include "bosecasimir/errors.hpp"
#include "bosecasimir/physics.hpp"
#include "bosecasimir/polylog.hpp"
#include "bosecasimir/types.hpp"

namespace bosecasimir::casimir {

enum class Term { OrderN3, OrderN4, OrderN5, All };

inline const char* term_label(Term t) {
  switch (t) {
    case Term::OrderN3: return "n3";
    case Term::OrderN4: return "n4";
    case Term::OrderN5: return "n5";
    case Term::All: return "all";
  }
  return "unknown";
}

inline Term term_from_label(const std::string& label) {
  if (label == "n3") return Term::OrderN3;
  if (label == "n4") return Term::OrderN4;
  if (label == "n5") return Term::OrderN5;
  if (label == "all") return Term::All;
  throw ConfigError("unknown term '" + label + "' (expected n3|n4|n5|all)");
}

struct PotentialSample {
  double d;
  Complex value;
  Term term;
  std::int64_t truncation_n;  // 0 for closed-form evaluation
};

struct ForceSample {
  double d;
  Complex analytic;
  std::optional<Complex> finite_difference;
  Term term;
};

/// Overall potential scale K = 3 k_B T hbar^2 / (m^2 omega_c^2).
inline double potential_prefactor(const physics::PhysicalParams& p) {
  const physics::DerivedScalars ds = physics::derive(p);
  const double m_omega = p.mass * ds.omega_c;
  return 3.0 * p.boltzmann_k * p.temperature * ds.hbar * ds.hbar /
         (m_omega * m_omega);
}

namespace detail {

inline void require_distance(double d, const char* op) {
  if (!(d > 0.0)) {
    throw DomainError(std::string(op) + ": plate separation d must be > 0");
  }
}

struct LiSet {
  Complex li2, li3, li4, li5;
};

// Evaluate only the polylog orders a term's closed form needs.
inline LiSet polylogs_for(Term term, const Complex& phi, bool force) {
  using polylog::PolylogOrder;
  using polylog::li_exp;
  LiSet li{};
  const bool n3 = term == Term::OrderN3 || term == Term::All;
  const bool n4 = term == Term::OrderN4 || term == Term::All;
  const bool n5 = term == Term::OrderN5 || term == Term::All;
  if (force && n3) li.li2 = li_exp(PolylogOrder(2), phi);
  if (n3 || (force && n4)) li.li3 = li_exp(PolylogOrder(3), phi);
  if (n4 || (force && n5)) li.li4 = li_exp(PolylogOrder(4), phi);
  if (n5) li.li5 = li_exp(PolylogOrder(5), phi);
  return li;
}

}  // namespace detail

/// Direct truncated summation of the potential series.  Its own convergent
/// oracle in the decaying regime; terms decay like n^-3 on the unit circle.
inline PotentialSample potential_series(const physics::PhysicalParams& p,
                                        double d, Term term,
                                        std::int64_t n_max = 100'000) {
  detail::require_distance(d, "potential_series");
  if (n_max < 1) throw DomainError("potential_series: n_max must be >= 1");
  const Complex phi = physics::phi_parameter(p, d);
  const Complex phi_sq = phi * phi;
  const bool n3 = term == Term::OrderN3 || term == Term::All;
  const bool n4 = term == Term::OrderN4 || term == Term::All;
  const bool n5 = term == Term::OrderN5 || term == Term::All;

  bosecasimir::detail::KahanComplex acc;
  const Complex growth = std::exp(phi);
  Complex e_phi_n(1.0, 0.0);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    if (n % 4096 == 0) {
      e_phi_n = std::exp(phi * static_cast<double>(n));  // drift refresh
    } else {
      e_phi_n *= growth;
    }
    if (e_phi_n == Complex(0.0, 0.0)) break;  // decaying-regime underflow
    const double nd = static_cast<double>(n);
    const double inv_n3 = 1.0 / (nd * nd * nd);
    Complex coeff(0.0, 0.0);
    if (n5) coeff += inv_n3 / (nd * nd);
    if (n4) coeff += -phi * (inv_n3 / nd);
    if (n3) coeff += phi_sq * (inv_n3 / 3.0);
    acc.add(coeff * e_phi_n);
  }
  const double k = potential_prefactor(p);
  const Complex value = k / (d * d * d * d) * acc.value();
  return {d, ensure_finite(value, "potential_series"), term, n_max};
}

/// Polylogarithm closed form of the potential.
inline PotentialSample potential_closed(const physics::PhysicalParams& p,
                                        double d, Term term) {
  detail::require_distance(d, "potential_closed");
  const Complex phi = physics::phi_parameter(p, d);
  const detail::LiSet li = detail::polylogs_for(term, phi, false);
  Complex bracket(0.0, 0.0);
  switch (term) {
    case Term::OrderN5: bracket = li.li5; break;
    case Term::OrderN4: bracket = -phi * li.li4; break;
    case Term::OrderN3: bracket = phi * phi / 3.0 * li.li3; break;
    case Term::All:
      bracket = li.li5 - phi * li.li4 + phi * phi / 3.0 * li.li3;
      break;
  }
  const double k = potential_prefactor(p);
  const Complex value = k / (d * d * d * d) * bracket;
  return {d, ensure_finite(value, "potential_closed"), term, 0};
}

/// Analytic force -d(phi_C)/dd from the differentiated closed forms.
inline ForceSample force_closed(const physics::PhysicalParams& p, double d,
                                Term term) {
  detail::require_distance(d, "force_closed");
  const Complex phi = physics::phi_parameter(p, d);
  const detail::LiSet li = detail::polylogs_for(term, phi, true);
  const Complex phi_sq = phi * phi;
  Complex bracket(0.0, 0.0);
  double scale = 1.0;
  switch (term) {
    case Term::OrderN5:
      bracket = 4.0 * li.li5 - phi * li.li4;
      break;
    case Term::OrderN4:
      bracket = phi_sq * li.li3 - 3.0 * phi * li.li4;
      break;
    case Term::OrderN3:
      bracket = phi_sq * (2.0 * li.li3 - phi * li.li2);
      scale = 1.0 / 3.0;
      break;
    case Term::All:
      bracket = -(phi_sq * phi * li.li2 - 5.0 * phi_sq * li.li3 +
                  12.0 * phi * li.li4 - 12.0 * li.li5);
      scale = 1.0 / 3.0;
      break;
  }
  const double k = potential_prefactor(p);
  const double d5 = d * d * d * d * d;
  const Complex value = scale * k / d5 * bracket;
  return {d, ensure_finite(value, "force_closed"), std::nullopt, term};
}

/// Central-difference force -[phi_C(d+h) - phi_C(d-h)] / 2h applied to the
/// closed potential, h = step_fraction * d.  Second-order accurate.
inline Complex force_fd(const physics::PhysicalParams& p, double d, Term term,
                        double step_fraction = 1e-6) {
  detail::require_distance(d, "force_fd");
  if (!(step_fraction > 0.0) || step_fraction >= 0.1) {
    throw DomainError("force_fd: step_fraction must lie in (0, 0.1)");
  }
  const double h = step_fraction * d;
  const Complex above = potential_closed(p, d + h, term).value;
  const Complex below = potential_closed(p, d - h, term).value;
  return ensure_finite(-(above - below) / (2.0 * h), "force_fd");
}

/// force_closed plus its finite-difference cross-check in one sample; throws
/// if the two routes disagree beyond rel_tol.
inline ForceSample checked_force_sample(const physics::PhysicalParams& p,
                                        double d, Term term,
                                        double step_fraction = 1e-6,
                                        double rel_tol = 1e-6) {
  ForceSample sample = force_closed(p, d, term);
  const Complex fd = force_fd(p, d, term, step_fraction);
  const double denom = std::max(std::abs(sample.analytic), 1e-300);
  if (std::abs(sample.analytic - fd) / denom > rel_tol) {
    throw DomainError("checked_force_sample: analytic and finite-difference "
                      "forces disagree beyond tolerance");
  }
  sample.finite_difference = fd;
  return sample;
}

/// Variant closed forms for the OrderN4 / OrderN3 forces (Li4 term missing a
/// phi factor, respectively a 1/(4 pi^3)-scaled prefactor).  Evaluated only
/// by the verify report; sweeps never touch these.
inline Complex printed_form_force(const physics::PhysicalParams& p, double d,
                                  Term term) {
  detail::require_distance(d, "printed_form_force");
  const Complex phi = physics::phi_parameter(p, d);
  using polylog::PolylogOrder;
  using polylog::li_exp;
  if (term == Term::OrderN4) {
    const Complex li3 = li_exp(PolylogOrder(3), phi);
    const Complex li4 = li_exp(PolylogOrder(4), phi);
    const double k = potential_prefactor(p);
    const double d5 = d * d * d * d * d;
    return ensure_finite(k / d5 * (phi * phi * li3 - 3.0 * li4),
                         "printed_form_force");
  }
  if (term == Term::OrderN3) {
    const physics::DerivedScalars ds = physics::derive(p);
    const Complex li2 = li_exp(PolylogOrder(2), phi);
    const Complex li3 = li_exp(PolylogOrder(3), phi);
    const double pi3 = std::numbers::pi * std::numbers::pi * std::numbers::pi;
    const double pref = -ds.field_shift_A * p.boltzmann_k * p.temperature /
                        (p.mass * pi3 * ds.omega_c * ds.omega_c);
    return ensure_finite(pref / (d * d * d) * (-phi / 2.0 * li2 + li3),
                         "printed_form_force");
  }
  throw std::invalid_argument(
      "printed_form_force: variant forms exist for OrderN4 and OrderN3 only");
}

struct PotentialDecomposition {
  Complex bulk;
  Complex surface;
  Complex casimir;
};

/// Bulk / surface / Casimir split of the grand potential obtained from the
/// theta-function transformation of the n_z sum:
///
///   Pref sum_j j^-3 e^{j beta A} [ 1/(2 sqrt(b)) - 1/2
///                                  + (1/sqrt(b)) sum_n e^{-pi n^2 / b} ],
///   b = j (lambda/d)^2,  Pref = (k_B T)^3 / (hbar^2 omega_c^2).
///
/// The j-sum only converges for A < 0; the closed polylog forms act as its
/// analytic continuation elsewhere.
inline PotentialDecomposition potential_decomposition(
    const physics::PhysicalParams& p, double d, int j_max = 400,
    int n_max = 64) {
  detail::require_distance(d, "potential_decomposition");
  if (j_max < 1 || n_max < 1) {
    throw DomainError("potential_decomposition: j_max and n_max must be >= 1");
  }
  const physics::DerivedScalars ds = physics::derive(p);
  if (physics::classify_regime(ds.field_shift_A) !=
      physics::Regime::Decaying) {
    throw RegimeError(
        "potential_decomposition: the fugacity j-sum diverges for field "
        "shift A >= 0 (exp(j beta A) does not decay)");
  }
  const double pi = std::numbers::pi;
  const double kbt = p.boltzmann_k * p.temperature;
  const double pref =
      kbt * kbt * kbt / (ds.hbar * ds.hbar * ds.omega_c * ds.omega_c);
  const double lam_over_d = ds.lambda_thermal / d;
  const double rho = std::exp(ds.beta * ds.field_shift_A);  // < 1

  bosecasimir::detail::KahanReal bulk, surface, cas;
  double weight_exp = 1.0;  // e^{j beta A}
  double last_contrib = 0.0;
  for (int j = 1; j <= j_max; ++j) {
    weight_exp *= rho;
    const double jd = static_cast<double>(j);
    const double w = weight_exp / (jd * jd * jd);
    const double b = jd * lam_over_d * lam_over_d;
    const double inv_sqrt_b = 1.0 / std::sqrt(b);
    double theta_sum = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      const double t = std::exp(-pi * n * n / b);
      theta_sum += t;
      if (t < 1e-18 * (1.0 + theta_sum)) break;
    }
    bulk.add(w * 0.5 * inv_sqrt_b);
    surface.add(-0.5 * w);
    cas.add(w * inv_sqrt_b * theta_sum);
    last_contrib = w * (0.5 * inv_sqrt_b + 0.5 + inv_sqrt_b * theta_sum);
  }
  // Geometric estimate of the dropped j-tail; the summand decays at least
  // like rho^j times a decreasing polynomial factor.
  const double tail = last_contrib * rho / (1.0 - rho);
  const double scale = std::abs(bulk.value()) + std::abs(surface.value()) +
                       std::abs(cas.value());
  if (tail > 1e-9 * scale) {
    throw DomainError(
        "potential_decomposition: j_max too small, geometric tail estimate "
        "above 1e-9 of the partial sum");
  }
  return {Complex(pref * bulk.value(), 0.0),
          Complex(pref * surface.value(), 0.0),
          Complex(pref * cas.value(), 0.0)};
}

}  // namespace bosecasimir::casimir
