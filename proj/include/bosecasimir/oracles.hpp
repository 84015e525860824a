#pragma once

// Brute-force verification of every analytic step: direct grand-potential
// sums, the small-(beta hbar omega_c) approximation that collapses the
// Landau-level denominators, the theta-function identity behind the
// bulk/surface/Casimir split, and adaptive quadrature for the integral that
// produces the closed summand.  Everything here is deliberately independent
// of the polylog route it cross-checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "bosecasimir/casimir.hpp"
#include "bosecasimir/detail/kahan.hpp"
#include "bosecasimir/errors.hpp"
#include "bosecasimir/physics.hpp"
#include "bosecasimir/types.hpp"

namespace bosecasimir::oracles {

struct OracleReport {
  std::string name;
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double abs_error = 0.0;
  double rel_error = 0.0;
  bool passed = false;
  double tolerance = 0.0;
  bool erratum = false;          // expected-fail variant-form checks
  bool skipped = false;          // not evaluable in the current regime
  bool validity_flagged = false; // approximation used outside its validity
  std::string detail;
};

inline OracleReport make_report(std::string name, Complex lhs, Complex rhs,
                                double tolerance) {
  OracleReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tolerance;
  r.abs_error = std::abs(lhs - rhs);
  const double rhs_mag = std::abs(rhs);
  r.rel_error = r.abs_error / std::max(rhs_mag, 1e-300);
  r.passed = (r.rel_error <= tolerance) ||
             (r.abs_error <= tolerance && rhs_mag < tolerance);
  return r;
}

inline OracleReport skipped_report(std::string name, std::string reason) {
  OracleReport r;
  r.name = std::move(name);
  r.skipped = true;
  r.detail = std::move(reason);
  return r;
}

namespace detail {

inline std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// sum_{n=1}^{N} e^{-a n} without cancellation for small a.
inline double geometric_partial_sum(double a, std::int64_t n_terms) {
  const double denom = -std::expm1(-a);
  if (denom == 0.0) return static_cast<double>(n_terms);
  return std::exp(-a) * (-std::expm1(-a * static_cast<double>(n_terms))) /
         denom;
}

inline void require_decaying(const physics::DerivedScalars& ds,
                             const char* op, const char* divergent_sum) {
  if (physics::classify_regime(ds.field_shift_A) !=
      physics::Regime::Decaying) {
    throw RegimeError(std::string(op) + ": " + divergent_sum +
                      " diverges for field shift A >= 0");
  }
}

}  // namespace detail

/// Quadruple truncated grand-potential sum at mu = 0 (fugacity z = 1):
///
///   k_B T sum_{n_x, n_y, n_z, j} (1/j) exp{-j beta [hbar omega_c
///     (n_x+n_y+1) + hbar^2 pi^2 n_z^2 / (2 m d^2) - (m c^2/2)(F/B)^2]}
///
/// The equal-spaced n_x, n_y ladders are geometric and are accumulated in
/// closed partial-sum form, which is exactly the truncated nested loop.
/// Decaying regime only: the j-sum needs A < 0.
inline Complex grand_potential_direct(const physics::PhysicalParams& p,
                                      double d, std::int64_t j_max,
                                      std::int64_t nx_max, std::int64_t ny_max,
                                      std::int64_t nz_max) {
  if (!(d > 0.0)) throw DomainError("grand_potential_direct: d must be > 0");
  if (j_max < 1 || nx_max < 1 || ny_max < 1 || nz_max < 1) {
    throw DomainError("grand_potential_direct: truncation limits must be >= 1");
  }
  const physics::DerivedScalars ds = physics::derive(p);
  detail::require_decaying(ds, "grand_potential_direct",
                           "the fugacity j-sum (factor exp(+j beta A))");
  const double pi = std::numbers::pi;
  const double x = ds.beta * ds.hbar * ds.omega_c;
  const double az =
      ds.beta * ds.hbar * ds.hbar * pi * pi / (2.0 * p.mass * d * d);
  const double kbt = p.boltzmann_k * p.temperature;

  bosecasimir::detail::KahanReal total;
  for (std::int64_t j = 1; j <= j_max; ++j) {
    const double jd = static_cast<double>(j);
    // exp(j beta A) combines the +1 Landau offset with the constant shift;
    // keeping them together avoids spurious overflow from exp(+j beta C).
    const double level_weight = std::exp(jd * ds.beta * ds.field_shift_A);
    const double sx = detail::geometric_partial_sum(jd * x, nx_max);
    const double sy = detail::geometric_partial_sum(jd * x, ny_max);
    double sz = 0.0;
    for (std::int64_t n = 1; n <= nz_max; ++n) {
      const double t = std::exp(-jd * az * static_cast<double>(n) * n);
      sz += t;
      if (t < 1e-18 * (1.0 + sz)) break;
    }
    const double contrib = kbt / jd * level_weight * sx * sy * sz;
    total.add(contrib);
    if (j > 1 && contrib < 1e-18 * std::abs(total.value())) break;
  }
  return Complex(ensure_finite(total.value(), "grand_potential_direct"), 0.0);
}

/// Double sum after the Ketterle-van Druten replacement of each Landau
/// denominator (1 - e^{-j beta hbar omega_c}) by its small-argument limit
/// j beta hbar omega_c:
///
///   (k_B T)^3 / (hbar omega_c)^2 sum_{n,j} j^-3
///       exp{-j beta hbar^2 pi^2 n^2 / (2 m d^2)} exp{+j beta A}
///
/// Valid in the thermodynamic limit hbar omega_c << k_B T; the relative
/// deviation from the direct sum is first order in beta hbar omega_c.
inline Complex grand_potential_kvd(const physics::PhysicalParams& p, double d,
                                   std::int64_t j_max, std::int64_t n_max) {
  if (!(d > 0.0)) throw DomainError("grand_potential_kvd: d must be > 0");
  if (j_max < 1 || n_max < 1) {
    throw DomainError("grand_potential_kvd: truncation limits must be >= 1");
  }
  const physics::DerivedScalars ds = physics::derive(p);
  detail::require_decaying(ds, "grand_potential_kvd",
                           "the fugacity j-sum (factor exp(+j beta A))");
  const double pi = std::numbers::pi;
  const double az =
      ds.beta * ds.hbar * ds.hbar * pi * pi / (2.0 * p.mass * d * d);
  const double kbt = p.boltzmann_k * p.temperature;
  const double pref = kbt * kbt * kbt /
                      (ds.hbar * ds.hbar * ds.omega_c * ds.omega_c);

  bosecasimir::detail::KahanReal total;
  for (std::int64_t j = 1; j <= j_max; ++j) {
    const double jd = static_cast<double>(j);
    const double w = std::exp(jd * ds.beta * ds.field_shift_A) / (jd * jd * jd);
    double sz = 0.0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const double t = std::exp(-jd * az * static_cast<double>(n) * n);
      sz += t;
      if (t < 1e-18 * (1.0 + sz)) break;
    }
    const double contrib = w * sz;
    total.add(contrib);
    if (j > 1 && contrib < 1e-18 * std::abs(total.value())) break;
  }
  return Complex(ensure_finite(pref * total.value(), "grand_potential_kvd"),
                 0.0);
}

/// Theta-function transformation check:
///   sum e^{-pi n^2 b}  ==  (1/(2 sqrt b) - 1/2) + (1/sqrt b) sum e^{-pi n^2/b}
/// Both tails are superexponentially small and are folded into the pass
/// tolerance.
inline OracleReport jacobi_check(double b, std::int64_t n_max = 64) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw DomainError("jacobi_check: b must be positive and finite");
  }
  if (n_max < 1) throw DomainError("jacobi_check: n_max must be >= 1");
  const double pi = std::numbers::pi;
  auto theta_sum = [&](double scale) {
    double acc = 0.0;
    std::int64_t last_n = 0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const double t = std::exp(-pi * static_cast<double>(n) * n * scale);
      acc += t;
      last_n = n;
      if (t < 1e-20 * (1.0 + acc)) break;
    }
    const double next = static_cast<double>(last_n + 1);
    return std::pair<double, double>(acc, 2.0 * std::exp(-pi * next * next *
                                                         scale));
  };
  const auto [lhs, lhs_tail] = theta_sum(b);
  const auto [dual, dual_tail] = theta_sum(1.0 / b);
  const double inv_sqrt_b = 1.0 / std::sqrt(b);
  const double rhs = (0.5 * inv_sqrt_b - 0.5) + inv_sqrt_b * dual;

  OracleReport r = make_report("jacobi_identity_b=" + detail::fmt_g(b),
                               Complex(lhs, 0.0), Complex(rhs, 0.0), 1e-12);
  const double tail = lhs_tail + inv_sqrt_b * dual_tail;
  if (!r.passed && r.abs_error <= 1e-12 * std::max(std::abs(rhs), 1.0) + tail) {
    r.passed = true;  // disagreement attributable to the bounded tails
  }
  r.detail = "tail_bound=" + detail::fmt_g(tail);
  return r;
}

/// Adaptive quadrature of int_0^inf x^-6 exp(-p x^2 - q / x^2) dx.
/// The substitution t = 1/x^2 tames the essential singularity at the origin,
/// leaving (1/2) int_0^inf t^{3/2} exp(-q t - p/t) dt on a smooth integrand.
/// Error target: 1e-12 absolute or ~1e-11 relative, whichever is smaller.
inline double casimir_integral_quadrature(double p, double q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw DomainError(
        "casimir_integral_quadrature: q <= 0 diverges at the origin");
  }
  if (p < 0.0 || !std::isfinite(p)) {
    throw DomainError(
        "casimir_integral_quadrature: p < 0 diverges at infinity");
  }
  auto integrand = [p, q](double t) {
    if (t <= 0.0) return 0.0;
    return 0.5 * t * std::sqrt(t) * std::exp(-q * t - p / t);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0;
  const double value = integrator.integrate(integrand, 1e-11, &err);
  return ensure_finite(value, "casimir_integral_quadrature");
}

/// Closed form of one n-summand of the potential series (decaying regime,
/// u real positive); equals casimir_integral_quadrature(u^2/2, pi n^2).
inline double casimir_series_summand(double u, std::int64_t n) {
  if (n < 1) throw DomainError("casimir_series_summand: n must be >= 1");
  const double pi = std::numbers::pi;
  const double root_two_pi = std::sqrt(2.0 * pi);
  const double nd = static_cast<double>(n);
  const double numer = 2.0 * pi * u * u * nd + 3.0 * root_two_pi * u + 3.0 / nd;
  return numer / (8.0 * pi * pi * nd * nd * nd * nd) *
         std::exp(-root_two_pi * u * nd);
}

/// All-terms force with the pi^2 hbar^2 prefactors kept explicit,
///   -(k_B T / (m^2 pi^2 omega_c^2)) d^-5 (phi^3 pi^2 hbar^2 Li2 - 5 phi^2
///      pi^2 hbar^2 Li3 + 12 phi pi^2 hbar^2 Li4 - 12 pi^2 hbar^2 Li5),
/// evaluated as written; an independent floating route that must agree with
/// force_closed(All) to 1e-12 relative.
inline Complex combined_force_explicit(const physics::PhysicalParams& p,
                                       double d) {
  if (!(d > 0.0)) throw DomainError("combined_force_explicit: d must be > 0");
  const physics::DerivedScalars ds = physics::derive(p);
  const Complex phi = physics::phi_parameter(p, d);
  using polylog::PolylogOrder;
  using polylog::li_exp;
  const Complex li2 = li_exp(PolylogOrder(2), phi);
  const Complex li3 = li_exp(PolylogOrder(3), phi);
  const Complex li4 = li_exp(PolylogOrder(4), phi);
  const Complex li5 = li_exp(PolylogOrder(5), phi);
  const double pi = std::numbers::pi;
  const double pi2h2 = pi * pi * ds.hbar * ds.hbar;
  const double pref =
      -p.boltzmann_k * p.temperature /
      (p.mass * p.mass * pi * pi * ds.omega_c * ds.omega_c);
  const double d5 = d * d * d * d * d;
  const Complex bracket = phi * phi * phi * pi2h2 * li2 -
                          5.0 * phi * phi * pi2h2 * li3 +
                          12.0 * phi * pi2h2 * li4 - 12.0 * pi2h2 * li5;
  return ensure_finite(pref / d5 * bracket, "combined_force_explicit");
}

struct VerifyConfig {
  double tolerance_override = 0.0;  // > 0: replace every check tolerance
  std::int64_t series_n_max_decaying = 1'000'000;
  std::int64_t series_n_max_oscillatory = 200'000;
  double fd_step_fraction = 1e-6;
};

/// Runs every oracle plus the casimir-module equivalence checks and returns
/// machine-readable reports.  Failures are reported, never thrown; oracles
/// whose sums diverge in the current regime come back as skipped entries.
inline std::vector<OracleReport> run_verification_suite(
    const physics::PhysicalParams& p, const VerifyConfig& cfg = {}) {
  std::vector<OracleReport> reports;
  const physics::DerivedScalars ds = physics::derive(p);
  const bool decaying =
      physics::classify_regime(ds.field_shift_A) == physics::Regime::Decaying;
  const char* divergent = "skipped: divergent regime (field shift A >= 0)";
  auto tol = [&](double t) {
    return cfg.tolerance_override > 0.0 ? cfg.tolerance_override : t;
  };
  auto push = [&](OracleReport r) {
    reports.push_back(std::move(r));
  };

  for (double b : {0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
    OracleReport r = jacobi_check(b);
    if (cfg.tolerance_override > 0.0) {
      r = make_report(r.name, r.lhs, r.rhs, cfg.tolerance_override);
    }
    push(std::move(r));
  }

  const double root_two_pi = std::sqrt(2.0 * std::numbers::pi);
  for (double d : {0.5, 1.0, 2.0}) {
    push(make_report("phi_equals_minus_sqrt2pi_u_d=" + detail::fmt_g(d),
                     physics::phi_parameter(p, d),
                     -root_two_pi * physics::u_parameter(p, d), tol(1e-14)));
  }

  using casimir::Term;
  const Term all_terms[] = {Term::OrderN3, Term::OrderN4, Term::OrderN5,
                            Term::All};
  const std::int64_t n_max =
      decaying ? cfg.series_n_max_decaying : cfg.series_n_max_oscillatory;
  const double series_tol = decaying ? 1e-10 : 1e-6;
  for (Term t : all_terms) {
    for (double d : {0.5, 1.0, 2.0}) {
      push(make_report(std::string("potential_series_vs_closed_") +
                           casimir::term_label(t) + "_d=" + detail::fmt_g(d),
                       casimir::potential_series(p, d, t, n_max).value,
                       casimir::potential_closed(p, d, t).value,
                       tol(series_tol)));
    }
  }

  if (decaying) {
    const double u = physics::u_parameter(p, 1.0).real();
    for (std::int64_t n : {1, 2, 3}) {
      push(make_report(
          "quadrature_vs_closed_summand_n=" + std::to_string(n),
          Complex(casimir_integral_quadrature(
                      0.5 * u * u,
                      std::numbers::pi * static_cast<double>(n) * n),
                  0.0),
          Complex(casimir_series_summand(u, n), 0.0), tol(1e-8)));
    }
  } else {
    for (std::int64_t n : {1, 2, 3}) {
      push(skipped_report("quadrature_vs_closed_summand_n=" + std::to_string(n),
                          divergent));
    }
  }

  // Off-grid d values: round decimals can land the oscillatory phase almost
  // exactly on a multiple of 2 pi (e.g. B = 0.02, d = 1 puts e^phi within
  // 4e-4 of z = 1), where higher potential derivatives blow up like 1/theta
  // and inflate the central-difference truncation error.
  for (Term t : all_terms) {
    double worst = -1.0;
    Complex worst_lhs, worst_rhs;
    double worst_d = 0.0;
    for (double d : {0.437, 0.811, 1.327, 2.113}) {
      const Complex analytic = casimir::force_closed(p, d, t).analytic;
      const Complex fd = casimir::force_fd(p, d, t, cfg.fd_step_fraction);
      const double rel =
          std::abs(analytic - fd) / std::max(std::abs(fd), 1e-300);
      if (rel > worst) {
        worst = rel;
        worst_lhs = analytic;
        worst_rhs = fd;
        worst_d = d;
      }
    }
    OracleReport r = make_report(
        std::string("force_closed_vs_fd_") + casimir::term_label(t), worst_lhs,
        worst_rhs, tol(1e-6));
    r.detail = "worst_d=" + detail::fmt_g(worst_d);
    push(std::move(r));
  }

  for (double d : {0.5, 1.0, 2.0}) {
    push(make_report("combined_force_explicit_prefactors_d=" + detail::fmt_g(d),
                     casimir::force_closed(p, d, Term::All).analytic,
                     combined_force_explicit(p, d), tol(1e-12)));
  }

  {
    const double d = 1.0;
    const Complex pot_sum = casimir::potential_closed(p, d, Term::OrderN3).value +
                            casimir::potential_closed(p, d, Term::OrderN4).value +
                            casimir::potential_closed(p, d, Term::OrderN5).value;
    push(make_report("term_additivity_potential",
                     casimir::potential_closed(p, d, Term::All).value, pot_sum,
                     tol(1e-13)));
    const Complex force_sum =
        casimir::force_closed(p, d, Term::OrderN3).analytic +
        casimir::force_closed(p, d, Term::OrderN4).analytic +
        casimir::force_closed(p, d, Term::OrderN5).analytic;
    push(make_report("term_additivity_force",
                     casimir::force_closed(p, d, Term::All).analytic, force_sum,
                     tol(1e-13)));
  }

  for (Term t : {Term::OrderN4, Term::OrderN3}) {
    const double d = 1.0;
    OracleReport r = make_report(
        std::string("erratum_variant_form_") + casimir::term_label(t),
        casimir::printed_form_force(p, d, t),
        casimir::force_fd(p, d, t, cfg.fd_step_fraction), tol(1e-3));
    r.erratum = true;
    r.detail = "variant closed form, expected to fail the FD oracle";
    push(std::move(r));
  }

  if (decaying) {
    const double d = 1.0;
    const double x = ds.beta * ds.hbar * ds.omega_c;
    OracleReport r =
        make_report("kvd_vs_direct", grand_potential_kvd(p, d, 512, 4000),
                    grand_potential_direct(p, d, 512, 10'000'000, 10'000'000,
                                           4000),
                    tol(2.0 * x));
    r.validity_flagged = x > 0.1;
    r.detail = "beta*hbar*omega_c=" + detail::fmt_g(x) +
               (r.validity_flagged
                    ? "; outside KvD validity (ratio > 0.1)"
                    : "");
    push(std::move(r));

    push(make_report(
        "decomposition_casimir_vs_series",
        casimir::potential_decomposition(p, d).casimir,
        casimir::potential_series(p, d, Term::All, 200'000).value, tol(1e-3)));

    push(make_report("direct_truncation_plateau",
                     grand_potential_direct(p, d, 64, 4000, 4000, 400),
                     grand_potential_direct(p, d, 128, 8000, 8000, 800),
                     tol(1e-12)));

    const double eps111 = physics::single_particle_energy(p, d, 1, 1, 1);
    push(make_report(
        "direct_single_term",
        grand_potential_direct(p, d, 1, 1, 1, 1),
        Complex(p.boltzmann_k * p.temperature * std::exp(-ds.beta * eps111),
                0.0),
        tol(1e-14)));
  } else {
    push(skipped_report("kvd_vs_direct", divergent));
    push(skipped_report("decomposition_casimir_vs_series", divergent));
    push(skipped_report("direct_truncation_plateau", divergent));
    push(skipped_report("direct_single_term", divergent));
  }

  return reports;
}

/// Exit-code predicate for the verify command: erratum and skipped entries
/// never count against success.
inline bool suite_passed(const std::vector<OracleReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const OracleReport& r) {
    return r.erratum || r.skipped || r.passed;
  });
}

}  // namespace bosecasimir::oracles
