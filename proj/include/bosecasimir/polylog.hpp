#pragma once

// Complex polylogarithm Li_s(z) for integer order s >= 2 on the closed unit
// disk.  Two evaluation routes are provided:
//
//   li_series       truncated defining series sum z^n / n^s with a rigorous
//                   tail bound (geometric, integral and Abel-summation
//                   estimates; the tightest applicable one stops the sum),
//   li_unit_circle  fast closed evaluation at z = exp(i theta) for s in 2..5,
//                   combining the exact Bernoulli-polynomial form of the
//                   component that has one (Re for even s, Im for odd s)
//                   with a convergent zeta-series resummation of the
//                   Clausen-type component about theta = 0.
//
// The unit circle is where the physics lives: for field shift A > 0 the
// series exponent is purely imaginary and the forces oscillate in d.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/zeta.hpp>

#include "bosecasimir/detail/kahan.hpp"
#include "bosecasimir/errors.hpp"
#include "bosecasimir/types.hpp"

namespace bosecasimir::polylog {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr std::int64_t kDefaultMaxTerms = 10'000'000;

/// Integer polylog order; values below 2 are rejected (the series does not
/// converge absolutely on the unit circle for s < 2).
class PolylogOrder {
 public:
  explicit PolylogOrder(int s) : s_(s) {
    if (s < 2) {
      throw DomainError("PolylogOrder: order must be >= 2, got " +
                        std::to_string(s));
    }
  }
  [[nodiscard]] int value() const { return s_; }

 private:
  int s_;
};

enum class StopRule { TailBound, MaxTerms };

/// Truncated-series result with the tail bound that justified stopping.
struct SeriesResult {
  Complex value;
  double tail_bound = 0.0;    // rigorous bound on |dropped tail|
  std::int64_t terms = 0;     // number of summed terms N
  StopRule stop = StopRule::TailBound;
  [[nodiscard]] bool converged() const { return stop == StopRule::TailBound; }
};

namespace detail {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// zeta(n) for integer n <= 6, n != 1.  Negative arguments feed the
// zeta-series expansion of Li_s(e^mu); cached once.
inline double zeta_int(int n) {
  static const std::array<double, 133> cache = [] {
    std::array<double, 133> c{};
    for (int k = 0; k < 133; ++k) {
      const int arg = 6 - k;  // 6 .. -126
      c[static_cast<std::size_t>(k)] =
          (arg == 1) ? std::numeric_limits<double>::quiet_NaN()
                     : boost::math::zeta(static_cast<double>(arg));
    }
    return c;
  }();
  return cache[static_cast<std::size_t>(6 - n)];
}

// n^s for small positive integer s, n carried as double.
inline double int_pow(double n, int s) {
  double p = n;
  for (int i = 1; i < s; ++i) p *= n;
  return p;
}

// Upper bound on |sum_{n>N} z^n / n^s|, monotone decreasing in N.
// Three rigorous estimates; the caller gets the tightest:
//   integral:  r^{N+1} * N^{1-s} / (s-1)         (Euler-Maclaurin style)
//   geometric: r^{N+1} / ((1-r) (N+1)^s)          (r < 1 only)
//   Abel:      2 r^{N+1} / (|1-z| (N+1)^s)        (z != 1)
inline double tail_bound(const Complex& z, double r, int s, std::int64_t n) {
  const double nd = static_cast<double>(n);
  const double r_pow = std::pow(r, nd + 1.0);
  double bound = r_pow * std::pow(nd, 1.0 - s) / (s - 1.0);
  const double np1_s = std::pow(nd + 1.0, static_cast<double>(s));
  if (r < 1.0) {
    bound = std::min(bound, r_pow / ((1.0 - r) * np1_s));
  }
  const double dist = std::abs(1.0 - z);
  if (dist > 1e-300) {
    bound = std::min(bound, 2.0 * r_pow / (dist * np1_s));
  }
  return bound;
}

// Li_s(e^{i theta}) for |theta| <= pi via the expansion about the series
// exponent mu = i theta:
//
//   Li_s(e^mu) = mu^{s-1}/(s-1)! (H_{s-1} - log(-mu))
//              + sum_{k>=0, k != s-1} zeta(s-k) mu^k / k!
//
// valid for |mu| < 2 pi; after angle reduction |mu| <= pi so the terms decay
// at least like 2^-k.  Every other zeta factor vanishes (zeta at negative
// even integers), so convergence is judged on two consecutive small terms.
inline Complex unit_circle_expansion(int s, double theta) {
  const Complex mu(0.0, theta);
  const Complex neg_mu(0.0, -theta);

  double factorial = 1.0;  // (s-1)!
  double harmonic = 0.0;   // H_{s-1}
  for (int k = 1; k <= s - 1; ++k) {
    factorial *= k;
    harmonic += 1.0 / k;
  }
  bosecasimir::detail::KahanComplex acc;
  acc.add(std::pow(mu, s - 1) / factorial * (harmonic - std::log(neg_mu)));

  Complex mu_pow(1.0, 0.0);
  double k_factorial = 1.0;
  int small_streak = 0;
  for (int k = 0; k <= 130; ++k) {
    if (k > 0) {
      mu_pow *= mu;
      k_factorial *= k;
    }
    if (k == s - 1) continue;  // the log term replaces zeta(1)
    const Complex term = zeta_int(s - k) / k_factorial * mu_pow;
    acc.add(term);
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(acc.value()))) {
      if (++small_streak >= 2 && k > s) break;
    } else {
      small_streak = 0;
    }
  }
  return acc.value();
}

// Bernoulli-polynomial closed forms on [0, 2pi]:
//   sum cos(n t)/n^2, sum sin(n t)/n^3, sum cos(n t)/n^4, sum sin(n t)/n^5.
inline double bernoulli_component(int s, double t) {
  const double pi = kPi;
  switch (s) {
    case 2:
      return (0.25 * t - 0.5 * pi) * t + pi * pi / 6.0;
    case 3:
      return ((t / 12.0 - 0.25 * pi) * t + pi * pi / 6.0) * t;
    case 4: {
      const double c = ((-t / 48.0 + pi / 12.0) * t - pi * pi / 12.0) * t * t;
      return c + pi * pi * pi * pi / 90.0;
    }
    case 5: {
      const double c =
          (((-t / 240.0 + pi / 48.0) * t - pi * pi / 36.0) * t) * t * t;
      return c + pi * pi * pi * pi / 90.0 * t;
    }
    default:
      throw UnsupportedOrderError("bernoulli_component: order outside 2..5");
  }
}

// Reduce theta into [0, 2pi).  remainder() keeps the reduction exact in the
// IEEE sense; naive subtraction of multiples of 2pi cancels catastrophically
// for the large d*sqrt(A) phases the sweeps produce.
inline double reduce_angle(double theta) {
  double r = std::remainder(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // guards the r == 2pi rounding corner
  return r;
}

}  // namespace detail

/// Truncated defining series sum_{n=1}^{N} z^n / n^s, where N is the first
/// index whose tail bound drops below tol (or max_terms, reported via the
/// stop rule -- never a silent wrong answer).  Requires |z| <= 1.
inline SeriesResult li_series(PolylogOrder order, Complex z,
                              double tol = kDefaultTol,
                              std::int64_t max_terms = kDefaultMaxTerms) {
  if (!is_finite(z)) throw DomainError("li_series: non-finite argument");
  if (tol <= 0.0) throw DomainError("li_series: tol must be positive");
  if (max_terms < 1) throw DomainError("li_series: max_terms must be >= 1");
  const int s = order.value();
  double r = std::abs(z);
  if (r > 1.0 + 1e-12) {
    throw DomainError("li_series: |z| > 1 is outside the convergence disk");
  }
  r = std::min(r, 1.0);

  // The bounds are monotone in N, so locate the first admissible N directly.
  SeriesResult result;
  if (detail::tail_bound(z, r, s, max_terms) >= tol) {
    result.terms = max_terms;
    result.stop = StopRule::MaxTerms;
  } else {
    std::int64_t lo = 1, hi = max_terms;
    while (lo < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (detail::tail_bound(z, r, s, mid) < tol) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    result.terms = lo;
    result.stop = StopRule::TailBound;
  }
  result.tail_bound = detail::tail_bound(z, r, s, result.terms);

  bosecasimir::detail::KahanComplex acc;
  Complex z_pow(1.0, 0.0);
  double n_d = 0.0;
  for (std::int64_t n = 1; n <= result.terms; ++n) {
    z_pow *= z;
    n_d += 1.0;
    acc.add(z_pow * (1.0 / detail::int_pow(n_d, s)));
    if (z_pow.real() == 0.0 && z_pow.imag() == 0.0) break;  // underflowed
  }
  result.value = ensure_finite(acc.value(), "li_series");
  return result;
}

/// Li_s(e^{i theta}) for s in 2..5, any finite theta.  Exact closed form for
/// the Bernoulli component plus the resummed Clausen component; agrees with
/// li_series to well under 1e-9 absolute.
inline Complex li_unit_circle(PolylogOrder order, double theta) {
  const int s = order.value();
  if (s < 2 || s > 5) {
    throw UnsupportedOrderError(
        "li_unit_circle: closed forms cover orders 2..5, got " +
        std::to_string(s));
  }
  if (!std::isfinite(theta)) {
    throw DomainError("li_unit_circle: theta must be finite");
  }
  const double t = detail::reduce_angle(theta);
  if (t == 0.0) return {detail::zeta_int(s), 0.0};

  const double free_part = detail::bernoulli_component(s, t);
  // Map to (-pi, pi] so the expansion ratio is at most 1/2.
  const double tm = (t > detail::kPi) ? t - detail::kTwoPi : t;
  const Complex full = detail::unit_circle_expansion(s, tm);
  const Complex value = (s % 2 == 0) ? Complex(free_part, full.imag())
                                     : Complex(full.real(), free_part);
  return ensure_finite(value, "li_unit_circle");
}

/// Li_s(e^phi) for Re(phi) <= 0: dispatches to the unit-circle forms when
/// Re(phi) = 0 (within 1e-14) and to the series otherwise.  The series
/// tolerance defaults far below the sweep default: off the circle the terms
/// decay geometrically, so the extra accuracy is nearly free, and the
/// closed-form potentials built on top promise 1e-10 relative agreement
/// with their own series route.
inline Complex li_exp(PolylogOrder order, Complex phi, double tol = 1e-14,
                      std::int64_t max_terms = kDefaultMaxTerms) {
  if (!is_finite(phi)) throw DomainError("li_exp: non-finite exponent");
  if (phi.real() > 1e-14) {
    throw DomainError(
        "li_exp: Re(phi) > 0 gives |e^phi| > 1, the series diverges");
  }
  const int s = order.value();
  if (std::abs(phi.real()) <= 1e-14 && s >= 2 && s <= 5) {
    return li_unit_circle(order, phi.imag());
  }
  return li_series(order, std::exp(phi), tol, max_terms).value;
}

}  // namespace bosecasimir::polylog
