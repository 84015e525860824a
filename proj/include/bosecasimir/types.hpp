#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "bosecasimir/errors.hpp"

namespace bosecasimir {

// All potentials, forces and polylog values are complex in the physical
// regime (the series exponent is purely imaginary for field shift A > 0).
using Complex = std::complex<double>;

inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Public operations must not leak NaN/Inf; bad intermediate scales surface
// here as a domain error naming the operation instead.
inline const Complex& ensure_finite(const Complex& z, const char* context) {
  if (!is_finite(z)) {
    throw DomainError(std::string(context) + ": non-finite result");
  }
  return z;
}

inline double ensure_finite(double x, const char* context) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(context) + ": non-finite result");
  }
  return x;
}

}  // namespace bosecasimir
