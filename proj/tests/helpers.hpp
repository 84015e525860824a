#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace testutil {

using Complex = std::complex<double>;

inline double rel_err(const Complex& got, const Complex& ref) {
  return std::abs(got - ref) / std::max(std::abs(ref), 1e-300);
}

inline double abs_err(const Complex& got, const Complex& ref) {
  return std::abs(got - ref);
}

}  // namespace testutil
