#pragma once

#include <complex>

namespace bosecasimir::detail {

// Kahan compensated accumulator. Long oscillatory sums (a few 1e6 terms)
// would otherwise lose ~1e-10 absolute accuracy, which is above the
// tolerances this library promises.
template <class T>
class KahanSum {
 public:
  void add(const T& term) {
    const T y = term - carry_;
    const T t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  [[nodiscard]] T value() const { return sum_; }

 private:
  T sum_{};
  T carry_{};
};

using KahanReal = KahanSum<double>;
using KahanComplex = KahanSum<std::complex<double>>;

}  // namespace bosecasimir::detail
