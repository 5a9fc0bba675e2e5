#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>

namespace shadowsum {

/// Kahan compensated accumulator for complex sums; state-sum terms can
/// cancel heavily, so the compensation keeps the tolerance budget honest.
class KahanSum {
 public:
  void add(std::complex<double> x) {
    const std::complex<double> y = x - comp_;
    const std::complex<double> t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }

  std::complex<double> value() const { return sum_; }

 private:
  std::complex<double> sum_{0.0, 0.0};
  std::complex<double> comp_{0.0, 0.0};
};

/// base^e for integer e (base may be negative, e may be negative).
inline double int_pow(double base, long long e) {
  if (e < 0) return 1.0 / int_pow(base, -e);
  double acc = 1.0, b = base;
  for (long long n = e; n > 0; n >>= 1) {
    if (n & 1) acc *= b;
    b *= b;
  }
  return acc;
}

inline std::complex<double> cpow_int(std::complex<double> base, long long e) {
  if (e < 0) return 1.0 / cpow_int(base, -e);
  std::complex<double> acc{1.0, 0.0}, b = base;
  for (long long n = e; n > 0; n >>= 1) {
    if (n & 1) acc *= b;
    b *= b;
  }
  return acc;
}

/// Round a double to 15 significant digits (the fixed CLI output format).
inline double round15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace shadowsum
