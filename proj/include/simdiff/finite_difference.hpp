#pragma once

// Richardson-extrapolated central differences. Truncation error is O(h^4);
// rounding noise grows like eps * |f| / h^k, so pick h accordingly.

namespace simdiff::fd {

template <class F>
double richardson_d1(const F& f, double x, double h) {
  const auto central = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

template <class F>
double richardson_d2(const F& f, double x, double h) {
  const double fx = f(x);
  const auto central = [&](double step) {
    return (f(x + step) - 2.0 * fx + f(x - step)) / (step * step);
  };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

}  // namespace simdiff::fd
