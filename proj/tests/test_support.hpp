#pragma once

// Shared oracles for the test suite. These deliberately re-derive results
// through routes independent of the library code they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "gsq/risk_model.hpp"

namespace gsq::testing {

// Exact 1-D star discrepancy of a point set via the sorted-points formula:
// D* = max_i max( i/N - x_(i), x_(i) - (i-1)/N ).
inline double star_discrepancy_1d_sorted(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    best = std::max(best, static_cast<double>(i + 1) / n - x[i]);
    best = std::max(best, x[i] - static_cast<double>(i) / n);
  }
  return best;
}

// Plain recursive adaptive Simpson quadrature.
inline double simpson_half(const std::function<double(double)>& f, double a, double fa, double b,
                           double fb, double m, double fm, double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson_half(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_half(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10) {
  if (!(b > a)) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_half(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

// Central finite differences.
inline double fd1(const std::function<double(double)>& f, double s, double h) {
  return (f(s + h) - f(s - h)) / (2.0 * h);
}

inline double fd2(const std::function<double(double)>& f, double s, double h) {
  return (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h);
}

// The benchmark model of the numerical experiments: x = 1.2, exp(1) arrivals,
// exp(0.8) claims, delta = 0.05, w = 1, barrier premium (2, 3, 0.001).
inline ModelParams benchmark_time_of_ruin_model() {
  ModelParams m;
  m.x = 1.2;
  m.premium = BarrierPremium{2.0, 3.0, 0.001};
  m.interarrival = Distribution::exponential(1.0);
  m.claim = Distribution::exponential(0.8);
  m.delta = 0.05;
  m.penalty = Penalty::constant_one();
  return m;
}

// Same model with w = y and no discounting (expected deficit at ruin).
inline ModelParams benchmark_deficit_model() {
  ModelParams m = benchmark_time_of_ruin_model();
  m.delta = 0.0;
  m.penalty = Penalty::deficit();
  return m;
}

}  // namespace gsq::testing
