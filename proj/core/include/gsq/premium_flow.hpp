#pragma once

#include <stdexcept>

namespace gsq {

// State-dependent premium rate with a smoothly absorbed dividend barrier:
// constant rate c_tilde on [0, a-eps), a quintic blend decreasing to zero on
// [a-eps, a], and zero above a. The blend is C^2 with c' <= 0, so a surplus
// started below a approaches the barrier but never crosses it.
struct BarrierPremium {
  double c_tilde = 1.0;  // base premium income rate
  double barrier = 1.0;  // barrier level a
  double epsilon = 0.1;  // blend width, 0 < epsilon < barrier

  // Throws std::invalid_argument if the parameters are inconsistent.
  void validate() const;

  double blend_start() const { return barrier - epsilon; }

  double rate(double x) const;     // c(x)
  double rate_d1(double x) const;  // c'(x)
  double rate_d2(double x) const;  // c''(x)

  // max |c'| over [0,a]; the blend polynomial attains 1.875 c_tilde/eps.
  double lipschitz() const { return 1.875 * c_tilde / epsilon; }
};

// Deterministic surplus flow phi(t,s) solving dx/dt = c(x), x(0) = s, together
// with the first and second derivatives of phi with respect to s.
//
// The linear region is advanced analytically. Inside the blend region the
// autonomous ODE is separable; transit is computed by inverting the exact
// time-of-passage antiderivative with a safeguarded Newton iteration, and the
// sensitivities follow from the autonomous-flow identities
//   y(t,s) = c(phi(t,s)) / c(s),
//   z(t,s) = y(t,s) * (c'(phi(t,s)) - c'(s)) / c(s).
// A conventional adaptive Runge-Kutta integration of the augmented variational
// system is kept as a cross-check (flow_rk); the two paths agree to
// ode_tolerance.
class FlowEvaluator {
 public:
  explicit FlowEvaluator(BarrierPremium premium, double ode_tolerance = 1e-10,
                         double max_step = 0.1);

  const BarrierPremium& premium() const { return premium_; }
  double ode_tolerance() const { return ode_tolerance_; }

  // phi(t,s). Requires t >= 0 and 0 <= s <= barrier.
  double value(double t, double s) const;

  // y(t,s) = d phi / d s, in (0, 1].
  double sensitivity_first(double t, double s) const;

  // z(t,s) = d^2 phi / d s^2.
  double sensitivity_second(double t, double s) const;

  // Verification path: adaptive embedded Runge-Kutta on the augmented system
  // (x, y, z) with event handling at the blend boundary and the step inside
  // the blend capped at epsilon/10. Orders of magnitude slower than value();
  // intended for tests and spot checks.
  struct AugmentedState {
    double x;  // phi(t,s)
    double y;  // d phi/d s
    double z;  // d^2 phi/d s^2
  };
  AugmentedState flow_rk(double t, double s) const;

 private:
  void check_domain(double t, double s) const;
  // Remaining blend-region state after flowing for dt from scaled depth
  // th0 = (a - x0)/eps; returns th(dt) in (0, th0].
  double blend_advance(double th0, double dt) const;

  BarrierPremium premium_;
  double ode_tolerance_;
  double max_step_;
};

}  // namespace gsq
