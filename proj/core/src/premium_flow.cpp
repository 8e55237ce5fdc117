#include "gsq/premium_flow.hpp"

#include <algorithm>
#include <cmath>

namespace gsq {

namespace {

// Blend profile in the scaled depth th = (a - x)/eps, th in [0,1]:
//   c(x) = c_tilde * q(th),  q(th) = th^3 (6 th^2 - 15 th + 10).
// q(0) = 0, q(1) = 1, and q', q'' vanish at both endpoints, which gives the
// stated C^2 matching of the constant and zero premium branches.
inline double blend_q(double th) { return th * th * th * (th * (6.0 * th - 15.0) + 10.0); }
inline double blend_q_d1(double th) {
  double u = th * (1.0 - th);
  return 30.0 * u * u;
}
inline double blend_q_d2(double th) { return 60.0 * th * (2.0 * th - 1.0) * (th - 1.0); }

// Antiderivative of 1/q(th) ("blend clock"): transit time from th0 down to
// th1 equals (eps/c_tilde) * (P(th0) - P(th1)). Partial fractions of
// 1/(th^3 (6 th^2 - 15 th + 10)); the quadratic factor has no real roots.
constexpr double kOmega = 0.32274861218395140;  // sqrt(5/48)
inline double blend_clock(double th) {
  double g = th * (6.0 * th - 15.0) + 10.0;
  return 0.165 * std::log(th) - 0.15 / th - 0.05 / (th * th) -
         0.0825 * std::log(g) + (0.05625 / kOmega) * std::atan((th - 1.25) / kOmega);
}

}  // namespace

void BarrierPremium::validate() const {
  if (!(c_tilde > 0.0)) throw std::invalid_argument("BarrierPremium: c_tilde must be > 0");
  if (!(barrier > 0.0)) throw std::invalid_argument("BarrierPremium: barrier must be > 0");
  if (!(epsilon > 0.0 && epsilon < barrier))
    throw std::invalid_argument("BarrierPremium: epsilon must lie in (0, barrier)");
}

double BarrierPremium::rate(double x) const {
  if (x < blend_start()) return c_tilde;
  if (x >= barrier) return 0.0;
  return c_tilde * blend_q((barrier - x) / epsilon);
}

double BarrierPremium::rate_d1(double x) const {
  if (x < blend_start() || x >= barrier) return 0.0;
  return -(c_tilde / epsilon) * blend_q_d1((barrier - x) / epsilon);
}

double BarrierPremium::rate_d2(double x) const {
  if (x < blend_start() || x >= barrier) return 0.0;
  return (c_tilde / (epsilon * epsilon)) * blend_q_d2((barrier - x) / epsilon);
}

FlowEvaluator::FlowEvaluator(BarrierPremium premium, double ode_tolerance, double max_step)
    : premium_(premium), ode_tolerance_(ode_tolerance), max_step_(max_step) {
  premium_.validate();
  if (!(ode_tolerance > 0.0)) throw std::invalid_argument("FlowEvaluator: ode_tolerance must be > 0");
  if (!(max_step > 0.0)) throw std::invalid_argument("FlowEvaluator: max_step must be > 0");
}

void FlowEvaluator::check_domain(double t, double s) const {
  if (!(t >= 0.0)) throw std::domain_error("FlowEvaluator: t must be >= 0");
  if (!(s >= 0.0 && s <= premium_.barrier))
    throw std::domain_error("FlowEvaluator: s must lie in [0, barrier]");
}

double FlowEvaluator::blend_advance(double th0, double dt) const {
  if (dt <= 0.0 || th0 <= 0.0) return th0;
  const double scale = premium_.c_tilde / premium_.epsilon;
  const double target = blend_clock(th0) - scale * dt;

  // Initial guess: explicit Euler for short transits, the small-depth
  // asymptotic P(th) ~ -1/(20 th^2) for long ones.
  double th = th0 - scale * dt * blend_q(th0);
  if (!(th > 0.0) || th < 0.5 * th0) {
    th = std::min(th0, std::sqrt(0.05 / std::max(0.05 / (th0 * th0), -target)));
  }

  // Safeguarded Newton on P(th) = target; P is increasing and concave, so
  // the bracket [lo, hi] only shrinks. P' = 1/q.
  double lo = 0.0, hi = th0;
  for (int it = 0; it < 100; ++it) {
    double resid = blend_clock(th) - target;
    if (resid > 0.0) hi = th; else lo = th;
    double next = th - resid * blend_q(th);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    double change = std::abs(next - th);
    th = next;
    if (change <= 4e-16 * th) break;
  }
  return th;
}

double FlowEvaluator::value(double t, double s) const {
  check_domain(t, s);
  const double a = premium_.barrier, eps = premium_.epsilon;
  if (t == 0.0 || s >= a) return s;
  double th0, dt;
  if (s < a - eps) {
    double t_lin = (a - eps - s) / premium_.c_tilde;
    if (t <= t_lin) return s + premium_.c_tilde * t;
    th0 = 1.0;
    dt = t - t_lin;
  } else {
    th0 = (a - s) / eps;
    dt = t;
  }
  return a - eps * blend_advance(th0, dt);
}

double FlowEvaluator::sensitivity_first(double t, double s) const {
  check_domain(t, s);
  if (s >= premium_.barrier) return 1.0;
  double cs = premium_.rate(s);
  return premium_.rate(value(t, s)) / cs;
}

double FlowEvaluator::sensitivity_second(double t, double s) const {
  check_domain(t, s);
  if (s >= premium_.barrier) return 0.0;
  double cs = premium_.rate(s);
  double xt = value(t, s);
  return premium_.rate(xt) * (premium_.rate_d1(xt) - premium_.rate_d1(s)) / (cs * cs);
}

FlowEvaluator::AugmentedState FlowEvaluator::flow_rk(double t, double s) const {
  check_domain(t, s);
  AugmentedState st{s, 1.0, 0.0};
  if (t == 0.0 || s >= premium_.barrier) {
    st.x = std::min(s, premium_.barrier);
    return st;
  }
  double t0 = 0.0;
  if (s < premium_.blend_start()) {
    double t_lin = (premium_.blend_start() - s) / premium_.c_tilde;
    if (t <= t_lin) {
      st.x = s + premium_.c_tilde * t;
      return st;
    }
    st.x = premium_.blend_start();
    t0 = t_lin;
  }

  auto rhs = [this](const AugmentedState& u, double out[3]) {
    double c = premium_.rate(u.x);
    double c1 = premium_.rate_d1(u.x);
    double c2 = premium_.rate_d2(u.x);
    out[0] = c;
    out[1] = c1 * u.y;
    out[2] = c2 * u.y * u.y + c1 * u.z;
  };

  // Cash-Karp 5(4) embedded pair.
  static const double B[6][5] = {
      {0, 0, 0, 0, 0},
      {1.0 / 5, 0, 0, 0, 0},
      {3.0 / 40, 9.0 / 40, 0, 0, 0},
      {3.0 / 10, -9.0 / 10, 6.0 / 5, 0, 0},
      {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27, 0},
      {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096}};
  static const double C5[6] = {37.0 / 378, 0, 250.0 / 621, 125.0 / 594, 0, 512.0 / 1771};
  static const double C4[6] = {2825.0 / 27648, 0,          18575.0 / 48384,
                               13525.0 / 55296, 277.0 / 14336, 1.0 / 4};

  const double blend_cap = premium_.epsilon / 10.0;
  double h = std::min({max_step_, blend_cap, t - t0});
  double k[6][3];
  while (t0 < t) {
    h = std::min({h, t - t0, blend_cap, max_step_});
    double u0[3] = {st.x, st.y, st.z};
    for (int stage = 0; stage < 6; ++stage) {
      AugmentedState tmp{u0[0], u0[1], u0[2]};
      for (int j = 0; j < stage; ++j) {
        tmp.x += h * B[stage][j] * k[j][0];
        tmp.y += h * B[stage][j] * k[j][1];
        tmp.z += h * B[stage][j] * k[j][2];
      }
      rhs(tmp, k[stage]);
    }
    double u5[3], err = 0.0;
    for (int c = 0; c < 3; ++c) {
      double acc5 = 0.0, acc4 = 0.0;
      for (int stage = 0; stage < 6; ++stage) {
        acc5 += C5[stage] * k[stage][c];
        acc4 += C4[stage] * k[stage][c];
      }
      u5[c] = u0[c] + h * acc5;
      err = std::max(err, std::abs(h * (acc5 - acc4)));
    }
    if (err <= ode_tolerance_ || h <= 1e-14) {
      t0 += h;
      st.x = std::min(u5[0], premium_.barrier);
      st.y = u5[1];
      st.z = u5[2];
    }
    double grow = (err > 0.0) ? 0.9 * std::pow(ode_tolerance_ / err, 0.2) : 5.0;
    h *= std::clamp(grow, 0.2, 5.0);
  }
  return st;
}

}  // namespace gsq
