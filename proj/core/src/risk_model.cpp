#include "gsq/risk_model.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gsq {

Distribution Distribution::exponential(double rate) {
  Distribution d;
  d.kind = Kind::exponential;
  d.rate = rate;
  d.shape = 1.0;
  d.validate();
  return d;
}

Distribution Distribution::gamma(double shape, double rate) {
  Distribution d;
  d.kind = Kind::gamma;
  d.rate = rate;
  d.shape = shape;
  d.validate();
  return d;
}

void Distribution::validate() const {
  if (!(rate > 0.0)) throw std::invalid_argument("Distribution: rate must be > 0");
  if (kind == Kind::gamma && !(shape > 0.0))
    throw std::invalid_argument("Distribution: gamma shape must be > 0");
}

double Distribution::density(double v) const {
  if (v < 0.0) return 0.0;
  if (kind == Kind::exponential) return rate * std::exp(-rate * v);
  if (v == 0.0) {
    if (shape > 1.0) return 0.0;
    if (shape == 1.0) return rate;
    return std::numeric_limits<double>::infinity();
  }
  return std::exp(log_density(v));
}

double Distribution::log_density(double v) const {
  if (v < 0.0) return -std::numeric_limits<double>::infinity();
  if (kind == Kind::exponential) return std::log(rate) - rate * v;
  if (v == 0.0) {
    if (shape > 1.0) return -std::numeric_limits<double>::infinity();
    if (shape == 1.0) return std::log(rate);
    return std::numeric_limits<double>::infinity();
  }
  return shape * std::log(rate) + (shape - 1.0) * std::log(v) - rate * v - std::lgamma(shape);
}

double Distribution::cdf(double v) const {
  if (v <= 0.0) return 0.0;
  if (kind == Kind::exponential) return -std::expm1(-rate * v);
  return boost::math::gamma_p(shape, rate * v);
}

double Distribution::mean() const {
  return kind == Kind::exponential ? 1.0 / rate : shape / rate;
}

double Distribution::quantile(double p) const {
  if (!(p >= 0.0 && p < 1.0)) throw std::domain_error("Distribution::quantile: p in [0,1)");
  if (p == 0.0) return 0.0;
  if (kind == Kind::exponential) return -std::log1p(-p) / rate;
  return boost::math::gamma_p_inv(shape, p) / rate;
}

double Distribution::laplace(double delta) const {
  if (!(delta >= 0.0)) throw std::domain_error("Distribution::laplace: delta must be >= 0");
  double base = rate / (rate + delta);
  return kind == Kind::exponential ? base : std::pow(base, shape);
}

std::string Distribution::describe() const {
  char buf[64];
  if (kind == Kind::exponential) {
    std::snprintf(buf, sizeof(buf), "exponential(%g)", rate);
  } else {
    std::snprintf(buf, sizeof(buf), "gamma(%g,%g)", shape, rate);
  }
  return buf;
}

double density(const Distribution& d, double v) { return d.density(v); }

Penalty Penalty::constant_one() { return Penalty{Kind::constant_one, 0, 0}; }
Penalty Penalty::deficit() { return Penalty{Kind::deficit, 1, 0}; }

Penalty Penalty::monomial(int deficit_power, int surplus_power) {
  if (deficit_power < 0 || surplus_power < 0)
    throw std::invalid_argument("Penalty::monomial: powers must be >= 0");
  return Penalty{Kind::monomial, deficit_power, surplus_power};
}

double Penalty::operator()(double y, double z) const {
  switch (kind) {
    case Kind::constant_one: return 1.0;
    case Kind::deficit: return y;
    case Kind::monomial: {
      double r = 1.0;
      for (int i = 0; i < deficit_power; ++i) r *= y;
      for (int i = 0; i < surplus_power; ++i) r *= z;
      return r;
    }
  }
  return 0.0;
}

std::string Penalty::describe() const {
  switch (kind) {
    case Kind::constant_one: return "w=1";
    case Kind::deficit: return "w=y";
    case Kind::monomial: {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "w=y^%d*z^%d", deficit_power, surplus_power);
      return buf;
    }
  }
  return "?";
}

double penalty_eval(const Penalty& w, double y, double z, double barrier) {
  if (!(y >= 0.0)) throw std::domain_error("penalty_eval: deficit y must be >= 0");
  if (!(z >= 0.0 && z < barrier))
    throw std::domain_error("penalty_eval: surplus z must lie in [0, barrier)");
  return w(y, z);
}

void ModelParams::validate() const {
  premium.validate();
  interarrival.validate();
  claim.validate();
  if (!(x >= 0.0 && x < premium.barrier))
    throw std::invalid_argument("ModelParams: x must lie in [0, barrier)");
  if (!(delta >= 0.0)) throw std::invalid_argument("ModelParams: delta must be >= 0");
}

namespace {

// Adaptive Simpson on [a,b]; f must be finite on the open interval.
double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                   double fb, double m, double fm, double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(b > a)) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  // endpoint singularities (e.g. gamma shape < 1) are nudged inward
  if (!std::isfinite(fa)) fa = f(a + 1e-12 * (b - a));
  if (!std::isfinite(fb)) fb = f(b - 1e-12 * (b - a));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

}  // namespace

double integrability_bound_generic(const Penalty& w, double barrier,
                                   const std::function<double(double)>& claim_density,
                                   const std::function<double(double)>& claim_cdf,
                                   int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("integrability_bound: grid_size must be >= 2");
  constexpr double kTailMass = 1e-12;
  constexpr double kTol = 1e-10;

  double sup = 0.0;
  for (int j = 0; j < grid_size; ++j) {
    double z = barrier * static_cast<double>(j) / static_cast<double>(grid_size);
    auto g = [&](double y) { return std::abs(w(std::abs(z - y), z)) * claim_density(y); };

    // integrate [0, z] and [z, T] separately; |z - y| has a kink at y = z
    double total = adaptive_simpson(g, 0.0, z, kTol);
    double lo = z, hi = std::max(2.0 * z, 1.0);
    int doublings = 0;
    double prev_piece = std::numeric_limits<double>::infinity();
    for (;;) {
      double piece = adaptive_simpson(g, lo, hi, kTol);
      total += piece;
      bool tail_reached = claim_cdf && claim_cdf(hi) >= 1.0 - kTailMass;
      bool piece_negligible = piece <= std::max(kTol, 1e-12 * std::abs(total));
      if (tail_reached || piece_negligible) break;
      if (++doublings > 60 || (doublings > 20 && piece >= prev_piece)) {
        throw std::runtime_error(
            "integrability_bound: integral of |w| against the claim density "
            "does not converge; the model violates the integrability condition");
      }
      prev_piece = piece;
      lo = hi;
      hi *= 2.0;
    }
    sup = std::max(sup, total);
  }
  return sup;
}

double integrability_bound(const ModelParams& model, int grid_size) {
  model.validate();
  const Distribution& claim = model.claim;
  return integrability_bound_generic(
      model.penalty, model.premium.barrier, [&](double y) { return claim.density(y); },
      [&](double y) { return claim.cdf(y); }, grid_size);
}

}  // namespace gsq
