#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "gsq/premium_flow.hpp"

namespace gsq {

// Positive claim / inter-arrival laws with closed-form density, CDF, mean and
// Laplace transform. Exponential and gamma cover the built-in models; the
// integrability machinery below also accepts arbitrary density callables.
struct Distribution {
  enum class Kind { exponential, gamma };

  Kind kind = Kind::exponential;
  double rate = 1.0;   // exponential rate, or gamma rate
  double shape = 1.0;  // gamma shape; ignored for exponential

  static Distribution exponential(double rate);
  static Distribution gamma(double shape, double rate);

  void validate() const;

  double density(double v) const;  // 0 for v < 0
  double log_density(double v) const;
  double cdf(double v) const;
  double mean() const;
  double quantile(double p) const;
  // E[exp(-delta T)] for T distributed by *this.
  double laplace(double delta) const;

  std::string describe() const;  // e.g. "exponential(0.8)"
};

double density(const Distribution& d, double v);

// Penalty w(y, z): y = deficit at ruin (>= 0), z = surplus prior to ruin.
struct Penalty {
  enum class Kind { constant_one, deficit, monomial };

  Kind kind = Kind::constant_one;
  int deficit_power = 0;  // k in y^k z^l
  int surplus_power = 0;  // l in y^k z^l

  static Penalty constant_one();
  static Penalty deficit();
  static Penalty monomial(int deficit_power, int surplus_power);

  // Unchecked evaluation; callers guarantee y >= 0, 0 <= z < barrier.
  double operator()(double y, double z) const;

  std::string describe() const;  // e.g. "w=1", "w=y", "w=y^2*z"
};

// Checked form: throws std::domain_error unless y >= 0 and 0 <= z < barrier.
double penalty_eval(const Penalty& w, double y, double z, double barrier);

// Everything the estimators need about one model instance.
struct ModelParams {
  double x = 0.0;  // initial capital, in [0, barrier)
  BarrierPremium premium;
  Distribution interarrival = Distribution::exponential(1.0);
  Distribution claim = Distribution::exponential(1.0);
  double delta = 0.0;  // discount rate
  Penalty penalty;

  void validate() const;
};

// sup over a z-grid on [0, barrier) of  integral |w(|z-y|, z)| f_Y(y) dy,
// the integrability constant M. Quadrature truncates the claim tail at
// CDF >= 1 - 1e-12. Throws std::runtime_error if the integral keeps growing
// as the truncation extends (the model violates the integrability condition).
double integrability_bound(const ModelParams& model, int grid_size);

// Generic-law form backing integrability_bound; exposed so laws outside the
// built-in kinds can be checked. `claim_cdf` may be empty if `claim_density`
// integrates to one on [0, infinity).
double integrability_bound_generic(const Penalty& w, double barrier,
                                   const std::function<double(double)>& claim_density,
                                   const std::function<double(double)>& claim_cdf,
                                   int grid_size);

}  // namespace gsq
