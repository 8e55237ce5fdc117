#pragma once

#include <span>
#include <vector>

#include "gsq/premium_flow.hpp"
#include "gsq/risk_model.hpp"

namespace gsq {

// Exact 0/1 coordinates are moved to the interior lattice values 2^-33 and
// 1 - 2^-33 (half the 32-bit digital-sequence spacing) before logs are taken;
// limits that are analytically zero are returned directly.
enum class BoundaryPolicy { nudge_to_interior };

// Evaluation context for the transformed level-k integrand on [0,1]^{2k}.
// Coordinate order is (alpha_1..alpha_k, beta_1..beta_k): alpha_i encodes the
// i-th waiting time via t_i = -log alpha_i, beta_i the i-th claim as a
// fraction of the pre-jump surplus (i < k), and beta_k the ruining overshoot
// via y_k = X_k - log beta_k.
class IntegrandContext {
 public:
  IntegrandContext(ModelParams model, int jumps, double ode_tolerance = 1e-10);

  const ModelParams& model() const { return model_; }
  const FlowEvaluator& flow() const { return flow_; }
  int jumps() const { return jumps_; }
  int dimension() const { return 2 * jumps_; }
  BoundaryPolicy boundary_policy() const { return boundary_policy_; }

 private:
  friend struct IntegrandEval;
  ModelParams model_;
  FlowEvaluator flow_;
  int jumps_;
  BoundaryPolicy boundary_policy_ = BoundaryPolicy::nudge_to_interior;
  // cached law constants for the hot loop
  double log_fw_norm_;
  double log_fy_norm_;
  bool alpha_zero_vanishes_;  // delta + rate_W > 1: the alpha -> 0 limit is 0
  bool betak_zero_vanishes_;  // rate_Y > 1: the beta_k -> 0 limit is 0
};

// Jump times, claims and surplus levels recovered from one cube point.
struct PathTrace {
  std::vector<double> jump_times;        // t_i, i = 1..k
  std::vector<double> pre_jump_levels;   // X at the i-th jump minus, in [0, barrier)
  std::vector<double> claim_sizes;       // y_i; y_k >= pre_jump_levels[k-1]
  std::vector<double> post_jump_levels;  // surviving levels, i = 1..k-1
};

PathTrace recover_variables(std::span<const double> u, const IntegrandContext& ctx);

// The transformed integrand F: densities of the recovered variables, the
// lower-triangular Jacobian of the substitution, the discount factors and the
// penalty, evaluated in log space and exponentiated once.
double integrand_value(std::span<const double> u, const IntegrandContext& ctx);

// Central second differences of F at u with step h; returns the (2k)x(2k)
// matrix row-major. Throws std::domain_error if u is within h of the
// boundary.
std::vector<double> hessian_entries_numeric(std::span<const double> u,
                                            const IntegrandContext& ctx, double h);

struct VariationBound {
  double value = 0.0;   // sup F - inf F + max Frobenius norm of the Hessian
  bool unbounded = false;
};

// Probes F along each coordinate toward the faces (others held at 0.5);
// returns true when the values grow without saturating, i.e. F has a
// power-type boundary singularity.
bool boundary_probe_unbounded(const IntegrandContext& ctx);

// Grid estimate of the convex-variation bound sup F - inf F + M(F). Boundary
// probes run first: if F grows without bound toward a face (integrable
// singularity), the unbounded flag is returned instead of a number. Grid
// points are the nested lattice i/grid, so refining the grid only adds
// evaluation points; the difference step is fixed at 1e-2.
VariationBound variation_bound(const IntegrandContext& ctx, int grid);

}  // namespace gsq
