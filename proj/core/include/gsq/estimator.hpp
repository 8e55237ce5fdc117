#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsq/integrand.hpp"
#include "gsq/point_set.hpp"
#include "gsq/risk_model.hpp"

namespace gsq {

struct LevelEstimate {
  int jumps = 0;                     // k
  double value = 0.0;                // mean of the level-k integrand
  std::int64_t points = 0;           // N_k
  std::optional<double> std_error;   // pseudorandom point sets only
};

struct QmcLevelTerm {
  int jumps = 0;
  std::optional<double> variation;  // grid estimate; empty if flagged/infeasible
  bool unbounded = false;           // boundary probe found a singularity
  double discrepancy_bound = 0.0;   // isotropic lower-bound estimate
  std::optional<double> product;    // variation * discrepancy when available
};

// The three-term budget: per-level variation x discrepancy terms, the
// fixed-point contraction term and the truncation tail. The discrepancy
// factors are lower-bound estimates, so the QMC side is indicative rather
// than a rigorous upper bound.
struct ErrorBudget {
  std::vector<QmcLevelTerm> qmc_terms;
  double banach_term = 0.0;  // L^n/(1-L) * sup-norm estimate of the one-step map at v = 0
  double tail_term = 0.0;    // M' * L^n
  bool tail_decays = true;   // false when delta == 0: contraction argument unavailable
  std::string notes;
};

struct Estimate {
  double value = 0.0;
  std::vector<LevelEstimate> per_level;
  std::optional<double> std_error;                 // root-sum-square over levels (MC)
  std::optional<std::pair<double, double>> ci95;   // value -+ 1.96 * std_error
  std::optional<ErrorBudget> budget;
};

struct EstimatorOptions {
  int threads = 0;  // <= 0: hardware concurrency
};

// Mean of the level-k integrand over the spec'd point set. Deterministic for
// a fixed spec regardless of thread count: points are consumed in fixed-size
// blocks with compensated per-block sums reduced in block order.
LevelEstimate estimate_level(const PointSetSpec& spec, const IntegrandContext& ctx,
                             const EstimatorOptions& options = {});

// Truncated sum over levels k = 1..n_levels; per_level_specs[k-1] must have
// dimension 2k. Standard errors combine as independent across levels and are
// reported only when every level uses pseudorandom points.
Estimate estimate_gerber_shiu(int n_levels, const std::vector<PointSetSpec>& per_level_specs,
                              const ModelParams& model, const EstimatorOptions& options = {});

// E[exp(-delta T_1)]: lambda/(lambda+delta) for exponential inter-arrivals,
// (rate/(rate+delta))^shape for gamma.
double contraction_factor(const ModelParams& model);

struct TailBound {
  double value = 0.0;
  bool decays = true;  // false when delta == 0 (bound does not shrink with n)
};

TailBound tail_bound(int n, const ModelParams& model, double m_prime);

struct ErrorBudgetOptions {
  int variation_grid = 8;        // per-axis grid for feasible levels
  int isotropic_effort = 1;
  int banach_grid = 9;           // z-grid size for the one-step sup-norm estimate
  std::int64_t banach_points = 4096;
  EstimatorOptions estimator;
};

ErrorBudget error_budget(int n_levels, const std::vector<PointSetSpec>& per_level_specs,
                         const ModelParams& model, double m_prime,
                         const ErrorBudgetOptions& options = {});

// Independent oracle: simulate surplus paths directly (draw waiting times and
// claims, evolve through the flow, stop at ruin or after max_jumps) and
// average the discounted penalty. No change of variables is involved, so this
// cross-checks the transformed integrand end to end. Non-ruined truncated
// paths contribute zero, matching the truncated operator sum. per_level
// carries the ruin-at-jump-k breakdown with per-level standard errors.
Estimate mc_reference_simulator(const ModelParams& model, std::int64_t n_paths, int max_jumps,
                                std::uint64_t seed, const EstimatorOptions& options = {});

}  // namespace gsq
