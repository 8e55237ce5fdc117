#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gsq {

// Star and isotropic discrepancy estimates for a finite point set in
// [0,1)^dim, reported for error budgets. Points are row-major.

struct StarDiscrepancyResult {
  double value = 0.0;
  bool exact = false;  // false: lower-bound estimate from sampled boxes
};

// Exact star discrepancy via the grid of critical corners (point coordinates
// and 1 per axis, open and closed counts) when the corner grid fits within
// corner_budget; otherwise a sampled lower-bound estimate flagged
// exact = false. Throws on an empty point set.
StarDiscrepancyResult star_discrepancy_detailed(std::span<const double> points, int dimension,
                                                std::uint64_t corner_budget = 1u << 22);

double star_discrepancy(std::span<const double> points, int dimension);
double star_discrepancy(const std::vector<std::vector<double>>& points);

struct IsotropicBoundOptions {
  bool anchored_boxes = true;
  bool axis_slabs = true;
  bool half_spaces = true;   // exact cut volumes for dimension <= 12
  bool convex_hulls = true;  // dimension 2 only
  std::uint64_t seed = 0x1d5c0ffeeULL;
};

// Lower bound on the isotropic (convex-set) discrepancy obtained by
// maximizing the local discrepancy over sampled families of convex sets.
// Nondecreasing in effort for a fixed seed; always >= 0. The true isotropic
// discrepancy can only be larger.
double isotropic_discrepancy_lower_bound(std::span<const double> points, int dimension,
                                         int effort,
                                         const IsotropicBoundOptions& options = {});
double isotropic_discrepancy_lower_bound(const std::vector<std::vector<double>>& points,
                                         int effort,
                                         const IsotropicBoundOptions& options = {});

struct DiscrepancyReport {
  double star_value = 0.0;
  double isotropic_lower_bound = 0.0;
  std::string notes;  // method provenance, e.g. "star: exact; isotropic: ..."
};

DiscrepancyReport make_discrepancy_report(std::span<const double> points, int dimension,
                                          int effort,
                                          std::uint64_t corner_budget = 1u << 22);

}  // namespace gsq
