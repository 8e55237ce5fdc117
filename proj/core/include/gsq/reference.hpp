#pragma once

#include <optional>
#include <string>

#include "gsq/risk_model.hpp"

namespace gsq {

enum class ExperimentKind { discounted_time_of_ruin, deficit_at_ruin, any };

// Published closed-form anchor for a benchmark parameter set.
struct ReferenceValue {
  std::string label;
  double value = 0.0;
  std::string provenance;
};

// Exact-match lookup; never extrapolates to unlisted parameter sets.
//  - w = 1, x = 1.2, exp(1) arrivals, exp(0.8) claims, delta = 0.05,
//    c_tilde = 2, barrier = 3: discounted time of ruin 0.7577 for the
//    hard-reflected barrier model (Lin-Willmot-Drekic closed form).
//  - w = y, delta = 0, exponential claims: expected deficit at ruin 1/rate.
std::optional<ReferenceValue> reference_for(const ModelParams& model,
                                            ExperimentKind kind = ExperimentKind::any);

}  // namespace gsq
