#include "gsq/reference.hpp"

namespace gsq {

std::optional<ReferenceValue> reference_for(const ModelParams& model, ExperimentKind kind) {
  const bool exp_laws = model.interarrival.kind == Distribution::Kind::exponential &&
                        model.claim.kind == Distribution::Kind::exponential;

  if (kind == ExperimentKind::any || kind == ExperimentKind::discounted_time_of_ruin) {
    if (model.penalty.kind == Penalty::Kind::constant_one && exp_laws && model.x == 1.2 &&
        model.interarrival.rate == 1.0 && model.claim.rate == 0.8 && model.delta == 0.05 &&
        model.premium.c_tilde == 2.0 && model.premium.barrier == 3.0) {
      return ReferenceValue{"discounted time of ruin", 0.7577,
                            "Lin-Willmot-Drekic closed form, hard-reflected barrier"};
    }
  }
  if (kind == ExperimentKind::any || kind == ExperimentKind::deficit_at_ruin) {
    if (model.penalty.kind == Penalty::Kind::deficit && model.delta == 0.0 &&
        model.claim.kind == Distribution::Kind::exponential) {
      return ReferenceValue{"expected deficit at ruin", 1.0 / model.claim.rate,
                            "memoryless overshoot of exponential claims, 1/rate"};
    }
  }
  return std::nullopt;
}

}  // namespace gsq
