#include "gsq/reference.hpp"

#include "doctest.h"
#include "test_support.hpp"

using namespace gsq;

TEST_CASE("reference: benchmark discounted time of ruin") {
  ModelParams m = testing::benchmark_time_of_ruin_model();
  auto ref = reference_for(m);
  REQUIRE(ref.has_value());
  CHECK(ref->value == 0.7577);
  CHECK(ref->label == "discounted time of ruin");
}

TEST_CASE("reference: deficit at ruin is 1/rate for any start") {
  ModelParams m = testing::benchmark_deficit_model();
  auto ref = reference_for(m);
  REQUIRE(ref.has_value());
  CHECK(ref->value == doctest::Approx(1.25).epsilon(1e-15));
  m.x = 0.3;  // applies at any starting value
  m.claim = Distribution::exponential(2.0);
  auto ref2 = reference_for(m);
  REQUIRE(ref2.has_value());
  CHECK(ref2->value == 0.5);
}

TEST_CASE("reference never extrapolates") {
  ModelParams m = testing::benchmark_time_of_ruin_model();
  m.x = 1.3;  // off the tabulated starting value
  CHECK_FALSE(reference_for(m).has_value());

  ModelParams d = testing::benchmark_deficit_model();
  d.delta = 0.01;  // deficit anchor needs delta = 0
  CHECK_FALSE(reference_for(d).has_value());
  d.delta = 0.0;
  d.claim = Distribution::gamma(2.0, 1.0);
  CHECK_FALSE(reference_for(d).has_value());

  ModelParams g = testing::benchmark_time_of_ruin_model();
  g.penalty = Penalty::monomial(2, 0);
  CHECK_FALSE(reference_for(g).has_value());
}

TEST_CASE("reference kind filter") {
  ModelParams m = testing::benchmark_time_of_ruin_model();
  CHECK(reference_for(m, ExperimentKind::discounted_time_of_ruin).has_value());
  CHECK_FALSE(reference_for(m, ExperimentKind::deficit_at_ruin).has_value());
}
