#include "gsq/estimator.hpp"

#include <cmath>

#include "doctest.h"
#include "test_support.hpp"

using namespace gsq;

namespace {

// 2-D quadrature oracle for the level-1 value of the exponential benchmark:
// reparameterized so both the alpha^{delta+lambda-1} and beta^{mu-1} endpoint
// behavior becomes smooth, then iterated adaptive Simpson. The factors are
// re-derived here rather than taken from the integrand module.
double level1_quadrature_oracle(const ModelParams& m) {
  FlowEvaluator flow(m.premium);
  const double lam = m.interarrival.rate, mu = m.claim.rate, delta = m.delta;
  const double pa = delta + lam - 1.0;  // alpha exponent

  auto f_alpha = [&](double alpha) {
    if (alpha <= 0.0) return 0.0;
    double t = -std::log(alpha);
    double X = flow.value(t, m.x);
    return lam * std::pow(alpha, pa) * std::exp(-mu * X) *
           (m.penalty.kind == Penalty::Kind::constant_one ? 1.0 : 1.0);
  };
  // alpha = sigma^20 smooths the alpha^{0.05} endpoint
  auto outer = [&](double sigma) {
    if (sigma <= 0.0) return 0.0;
    double alpha = std::pow(sigma, 20.0);
    return f_alpha(alpha) * 20.0 * std::pow(sigma, 19.0);
  };
  double alpha_part = testing::integrate(outer, 0.0, 1.0, 1e-10);
  // beta part: integral of mu beta^{mu-1} over [0,1] via beta = tau^3
  auto inner = [&](double tau) {
    if (tau <= 0.0) return 0.0;
    return mu * std::pow(tau * tau * tau, mu - 1.0) * 3.0 * tau * tau;
  };
  double beta_part = testing::integrate(inner, 0.0, 1.0, 1e-10);
  return alpha_part * beta_part;
}

}  // namespace

TEST_CASE("estimate_level with one point equals the integrand there") {
  ModelParams m = testing::benchmark_time_of_ruin_model();
  IntegrandContext ctx(m, 1);
  PointSetSpec spec;
  spec.kind = PointSetKind::halton;
  spec.dimension = 2;
  spec.count = 1;
  LevelEstimate lev = estimate_level(spec, ctx);
  PointSet ps(spec);
  CHECK(lev.value == integrand_value(ps.point(0), ctx));
  CHECK(lev.points == 1);
  CHECK_FALSE(lev.std_error.has_value());
}

TEST_CASE("estimate_level rejects mismatched dimensions") {
  ModelParams m = testing::benchmark_time_of_ruin_model();
  IntegrandContext ctx(m, 2);
  PointSetSpec spec;
  spec.dimension = 2;  // level 2 needs dimension 4
  spec.count = 8;
  CHECK_THROWS_AS(estimate_level(spec, ctx), std::invalid_argument);
}

TEST_CASE("estimate_level is deterministic across runs and thread counts") {
  ModelParams m = testing::benchmark_time_of_ruin_model();
  IntegrandContext ctx(m, 2);
  PointSetSpec spec;
  spec.kind = PointSetKind::sobol;
  spec.dimension = 4;
  spec.count = 20000;
  spec.scramble_seed = 3;

  EstimatorOptions one;
  one.threads = 1;
  EstimatorOptions four;
  four.threads = 4;
  double a = estimate_level(spec, ctx, one).value;
  double b = estimate_level(spec, ctx, four).value;
  double c = estimate_level(spec, ctx, four).value;
  CHECK(a == b);
  CHECK(b == c);
}

TEST_CASE("level-1 mean matches the quadrature oracle within Monte Carlo error") {
  ModelParams m = testing::benchmark_time_of_ruin_model();
  IntegrandContext ctx(m, 1);
  PointSetSpec spec;
  spec.kind = PointSetKind::pseudorandom;
  spec.dimension = 2;
  spec.count = 1000000;
  spec.scramble_seed = 2024;
  LevelEstimate lev = estimate_level(spec, ctx);
  REQUIRE(lev.std_error.has_value());
  double oracle = level1_quadrature_oracle(m);
  CHECK(std::abs(lev.value - oracle) <= 4.0 * *lev.std_error);
  // QMC should land at least as close without a reported error
  PointSetSpec sob;
  sob.kind = PointSetKind::sobol;
  sob.dimension = 2;
  sob.count = 65536;
  LevelEstimate qmc = estimate_level(sob, ctx);
  CHECK(std::abs(qmc.value - oracle) <= 5e-4);
}

TEST_CASE("truncated sum: empty, monotone, and stderr composition") {
  ModelParams m = testing::benchmark_time_of_ruin_model();
  std::vector<PointSetSpec> specs;
  for (int k = 1; k <= 10; ++k) {
    PointSetSpec s;
    s.kind = PointSetKind::halton;
    s.dimension = 2 * k;
    s.count = 2000;
    specs.push_back(s);
  }
  Estimate empty = estimate_gerber_shiu(0, specs, m);
  CHECK(empty.value == 0.0);
  CHECK(empty.per_level.empty());

  Estimate five = estimate_gerber_shiu(5, specs, m);
  Estimate ten = estimate_gerber_shiu(10, specs, m);
  CHECK(five.per_level.size() == 5);
  CHECK(ten.per_level.size() == 10);
  CHECK(five.value <= ten.value);  // nonnegative level values
  for (const auto& lev : ten.per_level) CHECK(lev.value >= 0.0);
  CHECK_FALSE(ten.std_error.has_value());  // halton carries no stderr

  std::vector<PointSetSpec> mc_specs = specs;
  for (int k = 0; k < 10; ++k) {
    mc_specs[k].kind = PointSetKind::pseudorandom;
    mc_specs[k].scramble_seed = 100 + k;
  }
  Estimate mc = estimate_gerber_shiu(3, mc_specs, m);
  REQUIRE(mc.std_error.has_value());
  double rss = 0.0;
  for (const auto& lev : mc.per_level) rss += *lev.std_error * *lev.std_error;
  CHECK(*mc.std_error == doctest::Approx(std::sqrt(rss)).epsilon(1e-12));
  REQUIRE(mc.ci95.has_value());
  CHECK(mc.ci95->first == doctest::Approx(mc.value - 1.96 * *mc.std_error).epsilon(1e-12));
  CHECK(mc.ci95->second == doctest::Approx(mc.value + 1.96 * *mc.std_error).epsilon(1e-12));
}

TEST_CASE("estimate_gerber_shiu validates spec dimensions") {
  ModelParams m = testing::benchmark_time_of_ruin_model();
  std::vector<PointSetSpec> specs(2);
  specs[0].dimension = 2;
  specs[0].count = 4;
  specs[1].dimension = 2;  // wrong: level 2 needs 4
  specs[1].count = 4;
  CHECK_THROWS_AS(estimate_gerber_shiu(2, specs, m), std::invalid_argument);
}

TEST_CASE("contraction factor closed forms") {
  ModelParams m = testing::benchmark_time_of_ruin_model();
  CHECK(contraction_factor(m) == doctest::Approx(1.0 / 1.05).epsilon(1e-15));
  m.delta = 0.0;
  CHECK(contraction_factor(m) == 1.0);
  m.delta = 0.2;
  m.interarrival = Distribution::gamma(2.0, 1.5);
  CHECK(contraction_factor(m) == doctest::Approx(std::pow(1.5 / 1.7, 2.0)).epsilon(1e-14));
}

TEST_CASE("tail bound: powers of the contraction factor") {
  ModelParams m = testing::benchmark_time_of_ruin_model();
  TailBound t0 = tail_bound(0, m, 2.5);
  CHECK(t0.value == 2.5);
  CHECK(t0.decays);

  TailBound t100 = tail_bound(100, m, 1.0);
  double oracle = 1.0;
  for (int i = 0; i < 100; ++i) oracle *= 1.0 / 1.05;
  CHECK(std::abs(t100.value - oracle) <= 1e-12 * oracle);
  CHECK(t100.value == doctest::Approx(0.0076).epsilon(2e-3));

  ModelParams zero_delta = testing::benchmark_deficit_model();
  TailBound tz = tail_bound(50, zero_delta, 3.0);
  CHECK(tz.value == 3.0);
  CHECK_FALSE(tz.decays);

  CHECK_THROWS_AS(tail_bound(-1, m, 1.0), std::invalid_argument);
}

TEST_CASE("error budget composes flags and closed-form terms") {
  ModelParams m = testing::benchmark_time_of_ruin_model();
  std::vector<PointSetSpec> specs;
  for (int k = 1; k <= 3; ++k) {
    PointSetSpec s;
    s.kind = PointSetKind::sobol;
    s.dimension = 2 * k;
    s.count = 512;
    specs.push_back(s);
  }
  ErrorBudgetOptions opt;
  opt.variation_grid = 4;
  opt.banach_points = 1024;
  ErrorBudget b = error_budget(3, specs, m, 1.0, opt);
  REQUIRE(b.qmc_terms.size() == 3);
  for (const auto& term : b.qmc_terms) {
    CHECK(term.unbounded);  // mu = 0.8 < 1
    CHECK_FALSE(term.variation.has_value());
    CHECK(term.discrepancy_bound >= 0.0);
  }
  double l = 1.0 / 1.05;
  // one-step sup norm at v = 0 is bounded by the integrability constant 1
  CHECK(b.banach_term <= std::pow(l, 3) / (1.0 - l) * 1.0 + 0.05);
  CHECK(b.banach_term > 0.0);
  CHECK(b.tail_term == doctest::Approx(std::pow(l, 3)).epsilon(1e-12));
  CHECK(b.tail_decays);
  CHECK_FALSE(b.notes.empty());
}

TEST_CASE("error budget in the bounded-variation regime has all finite terms") {
  ModelParams m = testing::benchmark_time_of_ruin_model();
  m.interarrival = Distribution::exponential(2.95);
  m.claim = Distribution::exponential(3.0);
  std::vector<PointSetSpec> specs;
  for (int k = 1; k <= 2; ++k) {
    PointSetSpec s;
    s.kind = PointSetKind::halton;
    s.dimension = 2 * k;
    s.count = 256;
    specs.push_back(s);
  }
  ErrorBudgetOptions opt;
  opt.variation_grid = 4;
  opt.banach_points = 512;
  ErrorBudget b = error_budget(2, specs, m, 1.0, opt);
  for (const auto& term : b.qmc_terms) {
    CHECK_FALSE(term.unbounded);
    REQUIRE(term.variation.has_value());
    CHECK(std::isfinite(*term.variation));
    REQUIRE(term.product.has_value());
    CHECK(*term.product >= 0.0);
  }
  CHECK(std::isfinite(b.banach_term));
  CHECK(std::isfinite(b.tail_term));
}

TEST_CASE("reference simulator: sanity and level breakdown") {
  ModelParams m = testing::benchmark_time_of_ruin_model();
  Estimate sim = mc_reference_simulator(m, 20000, 30, 77);
  REQUIRE(sim.std_error.has_value());
  CHECK(sim.value > 0.0);
  CHECK(sim.value < 1.0);
  double level_sum = 0.0;
  for (const auto& lev : sim.per_level) level_sum += lev.value;
  CHECK(level_sum == doctest::Approx(sim.value).epsilon(1e-12));
  CHECK(sim.per_level.size() == 30);

  // determinism across thread counts
  EstimatorOptions four;
  four.threads = 4;
  Estimate sim2 = mc_reference_simulator(m, 20000, 30, 77, four);
  CHECK(sim2.value == sim.value);

  // heavy discounting kills the value
  ModelParams heavy = m;
  heavy.delta = 50.0;
  Estimate dead = mc_reference_simulator(heavy, 20000, 50, 3);
  CHECK(dead.value < 0.01);
}

TEST_CASE("transformed mean agrees with direct path simulation per level") {
  ModelParams m = testing::benchmark_time_of_ruin_model();
  Estimate sim = mc_reference_simulator(m, 200000, 2, 909);
  for (int k = 1; k <= 2; ++k) {
    IntegrandContext ctx(m, k);
    PointSetSpec spec;
    spec.kind = PointSetKind::pseudorandom;
    spec.dimension = 2 * k;
    spec.count = 200000;
    spec.scramble_seed = 1000 + k;
    LevelEstimate lev = estimate_level(spec, ctx);
    double se = std::sqrt(*lev.std_error * *lev.std_error +
                          *sim.per_level[k - 1].std_error * *sim.per_level[k - 1].std_error);
    CHECK(std::abs(lev.value - sim.per_level[k - 1].value) <= 5.0 * se);
  }
}
