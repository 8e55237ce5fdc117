#include "gsq/experiment.hpp"

#include <sstream>

#include "doctest.h"
#include "test_support.hpp"

using namespace gsq;

namespace {

const char* kSmallConfig = R"({
  "schema": "gsq-config/1",
  "experiment": "table",
  "model": {
    "x": 1.2,
    "premium": {"c_tilde": 2.0, "barrier": 3.0, "epsilon": 0.001},
    "lambda": 1.0,
    "mu": 0.8,
    "delta": 0.05,
    "penalty": {"kind": "constant_one"}
  },
  "n_levels": [2],
  "points": [64, 128],
  "generators": ["halton", "mc"],
  "mc_seed": 42,
  "scramble_seed": 7,
  "skip": 0,
  "format": "csv"
})";

}  // namespace

TEST_CASE("config parsing and defaults") {
  ExperimentConfig cfg = parse_config_json(kSmallConfig, "test");
  CHECK(cfg.experiment == ExperimentType::table);
  CHECK(cfg.model.x == 1.2);
  CHECK(cfg.model.interarrival.rate == 1.0);
  CHECK(cfg.model.claim.rate == 0.8);
  CHECK(cfg.model.penalty.kind == Penalty::Kind::constant_one);
  CHECK(cfg.n_levels == std::vector<int>{2});
  CHECK(cfg.points == std::vector<std::int64_t>{64, 128});
  REQUIRE(cfg.generators.size() == 2);
  CHECK(cfg.generators[0] == PointSetKind::halton);
  CHECK(cfg.generators[1] == PointSetKind::pseudorandom);
  CHECK(cfg.mc_seed == 42);
  REQUIRE(cfg.scramble_seed.has_value());
  CHECK(*cfg.scramble_seed == 7);
}

TEST_CASE("config errors carry position or context") {
  CHECK_THROWS_AS(parse_config_json("{ not json", "bad.json"), ConfigError);
  try {
    parse_config_json("{\n  \"experiment\": \"table\",\n  [\n}", "bad.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("bad.json:") == 0);  // file:line:col prefix
  }

  std::string no_points = R"({"model": {"x": 0.5, "premium": {"c_tilde": 2, "barrier": 3,
    "epsilon": 0.001}, "lambda": 1, "mu": 0.8, "delta": 0.05,
    "penalty": {"kind": "constant_one"}}, "n_levels": [2], "points": [],
    "generators": ["mc"]})";
  CHECK_THROWS_WITH_AS(parse_config_json(no_points, "t"),
                       doctest::Contains("points"), ConfigError);

  std::string bad_gen = R"({"model": {"x": 0.5, "premium": {"c_tilde": 2, "barrier": 3,
    "epsilon": 0.001}, "lambda": 1, "mu": 0.8, "delta": 0.05,
    "penalty": {"kind": "constant_one"}}, "n_levels": [2], "points": [16],
    "generators": ["latin"]})";
  CHECK_THROWS_WITH_AS(parse_config_json(bad_gen, "t"), doctest::Contains("latin"), ConfigError);

  // sobol beyond the direction table must fail validation up front
  std::string deep = R"({"model": {"x": 0.5, "premium": {"c_tilde": 2, "barrier": 3,
    "epsilon": 0.001}, "lambda": 1, "mu": 0.8, "delta": 0.05,
    "penalty": {"kind": "constant_one"}}, "n_levels": [400], "points": [16],
    "generators": ["sobol"]})";
  CHECK_THROWS_WITH_AS(parse_config_json(deep, "t"), doctest::Contains("sobol"), ConfigError);
}

TEST_CASE("config round trip through json") {
  ExperimentConfig cfg = parse_config_json(kSmallConfig, "test");
  ExperimentConfig back = parse_config_json(config_to_json(cfg), "roundtrip");
  CHECK(back.model.x == cfg.model.x);
  CHECK(back.model.premium.epsilon == cfg.model.premium.epsilon);
  CHECK(back.points == cfg.points);
  CHECK(back.generators == cfg.generators);
  CHECK(back.mc_seed == cfg.mc_seed);
  CHECK(back.scramble_seed == cfg.scramble_seed);
  CHECK(back.skip == cfg.skip);
}

TEST_CASE("level specs: fresh mc streams per level, scramble passthrough") {
  ExperimentConfig cfg = parse_config_json(kSmallConfig, "test");
  PointSetSpec mc1 = level_spec(cfg, PointSetKind::pseudorandom, 1, 100);
  PointSetSpec mc2 = level_spec(cfg, PointSetKind::pseudorandom, 2, 100);
  CHECK(mc1.dimension == 2);
  CHECK(mc2.dimension == 4);
  REQUIRE(mc1.scramble_seed.has_value());
  REQUIRE(mc2.scramble_seed.has_value());
  CHECK(*mc1.scramble_seed != *mc2.scramble_seed);

  PointSetSpec h = level_spec(cfg, PointSetKind::halton, 3, 50);
  CHECK(h.dimension == 6);
  CHECK(h.scramble_seed == cfg.scramble_seed);
  CHECK(h.skip == cfg.skip);
}

TEST_CASE("run_experiment produces the expected grid of rows") {
  ExperimentConfig cfg = parse_config_json(kSmallConfig, "test");
  ExperimentResult res = run_experiment(cfg);
  REQUIRE(res.rows.size() == 4);  // 2 generators x 2 point counts
  for (const auto& row : res.rows) {
    CHECK(row.n_levels == 2);
    CHECK(row.x == 1.2);
    CHECK(row.penalty == "w=1");
    CHECK(row.estimate > 0.0);
    CHECK(row.estimate < 1.0);
    REQUIRE(row.reference.has_value());  // benchmark parameter set
    CHECK(*row.reference == 0.7577);
    REQUIRE(row.abs_error.has_value());
    CHECK(row.seconds >= 0.0);
    CHECK(row.per_level.size() == 2);
  }
  // mc rows carry errors, halton rows do not
  CHECK_FALSE(res.rows[0].std_error.has_value());
  CHECK(res.rows[2].std_error.has_value());

  // identical rerun is bit identical (qmc and seeded mc)
  ExperimentResult res2 = run_experiment(cfg);
  for (std::size_t i = 0; i < res.rows.size(); ++i)
    CHECK(res.rows[i].estimate == res2.rows[i].estimate);
}

TEST_CASE("x_sweep varies the starting value") {
  ExperimentConfig cfg = parse_config_json(kSmallConfig, "test");
  cfg.experiment = ExperimentType::x_sweep;
  cfg.x_values = {0.5, 1.0, 1.5};
  cfg.points = {64};
  cfg.generators = {PointSetKind::halton};
  cfg.validate();
  ExperimentResult res = run_experiment(cfg);
  REQUIRE(res.rows.size() == 3);
  CHECK(res.rows[0].x == 0.5);
  CHECK(res.rows[1].x == 1.0);
  CHECK(res.rows[2].x == 1.5);
  // off-benchmark starting values have no reference
  CHECK_FALSE(res.rows[0].reference.has_value());
}

TEST_CASE("csv writer: pinned schema header") {
  ExperimentConfig cfg = parse_config_json(kSmallConfig, "test");
  cfg.points = {64};
  cfg.generators = {PointSetKind::pseudorandom};
  ExperimentResult res = run_experiment(cfg);
  std::ostringstream os;
  write_csv(os, cfg, res);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line.find("# schema=gsq-config/1") == 0);
  CHECK(line.find("mc_seed=42") != std::string::npos);
  CHECK(line.find("scramble_seed=7") != std::string::npos);
  std::getline(is, line);
  CHECK(line ==
        "generator,N,k_levels,x,lambda,mu,delta,penalty,estimate,stderr,ci_lo,ci_hi,"
        "reference,abs_error,seconds");
  std::getline(is, line);
  CHECK(line.find("mc,64,2,1.2,1,0.8,0.05,w=1,") == 0);
}

TEST_CASE("json writer mirrors the csv columns") {
  ExperimentConfig cfg = parse_config_json(kSmallConfig, "test");
  cfg.points = {64};
  cfg.generators = {PointSetKind::halton};
  ExperimentResult res = run_experiment(cfg);
  std::ostringstream os;
  write_json(os, cfg, res);
  std::string text = os.str();
  for (const char* key : {"\"generator\"", "\"N\"", "\"k_levels\"", "\"x\"", "\"lambda\"",
                          "\"mu\"", "\"delta\"", "\"penalty\"", "\"estimate\"", "\"stderr\"",
                          "\"ci_lo\"", "\"ci_hi\"", "\"reference\"", "\"abs_error\"",
                          "\"seconds\"", "\"per_level\"", "\"config\""}) {
    CHECK(text.find(key) != std::string::npos);
  }
}
