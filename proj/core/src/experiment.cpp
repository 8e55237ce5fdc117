#include "gsq/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "rng_util.hpp"

namespace gsq {

using nlohmann::json;

namespace {

std::string format_g(double v, const char* fmt = "%.10g") {
  char buf[40];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') { ++line; col = 1; } else { ++col; }
  }
  return {line, col};
}

ExperimentType parse_experiment_type(const std::string& s, const std::string& origin) {
  if (s == "table") return ExperimentType::table;
  if (s == "error_curve") return ExperimentType::error_curve;
  if (s == "x_sweep") return ExperimentType::x_sweep;
  throw ConfigError(origin + ": unknown experiment type '" + s + "'");
}

const char* experiment_type_name(ExperimentType t) {
  switch (t) {
    case ExperimentType::table: return "table";
    case ExperimentType::error_curve: return "error_curve";
    case ExperimentType::x_sweep: return "x_sweep";
  }
  return "?";
}

PointSetKind parse_generator(const std::string& s, const std::string& origin) {
  if (s == "mc" || s == "pseudorandom") return PointSetKind::pseudorandom;
  if (s == "sobol") return PointSetKind::sobol;
  if (s == "halton") return PointSetKind::halton;
  throw ConfigError(origin + ": unknown generator '" + s + "' (expected mc|sobol|halton)");
}

Distribution parse_distribution(const json& j, const std::string& origin, const std::string& key) {
  if (!j.is_object()) throw ConfigError(origin + ": " + key + " must be an object");
  std::string kind = j.value("kind", "exponential");
  double rate = j.value("rate", 0.0);
  try {
    if (kind == "exponential") return Distribution::exponential(rate);
    if (kind == "gamma") return Distribution::gamma(j.value("shape", 0.0), rate);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(origin + ": " + key + ": " + e.what());
  }
  throw ConfigError(origin + ": " + key + ".kind must be exponential|gamma");
}

Penalty parse_penalty(const json& j, const std::string& origin) {
  if (!j.is_object()) throw ConfigError(origin + ": model.penalty must be an object");
  std::string kind = j.value("kind", "");
  if (kind == "constant_one") return Penalty::constant_one();
  if (kind == "deficit") return Penalty::deficit();
  if (kind == "monomial") {
    try {
      return Penalty::monomial(j.value("deficit_power", 0), j.value("surplus_power", 0));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(origin + ": model.penalty: " + e.what());
    }
  }
  throw ConfigError(origin + ": model.penalty.kind must be constant_one|deficit|monomial");
}

std::string law_desc(const Distribution& d) {
  if (d.kind == Distribution::Kind::exponential) return format_g(d.rate, "%g");
  return format_g(d.shape, "%g") + std::string(":") + format_g(d.rate, "%g");
}

std::string csv_opt(const std::optional<double>& v) {
  return v ? format_g(*v) : std::string();
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    model.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  if (n_levels.empty()) throw ConfigError("n_levels list must not be empty");
  for (int k : n_levels)
    if (k < 0) throw ConfigError("n_levels entries must be >= 0");
  if (points.empty()) throw ConfigError("points (N) list must not be empty");
  for (std::int64_t n : points)
    if (n < 1) throw ConfigError("points entries must be >= 1");
  if (generators.empty()) throw ConfigError("generators list must not be empty");
  if (experiment == ExperimentType::x_sweep && x_values.empty())
    throw ConfigError("x_sweep requires a non-empty x_values list");
  for (double xv : x_values)
    if (!(xv >= 0.0 && xv < model.premium.barrier))
      throw ConfigError("x_values entries must lie in [0, barrier)");
  if (threads < 0) throw ConfigError("threads must be >= 0");

  int max_levels = *std::max_element(n_levels.begin(), n_levels.end());
  for (PointSetKind g : generators) {
    if (g == PointSetKind::sobol && max_levels > 0) {
      PointSetSpec probe;
      probe.kind = PointSetKind::sobol;
      probe.dimension = 2 * max_levels;
      probe.count = 1;
      try {
        probe.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("sobol generator: ") + e.what());
      }
    }
  }
}

ExperimentConfig parse_config_json(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                      ": " + e.what());
  }
  if (!root.is_object()) throw ConfigError(origin + ": top level must be a JSON object");

  ExperimentConfig cfg;
  try {
    std::string schema = root.value("schema", ExperimentConfig::kSchema);
    if (schema != ExperimentConfig::kSchema)
      throw ConfigError(origin + ": unsupported schema '" + schema + "'");

    cfg.experiment = parse_experiment_type(root.value("experiment", "table"), origin);

    if (!root.contains("model") || !root["model"].is_object())
      throw ConfigError(origin + ": missing model object");
    const json& jm = root["model"];
    cfg.model.x = jm.value("x", 0.0);
    if (jm.contains("premium")) {
      const json& jp = jm["premium"];
      cfg.model.premium.c_tilde = jp.value("c_tilde", 1.0);
      cfg.model.premium.barrier = jp.value("barrier", 1.0);
      cfg.model.premium.epsilon = jp.value("epsilon", 0.1);
    }
    if (jm.contains("interarrival"))
      cfg.model.interarrival = parse_distribution(jm["interarrival"], origin, "model.interarrival");
    else if (jm.contains("lambda"))
      cfg.model.interarrival = Distribution::exponential(jm["lambda"].get<double>());
    if (jm.contains("claim"))
      cfg.model.claim = parse_distribution(jm["claim"], origin, "model.claim");
    else if (jm.contains("mu"))
      cfg.model.claim = Distribution::exponential(jm["mu"].get<double>());
    cfg.model.delta = jm.value("delta", 0.0);
    if (jm.contains("penalty")) cfg.model.penalty = parse_penalty(jm["penalty"], origin);

    cfg.n_levels = root.value("n_levels", std::vector<int>{});
    cfg.points = root.value("points", std::vector<std::int64_t>{});
    if (root.contains("generators")) {
      for (const auto& g : root["generators"])
        cfg.generators.push_back(parse_generator(g.get<std::string>(), origin));
    }
    cfg.x_values = root.value("x_values", std::vector<double>{});
    cfg.mc_seed = root.value("mc_seed", std::uint64_t{1});
    if (root.contains("scramble_seed") && !root["scramble_seed"].is_null())
      cfg.scramble_seed = root["scramble_seed"].get<std::uint64_t>();
    cfg.skip = root.value("skip", std::uint64_t{0});
    cfg.output_path = root.value("output", "");
    std::string fmt = root.value("format", "csv");
    if (fmt == "csv") cfg.format = OutputFormat::csv;
    else if (fmt == "json") cfg.format = OutputFormat::json;
    else throw ConfigError(origin + ": format must be csv|json");
    cfg.threads = root.value("threads", 0);
  } catch (const json::exception& e) {
    throw ConfigError(origin + ": " + e.what());
  }

  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str(), path);
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["schema"] = ExperimentConfig::kSchema;
  j["experiment"] = experiment_type_name(cfg.experiment);
  json jm;
  jm["x"] = cfg.model.x;
  jm["premium"] = {{"c_tilde", cfg.model.premium.c_tilde},
                   {"barrier", cfg.model.premium.barrier},
                   {"epsilon", cfg.model.premium.epsilon}};
  auto law_json = [](const Distribution& d) {
    json out;
    out["kind"] = d.kind == Distribution::Kind::exponential ? "exponential" : "gamma";
    out["rate"] = d.rate;
    if (d.kind == Distribution::Kind::gamma) out["shape"] = d.shape;
    return out;
  };
  jm["interarrival"] = law_json(cfg.model.interarrival);
  jm["claim"] = law_json(cfg.model.claim);
  jm["delta"] = cfg.model.delta;
  json jp;
  switch (cfg.model.penalty.kind) {
    case Penalty::Kind::constant_one: jp["kind"] = "constant_one"; break;
    case Penalty::Kind::deficit: jp["kind"] = "deficit"; break;
    case Penalty::Kind::monomial:
      jp["kind"] = "monomial";
      jp["deficit_power"] = cfg.model.penalty.deficit_power;
      jp["surplus_power"] = cfg.model.penalty.surplus_power;
      break;
  }
  jm["penalty"] = jp;
  j["model"] = jm;
  j["n_levels"] = cfg.n_levels;
  j["points"] = cfg.points;
  json gens = json::array();
  for (PointSetKind g : cfg.generators) gens.push_back(to_string(g));
  j["generators"] = gens;
  if (!cfg.x_values.empty()) j["x_values"] = cfg.x_values;
  j["mc_seed"] = cfg.mc_seed;
  if (cfg.scramble_seed) j["scramble_seed"] = *cfg.scramble_seed;
  j["skip"] = cfg.skip;
  if (!cfg.output_path.empty()) j["output"] = cfg.output_path;
  j["format"] = cfg.format == OutputFormat::csv ? "csv" : "json";
  if (cfg.threads != 0) j["threads"] = cfg.threads;
  return j.dump(2);
}

PointSetSpec level_spec(const ExperimentConfig& config, PointSetKind kind, int level,
                        std::int64_t count) {
  PointSetSpec spec;
  spec.kind = kind;
  spec.dimension = 2 * level;
  spec.count = count;
  spec.skip = config.skip;
  if (kind == PointSetKind::pseudorandom) {
    // fresh stream per level; levels combine as independent estimates
    spec.scramble_seed = detail::hash_counter(config.mc_seed, static_cast<std::uint64_t>(level));
  } else {
    spec.scramble_seed = config.scramble_seed;
  }
  return spec;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  EstimatorOptions eopt;
  eopt.threads = config.threads;

  std::vector<double> xs = config.experiment == ExperimentType::x_sweep
                               ? config.x_values
                               : std::vector<double>{config.model.x};
  for (double xv : xs) {
    ModelParams model = config.model;
    model.x = xv;
    auto ref = reference_for(model);
    for (int levels : config.n_levels) {
      for (PointSetKind gen : config.generators) {
        for (std::int64_t n : config.points) {
          std::vector<PointSetSpec> specs;
          specs.reserve(levels);
          for (int k = 1; k <= levels; ++k) specs.push_back(level_spec(config, gen, k, n));

          auto t0 = std::chrono::steady_clock::now();
          Estimate est = estimate_gerber_shiu(levels, specs, model, eopt);
          auto t1 = std::chrono::steady_clock::now();

          ResultRow row;
          row.generator = to_string(gen);
          row.points = n;
          row.n_levels = levels;
          row.x = xv;
          row.lambda_desc = law_desc(model.interarrival);
          row.mu_desc = law_desc(model.claim);
          row.delta = model.delta;
          row.penalty = model.penalty.describe();
          row.estimate = est.value;
          row.std_error = est.std_error;
          row.ci95 = est.ci95;
          if (ref) {
            row.reference = ref->value;
            row.abs_error = std::abs(est.value - ref->value);
          }
          row.seconds = std::chrono::duration<double>(t1 - t0).count();
          row.per_level = std::move(est.per_level);
          result.rows.push_back(std::move(row));
        }
      }
    }
  }
  return result;
}

void write_csv(std::ostream& os, const ExperimentConfig& config, const ExperimentResult& result) {
  os << "# schema=" << ExperimentConfig::kSchema
     << " experiment=" << experiment_type_name(config.experiment) << " mc_seed=" << config.mc_seed;
  if (config.scramble_seed) os << " scramble_seed=" << *config.scramble_seed;
  os << " skip=" << config.skip << "\n";
  os << "generator,N,k_levels,x,lambda,mu,delta,penalty,estimate,stderr,ci_lo,ci_hi,"
        "reference,abs_error,seconds\n";
  for (const ResultRow& r : result.rows) {
    os << r.generator << ',' << r.points << ',' << r.n_levels << ',' << format_g(r.x, "%g") << ','
       << r.lambda_desc << ',' << r.mu_desc << ',' << format_g(r.delta, "%g") << ',' << r.penalty
       << ',' << format_g(r.estimate) << ',' << csv_opt(r.std_error) << ','
       << (r.ci95 ? format_g(r.ci95->first) : std::string()) << ','
       << (r.ci95 ? format_g(r.ci95->second) : std::string()) << ',' << csv_opt(r.reference) << ','
       << csv_opt(r.abs_error) << ',' << format_g(r.seconds, "%.3f") << "\n";
  }
}

void write_json(std::ostream& os, const ExperimentConfig& config, const ExperimentResult& result) {
  json j;
  j["schema"] = ExperimentConfig::kSchema;
  j["config"] = json::parse(config_to_json(config));
  json rows = json::array();
  for (const ResultRow& r : result.rows) {
    json row;
    row["generator"] = r.generator;
    row["N"] = r.points;
    row["k_levels"] = r.n_levels;
    row["x"] = r.x;
    row["lambda"] = r.lambda_desc;
    row["mu"] = r.mu_desc;
    row["delta"] = r.delta;
    row["penalty"] = r.penalty;
    row["estimate"] = r.estimate;
    row["stderr"] = r.std_error ? json(*r.std_error) : json(nullptr);
    row["ci_lo"] = r.ci95 ? json(r.ci95->first) : json(nullptr);
    row["ci_hi"] = r.ci95 ? json(r.ci95->second) : json(nullptr);
    row["reference"] = r.reference ? json(*r.reference) : json(nullptr);
    row["abs_error"] = r.abs_error ? json(*r.abs_error) : json(nullptr);
    row["seconds"] = r.seconds;
    json levels = json::array();
    for (const LevelEstimate& lev : r.per_level) {
      json jl;
      jl["k"] = lev.jumps;
      jl["value"] = lev.value;
      jl["N"] = lev.points;
      jl["stderr"] = lev.std_error ? json(*lev.std_error) : json(nullptr);
      levels.push_back(std::move(jl));
    }
    row["per_level"] = std::move(levels);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  os << j.dump(2) << "\n";
}

}  // namespace gsq
