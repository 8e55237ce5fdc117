#include "gsq/estimator.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "rng_util.hpp"

namespace gsq {

namespace {

constexpr std::int64_t kBlock = 4096;

// Compensated (Neumaier) accumulator; block sums are reduced in block order
// so totals do not depend on the thread count.
struct Neumaier {
  double s = 0.0, c = 0.0;
  void add(double v) {
    double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  double total() const { return s + c; }
};

void parallel_blocks(std::int64_t nblocks, int threads,
                     const std::function<void(std::int64_t)>& work) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(std::min<std::int64_t>(nblocks, 256))));
  if (threads == 1) {
    for (std::int64_t b = 0; b < nblocks; ++b) work(b);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    try {
      for (;;) {
        std::int64_t b = next.fetch_add(1);
        if (b >= nblocks) break;
        work(b);
      }
    } catch (...) {
      std::scoped_lock lock(error_mu);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int i = 0; i < threads; ++i) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double sample_law(const Distribution& d, std::mt19937_64& eng) {
  if (d.kind == Distribution::Kind::exponential)
    return std::exponential_distribution<double>(d.rate)(eng);
  return std::gamma_distribution<double>(d.shape, 1.0 / d.rate)(eng);
}

}  // namespace

LevelEstimate estimate_level(const PointSetSpec& spec, const IntegrandContext& ctx,
                             const EstimatorOptions& options) {
  spec.validate();
  if (spec.dimension != ctx.dimension())
    throw std::invalid_argument("estimate_level: point-set dimension must equal 2*jumps");

  const PointSet ps(spec);
  const std::int64_t n = spec.count;
  const int dim = spec.dimension;
  const std::int64_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> bsum(nblocks), bsumsq(nblocks);

  parallel_blocks(nblocks, options.threads, [&](std::int64_t b) {
    const std::int64_t first = b * kBlock;
    const std::int64_t rows = std::min<std::int64_t>(kBlock, n - first);
    std::vector<double> buf(static_cast<std::size_t>(rows) * dim);
    ps.fill_block(first, rows, buf);
    Neumaier sum, sumsq;
    for (std::int64_t r = 0; r < rows; ++r) {
      double f = integrand_value({buf.data() + r * dim, static_cast<std::size_t>(dim)}, ctx);
      sum.add(f);
      sumsq.add(f * f);
    }
    bsum[b] = sum.total();
    bsumsq[b] = sumsq.total();
  });

  Neumaier total, total_sq;
  for (std::int64_t b = 0; b < nblocks; ++b) {
    total.add(bsum[b]);
    total_sq.add(bsumsq[b]);
  }
  LevelEstimate out;
  out.jumps = ctx.jumps();
  out.points = n;
  out.value = total.total() / static_cast<double>(n);
  if (spec.kind == PointSetKind::pseudorandom && n > 1) {
    double var = (total_sq.total() - static_cast<double>(n) * out.value * out.value) /
                 static_cast<double>(n - 1);
    out.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  }
  return out;
}

Estimate estimate_gerber_shiu(int n_levels, const std::vector<PointSetSpec>& per_level_specs,
                              const ModelParams& model, const EstimatorOptions& options) {
  if (n_levels < 0) throw std::invalid_argument("estimate_gerber_shiu: n_levels must be >= 0");
  if (static_cast<int>(per_level_specs.size()) < n_levels)
    throw std::invalid_argument("estimate_gerber_shiu: one point-set spec required per level");
  model.validate();

  Estimate est;
  bool all_pseudorandom = true;
  Neumaier value;
  double var_acc = 0.0;
  for (int k = 1; k <= n_levels; ++k) {
    const PointSetSpec& spec = per_level_specs[k - 1];
    if (spec.dimension != 2 * k)
      throw std::invalid_argument("estimate_gerber_shiu: spec for level " + std::to_string(k) +
                                  " must have dimension " + std::to_string(2 * k));
    IntegrandContext ctx(model, k);
    LevelEstimate lev = estimate_level(spec, ctx, options);
    value.add(lev.value);
    if (lev.std_error)
      var_acc += *lev.std_error * *lev.std_error;
    else
      all_pseudorandom = false;
    est.per_level.push_back(std::move(lev));
  }
  est.value = value.total();
  if (all_pseudorandom && n_levels > 0) {
    est.std_error = std::sqrt(var_acc);
    est.ci95 = {est.value - 1.96 * *est.std_error, est.value + 1.96 * *est.std_error};
  }
  return est;
}

double contraction_factor(const ModelParams& model) {
  model.validate();
  return model.interarrival.laplace(model.delta);
}

TailBound tail_bound(int n, const ModelParams& model, double m_prime) {
  if (n < 0) throw std::invalid_argument("tail_bound: n must be >= 0");
  if (!(m_prime >= 0.0)) throw std::invalid_argument("tail_bound: m_prime must be >= 0");
  if (model.delta == 0.0) return {m_prime, false};
  double l = contraction_factor(model);
  return {m_prime * std::pow(l, n), true};
}

ErrorBudget error_budget(int n_levels, const std::vector<PointSetSpec>& per_level_specs,
                         const ModelParams& model, double m_prime,
                         const ErrorBudgetOptions& options) {
  if (static_cast<int>(per_level_specs.size()) < n_levels)
    throw std::invalid_argument("error_budget: one point-set spec required per level");
  model.validate();

  ErrorBudget budget;
  TailBound tail = tail_bound(n_levels, model, m_prime);
  budget.tail_term = tail.value;
  budget.tail_decays = tail.decays;

  // One-step sup-norm estimate at v = 0 over a z-grid of starting values.
  double one_step_sup = 0.0;
  for (int j = 0; j < options.banach_grid; ++j) {
    ModelParams m2 = model;
    m2.x = model.premium.barrier * static_cast<double>(j) / options.banach_grid;
    IntegrandContext ctx1(m2, 1);
    PointSetSpec s;
    s.kind = PointSetKind::sobol;
    s.dimension = 2;
    s.count = options.banach_points;
    one_step_sup = std::max(one_step_sup, estimate_level(s, ctx1, options.estimator).value);
  }
  double l = contraction_factor(model);
  budget.banach_term = model.delta > 0.0
                           ? std::pow(l, n_levels) / (1.0 - l) * one_step_sup
                           : std::numeric_limits<double>::infinity();

  for (int k = 1; k <= n_levels; ++k) {
    const PointSetSpec& spec = per_level_specs[k - 1];
    if (spec.dimension != 2 * k)
      throw std::invalid_argument("error_budget: spec for level " + std::to_string(k) +
                                  " must have dimension " + std::to_string(2 * k));
    QmcLevelTerm term;
    term.jumps = k;

    IntegrandContext ctx(model, k);
    int grid = options.variation_grid;
    while (grid > 2 && std::pow(static_cast<double>(grid), 2 * k) > 1e8) --grid;
    if (std::pow(static_cast<double>(grid), 2 * k) <= 1e8) {
      VariationBound vb = variation_bound(ctx, grid);
      term.unbounded = vb.unbounded;
      if (!vb.unbounded) term.variation = vb.value;
    } else {
      term.unbounded = boundary_probe_unbounded(ctx);
      // variation grid infeasible in this dimension; leave value empty
    }

    PointSet ps(spec);
    std::vector<double> flat(static_cast<std::size_t>(spec.count) * spec.dimension);
    ps.fill_block(0, spec.count, flat);
    term.discrepancy_bound =
        isotropic_discrepancy_lower_bound(flat, spec.dimension, options.isotropic_effort);
    if (term.variation) term.product = *term.variation * term.discrepancy_bound;
    budget.qmc_terms.push_back(std::move(term));
  }
  budget.notes =
      "discrepancy factors are sampled lower bounds (indicative, not a rigorous "
      "upper bound); banach term estimates the one-step sup norm at v=0 on a z-grid";
  return budget;
}

Estimate mc_reference_simulator(const ModelParams& model, std::int64_t n_paths, int max_jumps,
                                std::uint64_t seed, const EstimatorOptions& options) {
  if (n_paths < 1) throw std::invalid_argument("mc_reference_simulator: n_paths must be >= 1");
  if (max_jumps < 1) throw std::invalid_argument("mc_reference_simulator: max_jumps must be >= 1");
  model.validate();
  const FlowEvaluator flow(model.premium);
  const double barrier = model.premium.barrier;

  const std::int64_t nblocks = (n_paths + kBlock - 1) / kBlock;
  std::vector<double> bsum(nblocks), bsumsq(nblocks);
  std::vector<std::vector<double>> lsum(nblocks), lsumsq(nblocks);

  parallel_blocks(nblocks, options.threads, [&](std::int64_t b) {
    const std::int64_t first = b * kBlock;
    const std::int64_t paths = std::min<std::int64_t>(kBlock, n_paths - first);
    Neumaier sum, sumsq;
    std::vector<double> lev(max_jumps, 0.0), levsq(max_jumps, 0.0);
    for (std::int64_t p = 0; p < paths; ++p) {
      std::mt19937_64 eng(detail::hash_counter(seed, static_cast<std::uint64_t>(first + p)));
      double xhat = model.x, t_total = 0.0, contribution = 0.0;
      int ruin_level = 0;
      for (int j = 1; j <= max_jumps; ++j) {
        double w = sample_law(model.interarrival, eng);
        t_total += w;
        double x_pre = flow.value(w, xhat);
        double y = sample_law(model.claim, eng);
        if (y > x_pre) {
          double deficit = y - x_pre;
          contribution = std::exp(-model.delta * t_total) *
                         penalty_eval(model.penalty, deficit, x_pre, barrier);
          ruin_level = j;
          break;
        }
        xhat = x_pre - y;
      }
      sum.add(contribution);
      sumsq.add(contribution * contribution);
      if (ruin_level > 0) {
        lev[ruin_level - 1] += contribution;
        levsq[ruin_level - 1] += contribution * contribution;
      }
    }
    bsum[b] = sum.total();
    bsumsq[b] = sumsq.total();
    lsum[b] = std::move(lev);
    lsumsq[b] = std::move(levsq);
  });

  Neumaier total, total_sq;
  std::vector<double> lev_total(max_jumps, 0.0), lev_total_sq(max_jumps, 0.0);
  for (std::int64_t b = 0; b < nblocks; ++b) {
    total.add(bsum[b]);
    total_sq.add(bsumsq[b]);
    for (int k = 0; k < max_jumps; ++k) {
      lev_total[k] += lsum[b][k];
      lev_total_sq[k] += lsumsq[b][k];
    }
  }

  Estimate est;
  const double n = static_cast<double>(n_paths);
  est.value = total.total() / n;
  if (n_paths > 1) {
    double var = (total_sq.total() - n * est.value * est.value) / (n - 1.0);
    est.std_error = std::sqrt(std::max(var, 0.0) / n);
    est.ci95 = {est.value - 1.96 * *est.std_error, est.value + 1.96 * *est.std_error};
  }
  est.per_level.reserve(max_jumps);
  for (int k = 0; k < max_jumps; ++k) {
    LevelEstimate lev;
    lev.jumps = k + 1;
    lev.points = n_paths;
    lev.value = lev_total[k] / n;
    if (n_paths > 1) {
      double var = (lev_total_sq[k] - n * lev.value * lev.value) / (n - 1.0);
      lev.std_error = std::sqrt(std::max(var, 0.0) / n);
    }
    est.per_level.push_back(std::move(lev));
  }
  return est;
}

}  // namespace gsq
