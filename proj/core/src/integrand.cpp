#include "gsq/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gsq {

namespace {

constexpr double kInteriorLo = 0x1.0p-33;
constexpr double kInteriorHi = 1.0 - 0x1.0p-33;

inline double nudge(double u) { return std::clamp(u, kInteriorLo, kInteriorHi); }

}  // namespace

IntegrandContext::IntegrandContext(ModelParams model, int jumps, double ode_tolerance)
    : model_(std::move(model)),
      flow_(model_.premium, ode_tolerance),
      jumps_(jumps) {
  model_.validate();
  if (jumps < 1) throw std::invalid_argument("IntegrandContext: jumps must be >= 1");
  const Distribution& fw = model_.interarrival;
  const Distribution& fy = model_.claim;
  log_fw_norm_ = fw.kind == Distribution::Kind::exponential
                     ? std::log(fw.rate)
                     : fw.shape * std::log(fw.rate) - std::lgamma(fw.shape);
  log_fy_norm_ = fy.kind == Distribution::Kind::exponential
                     ? std::log(fy.rate)
                     : fy.shape * std::log(fy.rate) - std::lgamma(fy.shape);
  alpha_zero_vanishes_ = model_.delta + fw.rate > 1.0;
  betak_zero_vanishes_ = fy.rate > 1.0;
}

// Log density for positive v with the normalization constant precomputed.
struct IntegrandEval {
  static double log_fw(const IntegrandContext& c, double t) {
    const Distribution& d = c.model_.interarrival;
    if (d.kind == Distribution::Kind::exponential) return c.log_fw_norm_ - d.rate * t;
    return c.log_fw_norm_ + (d.shape - 1.0) * std::log(t) - d.rate * t;
  }
  static double log_fy(const IntegrandContext& c, double y) {
    const Distribution& d = c.model_.claim;
    if (d.kind == Distribution::Kind::exponential) return c.log_fy_norm_ - d.rate * y;
    if (y == 0.0)
      return d.shape > 1.0 ? -std::numeric_limits<double>::infinity()
                           : (d.shape == 1.0 ? c.log_fy_norm_
                                             : std::numeric_limits<double>::infinity());
    return c.log_fy_norm_ + (d.shape - 1.0) * std::log(y) - d.rate * y;
  }

  static double value(std::span<const double> u, const IntegrandContext& ctx,
                      PathTrace* trace) {
    const int k = ctx.jumps_;
    if (static_cast<int>(u.size()) != 2 * k)
      throw std::invalid_argument("integrand: point dimension must be 2*jumps");
    const ModelParams& m = ctx.model_;
    const double delta = m.delta;

    if (trace) {
      trace->jump_times.resize(k);
      trace->pre_jump_levels.resize(k);
      trace->claim_sizes.resize(k);
      trace->post_jump_levels.resize(k - 1);
    }

    // analytically-zero boundary limits short-circuit before the nudge
    for (int i = 0; i < k; ++i) {
      if (u[i] == 0.0 && ctx.alpha_zero_vanishes_ && !trace) return 0.0;
    }
    if (u[2 * k - 1] == 0.0 && ctx.betak_zero_vanishes_ && !trace) return 0.0;

    double log_acc = 0.0;
    double w_val = 1.0;
    double xhat = m.x;
    for (int i = 0; i < k; ++i) {
      const double alpha = nudge(u[i]);
      const double beta = nudge(u[k + i]);
      const double t = -std::log(alpha);
      const double X = ctx.flow_.value(t, xhat);
      log_acc += (delta - 1.0) * (-t) + log_fw(ctx, t);
      double y;
      if (i + 1 < k) {
        y = beta * X;
        log_acc += log_fy(ctx, y) + std::log(X);
        xhat = X * (1.0 - beta);
      } else {
        const double log_beta = std::log(beta);
        y = X - log_beta;
        log_acc += log_fy(ctx, y) - log_beta;
        w_val = m.penalty(-log_beta, X);
      }
      if (trace) {
        trace->jump_times[i] = t;
        trace->pre_jump_levels[i] = X;
        trace->claim_sizes[i] = y;
        if (i + 1 < k) trace->post_jump_levels[i] = xhat;
      }
    }
    if (w_val == 0.0) return 0.0;
    return std::exp(log_acc) * w_val;
  }
};

PathTrace recover_variables(std::span<const double> u, const IntegrandContext& ctx) {
  PathTrace trace;
  IntegrandEval::value(u, ctx, &trace);
  return trace;
}

double integrand_value(std::span<const double> u, const IntegrandContext& ctx) {
  return IntegrandEval::value(u, ctx, nullptr);
}

std::vector<double> hessian_entries_numeric(std::span<const double> u,
                                            const IntegrandContext& ctx, double h) {
  const int dim = ctx.dimension();
  if (static_cast<int>(u.size()) != dim)
    throw std::invalid_argument("hessian_entries_numeric: dimension mismatch");
  if (!(h > 0.0)) throw std::invalid_argument("hessian_entries_numeric: h must be > 0");
  for (int d = 0; d < dim; ++d) {
    if (u[d] - h <= 0.0 || u[d] + h >= 1.0)
      throw std::domain_error("hessian_entries_numeric: point within h of the boundary");
  }

  std::vector<double> p(u.begin(), u.end());
  auto F = [&]() { return integrand_value(p, ctx); };
  const double f0 = F();
  std::vector<double> hess(static_cast<std::size_t>(dim) * dim, 0.0);

  for (int i = 0; i < dim; ++i) {
    p[i] = u[i] + h;
    double fp = F();
    p[i] = u[i] - h;
    double fm = F();
    p[i] = u[i];
    hess[i * dim + i] = (fp - 2.0 * f0 + fm) / (h * h);
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      p[i] = u[i] + h; p[j] = u[j] + h;
      double fpp = F();
      p[j] = u[j] - h;
      double fpm = F();
      p[i] = u[i] - h; p[j] = u[j] + h;
      double fmp = F();
      p[j] = u[j] - h;
      double fmm = F();
      p[i] = u[i]; p[j] = u[j];
      double v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
      hess[i * dim + j] = v;
      hess[j * dim + i] = v;
    }
  }
  return hess;
}

bool boundary_probe_unbounded(const IntegrandContext& ctx) {
  // Walk each coordinate toward 0 and 1, the rest held at 0.5. A power
  // singularity shows as monotone growth that does not saturate between the
  // middle and the deepest rung.
  const int dim = ctx.dimension();
  std::vector<double> p(dim, 0.5);
  const std::vector<double> toward0 = {1e-3, 1e-6, 1e-9, 1e-12};
  const std::vector<double> toward1 = {1.0 - 1e-3, 1.0 - 1e-6, 1.0 - 1e-9, 1.0 - 1e-12};
  for (int d = 0; d < dim; ++d) {
    for (const auto& rungs : {toward0, toward1}) {
      std::vector<double> f(rungs.size());
      bool monotone_up = true;
      for (std::size_t m = 0; m < rungs.size(); ++m) {
        p[d] = rungs[m];
        f[m] = integrand_value(p, ctx);
        if (!std::isfinite(f[m])) return true;
        if (m > 0 && f[m] < f[m - 1]) monotone_up = false;
      }
      p[d] = 0.5;
      double first = std::max(f.front(), 1e-300);
      double mid = std::max(f[f.size() / 2], 1e-300);
      if (monotone_up && f.back() > 10.0 * first && f.back() > 1.5 * mid) return true;
    }
  }
  return false;
}

VariationBound variation_bound(const IntegrandContext& ctx, int grid) {
  if (grid < 2) throw std::invalid_argument("variation_bound: grid must be >= 2");
  const int dim = ctx.dimension();
  if (std::pow(static_cast<double>(grid), dim) > 1e8)
    throw std::invalid_argument("variation_bound: grid^(2k) evaluation count too large");

  if (boundary_probe_unbounded(ctx)) return {0.0, true};

  // Nested interior lattice i/grid; fixed central-difference step.
  const double h = 1e-2;
  std::vector<int> idx(dim, 1);
  std::vector<double> p(dim);
  double fmin = std::numeric_limits<double>::infinity(), fmax = 0.0, mf = 0.0;
  for (;;) {
    for (int d = 0; d < dim; ++d) p[d] = static_cast<double>(idx[d]) / grid;
    double f = integrand_value(p, ctx);
    fmin = std::min(fmin, f);
    fmax = std::max(fmax, f);
    auto hess = hessian_entries_numeric(p, ctx, h);
    double frob2 = 0.0;
    for (double e : hess) frob2 += e * e;
    mf = std::max(mf, std::sqrt(frob2));
    int d = 0;
    while (d < dim && ++idx[d] == grid) idx[d++] = 1;
    if (d == dim) break;
  }
  if (!std::isfinite(fmax) || !std::isfinite(mf)) return {0.0, true};
  return {fmax - fmin + mf, false};
}

}  // namespace gsq
