#include "gsq/discrepancy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "rng_util.hpp"

namespace gsq {

using detail::splitmix64;
using detail::to_unit;

namespace {

struct Pts {
  const double* data;
  std::int64_t n;
  int dim;
  const double* row(std::int64_t i) const { return data + i * dim; }
};

Pts view(std::span<const double> points, int dimension) {
  if (dimension < 1) throw std::invalid_argument("discrepancy: dimension must be >= 1");
  if (points.empty() || points.size() % dimension != 0)
    throw std::invalid_argument("discrepancy: empty point set or size not a multiple of dimension");
  return Pts{points.data(), static_cast<std::int64_t>(points.size()) / dimension, dimension};
}

// Local star discrepancy at the corner y, taking the open/closed count limits.
double corner_discrepancy(const Pts& p, const double* y) {
  std::int64_t open = 0, closed = 0;
  for (std::int64_t i = 0; i < p.n; ++i) {
    const double* r = p.row(i);
    bool in_open = true, in_closed = true;
    for (int d = 0; d < p.dim; ++d) {
      if (r[d] >= y[d]) in_open = false;
      if (r[d] > y[d]) { in_closed = false; break; }
    }
    open += in_open;
    closed += in_closed;
  }
  double vol = 1.0;
  for (int d = 0; d < p.dim; ++d) vol *= y[d];
  double n = static_cast<double>(p.n);
  return std::max(static_cast<double>(closed) / n - vol, vol - static_cast<double>(open) / n);
}

double sampled_star_bound(const Pts& p, std::uint64_t budget) {
  std::int64_t cost_per_box = p.n * p.dim;
  std::int64_t boxes = std::clamp<std::int64_t>(
      static_cast<std::int64_t>(64 * budget) / std::max<std::int64_t>(cost_per_box, 1), 64, 65536);
  std::uint64_t st = 0x9d15ca7eULL;
  std::vector<double> y(p.dim);
  double best = 0.0;
  for (std::int64_t b = 0; b < boxes; ++b) {
    for (int d = 0; d < p.dim; ++d) {
      std::uint64_t h = splitmix64(st);
      if ((h & 3u) == 0u) {
        y[d] = 1.0;
      } else if ((h & 3u) == 1u) {
        y[d] = to_unit(splitmix64(st));
      } else {
        // snap to a point coordinate; these are the discrepancy-critical values
        y[d] = p.row(static_cast<std::int64_t>(splitmix64(st) % static_cast<std::uint64_t>(p.n)))[d];
      }
    }
    best = std::max(best, corner_discrepancy(p, y.data()));
  }
  return best;
}

// ---- isotropic lower-bound families ----------------------------------------

// Two-sided discrepancy over axis-aligned slabs {x_axis <= c}.
double axis_slab_bound(const Pts& p, int axis) {
  std::vector<double> c(p.n);
  for (std::int64_t i = 0; i < p.n; ++i) c[i] = p.row(i)[axis];
  std::sort(c.begin(), c.end());
  double n = static_cast<double>(p.n), best = 0.0;
  for (std::int64_t i = 0; i < p.n;) {
    std::int64_t j = i;
    while (j < p.n && c[j] == c[i]) ++j;
    best = std::max(best, static_cast<double>(j) / n - c[i]);  // closed count
    best = std::max(best, c[i] - static_cast<double>(i) / n);  // open count
    i = j;
  }
  return best;
}

// Volume of {x in [0,1]^s : theta . x <= c} via inclusion-exclusion over the
// cube vertices. Coordinates with negative weight are reflected first.
double halfspace_volume(std::span<const double> theta, double c) {
  const int s = static_cast<int>(theta.size());
  double cp = c;
  double prod = 1.0;
  std::vector<double> t(s);
  for (int d = 0; d < s; ++d) {
    t[d] = std::abs(theta[d]);
    if (theta[d] < 0.0) cp -= theta[d];
    prod *= t[d];
  }
  if (prod <= 0.0) return 0.0;  // degenerate direction
  double total = 0.0;
  for (int d = 0; d < s; ++d) total += t[d];
  if (cp <= 0.0) return 0.0;
  if (cp >= total) return 1.0;

  const std::uint32_t m = 1u << s;
  std::vector<double> dot(m, 0.0);
  long double facprod = 1.0L;
  for (int d = 0; d < s; ++d) facprod *= (d + 1);
  for (int d = 0; d < s; ++d) facprod *= t[d];
  long double acc = 0.0L;
  for (std::uint32_t v = 1; v < m; ++v) {
    int low = std::countr_zero(v);
    dot[v] = dot[v & (v - 1)] + t[low];
  }
  for (std::uint32_t v = 0; v < m; ++v) {
    long double r = cp - dot[v];
    if (r <= 0.0L) continue;
    long double term = 1.0L;
    for (int d = 0; d < s; ++d) term *= r;
    acc += (std::popcount(v) % 2 == 0) ? term : -term;
  }
  double vol = static_cast<double>(acc / facprod);
  return std::clamp(vol, 0.0, 1.0);
}

double halfspace_direction_bound(const Pts& p, std::span<const double> theta) {
  std::vector<double> proj(p.n);
  for (std::int64_t i = 0; i < p.n; ++i) {
    double v = 0.0;
    const double* r = p.row(i);
    for (int d = 0; d < p.dim; ++d) v += theta[d] * r[d];
    proj[i] = v;
  }
  std::sort(proj.begin(), proj.end());
  double n = static_cast<double>(p.n), best = 0.0;
  // evaluate at every distinct projection (stride-limited for large sets)
  std::int64_t stride = std::max<std::int64_t>(1, p.n / 512);
  for (std::int64_t i = 0; i < p.n; i += stride) {
    double c = proj[i];
    double vol = halfspace_volume(theta, c);
    auto lo = std::lower_bound(proj.begin(), proj.end(), c) - proj.begin();
    auto hi = std::upper_bound(proj.begin(), proj.end(), c) - proj.begin();
    best = std::max(best, static_cast<double>(hi) / n - vol);
    best = std::max(best, vol - static_cast<double>(lo) / n);
  }
  return best;
}

struct Vec2 { double x, y; };

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew monotone chain; returns hull in counter-clockwise order.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
              return a.x == b.x && a.y == b.y;
            }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& pt : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pt) <= 0) --k;
    h[k++] = pt;
  }
  std::size_t lower = k + 1;
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (k >= lower && cross(h[k - 2], h[k - 1], *it) <= 0) --k;
    h[k++] = *it;
  }
  h.resize(k - 1);
  return h;
}

double convex_hull_bound(const Pts& p, std::uint64_t seed, int subsets) {
  std::uint64_t st = seed;
  double n = static_cast<double>(p.n), best = 0.0;
  for (int s = 0; s < subsets; ++s) {
    int m = 3 + static_cast<int>(splitmix64(st) % 8u);
    std::vector<Vec2> sub(m);
    for (int i = 0; i < m; ++i) {
      const double* r = p.row(static_cast<std::int64_t>(splitmix64(st) % static_cast<std::uint64_t>(p.n)));
      sub[i] = {r[0], r[1]};
    }
    auto hull = convex_hull(sub);
    if (hull.size() < 3) continue;
    double area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const auto& a = hull[i];
      const auto& b = hull[(i + 1) % hull.size()];
      area += a.x * b.y - b.x * a.y;
    }
    area = 0.5 * std::abs(area);
    std::int64_t inside = 0, strict = 0;
    for (std::int64_t i = 0; i < p.n; ++i) {
      const Vec2 q{p.row(i)[0], p.row(i)[1]};
      bool in_closed = true, in_open = true;
      for (std::size_t e = 0; e < hull.size(); ++e) {
        double cr = cross(hull[e], hull[(e + 1) % hull.size()], q);
        if (cr < 0) { in_closed = in_open = false; break; }
        if (cr == 0) in_open = false;
      }
      inside += in_closed;
      strict += in_open;
    }
    best = std::max(best, static_cast<double>(inside) / n - area);
    best = std::max(best, area - static_cast<double>(strict) / n);
  }
  return best;
}

}  // namespace

StarDiscrepancyResult star_discrepancy_detailed(std::span<const double> points, int dimension,
                                                std::uint64_t corner_budget) {
  Pts p = view(points, dimension);

  // Corner grid feasibility: corners and corners*n within budget.
  double corners_est = 1.0;
  std::vector<std::vector<double>> axis_vals(p.dim);
  for (int d = 0; d < p.dim; ++d) {
    auto& vals = axis_vals[d];
    vals.resize(p.n + 1);
    for (std::int64_t i = 0; i < p.n; ++i) vals[i] = p.row(i)[d];
    vals[p.n] = 1.0;
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    corners_est *= static_cast<double>(vals.size());
    if (corners_est > 1e18) break;
  }
  const double cost_cap = 64.0 * static_cast<double>(corner_budget);
  if (corners_est > static_cast<double>(corner_budget) ||
      corners_est * static_cast<double>(p.n) > cost_cap) {
    return {sampled_star_bound(p, corner_budget), false};
  }

  std::vector<std::size_t> idx(p.dim, 0);
  std::vector<double> y(p.dim);
  double best = 0.0;
  for (;;) {
    for (int d = 0; d < p.dim; ++d) y[d] = axis_vals[d][idx[d]];
    best = std::max(best, corner_discrepancy(p, y.data()));
    int d = 0;
    while (d < p.dim && ++idx[d] == axis_vals[d].size()) idx[d++] = 0;
    if (d == p.dim) break;
  }
  return {best, true};
}

double star_discrepancy(std::span<const double> points, int dimension) {
  return star_discrepancy_detailed(points, dimension).value;
}

double star_discrepancy(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw std::invalid_argument("star_discrepancy: empty point set");
  int dim = static_cast<int>(points.front().size());
  std::vector<double> flat;
  flat.reserve(points.size() * dim);
  for (const auto& r : points) {
    if (static_cast<int>(r.size()) != dim)
      throw std::invalid_argument("star_discrepancy: ragged point set");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return star_discrepancy(flat, dim);
}

double isotropic_discrepancy_lower_bound(std::span<const double> points, int dimension,
                                         int effort, const IsotropicBoundOptions& options) {
  Pts p = view(points, dimension);
  if (effort < 0) throw std::invalid_argument("isotropic_discrepancy_lower_bound: effort < 0");
  double best = 0.0;  // the whole cube contributes local discrepancy 0

  if (options.axis_slabs) {
    int axes = std::min<int>(p.dim, std::max(1, 4 * (effort + 1)));
    for (int d = 0; d < axes; ++d) best = std::max(best, axis_slab_bound(p, d));
  }

  if (options.anchored_boxes && effort > 0) {
    std::uint64_t box_budget = std::min<std::uint64_t>(1u << 18, 1024ull * effort);
    best = std::max(best, sampled_star_bound(p, box_budget));
  }

  if (options.half_spaces && p.dim <= 12 && effort > 0) {
    std::uint64_t st = options.seed ^ 0x4a1f5b3cULL;
    std::vector<double> theta(p.dim);
    if (p.dim == 2) {
      // half-planes through point pairs; sampled deterministically, all pairs
      // when effort allows
      std::int64_t want = static_cast<std::int64_t>(32) * effort;
      std::int64_t total_pairs = p.n * (p.n - 1) / 2;
      if (want >= total_pairs) {
        for (std::int64_t i = 0; i < p.n; ++i)
          for (std::int64_t j = i + 1; j < p.n; ++j) {
            double dx = p.row(j)[0] - p.row(i)[0], dy = p.row(j)[1] - p.row(i)[1];
            double norm = std::hypot(dx, dy);
            if (norm == 0.0) continue;
            theta[0] = -dy / norm;
            theta[1] = dx / norm;
            best = std::max(best, halfspace_direction_bound(p, theta));
          }
      } else {
        for (std::int64_t k = 0; k < want; ++k) {
          auto i = static_cast<std::int64_t>(splitmix64(st) % static_cast<std::uint64_t>(p.n));
          auto j = static_cast<std::int64_t>(splitmix64(st) % static_cast<std::uint64_t>(p.n));
          if (i == j) continue;
          double dx = p.row(j)[0] - p.row(i)[0], dy = p.row(j)[1] - p.row(i)[1];
          double norm = std::hypot(dx, dy);
          if (norm == 0.0) continue;
          theta[0] = -dy / norm;
          theta[1] = dx / norm;
          best = std::max(best, halfspace_direction_bound(p, theta));
        }
      }
    } else {
      // sampled directions with components bounded away from zero, which
      // keeps the inclusion-exclusion volume numerically sane
      int dirs = 16 * effort;
      for (int k = 0; k < dirs; ++k) {
        double norm2 = 0.0;
        for (int d = 0; d < p.dim; ++d) {
          double mag = 0.3 + 0.7 * to_unit(splitmix64(st));
          theta[d] = (splitmix64(st) & 1u) ? mag : -mag;
          norm2 += mag * mag;
        }
        double inv = 1.0 / std::sqrt(norm2);
        for (int d = 0; d < p.dim; ++d) theta[d] *= inv;
        best = std::max(best, halfspace_direction_bound(p, theta));
      }
    }
  }

  if (options.convex_hulls && p.dim == 2 && effort > 0) {
    best = std::max(best, convex_hull_bound(p, options.seed ^ 0x77cb3f12ULL, 8 * effort));
  }
  return best;
}

double isotropic_discrepancy_lower_bound(const std::vector<std::vector<double>>& points,
                                         int effort, const IsotropicBoundOptions& options) {
  if (points.empty())
    throw std::invalid_argument("isotropic_discrepancy_lower_bound: empty point set");
  int dim = static_cast<int>(points.front().size());
  std::vector<double> flat;
  flat.reserve(points.size() * dim);
  for (const auto& r : points) flat.insert(flat.end(), r.begin(), r.end());
  return isotropic_discrepancy_lower_bound(flat, dim, effort, options);
}

DiscrepancyReport make_discrepancy_report(std::span<const double> points, int dimension,
                                          int effort, std::uint64_t corner_budget) {
  DiscrepancyReport rep;
  auto star = star_discrepancy_detailed(points, dimension, corner_budget);
  rep.star_value = star.value;
  rep.isotropic_lower_bound = isotropic_discrepancy_lower_bound(points, dimension, effort);
  rep.notes = std::string("star: ") + (star.exact ? "exact corner grid" : "sampled lower bound") +
              "; isotropic: sampled convex families (lower bound, indicative), effort " +
              std::to_string(effort);
  return rep;
}

}  // namespace gsq
