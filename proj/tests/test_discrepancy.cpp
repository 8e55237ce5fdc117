#include "gsq/discrepancy.hpp"

#include <cmath>

#include "doctest.h"
#include "gsq/point_set.hpp"
#include "test_support.hpp"

using namespace gsq;

TEST_CASE("star discrepancy of a single point") {
  CHECK(star_discrepancy({{0.5}}) == doctest::Approx(0.5).epsilon(1e-15));
  // the supremum over half-open boxes anchored at 0 approaches 1 for x = 0
  CHECK(star_discrepancy({{0.0}}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("star discrepancy rejects empty input") {
  std::vector<double> flat;
  CHECK_THROWS(star_discrepancy(flat, 1));
}

TEST_CASE("dim-1 halton matches the exact sorted-points oracle") {
  for (int n : {16, 64, 256}) {
    PointSetSpec spec;
    spec.kind = PointSetKind::halton;
    spec.dimension = 1;
    spec.count = n;
    auto pts = generate(spec);
    std::vector<double> coords;
    for (auto& p : pts) coords.push_back(p[0]);

    auto res = star_discrepancy_detailed(coords, 1);
    CHECK(res.exact);
    double oracle = testing::star_discrepancy_1d_sorted(coords);
    CHECK(std::abs(res.value - oracle) <= 1e-12);
    // low-discrepancy growth bound
    CHECK(res.value <= 2.0 * std::log(static_cast<double>(n)) / static_cast<double>(n));
  }
}

TEST_CASE("2-d exact value dominates any sampled corner") {
  PointSetSpec spec;
  spec.kind = PointSetKind::sobol;
  spec.dimension = 2;
  spec.count = 32;
  auto pts = generate(spec);
  std::vector<double> flat;
  for (auto& p : pts) { flat.push_back(p[0]); flat.push_back(p[1]); }

  auto exact = star_discrepancy_detailed(flat, 2);
  CHECK(exact.exact);
  // dense uniform corner scan can only find smaller or equal local discrepancy
  double best = 0.0;
  const double n = 32.0;
  for (int i = 1; i <= 60; ++i) {
    for (int j = 1; j <= 60; ++j) {
      double y0 = i / 60.0, y1 = j / 60.0;
      int cnt = 0;
      for (auto& p : pts) cnt += p[0] < y0 && p[1] < y1;
      best = std::max(best, std::abs(cnt / n - y0 * y1));
    }
  }
  CHECK(exact.value >= best - 1e-12);
  CHECK(exact.value <= 1.0);

  // the sampled fallback is a lower bound for the exact value
  auto sampled = star_discrepancy_detailed(flat, 2, /*corner_budget=*/4);
  CHECK_FALSE(sampled.exact);
  CHECK(sampled.value <= exact.value + 1e-12);
}

TEST_CASE("isotropic bound: single point interval class") {
  CHECK(isotropic_discrepancy_lower_bound({{0.5}}, 2) == doctest::Approx(0.5).epsilon(1e-12));
  // effort 0 keeps the axis-slab family only; still >= 0
  CHECK(isotropic_discrepancy_lower_bound({{0.5}}, 0) >= 0.0);
}

TEST_CASE("isotropic bound on a lone 2-d point is nearly 1") {
  std::vector<std::vector<double>> pts = {{0.25, 0.25}};
  double b = isotropic_discrepancy_lower_bound(pts, 3);
  CHECK(b >= 0.75);
  CHECK(b <= 1.0);
}

TEST_CASE("isotropic bound: monotone in effort and dominates half-space family") {
  PointSetSpec spec;
  spec.kind = PointSetKind::halton;
  spec.dimension = 2;
  spec.count = 64;
  auto pts = generate(spec);

  double prev = 0.0;
  for (int effort : {0, 1, 2, 4, 8}) {
    double b = isotropic_discrepancy_lower_bound(pts, effort);
    CHECK(b >= prev - 1e-15);
    prev = b;
  }

  IsotropicBoundOptions half_only;
  half_only.anchored_boxes = false;
  half_only.axis_slabs = false;
  half_only.convex_hulls = false;
  double hs = isotropic_discrepancy_lower_bound(pts, 4, half_only);
  double full = isotropic_discrepancy_lower_bound(pts, 4);
  CHECK(full >= hs - 1e-15);
}

TEST_CASE("isotropic bound in higher dimension stays sane") {
  PointSetSpec spec;
  spec.kind = PointSetKind::sobol;
  spec.dimension = 6;
  spec.count = 128;
  auto pts = generate(spec);
  double b = isotropic_discrepancy_lower_bound(pts, 2);
  CHECK(b >= 0.0);
  CHECK(b <= 1.0);
}

TEST_CASE("regular grid: isotropic bound at least the tested half-planes") {
  std::vector<std::vector<double>> grid;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      grid.push_back({(i + 0.5) / 4.0, (j + 0.5) / 4.0});
  IsotropicBoundOptions half_only;
  half_only.anchored_boxes = false;
  half_only.axis_slabs = false;
  half_only.convex_hulls = false;
  double hs = isotropic_discrepancy_lower_bound(grid, 8, half_only);
  double full = isotropic_discrepancy_lower_bound(grid, 8);
  CHECK(full >= hs - 1e-15);
  CHECK(full >= 0.0);
}

TEST_CASE("discrepancy report carries method notes") {
  PointSetSpec spec;
  spec.kind = PointSetKind::halton;
  spec.dimension = 2;
  spec.count = 20;
  auto ps = generate(spec);
  std::vector<double> flat;
  for (auto& p : ps) { flat.push_back(p[0]); flat.push_back(p[1]); }
  auto rep = make_discrepancy_report(flat, 2, 2);
  CHECK(rep.star_value > 0.0);
  CHECK(rep.isotropic_lower_bound >= 0.0);
  CHECK(rep.notes.find("star") != std::string::npos);
  CHECK(rep.notes.find("indicative") != std::string::npos);
}
