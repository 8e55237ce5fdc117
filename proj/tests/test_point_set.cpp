#include "gsq/point_set.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"

using namespace gsq;

TEST_CASE("halton dimension 1 starts 1/2, 1/4, 3/4") {
  PointSetSpec spec;
  spec.kind = PointSetKind::halton;
  spec.dimension = 1;
  spec.count = 3;
  auto pts = generate(spec);
  CHECK(pts[0][0] == 0.5);
  CHECK(pts[1][0] == 0.25);
  CHECK(pts[2][0] == 0.75);
}

TEST_CASE("halton dimension 2, sequence element 3 is (3/4, 1/9)") {
  PointSetSpec spec;
  spec.kind = PointSetKind::halton;
  spec.dimension = 2;
  spec.count = 4;
  PointSet ps(spec);
  auto p = ps.point(2);  // third point = radical inverses of the integer 3
  CHECK(p[0] == 0.75);
  CHECK(p[1] == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("sobol dimension 1 is the van der Corput sequence") {
  PointSetSpec spec;
  spec.kind = PointSetKind::sobol;
  spec.dimension = 1;
  spec.count = 3;
  auto pts = generate(spec);
  CHECK(pts[0][0] == 0.5);
  CHECK(pts[1][0] == 0.25);
  CHECK(pts[2][0] == 0.75);
}

TEST_CASE("skip drops leading sequence elements") {
  PointSetSpec plain;
  plain.kind = PointSetKind::halton;
  plain.dimension = 3;
  plain.count = 10;
  PointSetSpec skipped = plain;
  skipped.skip = 4;
  PointSet a(plain), b(skipped);
  for (int d = 0; d < 3; ++d) CHECK(b.point(0)[d] == a.point(4)[d]);

  PointSetSpec sob = plain;
  sob.kind = PointSetKind::sobol;
  PointSetSpec sob_skip = sob;
  sob_skip.skip = 7;
  PointSet c(sob), e(sob_skip);
  for (int d = 0; d < 3; ++d) CHECK(e.point(1)[d] == c.point(8)[d]);
}

TEST_CASE("generation is bit-reproducible and in [0,1)") {
  for (auto kind : {PointSetKind::halton, PointSetKind::sobol, PointSetKind::pseudorandom}) {
    PointSetSpec spec;
    spec.kind = kind;
    spec.dimension = 5;
    spec.count = 257;
    spec.scramble_seed = 99;
    auto a = generate(spec);
    auto b = generate(spec);
    for (std::int64_t i = 0; i < spec.count; ++i) {
      for (int d = 0; d < spec.dimension; ++d) {
        CHECK(a[i][d] == b[i][d]);  // bit identical
        CHECK(a[i][d] >= 0.0);
        CHECK(a[i][d] < 1.0);
      }
    }
  }
}

TEST_CASE("different scramble seeds give different sets, same statistics") {
  PointSetSpec s1;
  s1.kind = PointSetKind::sobol;
  s1.dimension = 4;
  s1.count = 128;
  s1.scramble_seed = 1;
  PointSetSpec s2 = s1;
  s2.scramble_seed = 2;
  auto a = generate(s1), b = generate(s2);
  int diff = 0;
  for (std::int64_t i = 0; i < s1.count; ++i)
    for (int d = 0; d < 4; ++d) diff += a[i][d] != b[i][d];
  CHECK(diff > 100);
}

TEST_CASE("scrambled halton stays a permutation within each base cell") {
  PointSetSpec spec;
  spec.kind = PointSetKind::halton;
  spec.dimension = 2;
  spec.count = 64;
  spec.scramble_seed = 7;
  auto pts = generate(spec);
  // base 2, first 64 indices: exactly half the points in [0, 1/2)
  int low = 0;
  for (auto& p : pts) low += p[0] < 0.5;
  CHECK(low == 32);
}

TEST_CASE("uniformity sanity: coordinate means near 1/2") {
  for (auto kind : {PointSetKind::halton, PointSetKind::sobol}) {
    for (int dim = 1; dim <= 3; ++dim) {
      PointSetSpec spec;
      spec.kind = kind;
      spec.dimension = dim;
      spec.count = 256;  // N = 2^8
      PointSet ps(spec);
      std::vector<double> mean(dim, 0.0), buf(dim);
      for (std::int64_t i = 0; i < spec.count; ++i) {
        ps.point(i, buf);
        for (int d = 0; d < dim; ++d) mean[d] += buf[d];
      }
      for (int d = 0; d < dim; ++d) {
        mean[d] /= static_cast<double>(spec.count);
        CHECK(std::abs(mean[d] - 0.5) <= 3.0 / std::sqrt(static_cast<double>(spec.count)));
      }
    }
  }
}

TEST_CASE("fill_block matches random access") {
  for (auto kind : {PointSetKind::halton, PointSetKind::sobol, PointSetKind::pseudorandom}) {
    PointSetSpec spec;
    spec.kind = kind;
    spec.dimension = 7;
    spec.count = 523;
    spec.scramble_seed = 4242;
    spec.skip = 3;
    PointSet ps(spec);
    std::vector<double> block(spec.count * spec.dimension);
    ps.fill_block(0, spec.count, block);
    std::vector<double> single(spec.dimension);
    for (std::int64_t i = 0; i < spec.count; ++i) {
      ps.point(i, single);
      for (int d = 0; d < spec.dimension; ++d)
        CHECK(block[i * spec.dimension + d] == single[d]);
    }
  }
}

TEST_CASE("sobol dimension beyond the table is an explicit error") {
  PointSetSpec spec;
  spec.kind = PointSetKind::sobol;
  spec.dimension = 513;
  spec.count = 1;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.dimension = 512;
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("spec validation rejects nonsense") {
  PointSetSpec spec;
  spec.dimension = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.dimension = 1;
  spec.count = 0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("csv dump has one row per point") {
  PointSetSpec spec;
  spec.kind = PointSetKind::halton;
  spec.dimension = 2;
  spec.count = 5;
  PointSet ps(spec);
  std::ostringstream os;
  write_points_csv(os, ps);
  std::string text = os.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  CHECK(text.find("0.5,") == 0);
}
