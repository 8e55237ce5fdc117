#include "gsq/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "rng_util.hpp"
#include "sobol_table.hpp"

namespace gsq {

using detail::hash_counter;
using detail::splitmix64;
using detail::to_unit;

namespace {

std::vector<std::uint32_t> first_primes(int n) {
  std::vector<std::uint32_t> primes;
  primes.reserve(n);
  for (std::uint32_t c = 2; static_cast<int>(primes.size()) < n; ++c) {
    bool prime = true;
    for (std::uint32_t p : primes) {
      if (p * p > c) break;
      if (c % p == 0) { prime = false; break; }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

}  // namespace

const char* to_string(PointSetKind kind) {
  switch (kind) {
    case PointSetKind::halton: return "halton";
    case PointSetKind::sobol: return "sobol";
    case PointSetKind::pseudorandom: return "mc";
  }
  return "?";
}

void PointSetSpec::validate() const {
  if (dimension < 1) throw std::invalid_argument("PointSetSpec: dimension must be >= 1");
  if (count < 1) throw std::invalid_argument("PointSetSpec: count must be >= 1");
  if (kind == PointSetKind::sobol) {
    if (dimension > detail::kSobolTableDims)
      throw std::invalid_argument(
          "PointSetSpec: sobol dimension " + std::to_string(dimension) +
          " exceeds the embedded direction-number table (" +
          std::to_string(detail::kSobolTableDims) + ")");
    if (skip > std::numeric_limits<std::uint32_t>::max() - static_cast<std::uint64_t>(count))
      throw std::invalid_argument("PointSetSpec: skip + count exceeds 32-bit sobol index range");
  }
}

PointSet::PointSet(PointSetSpec spec) : spec_(spec) {
  spec_.validate();
  const int dim = spec_.dimension;

  if (spec_.kind == PointSetKind::halton) {
    halton_bases_ = first_primes(dim);
    if (spec_.scramble_seed) {
      halton_perm_.resize(dim);
      for (int d = 0; d < dim; ++d) {
        std::uint32_t b = halton_bases_[d];
        auto& perm = halton_perm_[d];
        perm.resize(b);
        for (std::uint32_t v = 0; v < b; ++v) perm[v] = static_cast<std::uint16_t>(v);
        // Full Fisher-Yates; perm(0) may move, the implicit trailing zeros
        // are accounted for by a geometric tail term in halton_point.
        std::uint64_t st = *spec_.scramble_seed ^ (0x517cc1b727220a95ULL * (d + 1));
        for (std::uint32_t v = b - 1; v >= 1; --v) {
          std::uint32_t j = static_cast<std::uint32_t>(splitmix64(st) % (v + 1));
          std::swap(perm[v], perm[j]);
        }
      }
    }
  } else if (spec_.kind == PointSetKind::sobol) {
    sobol_dirs_.assign(static_cast<std::size_t>(dim) * 32, 0);
    int moffset = 0;
    for (int d = 0; d < dim; ++d) {
      unsigned poly = detail::kSobolPoly[d];
      int deg = 0;
      for (unsigned p = poly; p > 1; p >>= 1) ++deg;
      std::uint32_t m[32];
      if (poly == 1u) {
        for (int i = 0; i < 32; ++i) m[i] = 1;  // dimension 1: van der Corput
        moffset += 1;
      } else {
        for (int i = 0; i < deg; ++i) m[i] = detail::kSobolMinit[moffset + i];
        moffset += deg;
        for (int i = deg; i < 32; ++i) {
          std::uint32_t v = m[i - deg] ^ (m[i - deg] << deg);
          for (int j = 1; j < deg; ++j) {
            if ((poly >> (deg - j)) & 1u) v ^= m[i - j] << j;
          }
          m[i] = v;
        }
      }
      for (int i = 0; i < 32; ++i) sobol_dirs_[d * 32 + i] = m[i] << (31 - i);
    }
    if (spec_.scramble_seed) {
      sobol_shift_.resize(dim);
      std::uint64_t st = *spec_.scramble_seed ^ 0xd1342543de82ef95ULL;
      for (int d = 0; d < dim; ++d)
        sobol_shift_[d] = static_cast<std::uint32_t>(splitmix64(st) >> 32);
    }
  }
}

void PointSet::halton_point(std::uint64_t n, std::span<double> out) const {
  for (int d = 0; d < spec_.dimension; ++d) {
    const std::uint64_t b = halton_bases_[d];
    const double inv = 1.0 / static_cast<double>(b);
    double x = 0.0, f = inv;
    if (halton_perm_.empty()) {
      for (std::uint64_t v = n; v != 0; v /= b) {
        x += static_cast<double>(v % b) * f;
        f *= inv;
      }
    } else {
      const auto& perm = halton_perm_[d];
      for (std::uint64_t v = n; v != 0; v /= b) {
        x += static_cast<double>(perm[v % b]) * f;
        f *= inv;
      }
      // Trailing zero digits all map to perm(0): geometric tail
      // perm(0) * sum_{j>=L} b^-(j+1) = perm(0) * f / (b - 1).
      x += static_cast<double>(perm[0]) * f / static_cast<double>(b - 1);
    }
    out[d] = x;
  }
}

void PointSet::sobol_state(std::uint64_t n, std::span<std::uint32_t> state) const {
  const int dim = spec_.dimension;
  for (int d = 0; d < dim; ++d) state[d] = sobol_shift_.empty() ? 0u : sobol_shift_[d];
  for (int bit = 0; n != 0; ++bit, n >>= 1) {
    if (n & 1u) {
      for (int d = 0; d < dim; ++d) state[d] ^= sobol_dirs_[d * 32 + bit];
    }
  }
}

void PointSet::pseudorandom_point(std::int64_t i, std::span<double> out) const {
  const std::uint64_t seed = spec_.scramble_seed.value_or(0);
  const std::uint64_t base = (spec_.skip + static_cast<std::uint64_t>(i)) *
                             static_cast<std::uint64_t>(spec_.dimension);
  for (int d = 0; d < spec_.dimension; ++d)
    out[d] = to_unit(hash_counter(seed, base + static_cast<std::uint64_t>(d)));
}

void PointSet::point(std::int64_t i, std::span<double> out) const {
  if (i < 0 || i >= spec_.count) throw std::out_of_range("PointSet::point: index");
  if (out.size() < static_cast<std::size_t>(spec_.dimension))
    throw std::invalid_argument("PointSet::point: output span too small");
  switch (spec_.kind) {
    case PointSetKind::halton:
      halton_point(1 + spec_.skip + static_cast<std::uint64_t>(i), out);
      break;
    case PointSetKind::sobol: {
      std::vector<std::uint32_t> state(spec_.dimension);
      sobol_state(1 + spec_.skip + static_cast<std::uint64_t>(i), state);
      for (int d = 0; d < spec_.dimension; ++d)
        out[d] = static_cast<double>(state[d]) * 0x1.0p-32;
      break;
    }
    case PointSetKind::pseudorandom:
      pseudorandom_point(i, out);
      break;
  }
}

std::vector<double> PointSet::point(std::int64_t i) const {
  std::vector<double> out(spec_.dimension);
  point(i, out);
  return out;
}

void PointSet::fill_block(std::int64_t first, std::int64_t rows, std::span<double> out) const {
  if (first < 0 || rows < 0 || first + rows > spec_.count)
    throw std::out_of_range("PointSet::fill_block: range");
  const int dim = spec_.dimension;
  if (out.size() < static_cast<std::size_t>(rows) * dim)
    throw std::invalid_argument("PointSet::fill_block: output span too small");

  if (spec_.kind == PointSetKind::sobol && rows > 1) {
    // Incremental path: advancing n -> n+1 flips the trailing-ones block of
    // n plus one bit, so the digital state is updated with a couple of XORs.
    std::vector<std::uint32_t> state(dim);
    std::uint64_t n = 1 + spec_.skip + static_cast<std::uint64_t>(first);
    sobol_state(n, state);
    for (std::int64_t r = 0;; ++r) {
      double* row = out.data() + r * dim;
      for (int d = 0; d < dim; ++d) row[d] = static_cast<double>(state[d]) * 0x1.0p-32;
      if (r + 1 == rows) break;
      std::uint64_t flips = n ^ (n + 1);
      for (int bit = 0; flips != 0; ++bit, flips >>= 1) {
        for (int d = 0; d < dim; ++d) state[d] ^= sobol_dirs_[d * 32 + bit];
      }
      ++n;
    }
    return;
  }
  for (std::int64_t r = 0; r < rows; ++r)
    point(first + r, {out.data() + r * dim, static_cast<std::size_t>(dim)});
}

std::vector<std::vector<double>> generate(const PointSetSpec& spec) {
  PointSet ps(spec);
  std::vector<std::vector<double>> pts(spec.count);
  for (std::int64_t i = 0; i < spec.count; ++i) pts[i] = ps.point(i);
  return pts;
}

void write_points_csv(std::ostream& os, const PointSet& points) {
  char buf[32];
  for (std::int64_t i = 0; i < points.count(); ++i) {
    auto p = points.point(i);
    for (int d = 0; d < points.dimension(); ++d) {
      std::snprintf(buf, sizeof(buf), "%.17g", p[d]);
      os << (d ? "," : "") << buf;
    }
    os << '\n';
  }
}

}  // namespace gsq
