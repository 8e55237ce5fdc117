#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace gsq {

enum class PointSetKind { halton, sobol, pseudorandom };

const char* to_string(PointSetKind kind);

struct PointSetSpec {
  PointSetKind kind = PointSetKind::halton;
  int dimension = 1;
  std::int64_t count = 1;
  std::optional<std::uint64_t> scramble_seed;  // also seeds pseudorandom draws
  std::uint64_t skip = 0;

  void validate() const;  // throws std::invalid_argument
};

// Point set with random access: point(i) is a pure function of (spec, i), so
// points may be consumed concurrently and out of order. Identical specs
// produce bit-identical coordinates across runs.
//
// halton        radical inverse in the first `dimension` prime bases; the
//               optional scramble applies a seed-keyed digit permutation per
//               base (0 stays fixed so the tail convention is preserved).
// sobol         natural-order digital sequence from Joe-Kuo direction
//               numbers, 32-bit precision; the optional scramble is a
//               seed-keyed digital shift (XOR) per dimension.
// pseudorandom  counter-hash uniform variates keyed by (seed, index).
//
// Index i maps to sequence element skip + i; the leading zero element of the
// Halton/Sobol sequences is never emitted.
class PointSet {
 public:
  explicit PointSet(PointSetSpec spec);

  const PointSetSpec& spec() const { return spec_; }
  int dimension() const { return spec_.dimension; }
  std::int64_t count() const { return spec_.count; }

  void point(std::int64_t i, std::span<double> out) const;
  std::vector<double> point(std::int64_t i) const;

  // Fills rows [first, first+rows) into row-major `out`; equivalent to
  // repeated point() calls but with a sequential fast path.
  void fill_block(std::int64_t first, std::int64_t rows, std::span<double> out) const;

 private:
  void halton_point(std::uint64_t n, std::span<double> out) const;
  void sobol_state(std::uint64_t n, std::span<std::uint32_t> state) const;
  void pseudorandom_point(std::int64_t i, std::span<double> out) const;

  PointSetSpec spec_;
  std::vector<std::uint32_t> halton_bases_;
  std::vector<std::vector<std::uint16_t>> halton_perm_;  // one table per base
  std::vector<std::uint32_t> sobol_dirs_;   // [dim * 32], v_1..v_32 per dimension
  std::vector<std::uint32_t> sobol_shift_;  // digital shift per dimension
};

// Materialized convenience form of PointSet.
std::vector<std::vector<double>> generate(const PointSetSpec& spec);

// One point per row, coordinates with 17 significant digits.
void write_points_csv(std::ostream& os, const PointSet& points);

}  // namespace gsq
