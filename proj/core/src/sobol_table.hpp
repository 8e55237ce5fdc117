#pragma once

namespace gsq::detail {

// Joe-Kuo primitive polynomials and initial direction values; see
// sobol_table_data.cpp (generated by tools/extract_sobol_table.py).
extern const int kSobolTableDims;
extern const unsigned kSobolPoly[];
extern const unsigned kSobolMinit[];
extern const int kSobolMinitCount;

}  // namespace gsq::detail
