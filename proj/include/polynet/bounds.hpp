#pragma once

#include <cstdint>
#include <string>

namespace polynet {

/// Closed-form bounds on the Caratheodory number of the degree-2k Veronese
/// variety in n variables.
struct BoundsRecord {
  int n = 0;
  int k = 0;
  int degree = 0;  // 2k
  std::uint64_t trivial_upper = 0;   // m(n, 2k)
  std::uint64_t lower_item2 = 0;     // C(2k+n,n) - n*C(k+n,n) + C(n,2)
  std::uint64_t upper_item3 = 0;     // C(2k+n,n) - n - 1
  std::uint64_t exact_d2 = 0;        // n + 1, the sharp degree-2 value
  double asymptotic_ratio = 0.0;     // 1 - n/2^n, leading factor of lower_item2 / m
  std::string monotone_chain_note;
};

BoundsRecord caratheodory_bounds(int n, int k);

/// Evaluation-rank measurement for the integer grid {1..k}^n against the
/// degree-2k monomial basis.
struct GridMeasurement {
  int n = 0;
  int k = 0;
  std::uint64_t grid_size = 0;         // k^n
  std::uint64_t restriction_rank = 0;  // rank of the grid evaluation matrix
  std::uint64_t vanishing_dim = 0;     // m(n,2k) - restriction_rank
  bool lower_bound_check = false;      // restriction_rank >= lower_item2
  bool exact_rank = false;             // rank from integer elimination, not SVD
};

GridMeasurement grid_vanishing_dimension(int n, int k);

}  // namespace polynet
