#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "polynet/linalg.hpp"
#include "polynet/poly.hpp"

namespace polynet {

enum class AdversaryMethod { ExactSubset, Heuristic };

/// Worst-case (or best-found) polynomial nonnegative on the candidate net,
/// with the cloud mass it keeps. The triple (worst_poly, kept_indices,
/// kept_mass) is always re-verified by direct evaluation before it is
/// returned.
struct AdversaryReport {
  Poly worst_poly;
  double kept_mass = 1.0;
  std::vector<std::size_t> kept_indices;
  AdversaryMethod method = AdversaryMethod::Heuristic;
  bool exact = false;
  int degree = 0;
};

struct ExactAdversaryOptions {
  std::size_t point_cap = 20;  // subset enumeration is 2^N in the worst case
};

/// Exact minimum kept mass over all degree-<=D polynomials nonnegative on the
/// net: kept-subsets are scanned in ascending mass order and each is tested by
/// an LP over the coefficient space; the first feasible subset is optimal.
/// Throws CapabilityError when the cloud exceeds the cap.
AdversaryReport exact_min_mass(const PointCloud& cloud, const Matrix& net_points, int degree,
                               double tol = 1e-9, const ExactAdversaryOptions& opts = {});

/// Seeded multi-start / annealing upper bound on the minimum kept mass.
/// Optional start polynomials (e.g. non-net witnesses) join the initial pool.
AdversaryReport heuristic_min_mass(const PointCloud& cloud, const Matrix& net_points, int degree,
                                   std::uint64_t seed, int iterations, double tol = 1e-9,
                                   const std::vector<Poly>& starts = {});

/// Witness that a candidate net X with |X| <= m(n, half_degree) - 1 fails for
/// degree 2*half_degree: P = -Q^2 + eta for a polynomial Q vanishing on X.
/// Returns the witness polynomial and the cloud mass it keeps. Throws when no
/// vanishing polynomial is guaranteed or every cloud point lies on {Q = 0}.
std::pair<Poly, double> non_net_witness(const PointCloud& cloud, const Matrix& candidate_net,
                                        int half_degree, double tol = 1e-9);

/// Scale factor used by the nonnegativity tolerances: coefficient magnitude
/// times the largest monomial magnitude over the given points.
double poly_scale(const Poly& p, const Matrix& points);

}  // namespace polynet
