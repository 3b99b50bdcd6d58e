#pragma once

#include <utility>
#include <vector>

#include "polynet/linalg.hpp"

namespace polynet {

/// Degree-<=2 moment matrix of a probability measure on R^n: dimension n+1,
/// unit corner entry (index 0 is the constant coordinate), PSD up to
/// tolerance.
struct MomentMatrix {
  int n = 0;
  SymMatrix entries;

  MomentMatrix(int n_, SymMatrix m);
};

struct Atom {
  double weight = 0.0;
  Vec point;
};

/// Convex combination of delta masses; weights positive, summing to 1.
struct AtomicMeasure {
  std::vector<Atom> atoms;
};

/// Reshape a degree-2 affine Veronese lift (length m(n,2), leading coordinate
/// 1) into the corresponding moment matrix.
MomentMatrix moment_matrix_from_lift(const Vec& lift, int n);

/// Inverse of moment_matrix_from_lift.
Vec lift_from_moment_matrix(const MomentMatrix& m);

/// Spectral Caratheodory decomposition of a unit-corner PSD moment matrix into
/// at most rank(M) <= n+1 atoms with equal weights 1/rank. The eigenfactor is
/// rotated by the Householder reflection taking its first row to the constant
/// vector, which forces every column to have the same positive corner entry.
AtomicMeasure decompose_quadratic(const MomentMatrix& m, double tol = 1e-9);

/// Classical Caratheodory pruning of a convex combination in lifted space:
/// eliminates atoms along affine dependencies until at most (affine-hull
/// dimension + 1) remain, preserving the barycenter. Returns the surviving
/// (weight, index) pairs relative to the input order.
std::vector<std::pair<double, std::size_t>> caratheodory_prune(
    const std::vector<std::pair<double, Vec>>& atoms, const Vec& target, double tol = 1e-9);

}  // namespace polynet
