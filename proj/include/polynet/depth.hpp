#pragma once

#include <cstddef>

#include "polynet/linalg.hpp"
#include "polynet/poly.hpp"

namespace polynet {

/// Closed halfspace {x : normal.x >= offset} with the cloud mass it contains.
struct OrientedHalfspace {
  Vec normal;  // unit
  double offset = 0.0;
  double mass = 0.0;
};

struct DepthCertificate {
  Vec point;
  double depth = 0.0;
  OrientedHalfspace witness;
  bool exact = true;  // false when the sampling fallback produced an upper bound
};

/// Isometric chart of the affine hull of a point set. forward/backward compose
/// to the identity on the hull.
class AffineFrame {
 public:
  AffineFrame(Vec origin, Matrix basis);  // basis: ambient_dim x intrinsic_dim, orthonormal cols

  std::size_t ambient_dim() const { return origin_.size(); }
  std::size_t intrinsic_dim() const { return basis_.cols(); }

  Vec to_local(const Vec& x) const;
  Vec to_ambient(const Vec& y) const;
  /// Distance from x to the hull (norm of the component outside the frame).
  double residual(const Vec& x) const;
  /// Unit ambient direction of the out-of-hull component (zero vec if none).
  Vec residual_direction(const Vec& x) const;

  const Matrix& basis() const { return basis_; }
  const Vec& origin() const { return origin_; }

 private:
  Vec origin_;
  Matrix basis_;
};

AffineFrame affine_hull_reduce(const Matrix& points, double tol = 1e-9);

struct DepthOptions {
  int exact_dim_cap = 9;     // exact enumeration regime: intrinsic dim <= cap
  int exact_point_cap = 40;  //   and cloud size <= cap
  int sample_directions = 100000;
  double boundary_tol = 1e-12;  // points this close to a hyperplane count on both sides
};

/// Minimum cloud mass over closed halfspaces containing q. Exact inside the
/// enumeration regime; a flagged upper bound (random directions) beyond it.
DepthCertificate tukey_depth(const Vec& q, const PointCloud& cloud, double tol = 1e-9,
                             const DepthOptions& opts = {});

struct CenterpointResult {
  Vec point;
  DepthCertificate certificate;  // exact depth of the returned point
  double target_mass = 0.0;
  std::size_t intrinsic_dim = 0;
};

/// Point of Tukey depth >= target_mass - tol, built by hyperplane enumeration
/// plus a max-min-slack LP over the induced halfspace constraints.
/// Requires target_mass <= 1/(d'+1) + tol for the intrinsic dimension d'.
CenterpointResult centerpoint_with_certificate(const PointCloud& cloud, double target_mass,
                                               double tol = 1e-9, const DepthOptions& opts = {});

Vec centerpoint(const PointCloud& cloud, double target_mass, double tol = 1e-9,
                const DepthOptions& opts = {});

}  // namespace polynet
