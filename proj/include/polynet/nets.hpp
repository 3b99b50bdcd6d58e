#pragma once

#include <string>

#include "polynet/depth.hpp"
#include "polynet/linalg.hpp"
#include "polynet/poly.hpp"

namespace polynet {

enum class NetKind { Weak, Strong };

/// Primary artifact output: a point set with weights whose lifted barycenter
/// is a certified centerpoint of the lifted cloud. Every polynomial of the
/// certificate's degree that is nonnegative on the net keeps cloud mass at
/// least `guarantee`.
struct NetCertificate {
  int n = 0;
  int degree = 0;
  NetKind kind = NetKind::Weak;
  Matrix net_points;        // one row per net point, in R^n
  Vec weights;              // positive, sum 1
  double guarantee = 0.0;   // 1/m(n,degree)
  Vec lifted_centerpoint;   // full lift, length m(n,degree), leading 1
  double depth_achieved = 0.0;
  bool depth_exact = true;
  double reconstruction_residual = 0.0;
};

/// Weak net for quadratics: lift by degree 2, take a lifted centerpoint,
/// reshape into a moment matrix, and split it spectrally into <= n+1 atoms.
NetCertificate weak_net_quadratic(const PointCloud& cloud, double tol = 1e-9,
                                  const DepthOptions& opts = {});

/// Strong net for degree D: lifted centerpoint expressed as a convex
/// combination of lifted cloud points (max-min-weight LP), then pruned to at
/// most m(n,D) support points.
NetCertificate strong_net(const PointCloud& cloud, int degree, double tol = 1e-9,
                          const DepthOptions& opts = {});

}  // namespace polynet
