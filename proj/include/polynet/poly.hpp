#pragma once

#include <cstdint>
#include <vector>

#include "polynet/linalg.hpp"

namespace polynet {

/// Ordered list of exponent vectors spanning n-variate polynomials of degree
/// <= D. Graded lexicographic order: ascending total degree, then ascending
/// lexicographic with the first variable most significant; the constant
/// monomial comes first.
struct MonomialBasis {
  int n = 0;
  int degree = 0;
  std::vector<std::vector<int>> exponents;

  std::size_t size() const { return exponents.size(); }
};

struct Poly {
  MonomialBasis basis;
  Vec coeffs;
};

/// Weighted finite point set; weights are normalized to sum to 1 on
/// construction.
class PointCloud {
 public:
  PointCloud(Matrix points, Vec weights);
  explicit PointCloud(Matrix points);  // uniform weights

  std::size_t size() const { return points_.rows(); }
  std::size_t dim() const { return points_.cols(); }
  const Matrix& points() const { return points_; }
  const Vec& weights() const { return weights_; }
  Vec point(std::size_t i) const { return points_.row_vec(i); }

 private:
  Matrix points_;
  Vec weights_;
};

/// C(n+D, n), guarded against 64-bit overflow (throws CapabilityError).
std::uint64_t basis_size(int n, int degree);

MonomialBasis enumerate_monomials(int n, int degree);

double eval_poly(const Poly& p, const Vec& x);

/// Full affine Veronese lift: coordinate i equals x^exponents[i]; the leading
/// coordinate is the constant 1.
Vec veronese_affine(const Vec& x, int degree);

/// The lift with the leading 1 dropped (a point in R^{m-1}).
Vec veronese_affine_truncated(const Vec& x, int degree);

/// Plain monomials of degree exactly D in the n+1 coordinates of x, ordered
/// consistently with the affine basis via e0 = D - |alpha|.
Vec veronese_homogeneous(const Vec& x, int degree);

/// Row i is veronese_affine(point_i, basis.degree).
Matrix evaluation_matrix(const Matrix& points, const MonomialBasis& basis);

/// Orthonormal basis of the polynomials in the span of `basis` vanishing on
/// all given points. Empty when the evaluation map is injective.
std::vector<Poly> vanishing_polynomials(const Matrix& points, const MonomialBasis& basis,
                                        double tol = 1e-9);

/// Product polynomial over the basis of degree deg(a) + deg(b).
Poly poly_mul(const Poly& a, const Poly& b);

}  // namespace polynet
