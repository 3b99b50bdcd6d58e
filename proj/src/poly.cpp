#include "polynet/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "polynet/errors.hpp"

namespace polynet {

PointCloud::PointCloud(Matrix points, Vec weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.rows() == 0) throw std::invalid_argument("PointCloud: at least one point required");
  if (weights_.size() != points_.rows())
    throw std::invalid_argument("PointCloud: weight count must match point count");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::invalid_argument("PointCloud: weights must be nonnegative");
    sum += w;
  }
  if (sum <= 0.0) throw std::invalid_argument("PointCloud: total weight must be positive");
  for (double& w : weights_) w /= sum;
}

PointCloud::PointCloud(Matrix points) : points_(std::move(points)) {
  if (points_.rows() == 0) throw std::invalid_argument("PointCloud: at least one point required");
  weights_.assign(points_.rows(), 1.0 / static_cast<double>(points_.rows()));
}

std::uint64_t basis_size(int n, int degree) {
  if (n < 1) throw std::invalid_argument("basis_size: n must be >= 1");
  if (degree < 0) throw std::invalid_argument("basis_size: degree must be >= 0");
  // C(n+D, min(n, D)) by the multiplicative formula, with overflow checks
  const std::uint64_t top = static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(degree);
  const std::uint64_t k = std::min<std::uint64_t>(n, degree);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (top - k + i) / i;  // exact at each step: product of i consecutive integers
    if (acc > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
      throw CapabilityError("basis_size: binomial exceeds the exact integer range");
  }
  return static_cast<std::uint64_t>(acc);
}

namespace {

void enumerate_fixed_degree(int n, int remaining, std::vector<int>& current,
                            std::vector<std::vector<int>>& out) {
  const int pos = static_cast<int>(current.size());
  if (pos == n - 1) {
    current.push_back(remaining);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    current.push_back(e);
    enumerate_fixed_degree(n, remaining - e, current, out);
    current.pop_back();
  }
}

int ivec_degree(const std::vector<int>& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

double ipow(double base, int exp) {
  if (exp <= 4) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
  }
  double r = 1.0;
  double b = base;
  int e = exp;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

double eval_monomial(const std::vector<int>& expo, const Vec& x) {
  double r = 1.0;
  for (std::size_t j = 0; j < expo.size(); ++j)
    if (expo[j] != 0) r *= ipow(x[j], expo[j]);
  return r;
}

}  // namespace

MonomialBasis enumerate_monomials(int n, int degree) {
  const std::uint64_t m = basis_size(n, degree);  // also validates n, degree
  MonomialBasis basis;
  basis.n = n;
  basis.degree = degree;
  basis.exponents.reserve(static_cast<std::size_t>(m));
  std::vector<int> current;
  for (int d = 0; d <= degree; ++d) enumerate_fixed_degree(n, d, current, basis.exponents);
  return basis;
}

double eval_poly(const Poly& p, const Vec& x) {
  if (x.size() != static_cast<std::size_t>(p.basis.n))
    throw std::invalid_argument("eval_poly: point dimension mismatch");
  if (p.coeffs.size() != p.basis.size())
    throw std::invalid_argument("eval_poly: coefficient count mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.coeffs.size(); ++i)
    s += p.coeffs[i] * eval_monomial(p.basis.exponents[i], x);
  return s;
}

Vec veronese_affine(const Vec& x, int degree) {
  const MonomialBasis basis = enumerate_monomials(static_cast<int>(x.size()), degree);
  Vec out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) out[i] = eval_monomial(basis.exponents[i], x);
  return out;
}

Vec veronese_affine_truncated(const Vec& x, int degree) {
  Vec full = veronese_affine(x, degree);
  return Vec(full.begin() + 1, full.end());
}

Vec veronese_homogeneous(const Vec& x, int degree) {
  if (x.size() < 2) throw std::invalid_argument("veronese_homogeneous: need n+1 >= 2 coordinates");
  const int n = static_cast<int>(x.size()) - 1;
  const MonomialBasis basis = enumerate_monomials(n, degree);
  const Vec tail(x.begin() + 1, x.end());
  Vec out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int e0 = degree - ivec_degree(basis.exponents[i]);
    out[i] = ipow(x[0], e0) * eval_monomial(basis.exponents[i], tail);
  }
  return out;
}

Matrix evaluation_matrix(const Matrix& points, const MonomialBasis& basis) {
  if (points.cols() != static_cast<std::size_t>(basis.n))
    throw std::invalid_argument("evaluation_matrix: point dimension mismatch");
  Matrix out(points.rows(), basis.size());
  for (std::size_t i = 0; i < points.rows(); ++i) {
    const Vec p = points.row_vec(i);
    for (std::size_t j = 0; j < basis.size(); ++j) out(i, j) = eval_monomial(basis.exponents[j], p);
  }
  return out;
}

std::vector<Poly> vanishing_polynomials(const Matrix& points, const MonomialBasis& basis,
                                        double tol) {
  Matrix kernel;
  if (points.rows() == 0) {
    kernel = Matrix(basis.size(), basis.size(), 0.0);
    for (std::size_t j = 0; j < basis.size(); ++j) kernel(j, j) = 1.0;
  } else {
    kernel = null_space(evaluation_matrix(points, basis), tol);
  }
  std::vector<Poly> out;
  out.reserve(kernel.cols());
  for (std::size_t j = 0; j < kernel.cols(); ++j) out.push_back(Poly{basis, kernel.col_vec(j)});
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.basis.n != b.basis.n) throw std::invalid_argument("poly_mul: variable count mismatch");
  const int n = a.basis.n;
  Poly out;
  out.basis = enumerate_monomials(n, a.basis.degree + b.basis.degree);
  out.coeffs.assign(out.basis.size(), 0.0);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < out.basis.size(); ++i) index[out.basis.exponents[i]] = i;
  std::vector<int> e(n);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      if (b.coeffs[j] == 0.0) continue;
      for (int v = 0; v < n; ++v) e[v] = a.basis.exponents[i][v] + b.basis.exponents[j][v];
      out.coeffs[index.at(e)] += a.coeffs[i] * b.coeffs[j];
    }
  }
  return out;
}

}  // namespace polynet
