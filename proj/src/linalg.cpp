#include "polynet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "polynet/errors.hpp"

namespace polynet {

SymMatrix::SymMatrix(Matrix m) : entries(std::move(m)) {
  if (entries.rows() != entries.cols())
    throw std::invalid_argument("SymMatrix: input must be square");
  const std::size_t d = entries.rows();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const double s = 0.5 * (entries(i, j) + entries(j, i));
      entries(i, j) = s;
      entries(j, i) = s;
    }
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vec& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::fabs(x));
  return m;
}

Vec matvec(const Matrix& a, const Vec& x) {
  if (x.size() != a.cols()) throw std::invalid_argument("matvec: dimension mismatch");
  Vec y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* r = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += r[j] * x[j];
    y[i] = s;
  }
  return y;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
  Matrix c(a.rows(), b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double frobenius(const Matrix& a) {
  double s = 0.0;
  for (double x : a.data()) s += x * x;
  return std::sqrt(s);
}

EigResult sym_eig(const SymMatrix& sym, double tol) {
  const std::size_t n = sym.dim();
  Matrix a = sym.entries;
  Matrix v(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  const int max_sweeps = 30;
  // converge to machine precision regardless of the caller's rank tolerance:
  // Jacobi is quadratically convergent, so the extra sweeps are cheap and the
  // reconstruction error stays at rounding level
  const double off_target = std::clamp(tol, 1e-15, 1e-14);
  bool converged = (n <= 1);
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    double off = 0.0;
    double diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diag += a(i, i) * a(i, i);
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    }
    if (off <= off_target * off_target * std::max(1.0, diag)) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        const double app = a(p, p);
        const double aqq = a(q, q);
        if (std::fabs(apq) <= 1e-300) continue;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && n > 1) {
    // last check after the final sweep
    double off = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diag += a(i, i) * a(i, i);
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    }
    if (off > off_target * off_target * std::max(1.0, diag))
      throw NumericalError("sym_eig: Jacobi sweeps did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  EigResult out;
  out.values.resize(n);
  out.vectors = Matrix(n, n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

SvdResult svd(const Matrix& a) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  Matrix w = a;  // columns get orthogonalized in place
  Matrix v(m, m, 0.0);
  for (std::size_t j = 0; j < m; ++j) v(j, j) = 1.0;

  const int max_sweeps = 60;
  const double eps = 1e-15;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double wp = w(i, p);
          const double wq = w(i, q);
          alpha += wp * wp;
          beta += wq * wq;
          gamma += wp * wq;
        }
        if (std::fabs(gamma) <= eps * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const double wp = w(i, p);
          const double wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < m; ++i) {
          const double vp = v(i, p);
          const double vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  Vec sig(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w(i, j) * w(i, j);
    sig[j] = std::sqrt(s);
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sig[i] > sig[j]; });

  SvdResult out;
  out.sigma.resize(m);
  out.u = Matrix(n, m, 0.0);
  out.v = Matrix(m, m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = sig[j];
    if (sig[j] > 0.0)
      for (std::size_t i = 0; i < n; ++i) out.u(i, k) = w(i, j) / sig[j];
    for (std::size_t i = 0; i < m; ++i) out.v(i, k) = v(i, j);
  }
  return out;
}

Matrix null_space(const Matrix& a, double tol) {
  const std::size_t m = a.cols();
  if (a.rows() == 0 || m == 0) {
    Matrix id(m, m, 0.0);
    for (std::size_t j = 0; j < m; ++j) id(j, j) = 1.0;
    return id;
  }
  SvdResult s = svd(a);
  const double cutoff = tol * (s.sigma.empty() ? 0.0 : s.sigma[0]);
  std::size_t r = 0;
  while (r < m && s.sigma[r] > cutoff && s.sigma[r] > 0.0) ++r;
  Matrix basis(m, m - r, 0.0);
  for (std::size_t k = r; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i) basis(i, k - r) = s.v(i, k);
  return basis;
}

std::size_t rank_of(const Matrix& a, double tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  SvdResult s = svd(a);
  const double cutoff = tol * (s.sigma.empty() ? 0.0 : s.sigma[0]);
  std::size_t r = 0;
  while (r < s.sigma.size() && s.sigma[r] > cutoff && s.sigma[r] > 0.0) ++r;
  return r;
}

}  // namespace polynet
