#include "polynet/decompose.hpp"

#include <algorithm>
#include <cmath>

#include "polynet/errors.hpp"
#include "polynet/poly.hpp"

namespace polynet {

MomentMatrix::MomentMatrix(int n_, SymMatrix m) : n(n_), entries(std::move(m)) {
  if (entries.dim() != static_cast<std::size_t>(n + 1))
    throw std::invalid_argument("MomentMatrix: dimension must be n+1");
  if (std::fabs(entries.entries(0, 0) - 1.0) > 1e-10)
    throw std::invalid_argument("MomentMatrix: corner entry must be 1");
  entries.entries(0, 0) = 1.0;
}

MomentMatrix moment_matrix_from_lift(const Vec& lift, int n) {
  const MonomialBasis basis = enumerate_monomials(n, 2);
  if (lift.size() != basis.size())
    throw std::invalid_argument("moment_matrix_from_lift: lift length must be m(n,2)");
  if (std::fabs(lift[0] - 1.0) > 1e-10)
    throw std::invalid_argument("moment_matrix_from_lift: constant coordinate must be 1");

  SymMatrix m(static_cast<std::size_t>(n + 1));
  m.entries(0, 0) = 1.0;
  for (std::size_t k = 1; k < basis.size(); ++k) {
    const std::vector<int>& e = basis.exponents[k];
    int i = -1, j = -1;
    for (int v = 0; v < n; ++v) {
      if (e[v] == 1) {
        if (i < 0) i = v; else j = v;
      } else if (e[v] == 2) {
        i = v; j = v;
      }
    }
    if (j < 0) {  // degree-1 monomial x_i
      m.entries(0, i + 1) = lift[k];
      m.entries(i + 1, 0) = lift[k];
    } else {
      m.entries(i + 1, j + 1) = lift[k];
      m.entries(j + 1, i + 1) = lift[k];
    }
  }
  return MomentMatrix(n, std::move(m));
}

Vec lift_from_moment_matrix(const MomentMatrix& m) {
  const int n = m.n;
  const MonomialBasis basis = enumerate_monomials(n, 2);
  Vec lift(basis.size(), 0.0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const std::vector<int>& e = basis.exponents[k];
    int i = -1, j = -1;
    for (int v = 0; v < n; ++v) {
      if (e[v] == 1) {
        if (i < 0) i = v; else j = v;
      } else if (e[v] == 2) {
        i = v; j = v;
      }
    }
    if (i < 0) lift[k] = m.entries.entries(0, 0);
    else if (j < 0) lift[k] = m.entries.entries(0, i + 1);
    else lift[k] = m.entries.entries(i + 1, j + 1);
  }
  return lift;
}

AtomicMeasure decompose_quadratic(const MomentMatrix& m, double tol) {
  const std::size_t dim = m.entries.dim();
  EigResult eig = sym_eig(m.entries, std::min(tol, 1e-10));
  const double lmax = eig.values.empty() ? 0.0 : std::max(eig.values[0], 0.0);
  const double psd_floor = std::max(tol, 1e-8) * std::max(1.0, lmax);
  if (eig.values.back() < -psd_floor)
    throw NumericalError("decompose_quadratic: matrix not PSD within tolerance");

  const double cutoff = tol * std::max(lmax, 1.0e-300);
  std::size_t k = 0;
  while (k < dim && eig.values[k] > cutoff) ++k;
  if (k == 0) throw NumericalError("decompose_quadratic: numerically zero matrix");

  // Y has columns sqrt(lambda_i) v_i, so Y Y^T = M up to dropped eigenvalues.
  Matrix y(dim, k);
  for (std::size_t j = 0; j < k; ++j) {
    const double s = std::sqrt(eig.values[j]);
    for (std::size_t i = 0; i < dim; ++i) y(i, j) = s * eig.vectors(i, j);
  }

  // Householder reflection on the right sending the first row of Y to
  // (r/sqrt(k)) * (1,...,1); every rotated column then shares the corner value.
  Vec r0(k);
  for (std::size_t j = 0; j < k; ++j) r0[j] = y(0, j);
  const double r0n = norm2(r0);  // equals sqrt(M00) = 1 up to dropped mass
  const double target = r0n / std::sqrt(static_cast<double>(k));
  Vec wvec(k);
  for (std::size_t j = 0; j < k; ++j) wvec[j] = r0[j] - target;
  const double wn2 = dot(wvec, wvec);

  Matrix z = y;
  if (wn2 > 1e-30) {
    for (std::size_t i = 0; i < dim; ++i) {
      double proj = 0.0;
      for (std::size_t j = 0; j < k; ++j) proj += y(i, j) * wvec[j];
      proj *= 2.0 / wn2;
      for (std::size_t j = 0; j < k; ++j) z(i, j) = y(i, j) - proj * wvec[j];
    }
  }

  AtomicMeasure out;
  out.atoms.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double corner = z(0, j);
    Atom atom;
    // the reflection equalizes the corner row, so each weight is exactly 1/k
    // up to the dropped-eigenvalue mass; assign the exact value
    atom.weight = 1.0 / static_cast<double>(k);
    atom.point.resize(dim - 1);
    for (std::size_t i = 1; i < dim; ++i) atom.point[i - 1] = z(i, j) / corner;
    out.atoms.push_back(std::move(atom));
  }
  return out;
}

std::vector<std::pair<double, std::size_t>> caratheodory_prune(
    const std::vector<std::pair<double, Vec>>& atoms, const Vec& target, double tol) {
  if (atoms.empty()) throw std::invalid_argument("caratheodory_prune: no atoms");
  const std::size_t dim = target.size();

  // precondition: the atoms reconstruct the target
  {
    Vec recon(dim, 0.0);
    double wsum = 0.0;
    for (const auto& [wt, v] : atoms) {
      if (v.size() != dim) throw std::invalid_argument("caratheodory_prune: dimension mismatch");
      if (wt < -tol) throw std::invalid_argument("caratheodory_prune: negative weight");
      wsum += wt;
      for (std::size_t j = 0; j < dim; ++j) recon[j] += wt * v[j];
    }
    double err = std::fabs(wsum - 1.0);
    for (std::size_t j = 0; j < dim; ++j) err = std::max(err, std::fabs(recon[j] - target[j]));
    double scale = 1.0 + norm_inf(target);
    if (err > tol * scale)
      throw std::invalid_argument("caratheodory_prune: atoms do not reconstruct the target");
  }

  std::vector<double> weight;
  std::vector<std::size_t> index;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].first > 0.0) {
      weight.push_back(atoms[i].first);
      index.push_back(i);
    }
  }

  while (true) {
    const std::size_t k = weight.size();
    if (k <= 1) break;
    // affine dependence: null space of the homogenized atom matrix
    Matrix homog(dim + 1, k);
    for (std::size_t c = 0; c < k; ++c) {
      const Vec& v = atoms[index[c]].second;
      for (std::size_t j = 0; j < dim; ++j) homog(j, c) = v[j];
      homog(dim, c) = 1.0;
    }
    Matrix ns = null_space(homog, 1e-11);
    if (ns.cols() == 0) break;

    Vec mu = ns.col_vec(0);
    double mx = 0.0;
    for (double v : mu) mx = std::max(mx, v);
    if (mx <= 0.0)
      for (double& v : mu) v = -v;

    double theta = 0.0;
    std::size_t kill = k;
    for (std::size_t c = 0; c < k; ++c) {
      if (mu[c] > 1e-12) {
        const double ratio = weight[c] / mu[c];
        if (kill == k || ratio < theta * (1.0 - 1e-12)) {
          theta = ratio;
          kill = c;
        }
      }
    }
    if (kill == k) break;  // numerically one-sided dependence; stop rather than loop

    for (std::size_t c = 0; c < k; ++c) weight[c] -= theta * mu[c];
    weight[kill] = 0.0;

    std::vector<double> nw;
    std::vector<std::size_t> ni;
    for (std::size_t c = 0; c < k; ++c) {
      if (c == kill) continue;
      if (weight[c] < 1e-14) continue;  // collateral zero from a tied ratio
      nw.push_back(weight[c]);
      ni.push_back(index[c]);
    }
    weight = std::move(nw);
    index = std::move(ni);
    if (weight.empty()) throw NumericalError("caratheodory_prune: all atoms eliminated");
  }

  std::vector<std::pair<double, std::size_t>> out;
  out.reserve(weight.size());
  for (std::size_t c = 0; c < weight.size(); ++c) out.emplace_back(weight[c], index[c]);
  return out;
}

}  // namespace polynet
