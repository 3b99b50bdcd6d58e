#include "polynet/depth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <unordered_set>

#include "polynet/errors.hpp"
#include "polynet/lp.hpp"
#include "polynet/rng.hpp"

namespace polynet {

AffineFrame::AffineFrame(Vec origin, Matrix basis) : origin_(std::move(origin)), basis_(std::move(basis)) {
  if (basis_.rows() != origin_.size())
    throw std::invalid_argument("AffineFrame: basis/origin dimension mismatch");
}

Vec AffineFrame::to_local(const Vec& x) const {
  Vec y(basis_.cols(), 0.0);
  for (std::size_t j = 0; j < basis_.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < basis_.rows(); ++i) s += basis_(i, j) * (x[i] - origin_[i]);
    y[j] = s;
  }
  return y;
}

Vec AffineFrame::to_ambient(const Vec& y) const {
  Vec x = origin_;
  for (std::size_t j = 0; j < basis_.cols(); ++j)
    for (std::size_t i = 0; i < basis_.rows(); ++i) x[i] += basis_(i, j) * y[j];
  return x;
}

double AffineFrame::residual(const Vec& x) const {
  Vec d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - origin_[i];
  for (std::size_t j = 0; j < basis_.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += basis_(i, j) * d[i];
    for (std::size_t i = 0; i < x.size(); ++i) d[i] -= s * basis_(i, j);
  }
  return norm2(d);
}

Vec AffineFrame::residual_direction(const Vec& x) const {
  Vec d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - origin_[i];
  for (std::size_t j = 0; j < basis_.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += basis_(i, j) * d[i];
    for (std::size_t i = 0; i < x.size(); ++i) d[i] -= s * basis_(i, j);
  }
  const double nrm = norm2(d);
  if (nrm == 0.0) return Vec(x.size(), 0.0);
  for (double& v : d) v /= nrm;
  return d;
}

AffineFrame affine_hull_reduce(const Matrix& points, double tol) {
  const std::size_t n = points.rows();
  const std::size_t d = points.cols();
  if (n == 0) throw std::invalid_argument("affine_hull_reduce: empty point set");
  Vec mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) mean[j] += points(i, j);
  for (double& v : mean) v /= static_cast<double>(n);
  Matrix centered(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) centered(i, j) = points(i, j) - mean[j];
  SvdResult s = svd(centered);
  const double cutoff = tol * (s.sigma.empty() ? 0.0 : s.sigma[0]);
  std::size_t r = 0;
  while (r < std::min(n, d) && r < s.sigma.size() && s.sigma[r] > cutoff && s.sigma[r] > 0.0) ++r;
  Matrix frame(d, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < d; ++i) frame(i, j) = s.v(i, j);
  return AffineFrame(std::move(mean), std::move(frame));
}

namespace {

constexpr std::size_t kMaxEnumDim = 15;

// Unit-scale null vector of a cnt x dim row-major system with cnt < dim and a
// single free column expected. Returns false on rank deficiency (degenerate
// subset). `a` is destroyed.
bool null_vector(double* a, std::size_t cnt, std::size_t dim, double* out) {
  double scale = 0.0;
  for (std::size_t i = 0; i < cnt * dim; ++i) scale = std::max(scale, std::fabs(a[i]));
  if (scale == 0.0) return false;
  const double thresh = 1e-10 * scale;

  std::size_t pivot_row_of_col[kMaxEnumDim + 2];
  bool is_pivot[kMaxEnumDim + 2];
  for (std::size_t j = 0; j < dim; ++j) is_pivot[j] = false;

  std::size_t r = 0;
  for (std::size_t col = 0; col < dim && r < cnt; ++col) {
    std::size_t best = r;
    double best_abs = std::fabs(a[r * dim + col]);
    for (std::size_t i = r + 1; i < cnt; ++i) {
      const double v = std::fabs(a[i * dim + col]);
      if (v > best_abs) {
        best = i;
        best_abs = v;
      }
    }
    if (best_abs <= thresh) continue;
    if (best != r)
      for (std::size_t j = 0; j < dim; ++j) std::swap(a[r * dim + j], a[best * dim + j]);
    const double piv = a[r * dim + col];
    for (std::size_t i = r + 1; i < cnt; ++i) {
      const double f = a[i * dim + col] / piv;
      if (f == 0.0) continue;
      a[i * dim + col] = 0.0;
      for (std::size_t j = col + 1; j < dim; ++j) a[i * dim + j] -= f * a[r * dim + j];
    }
    is_pivot[col] = true;
    pivot_row_of_col[col] = r;
    ++r;
  }
  if (r < cnt) return false;  // dependent rows: more than one null direction

  std::size_t free_col = dim;
  for (std::size_t j = 0; j < dim; ++j)
    if (!is_pivot[j]) {
      free_col = j;
      break;
    }
  if (free_col == dim) return false;

  for (std::size_t j = 0; j < dim; ++j) out[j] = 0.0;
  out[free_col] = 1.0;
  // back-substitute pivot columns in reverse order
  for (std::size_t jj = dim; jj-- > 0;) {
    if (!is_pivot[jj]) continue;
    const std::size_t row = pivot_row_of_col[jj];
    double s = 0.0;
    for (std::size_t j = jj + 1; j < dim; ++j) s += a[row * dim + j] * out[j];
    out[jj] = -s / a[row * dim + jj];
  }
  return true;
}

struct BestDirection {
  double mass = 2.0;  // above any reachable mass
  Vec normal;         // local unit normal of the witness halfspace
  bool found = false;
};

// Closed mass on both sides of the hyperplane through q with normal u; keeps
// the smaller side if it beats the current best.
void consider_direction(const Vec& u, const Vec& q, const Matrix& pts, const Vec& w, double btol,
                        BestDirection& best) {
  const std::size_t n = pts.rows();
  const std::size_t d = pts.cols();
  double plus = 0.0, minus = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* p = pts.row(i);
    double t = 0.0;
    for (std::size_t j = 0; j < d; ++j) t += u[j] * (p[j] - q[j]);
    if (t >= -btol) plus += w[i];
    if (t <= btol) minus += w[i];
  }
  if (plus < best.mass) {
    best.mass = plus;
    best.normal = u;
    best.found = true;
  }
  if (minus < best.mass) {
    best.mass = minus;
    best.normal = u;
    for (double& v : best.normal) v = -v;
    best.found = true;
  }
}

double local_scale(const Matrix& pts, const Vec& q) {
  double s = 1.0;
  for (double v : pts.data()) s = std::max(s, std::fabs(v));
  for (double v : q) s = std::max(s, std::fabs(v));
  return s;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] + (k - i) < n) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Orthonormal basis of the hyperplane orthogonal to the unit vector u, taken
// from the trailing columns of the Householder reflection mapping e0 onto +-u.
Matrix orth_complement(const Vec& u) {
  const std::size_t d = u.size();
  Vec w = u;
  w[0] += u[0] >= 0.0 ? 1.0 : -1.0;
  const double wn2 = dot(w, w);  // >= 1 for unit u
  Matrix b(d, d - 1, 0.0);
  for (std::size_t j = 1; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i)
      b(i, j - 1) = (i == j ? 1.0 : 0.0) - 2.0 * w[i] * w[j] / wn2;
  return b;
}

// Direction v with rows.v = -1 (all points strictly negative); succeeds only
// when the rows are linearly independent, via the Gram system.
bool push_below_direction(const std::vector<Vec>& rows, std::size_t d2, Vec& v) {
  const std::size_t k = rows.size();
  v.assign(d2, 0.0);
  if (d2 == 0) return k == 0;
  if (k == 0) {
    v[0] = 1.0;
    return true;
  }
  if (k > d2) return false;
  std::vector<double> g(k * k);
  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      g[i * k + j] = dot(rows[i], rows[j]);
      scale = std::max(scale, std::fabs(g[i * k + j]));
    }
  if (scale == 0.0) return false;
  std::vector<double> lam(k, -1.0);
  std::vector<std::size_t> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = i;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < k; ++i)
      if (std::fabs(g[perm[i] * k + c]) > std::fabs(g[perm[piv] * k + c])) piv = i;
    std::swap(perm[c], perm[piv]);
    const double pv = g[perm[c] * k + c];
    if (std::fabs(pv) <= 1e-10 * scale) return false;  // numerically dependent rows
    for (std::size_t i = c + 1; i < k; ++i) {
      const double f = g[perm[i] * k + c] / pv;
      if (f == 0.0) continue;
      for (std::size_t j = c; j < k; ++j) g[perm[i] * k + j] -= f * g[perm[c] * k + j];
      lam[perm[i]] -= f * lam[perm[c]];
    }
  }
  std::vector<double> sol(k, 0.0);
  for (std::size_t c = k; c-- > 0;) {
    double s = lam[perm[c]];
    for (std::size_t j = c + 1; j < k; ++j) s -= g[perm[c] * k + j] * sol[j];
    sol[c] = s / g[perm[c] * k + c];
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < d2; ++j) v[j] += sol[i] * rows[i][j];
  for (std::size_t i = 0; i < k; ++i)
    if (dot(rows[i], v) > -0.5) return false;  // numerical guard on the -1 targets
  return true;
}

struct GenericMin {
  double mass = 0.0;  // min over generic directions of the strictly-positive mass
  Vec dir;            // a generic direction attaining it (current coordinates)
};

// Minimum, over directions u with no point of `pts` on the boundary, of the
// mass strictly on the positive side. Every cell of the central arrangement
// {u . p = 0} has a minimal face spanned as the orthogonal complement of
// dim-1 independent point vectors, so enumerating those faces and resolving
// the on-plane points by the same problem one dimension down (zero cost when
// they are independent: all of them can be pushed to the negative side) gives
// the exact minimum. `cap` prunes branches that cannot beat the incumbent.
GenericMin generic_min(const std::vector<Vec>& pts, const std::vector<double>& wts,
                       std::size_t dim, double eta, double cap) {
  GenericMin out;
  out.dir = Vec(std::max<std::size_t>(dim, 1), 0.0);
  out.dir[0] = 1.0;
  const std::size_t n = pts.size();
  if (n == 0 || dim == 0) return out;

  // rank deficiency: every sign pattern is realized inside the span
  {
    Matrix a(n, dim);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < dim; ++j) a(i, j) = pts[i][j];
    const SvdResult s = svd(a);
    std::size_t r = 0;
    const double cutoff = 1e-10 * (s.sigma.empty() ? 0.0 : s.sigma[0]);
    while (r < std::min(n, dim) && s.sigma[r] > cutoff && s.sigma[r] > 0.0) ++r;
    if (r == 0) return out;
    if (r < dim) {
      std::vector<Vec> proj(n, Vec(r, 0.0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          double t = 0.0;
          for (std::size_t c = 0; c < dim; ++c) t += s.v(c, j) * pts[i][c];
          proj[i][j] = t;
        }
      GenericMin sub = generic_min(proj, wts, r, eta, cap);
      out.mass = sub.mass;
      std::fill(out.dir.begin(), out.dir.end(), 0.0);
      for (std::size_t c = 0; c < dim; ++c)
        for (std::size_t j = 0; j < r; ++j) out.dir[c] += s.v(c, j) * sub.dir[j];
      return out;
    }
  }

  if (dim == 1) {
    double pos = 0.0, neg = 0.0;
    for (std::size_t i = 0; i < n; ++i) (pts[i][0] >= 0.0 ? pos : neg) += wts[i];
    out.mass = std::min(pos, neg);
    out.dir[0] = pos <= neg ? 1.0 : -1.0;
    return out;
  }

  double best = cap;
  bool found = false;
  std::vector<std::size_t> idx(dim - 1);
  for (std::size_t j = 0; j < dim - 1; ++j) idx[j] = j;
  double rowsbuf[kMaxEnumDim * (kMaxEnumDim + 2)];
  double nv[kMaxEnumDim + 2];
  Vec u(dim);
  std::vector<double> tvals(n);
  do {
    for (std::size_t r = 0; r < dim - 1; ++r)
      for (std::size_t j = 0; j < dim; ++j) rowsbuf[r * dim + j] = pts[idx[r]][j];
    if (!null_vector(rowsbuf, dim - 1, dim, nv)) continue;
    double nrm = 0.0;
    for (std::size_t j = 0; j < dim; ++j) nrm += nv[j] * nv[j];
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) continue;
    for (std::size_t j = 0; j < dim; ++j) u[j] = nv[j] / nrm;

    double above = 0.0, below = 0.0;
    std::vector<std::size_t> onp;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = dot(u, pts[i]);
      tvals[i] = t;
      if (t > eta) above += wts[i];
      else if (t < -eta) below += wts[i];
      else onp.push_back(i);
    }
    const double lo = std::min(above, below);
    if (lo >= best) continue;

    const Matrix b = orth_complement(u);
    std::vector<Vec> op(onp.size(), Vec(dim - 1, 0.0));
    std::vector<double> ow(onp.size());
    for (std::size_t t = 0; t < onp.size(); ++t) {
      const Vec& p = pts[onp[t]];
      for (std::size_t j = 0; j + 1 < dim; ++j) {
        double s = 0.0;
        for (std::size_t c = 0; c < dim; ++c) s += b(c, j) * p[c];
        op[t][j] = s;
      }
      ow[t] = wts[onp[t]];
    }

    double sub_mass = 0.0;
    Vec v;
    if (!push_below_direction(op, dim - 1, v)) {
      GenericMin rec = generic_min(op, ow, dim - 1, eta, best - lo);
      if (lo + rec.mass >= best) continue;
      sub_mass = rec.mass;
      v = rec.dir;
    }
    const double cand = lo + sub_mass;
    if (cand >= best) continue;
    best = cand;
    found = true;

    // compose the witness: tilt the face direction into the winning cell
    Vec vamb(dim, 0.0);
    for (std::size_t c = 0; c < dim; ++c)
      for (std::size_t j = 0; j + 1 < dim; ++j) vamb[c] += b(c, j) * v[j];
    const double vn = norm2(vamb);
    const double sgn = above <= below ? 1.0 : -1.0;
    if (vn == 0.0) {
      for (std::size_t c = 0; c < dim; ++c) out.dir[c] = sgn * u[c];
    } else {
      for (double& x : vamb) x /= vn;
      double tmin = 0.0;
      bool have_strict = false;
      double vmax = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double at = std::fabs(tvals[i]);
        if (at > eta && (!have_strict || at < tmin)) {
          tmin = at;
          have_strict = true;
        }
        vmax = std::max(vmax, std::fabs(dot(vamb, pts[i])));
      }
      const double eps = have_strict ? 0.5 * tmin / std::max(vmax, 1e-300) : 1.0;
      for (std::size_t c = 0; c < dim; ++c) out.dir[c] = sgn * u[c] + eps * vamb[c];
      const double dn = norm2(out.dir);
      if (dn > 0.0)
        for (double& x : out.dir) x /= dn;
    }
  } while (next_combination(idx, n));
  out.mass = found ? best : cap;
  return out;
}

}  // namespace

DepthCertificate tukey_depth(const Vec& q, const PointCloud& cloud, double tol,
                             const DepthOptions& opts) {
  if (q.size() != cloud.dim()) throw std::invalid_argument("tukey_depth: dimension mismatch");
  for (double v : q)
    if (!std::isfinite(v)) throw std::invalid_argument("tukey_depth: non-finite query point");

  const AffineFrame frame = affine_hull_reduce(cloud.points(), tol);
  const std::size_t N = cloud.size();

  double ambient_scale = 1.0;
  for (double v : cloud.points().data()) ambient_scale = std::max(ambient_scale, std::fabs(v));
  for (double v : q) ambient_scale = std::max(ambient_scale, std::fabs(v));

  DepthCertificate cert;
  cert.point = q;

  const double resid = frame.residual(q);
  if (resid > tol * ambient_scale) {
    // q lies outside the affine hull of the cloud: a separating halfspace
    Vec u = frame.residual_direction(q);
    double mass = 0.0;
    const double off = dot(u, q);
    for (std::size_t i = 0; i < N; ++i)
      if (dot(u, cloud.point(i)) >= off - opts.boundary_tol * ambient_scale) mass += cloud.weights()[i];
    cert.depth = mass;
    cert.witness = OrientedHalfspace{std::move(u), off, mass};
    cert.exact = true;
    return cert;
  }

  const std::size_t d = frame.intrinsic_dim();
  if (d == 0) {
    // all cloud points coincide with q
    Vec u(cloud.dim(), 0.0);
    u[0] = 1.0;
    cert.depth = 1.0;
    cert.witness = OrientedHalfspace{u, dot(u, q), 1.0};
    cert.exact = true;
    return cert;
  }

  Vec ql = frame.to_local(q);
  Matrix pl(N, d);
  for (std::size_t i = 0; i < N; ++i) {
    const Vec row = frame.to_local(cloud.point(i));
    for (std::size_t j = 0; j < d; ++j) pl(i, j) = row[j];
  }
  const Vec& w = cloud.weights();
  const double btol = opts.boundary_tol * local_scale(pl, ql);

  const bool exact_regime = d <= static_cast<std::size_t>(opts.exact_dim_cap) &&
                            N <= static_cast<std::size_t>(opts.exact_point_cap) &&
                            d <= kMaxEnumDim;

  double depth = 0.0;
  Vec local_normal(d, 0.0);
  local_normal[0] = 1.0;

  if (exact_regime) {
    // points coinciding with q lie on every boundary and always count; the
    // rest enter the generic-direction cell minimum
    std::vector<Vec> vecs;
    std::vector<double> vw;
    double q_mass = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      Vec v(d);
      for (std::size_t j = 0; j < d; ++j) v[j] = pl(i, j) - ql[j];
      if (norm2(v) <= btol) {
        q_mass += w[i];
      } else {
        vecs.push_back(std::move(v));
        vw.push_back(w[i]);
      }
    }
    GenericMin g = generic_min(vecs, vw, d, btol, 2.0);
    depth = q_mass + (vecs.empty() ? 0.0 : g.mass);
    if (!vecs.empty()) local_normal = g.dir;
    const double nrm = norm2(local_normal);
    if (nrm == 0.0) throw NumericalError("tukey_depth: degenerate witness direction");
    for (double& v : local_normal) v /= nrm;
  } else {
    BestDirection best;
    Vec u(d, 0.0);
    // supplementary directions: coordinate axes and point-to-query directions
    for (std::size_t j = 0; j < d; ++j) {
      std::fill(u.begin(), u.end(), 0.0);
      u[j] = 1.0;
      consider_direction(u, ql, pl, w, btol, best);
    }
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < d; ++j) u[j] = pl(i, j) - ql[j];
      const double nrm = norm2(u);
      if (nrm <= btol) continue;
      for (double& v : u) v /= nrm;
      consider_direction(u, ql, pl, w, btol, best);
    }
    // sampling fallback: seeded random directions plus local refinement
    CounterRng rng(0x706f6c796e6574ULL);
    for (int k = 0; k < opts.sample_directions; ++k) {
      for (std::size_t j = 0; j < d; ++j) u[j] = rng.next_gaussian();
      const double nrm = norm2(u);
      if (nrm == 0.0) continue;
      for (double& v : u) v /= nrm;
      consider_direction(u, ql, pl, w, btol, best);
    }
    double sigma = 0.3;
    for (int round = 0; round < 400; ++round) {
      Vec cand = best.normal;
      for (std::size_t j = 0; j < d; ++j) cand[j] += sigma * rng.next_gaussian();
      const double nrm = norm2(cand);
      if (nrm > 0.0) {
        for (double& v : cand) v /= nrm;
        consider_direction(cand, ql, pl, w, btol, best);
      }
      sigma *= 0.985;
    }
    if (!best.found) throw NumericalError("tukey_depth: no candidate direction found");
    depth = best.mass;
    local_normal = best.normal;
  }

  Vec ambient_normal(cloud.dim(), 0.0);
  for (std::size_t i = 0; i < cloud.dim(); ++i)
    for (std::size_t j = 0; j < d; ++j) ambient_normal[i] += frame.basis()(i, j) * local_normal[j];
  {
    const double nrm = norm2(ambient_normal);
    for (double& v : ambient_normal) v /= nrm;
  }
  const double off = dot(ambient_normal, q);
  double wit_mass = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    if (dot(ambient_normal, cloud.point(i)) >= off - opts.boundary_tol * ambient_scale)
      wit_mass += w[i];
  cert.depth = depth;
  cert.witness = OrientedHalfspace{std::move(ambient_normal), off, wit_mass};
  cert.exact = exact_regime;
  return cert;
}

namespace {

struct ConstraintPool {
  std::size_t dim = 0;
  std::vector<double> rows;    // flattened (normal..., bound)
  std::unordered_set<std::string> seen;

  std::size_t size() const { return rows.size() / (dim + 1); }

  bool add(const double* normal, double bound) {
    std::string key((dim + 1) * sizeof(std::int64_t), '\0');
    auto* k = reinterpret_cast<std::int64_t*>(key.data());
    for (std::size_t j = 0; j < dim; ++j) k[j] = std::llround(normal[j] * 1e10);
    k[dim] = std::llround(bound * 1e10);
    if (!seen.insert(key).second) return false;
    rows.insert(rows.end(), normal, normal + dim);
    rows.push_back(bound);
    return true;
  }

  LinearConstraint get(std::size_t i) const {
    LinearConstraint c;
    const double* r = rows.data() + i * (dim + 1);
    c.row.assign(r, r + dim);
    c.bound = r[dim];
    return c;
  }
};

// max-min-slack point over a possibly large pool. The active set is kept
// small enough that each sub-LP stays numerically benign and within the exact
// rational replay regime; large-slack constraints are pruned between rounds
// and the full pool is re-scanned before accepting any point.
Vec solve_maxmin(const ConstraintPool& pool, std::size_t dim, double scale, double tol) {
  const std::size_t total = pool.size();
  const std::size_t max_active = 440;

  auto eval = [&](std::size_t i, const Vec& q) {
    const double* r = pool.rows.data() + i * (dim + 1);
    double v = -r[dim];
    for (std::size_t j = 0; j < dim; ++j) v += r[j] * q[j];
    return v;  // positive = violated
  };

  std::vector<std::size_t> active;
  std::vector<char> in_active(total, 0);
  const std::size_t seeds = std::min(total, max_active);
  for (std::size_t k = 0; k < seeds; ++k) {
    const std::size_t i = k * total / seeds;
    if (!in_active[i]) {
      active.push_back(i);
      in_active[i] = 1;
    }
  }

  const double viol_tol = 1e-11 * scale;
  for (int iter = 0; iter < 600; ++iter) {
    std::vector<LinearConstraint> ineqs;
    ineqs.reserve(active.size());
    for (std::size_t i : active) ineqs.push_back(pool.get(i));
    std::optional<Vec> q = lp_feasible_point(dim, ineqs, {}, tol);
    if (!q) throw NumericalError("centerpoint: constraint system infeasible");

    // scan the full pool for violated constraints
    std::vector<std::pair<double, std::size_t>> violated;
    for (std::size_t i = 0; i < total; ++i) {
      if (in_active[i]) continue;
      const double v = eval(i, *q);
      if (v > viol_tol) violated.emplace_back(v, i);
    }
    if (violated.empty()) return *q;
    std::sort(violated.begin(), violated.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    const std::size_t take = std::min<std::size_t>(violated.size(), 64);
    for (std::size_t k = 0; k < take; ++k) {
      active.push_back(violated[k].second);
      in_active[violated[k].second] = 1;
    }

    // prune the loosest constraints at the current point; freshly added
    // violated rows have negative slack and always survive
    if (active.size() > max_active) {
      std::vector<std::pair<double, std::size_t>> slack;
      slack.reserve(active.size());
      for (std::size_t i : active) slack.emplace_back(-eval(i, *q), i);
      std::sort(slack.begin(), slack.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
      });
      for (std::size_t i : active) in_active[i] = 0;
      active.clear();
      for (std::size_t k = 0; k < max_active; ++k) {
        active.push_back(slack[k].second);
        in_active[slack[k].second] = 1;
      }
    }
  }
  throw NumericalError("centerpoint: active-set loop did not converge");
}

// Tightest valid bound along direction u: the largest projection value whose
// closed upper mass still reaches the target.
double tight_bound(const Vec& u, const Matrix& pts, const Vec& w, double target) {
  const std::size_t n = pts.rows();
  std::vector<std::pair<double, double>> proj(n);
  for (std::size_t i = 0; i < n; ++i) {
    double t = 0.0;
    for (std::size_t j = 0; j < pts.cols(); ++j) t += u[j] * pts(i, j);
    proj[i] = {t, w[i]};
  }
  std::sort(proj.begin(), proj.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  double cum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cum += proj[i].second;
    if (cum >= target - 1e-12) return proj[i].first;
  }
  return proj.back().first;
}

}  // namespace

CenterpointResult centerpoint_with_certificate(const PointCloud& cloud, double target_mass,
                                               double tol, const DepthOptions& opts) {
  const AffineFrame frame = affine_hull_reduce(cloud.points(), tol);
  const std::size_t d = frame.intrinsic_dim();
  const std::size_t N = cloud.size();
  if (target_mass > 1.0 / static_cast<double>(d + 1) + tol)
    throw std::invalid_argument("centerpoint: target mass exceeds the 1/(d'+1) guarantee");
  if (d > kMaxEnumDim)
    throw CapabilityError("centerpoint: intrinsic dimension beyond the enumeration regime");

  CenterpointResult out;
  out.target_mass = target_mass;
  out.intrinsic_dim = d;

  if (d == 0) {
    out.point = cloud.point(0);
    out.certificate = tukey_depth(out.point, cloud, tol, opts);
    return out;
  }

  Matrix pl(N, d);
  for (std::size_t i = 0; i < N; ++i) {
    const Vec row = frame.to_local(cloud.point(i));
    for (std::size_t j = 0; j < d; ++j) pl(i, j) = row[j];
  }
  const Vec& w = cloud.weights();
  const double scale = local_scale(pl, Vec(d, 0.0));
  const double btol = opts.boundary_tol * scale;

  ConstraintPool pool;
  pool.dim = d;

  // bounding box keeps the slack LP bounded
  for (std::size_t j = 0; j < d; ++j) {
    double lo = pl(0, j), hi = pl(0, j);
    for (std::size_t i = 1; i < N; ++i) {
      lo = std::min(lo, pl(i, j));
      hi = std::max(hi, pl(i, j));
    }
    std::vector<double> row(d, 0.0);
    row[j] = 1.0;
    pool.add(row.data(), hi);
    row[j] = -1.0;
    pool.add(row.data(), -lo);
  }

  // enumerate hyperplanes through d affinely independent cloud points; any
  // orientation whose strictly-beyond mass falls short of the target yields a
  // halfspace constraint on q
  {
    std::vector<std::size_t> idx(d);
    for (std::size_t j = 0; j < d; ++j) idx[j] = j;
    double rowsbuf[kMaxEnumDim * (kMaxEnumDim + 2)];
    double nv[kMaxEnumDim + 2];
    double con[kMaxEnumDim + 1];
    const std::size_t width = d + 1;
    do {
      for (std::size_t r = 0; r < d; ++r) {
        const double* p = pl.row(idx[r]);
        for (std::size_t j = 0; j < d; ++j) rowsbuf[r * width + j] = p[j];
        rowsbuf[r * width + d] = -1.0;
      }
      if (!null_vector(rowsbuf, d, width, nv)) continue;
      double nrm = 0.0;
      for (std::size_t j = 0; j < d; ++j) nrm += nv[j] * nv[j];
      nrm = std::sqrt(nrm);
      if (nrm <= 1e-12 * std::max(1.0, std::fabs(nv[d]))) continue;  // hyperplane at infinity
      for (std::size_t j = 0; j <= d; ++j) nv[j] /= nrm;
      const double c = nv[d];
      double above = 0.0, below = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const double* p = pl.row(i);
        double t = -c;
        for (std::size_t j = 0; j < d; ++j) t += nv[j] * p[j];
        if (t > btol) above += w[i];
        else if (t < -btol) below += w[i];
      }
      if (above < target_mass - 1e-12) {
        Vec uu(nv, nv + d);
        for (std::size_t j = 0; j < d; ++j) con[j] = nv[j];
        pool.add(con, tight_bound(uu, pl, w, target_mass));
      }
      if (below < target_mass - 1e-12) {
        Vec uu(d);
        for (std::size_t j = 0; j < d; ++j) {
          uu[j] = -nv[j];
          con[j] = -nv[j];
        }
        pool.add(con, tight_bound(uu, pl, w, target_mass));
      }
      if (pool.size() > 3000000)
        throw CapabilityError("centerpoint: constraint pool exceeded the memory budget");
    } while (next_combination(idx, N));
  }

  Vec ql = solve_maxmin(pool, d, scale, tol);
  Vec q = frame.to_ambient(ql);
  DepthCertificate cert = tukey_depth(q, cloud, tol, opts);

  // witness-cut refinement: only needed when degenerate configurations leave a
  // facet of the depth region unrepresented by the enumeration
  for (int round = 0; round < 30 && cert.exact && cert.depth < target_mass - tol; ++round) {
    Vec uw(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < cloud.dim(); ++i)
        s += cert.witness.normal[i] * frame.basis()(i, j);
      uw[j] = s;
    }
    const double nrm = norm2(uw);
    if (nrm == 0.0) break;
    for (double& v : uw) v /= nrm;
    const double bound = tight_bound(uw, pl, w, target_mass);
    if (!pool.add(uw.data(), bound)) break;  // cut already present: no progress possible
    ql = solve_maxmin(pool, d, scale, tol);
    q = frame.to_ambient(ql);
    cert = tukey_depth(q, cloud, tol, opts);
  }

  if (cert.exact && cert.depth < target_mass - tol)
    throw NumericalError("centerpoint: could not certify the target depth");

  out.point = std::move(q);
  out.certificate = std::move(cert);
  return out;
}

Vec centerpoint(const PointCloud& cloud, double target_mass, double tol, const DepthOptions& opts) {
  return centerpoint_with_certificate(cloud, target_mass, tol, opts).point;
}

}  // namespace polynet
