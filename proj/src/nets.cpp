#include "polynet/nets.hpp"

#include <algorithm>
#include <cmath>

#include "polynet/decompose.hpp"
#include "polynet/errors.hpp"
#include "polynet/lp.hpp"

namespace polynet {

namespace {

PointCloud lifted_cloud(const PointCloud& cloud, int degree) {
  const std::size_t n = cloud.dim();
  const std::size_t m = static_cast<std::size_t>(basis_size(static_cast<int>(n), degree));
  Matrix lifted(cloud.size(), m - 1);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec v = veronese_affine_truncated(cloud.point(i), degree);
    for (std::size_t j = 0; j + 1 < m; ++j) lifted(i, j) = v[j];
  }
  return PointCloud(std::move(lifted), cloud.weights());
}

double residual_of(const Matrix& net_points, const Vec& weights, int degree, const Vec& lift_full) {
  Vec recon(lift_full.size(), 0.0);
  for (std::size_t i = 0; i < net_points.rows(); ++i) {
    const Vec v = veronese_affine(net_points.row_vec(i), degree);
    for (std::size_t j = 0; j < recon.size(); ++j) recon[j] += weights[i] * v[j];
  }
  double err = 0.0;
  for (std::size_t j = 0; j < recon.size(); ++j) {
    const double d = recon[j] - lift_full[j];
    err += d * d;
  }
  return std::sqrt(err) / (1.0 + norm2(lift_full));
}

}  // namespace

NetCertificate weak_net_quadratic(const PointCloud& cloud, double tol, const DepthOptions& opts) {
  const int n = static_cast<int>(cloud.dim());
  if (n < 1) throw std::invalid_argument("weak_net_quadratic: need n >= 1");
  const std::size_t m = static_cast<std::size_t>(basis_size(n, 2));

  const PointCloud lifted = lifted_cloud(cloud, 2);
  const AffineFrame frame = affine_hull_reduce(lifted.points(), tol);
  const double target = 1.0 / static_cast<double>(frame.intrinsic_dim() + 1);

  CenterpointResult center = centerpoint_with_certificate(lifted, target, tol, opts);

  Vec lift_full(m);
  lift_full[0] = 1.0;
  for (std::size_t j = 0; j + 1 < m; ++j) lift_full[j + 1] = center.point[j];

  AtomicMeasure measure;
  try {
    measure = decompose_quadratic(moment_matrix_from_lift(lift_full, n), tol);
  } catch (const NumericalError&) {
    // centerpoint may sit numerically outside the lifted hull; one retry with
    // a tighter LP tolerance before surfacing
    center = centerpoint_with_certificate(lifted, target, tol * 1e-2, opts);
    for (std::size_t j = 0; j + 1 < m; ++j) lift_full[j + 1] = center.point[j];
    measure = decompose_quadratic(moment_matrix_from_lift(lift_full, n), tol);
  }

  NetCertificate cert;
  cert.n = n;
  cert.degree = 2;
  cert.kind = NetKind::Weak;
  cert.net_points = Matrix(measure.atoms.size(), n);
  cert.weights.resize(measure.atoms.size());
  for (std::size_t i = 0; i < measure.atoms.size(); ++i) {
    cert.weights[i] = measure.atoms[i].weight;
    for (int j = 0; j < n; ++j) cert.net_points(i, j) = measure.atoms[i].point[j];
  }
  cert.guarantee = 1.0 / static_cast<double>(m);
  cert.lifted_centerpoint = lift_full;
  cert.depth_achieved = center.certificate.depth;
  cert.depth_exact = center.certificate.exact;
  cert.reconstruction_residual = residual_of(cert.net_points, cert.weights, 2, lift_full);
  return cert;
}

NetCertificate strong_net(const PointCloud& cloud, int degree, double tol,
                          const DepthOptions& opts) {
  const int n = static_cast<int>(cloud.dim());
  if (n < 1 || degree < 1) throw std::invalid_argument("strong_net: need n >= 1 and degree >= 1");
  const std::size_t m = static_cast<std::size_t>(basis_size(n, degree));
  const std::size_t N = cloud.size();

  const PointCloud lifted = lifted_cloud(cloud, degree);
  const AffineFrame frame = affine_hull_reduce(lifted.points(), tol);
  const std::size_t d = frame.intrinsic_dim();
  const double target = 1.0 / static_cast<double>(d + 1);

  const CenterpointResult center = centerpoint_with_certificate(lifted, target, tol, opts);

  // express the centerpoint as a convex combination of lifted cloud points,
  // maximizing the minimum weight for pruning stability
  Matrix pl(N, d);
  for (std::size_t i = 0; i < N; ++i) {
    const Vec row = frame.to_local(lifted.point(i));
    for (std::size_t j = 0; j < d; ++j) pl(i, j) = row[j];
  }
  const Vec cl = frame.to_local(center.point);

  auto build_combination = [&](double eq_slack) -> std::optional<Vec> {
    LinearProgram lp;
    lp.num_vars = N + 1;  // weights + min-weight slack
    lp.objective.assign(N + 1, 0.0);
    lp.objective[N] = -1.0;
    for (std::size_t i = 0; i < N; ++i) {
      LinearConstraint nonneg;  // -lambda_i <= 0
      nonneg.row.assign(N + 1, 0.0);
      nonneg.row[i] = -1.0;
      lp.ineqs.push_back(nonneg);
      LinearConstraint minw;  // s - lambda_i <= 0
      minw.row.assign(N + 1, 0.0);
      minw.row[i] = -1.0;
      minw.row[N] = 1.0;
      lp.ineqs.push_back(minw);
    }
    {
      LinearConstraint cap;
      cap.row.assign(N + 1, 0.0);
      cap.row[N] = 1.0;
      cap.bound = 1.0;
      lp.ineqs.push_back(cap);
    }
    auto add_balance = [&](const Vec& row, double bound) {
      if (eq_slack == 0.0) {
        lp.eqs.push_back(LinearConstraint{row, bound});
      } else {
        Vec neg = row;
        for (double& v : neg) v = -v;
        lp.ineqs.push_back(LinearConstraint{row, bound + eq_slack});
        lp.ineqs.push_back(LinearConstraint{neg, -bound + eq_slack});
      }
    };
    {
      Vec ones(N + 1, 1.0);
      ones[N] = 0.0;
      add_balance(ones, 1.0);
    }
    for (std::size_t j = 0; j < d; ++j) {
      Vec row(N + 1, 0.0);
      for (std::size_t i = 0; i < N; ++i) row[i] = pl(i, j);
      add_balance(row, cl[j]);
    }
    LpResult r = lp_solve(lp, tol);
    if (r.status != LpStatus::Optimal) return std::nullopt;
    return Vec(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(N));
  };

  std::optional<Vec> lambda = build_combination(0.0);
  if (!lambda) {
    double scale = 1.0 + norm_inf(cl);
    lambda = build_combination(1e-7 * scale);
  }
  if (!lambda)
    throw NumericalError("strong_net: centerpoint is not a convex combination of the lifted cloud");

  std::vector<std::pair<double, Vec>> atoms;
  std::vector<std::size_t> atom_to_cloud;
  for (std::size_t i = 0; i < N; ++i) {
    if ((*lambda)[i] > 1e-12) {
      atoms.emplace_back((*lambda)[i], pl.row_vec(i));
      atom_to_cloud.push_back(i);
    }
  }
  // renormalize tiny truncation drift before pruning
  {
    double s = 0.0;
    for (auto& [wt, v] : atoms) s += wt;
    for (auto& [wt, v] : atoms) wt /= s;
  }

  const auto pruned = caratheodory_prune(atoms, cl, std::max(tol, 1e-7));

  NetCertificate cert;
  cert.n = n;
  cert.degree = degree;
  cert.kind = NetKind::Strong;
  cert.net_points = Matrix(pruned.size(), n);
  cert.weights.resize(pruned.size());
  double wsum = 0.0;
  for (const auto& [wt, idx] : pruned) wsum += wt;
  for (std::size_t i = 0; i < pruned.size(); ++i) {
    cert.weights[i] = pruned[i].first / wsum;
    const Vec p = cloud.point(atom_to_cloud[pruned[i].second]);
    for (int j = 0; j < n; ++j) cert.net_points(i, j) = p[j];
  }
  cert.guarantee = 1.0 / static_cast<double>(m);

  Vec lift_full(m);
  lift_full[0] = 1.0;
  for (std::size_t j = 0; j + 1 < m; ++j) lift_full[j + 1] = center.point[j];
  cert.lifted_centerpoint = lift_full;
  cert.depth_achieved = center.certificate.depth;
  cert.depth_exact = center.certificate.exact;
  cert.reconstruction_residual = residual_of(cert.net_points, cert.weights, degree, lift_full);
  return cert;
}

}  // namespace polynet
