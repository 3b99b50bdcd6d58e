// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is self-contained and uses pinned tolerances.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "polynet/adversary.hpp"
#include "polynet/bounds.hpp"
#include "polynet/decompose.hpp"
#include "polynet/depth.hpp"
#include "polynet/io.hpp"
#include "polynet/nets.hpp"
#include "polynet/poly.hpp"
#include "polynet/rng.hpp"

using namespace polynet;

namespace {

int g_failures = 0;

void report(int idx, bool pass, const std::string& what) {
  std::printf("criterion %d: %s — %s\n", idx, pass ? "PASS" : "FAIL", what.c_str());
  if (!pass) ++g_failures;
}

void run(int idx, const std::string& what, bool (*fn)()) {
  bool ok = false;
  std::string note = what;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ok = fn();
  } catch (const std::exception& e) {
    note += std::string(" [exception: ") + e.what() + "]";
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[64];
  std::snprintf(buf, sizeof(buf), " (%.1fs)", secs);
  report(idx, ok, note + buf);
}

PointCloud seeded_cloud(int n, std::size_t count, std::uint64_t seed) {
  return gen_uniform_box(n, count, seed);
}

// 1. Weak quadratic net guarantee: 20 seeded clouds (n=2, N=12, uniform),
//    exact adversary keeps an integer count >= 2 of 12 on every instance.
bool criterion1() {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PointCloud cloud = seeded_cloud(2, 12, seed);
    const NetCertificate cert = weak_net_quadratic(cloud);
    const AdversaryReport rep = exact_min_mass(cloud, cert.net_points, 2);
    if (!rep.exact) return false;
    if (rep.kept_indices.size() < 2) return false;  // 2 of 12 = 2/((n+1)(n+2))
  }
  return true;
}

// 2. Net size bounds: weak2 <= n+1 points for n <= 5; strong <= m(n,D) for
//    n <= 3, D <= 4.
bool criterion2() {
  for (int n = 1; n <= 5; ++n) {
    const PointCloud cloud = seeded_cloud(n, 12, 1000 + static_cast<std::uint64_t>(n));
    const NetCertificate cert = weak_net_quadratic(cloud);
    if (cert.net_points.rows() > static_cast<std::size_t>(n) + 1) return false;
  }
  for (int n = 1; n <= 3; ++n) {
    for (int d = 1; d <= 4; ++d) {
      const PointCloud cloud = seeded_cloud(n, 10, 2000 + static_cast<std::uint64_t>(10 * n + d));
      const NetCertificate cert = strong_net(cloud, d);
      if (cert.net_points.rows() > basis_size(n, d)) return false;
    }
  }
  return true;
}

// 3. Decomposition exactness on 100 seeded PSD unit-corner moment matrices.
bool criterion3() {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 1 + static_cast<int>(seed % 20);
    const int rank = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(n + 1));
    CounterRng rng(seed, 91);
    const std::size_t dim = static_cast<std::size_t>(n) + 1;
    Matrix b(dim, static_cast<std::size_t>(rank));
    for (std::size_t i = 0; i < dim; ++i)
      for (int j = 0; j < rank; ++j) b(i, j) = rng.next_gaussian();
    b(0, 0) += 3.0;
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        double s = 0.0;
        for (int c = 0; c < rank; ++c) s += b(i, c) * b(j, c);
        m(i, j) = s;
      }
    const double corner = m(0, 0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) /= corner;
    const MomentMatrix mm(n, SymMatrix(m));
    const AtomicMeasure atoms = decompose_quadratic(mm);

    const EigResult e = sym_eig(mm.entries);
    std::size_t num_rank = 0;
    while (num_rank < e.values.size() && e.values[num_rank] > 1e-9 * e.values[0]) ++num_rank;
    if (atoms.atoms.size() != num_rank) return false;

    for (const Atom& a : atoms.atoms)
      if (std::fabs(a.weight - 1.0 / static_cast<double>(atoms.atoms.size())) > 1e-12)
        return false;

    // relative Frobenius reconstruction residual <= 1e-8
    double err = 0.0, nrm = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        double v = 0.0;
        for (const Atom& a : atoms.atoms) {
          const double zi = (i == 0) ? 1.0 : a.point[i - 1];
          const double zj = (j == 0) ? 1.0 : a.point[j - 1];
          v += a.weight * zi * zj;
        }
        const double d = v - mm.entries.entries(i, j);
        err += d * d;
        nrm += mm.entries.entries(i, j) * mm.entries.entries(i, j);
      }
    if (std::sqrt(err) > 1e-8 * std::max(1.0, std::sqrt(nrm))) return false;
  }
  return true;
}

// 4. Caratheodory pruning: 50 seeded (n=2, D=3, 50 atoms) instances prune to
//    <= 10 atoms with reconstruction residual <= 1e-8.
bool criterion4() {
  const std::size_t m1 = basis_size(2, 3) - 1;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CounterRng rng(seed, 92);
    std::vector<std::pair<double, Vec>> atoms;
    Vec target(m1, 0.0);
    Vec w(50);
    double ws = 0.0;
    for (int i = 0; i < 50; ++i) {
      w[i] = 0.1 + rng.next_double();
      ws += w[i];
    }
    for (int i = 0; i < 50; ++i) {
      const Vec x{rng.next_gaussian(), rng.next_gaussian()};
      Vec v = veronese_affine_truncated(x, 3);
      for (std::size_t j = 0; j < m1; ++j) target[j] += (w[i] / ws) * v[j];
      atoms.emplace_back(w[i] / ws, std::move(v));
    }
    const auto pruned = caratheodory_prune(atoms, target);
    if (pruned.size() > 10) return false;
    Vec recon(m1, 0.0);
    double sum = 0.0;
    for (const auto& [wt, idx] : pruned) {
      sum += wt;
      for (std::size_t j = 0; j < m1; ++j) recon[j] += wt * atoms[idx].second[j];
    }
    double err = std::fabs(sum - 1.0);
    for (std::size_t j = 0; j < m1; ++j) err = std::max(err, std::fabs(recon[j] - target[j]));
    if (err > 1e-8 * (1.0 + norm_inf(target))) return false;
  }
  return true;
}

// 5. Centerpoint depth: exact depth >= 1/(d'+1) - 1e-9 for seeded clouds with
//    d <= 5, N <= 25; exact depth matches a 1e5-direction brute force on
//    d <= 3, N <= 12.
bool criterion5() {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const int d = 2 + static_cast<int>(seed % 4);          // up to 5
    const std::size_t n_pts = 10 + 2 * (seed % 8);         // up to 24
    const PointCloud cloud = seeded_cloud(d, n_pts, 3000 + seed);
    const AffineFrame frame = affine_hull_reduce(cloud.points());
    const double target = 1.0 / static_cast<double>(frame.intrinsic_dim() + 1);
    const CenterpointResult r = centerpoint_with_certificate(cloud, target);
    if (!r.certificate.exact) return false;
    if (r.certificate.depth < target - 1e-9) return false;
  }
  // brute-force agreement
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const int d = 2 + static_cast<int>(seed % 2);
    const PointCloud cloud = seeded_cloud(d, 12, 4000 + seed);
    Vec q(d, 0.0);
    for (std::size_t i = 0; i < cloud.size(); ++i)
      for (int j = 0; j < d; ++j) q[j] += cloud.weights()[i] * cloud.points()(i, j);
    const DepthCertificate exact = tukey_depth(q, cloud);
    if (!exact.exact) return false;
    CounterRng rng(seed, 93);
    double brute = 1.0;
    for (int rep = 0; rep < 100000; ++rep) {
      Vec u(d);
      for (double& v : u) v = rng.next_gaussian();
      const double nrm = norm2(u);
      if (nrm < 1e-12) continue;
      for (double& v : u) v /= nrm;
      const double c = dot(u, q);
      double above = 0.0, below = 0.0;
      for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double p = dot(u, cloud.point(i));
        if (p >= c - 1e-12) above += cloud.weights()[i];
        if (p <= c + 1e-12) below += cloud.weights()[i];
      }
      brute = std::min({brute, above, below});
    }
    if (exact.depth > brute + 1e-12) return false;  // exact is the true minimum
    if (exact.depth < brute - 1e-9) return false;   // and the enumeration attains it
  }
  return true;
}

// 6. Proposition-2 reproduction at degree 2: every 2-point candidate admits a
//    kept-mass-0 witness against a disjoint 12-point cloud, while the 3-point
//    weak2 net clears the exact guarantee.
bool criterion6() {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PointCloud cloud = seeded_cloud(2, 12, 5000 + seed);
    const PointCloud candidates = gen_gaussian(2, 2, 6000 + seed);  // disjoint from the cloud
    auto [p, kept] = non_net_witness(cloud, candidates.points(), 1);
    if (kept != 0.0) return false;

    const NetCertificate cert = weak_net_quadratic(cloud);
    if (cert.net_points.rows() > 3) return false;
    const AdversaryReport rep = exact_min_mass(cloud, cert.net_points, 2);
    if (rep.kept_indices.size() < 2) return false;
  }
  return true;
}

// 7. Finite grid check over (n,k) in {1,2,3}^2 with the exact
//    integer-elimination rank.
bool criterion7() {
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= 3; ++k) {
      const GridMeasurement g = grid_vanishing_dimension(n, k);
      if (!g.exact_rank) return false;
      if (g.restriction_rank < caratheodory_bounds(n, k).lower_item2) return false;
    }
  }
  const GridMeasurement g22 = grid_vanishing_dimension(2, 2);
  return g22.restriction_rank == 4 && g22.vanishing_dim == 11;
}

// 8. Falsification resistance: 1e4-iteration heuristic adversaries against
//    strong nets (n=2, D=3, N=30, 5 seeds) never beat the 1/10 guarantee.
bool criterion8() {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PointCloud cloud = seeded_cloud(2, 30, 7000 + seed);
    const NetCertificate cert = strong_net(cloud, 3);
    if (cert.net_points.rows() > 10) return false;
    const AdversaryReport rep =
        heuristic_min_mass(cloud, cert.net_points, 3, seed, 10000);
    if (rep.kept_mass < 1.0 / 10.0) return false;
  }
  return true;
}

}  // namespace

int main() {
  run(1, "weak quadratic net guarantee (20 seeds, exact adversary, >= 2/12)", criterion1);
  run(2, "net size bounds (weak2 <= n+1, strong <= m(n,D))", criterion2);
  run(3, "decomposition exactness (100 seeded moment matrices)", criterion3);
  run(4, "Caratheodory pruning (50 seeded 50-atom instances to <= 10)", criterion4);
  run(5, "centerpoint depth and brute-force agreement", criterion5);
  run(6, "2-point nets refuted, 3-point weak2 nets verified (10 seeds)", criterion6);
  run(7, "grid restriction rank >= closed-form lower bound on {1,2,3}^2", criterion7);
  run(8, "falsification resistance of strong nets (5 seeds, 1e4 iterations)", criterion8);
  if (g_failures > 0) {
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("acceptance: all 8 criteria passed\n");
  return 0;
}
