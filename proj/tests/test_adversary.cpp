#include <doctest.h>

#include <cmath>

#include "polynet/adversary.hpp"
#include "polynet/errors.hpp"
#include "polynet/nets.hpp"
#include "polynet/rng.hpp"

using namespace polynet;

namespace {

PointCloud random_cloud(int n, std::size_t count, std::uint64_t seed) {
  CounterRng rng(seed, 71);
  Matrix pts(count, n);
  for (std::size_t i = 0; i < count; ++i)
    for (int j = 0; j < n; ++j) pts(i, j) = rng.next_gaussian();
  return PointCloud(std::move(pts));
}

Matrix random_points(int n, std::size_t count, std::uint64_t seed) {
  CounterRng rng(seed, 72);
  Matrix pts(count, n);
  for (std::size_t i = 0; i < count; ++i)
    for (int j = 0; j < n; ++j) pts(i, j) = rng.next_gaussian();
  return pts;
}

}  // namespace

TEST_CASE("exact_min_mass: empty net keeps nothing") {
  const PointCloud cloud = random_cloud(2, 5, 1);
  AdversaryReport rep = exact_min_mass(cloud, Matrix(0, 2), 2);
  CHECK(rep.exact);
  CHECK(rep.kept_mass == doctest::Approx(0.0).scale(1.0));
  CHECK(rep.kept_indices.empty());
}

TEST_CASE("exact_min_mass: weak net on {-1,0,1} keeps >= 1/3") {
  Matrix pts(3, 1);
  pts(0, 0) = -1.0;
  pts(1, 0) = 0.0;
  pts(2, 0) = 1.0;
  const PointCloud cloud(pts);
  NetCertificate cert = weak_net_quadratic(cloud);
  AdversaryReport rep = exact_min_mass(cloud, cert.net_points, 2);
  CHECK(rep.kept_mass >= 1.0 / 3.0 - 1e-9);
  CHECK(rep.method == AdversaryMethod::ExactSubset);
}

TEST_CASE("exact_min_mass: 12-point planar cloud with a weak quadratic net") {
  const PointCloud cloud = random_cloud(2, 12, 9);
  NetCertificate cert = weak_net_quadratic(cloud);
  AdversaryReport rep = exact_min_mass(cloud, cert.net_points, 2);
  CHECK(rep.kept_mass >= 2.0 / 12.0 - 1e-9);  // guaranteed bound 2/((n+1)(n+2))
  CHECK(rep.kept_indices.size() >= 2);
}

TEST_CASE("exact_min_mass: refuses beyond the cap") {
  const PointCloud cloud = random_cloud(2, 25, 2);
  CHECK_THROWS_AS((void)exact_min_mass(cloud, Matrix(0, 2), 2), CapabilityError);
}

TEST_CASE("heuristic_min_mass: upper bounds the exact minimum and re-verifies") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const PointCloud cloud = random_cloud(2, 10, 300 + seed);
    NetCertificate cert = weak_net_quadratic(cloud);
    AdversaryReport ex = exact_min_mass(cloud, cert.net_points, 2);
    AdversaryReport he = heuristic_min_mass(cloud, cert.net_points, 2, seed, 800);
    CHECK_FALSE(he.exact);
    CHECK(he.kept_mass >= ex.kept_mass - 1e-12);

    // the heuristic's polynomial genuinely satisfies the net constraints
    const double net_tol = 1e-9 * poly_scale(he.worst_poly, cert.net_points);
    for (std::size_t i = 0; i < cert.net_points.rows(); ++i)
      CHECK(eval_poly(he.worst_poly, cert.net_points.row_vec(i)) >= -net_tol);
    // and its kept set is as reported
    const double thr = -1e-9 * poly_scale(he.worst_poly, cloud.points());
    double mass = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i)
      if (eval_poly(he.worst_poly, cloud.point(i)) >= thr) mass += cloud.weights()[i];
    CHECK(mass == doctest::Approx(he.kept_mass).epsilon(1e-12));
  }
}

TEST_CASE("heuristic_min_mass: determinism for a fixed seed") {
  const PointCloud cloud = random_cloud(2, 12, 4);
  const Matrix net = random_points(2, 3, 5);
  AdversaryReport a = heuristic_min_mass(cloud, net, 2, 123, 500);
  AdversaryReport b = heuristic_min_mass(cloud, net, 2, 123, 500);
  CHECK(a.kept_mass == b.kept_mass);
  REQUIRE(a.worst_poly.coeffs.size() == b.worst_poly.coeffs.size());
  for (std::size_t i = 0; i < a.worst_poly.coeffs.size(); ++i)
    CHECK(a.worst_poly.coeffs[i] == b.worst_poly.coeffs[i]);
}

TEST_CASE("non_net_witness: two points cannot net quadratics") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PointCloud cloud = random_cloud(2, 12, 400 + seed);
    const Matrix x = random_points(2, 2, 500 + seed);  // m(2,1) - 1 = 2 points
    auto [p, kept] = non_net_witness(cloud, x, 1);
    CHECK(p.basis.degree == 2);
    CHECK(kept == doctest::Approx(0.0).scale(1.0));
    // P is strictly positive on the candidate net
    for (std::size_t i = 0; i < 2; ++i) CHECK(eval_poly(p, x.row_vec(i)) > 0.0);
  }
}

TEST_CASE("non_net_witness: empty candidate net") {
  const PointCloud cloud = random_cloud(2, 8, 6);
  auto [p, kept] = non_net_witness(cloud, Matrix(0, 2), 1);
  CHECK(kept == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("non_net_witness: refusals") {
  const PointCloud cloud = random_cloud(2, 8, 7);
  // |X| = m(2,1) = 3: no vanishing polynomial guaranteed
  CHECK_THROWS_AS((void)non_net_witness(cloud, random_points(2, 3, 8), 1), CapabilityError);

  // cloud entirely on the zero set of Q (collinear with the candidate pair)
  Matrix x(2, 2);
  x(0, 0) = 0.0; x(0, 1) = 0.0;
  x(1, 0) = 1.0; x(1, 1) = 0.0;
  Matrix online(5, 2);
  for (int i = 0; i < 5; ++i) {
    online(i, 0) = static_cast<double>(i) - 2.0;
    online(i, 1) = 0.0;
  }
  CHECK_THROWS_AS((void)non_net_witness(PointCloud(online), x, 1), CapabilityError);
}

TEST_CASE("non_net_witness: feeds the heuristic below the guarantee") {
  // an (m-1)-point candidate net cannot guarantee degree 2*D_half; the witness
  // start pushes the heuristic below the would-be guarantee
  const PointCloud cloud = random_cloud(2, 12, 21);
  const Matrix x = random_points(2, 2, 22);
  auto [p, kept] = non_net_witness(cloud, x, 1);
  AdversaryReport rep = heuristic_min_mass(cloud, x, 2, 0, 200, 1e-9, {p});
  CHECK(rep.kept_mass <= kept + 1e-12);
  CHECK(rep.kept_mass < 1.0 / 6.0);
}

TEST_CASE("non_net_witness: proposition-level property across n and D_half") {
  std::uint64_t seed = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int d_half = 1; d_half <= 2; ++d_half) {
      const std::size_t m1 = basis_size(n, d_half) - 1;
      const PointCloud cloud = random_cloud(n, 10, 600 + seed);
      const Matrix x = random_points(n, m1, 700 + seed);
      auto [p, kept] = non_net_witness(cloud, x, d_half);
      CHECK(kept == doctest::Approx(0.0).scale(1.0));
      ++seed;
    }
  }
}
