#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "polynet/errors.hpp"
#include "polynet/poly.hpp"
#include "polynet/rng.hpp"

using namespace polynet;

TEST_CASE("basis_size: examples and overflow guard") {
  CHECK(basis_size(2, 2) == 6);
  CHECK(basis_size(1, 0) == 1);
  CHECK(basis_size(2, 4) == 15);
  CHECK(basis_size(2, 3) == 10);
  CHECK_THROWS_AS((void)basis_size(30, 40), CapabilityError);  // C(70,30) > 2^64
}

TEST_CASE("enumerate_monomials: declared graded-lex order") {
  const MonomialBasis b21 = enumerate_monomials(2, 1);
  REQUIRE(b21.size() == 3);
  CHECK(b21.exponents[0] == std::vector<int>{0, 0});
  CHECK(b21.exponents[1] == std::vector<int>{0, 1});
  CHECK(b21.exponents[2] == std::vector<int>{1, 0});

  const MonomialBasis b22 = enumerate_monomials(2, 2);
  REQUIRE(b22.size() == 6);
  std::vector<std::vector<int>> want{{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
  std::vector<std::vector<int>> got = b22.exponents;
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  CHECK(got == want);  // covers {1, x, y, x^2, xy, y^2}

  const MonomialBasis b13 = enumerate_monomials(1, 3);
  REQUIRE(b13.size() == 4);
  for (int d = 0; d <= 3; ++d) CHECK(b13.exponents[d] == std::vector<int>{d});
}

TEST_CASE("enumerate_monomials: invariants across the small range") {
  for (int n = 1; n <= 6; ++n) {
    for (int d = 0; d <= 8; ++d) {
      const MonomialBasis b = enumerate_monomials(n, d);
      CHECK(b.size() == basis_size(n, d));
      CHECK(b.exponents[0] == std::vector<int>(n, 0));
      auto key = [&](const std::vector<int>& e) {
        int td = 0;
        for (int v : e) td += v;
        return std::make_pair(td, e);
      };
      for (std::size_t i = 1; i < b.size(); ++i) CHECK(key(b.exponents[i - 1]) < key(b.exponents[i]));
    }
  }
}

TEST_CASE("eval_poly: examples") {
  // x^2 + y^2 - 1 at (1, 0)
  const MonomialBasis b = enumerate_monomials(2, 2);
  Poly circle{b, Vec(6, 0.0)};
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.exponents[i] == std::vector<int>{2, 0}) circle.coeffs[i] = 1.0;
    if (b.exponents[i] == std::vector<int>{0, 2}) circle.coeffs[i] = 1.0;
    if (b.exponents[i] == std::vector<int>{0, 0}) circle.coeffs[i] = -1.0;
  }
  CHECK(eval_poly(circle, Vec{1.0, 0.0}) == doctest::Approx(0.0).scale(1.0));

  Poly one{enumerate_monomials(2, 0), Vec{1.0}};
  CHECK(eval_poly(one, Vec{17.5, -3.0}) == 1.0);

  Poly xy{b, Vec(6, 0.0)};
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b.exponents[i] == std::vector<int>{1, 1}) xy.coeffs[i] = 1.0;
  CHECK(eval_poly(xy, Vec{2.0, 3.0}) == doctest::Approx(6.0));

  CHECK_THROWS_AS((void)eval_poly(one, Vec{1.0}), std::invalid_argument);
}

TEST_CASE("veronese_affine: examples") {
  const Vec v = veronese_affine(Vec{2.0}, 3);
  REQUIRE(v.size() == 4);
  CHECK(v == Vec{1.0, 2.0, 4.0, 8.0});

  const Vec z = veronese_affine(Vec{0.0, 0.0, 0.0}, 3);
  CHECK(z[0] == 1.0);
  for (std::size_t i = 1; i < z.size(); ++i) CHECK(z[i] == 0.0);

  // degree-2 lift of (x, y) hits {1, x, y, x^2, xy, y^2}
  const Vec w = veronese_affine(Vec{3.0, 5.0}, 2);
  std::vector<double> got(w.begin(), w.end());
  std::vector<double> want{1, 3, 5, 9, 15, 25};
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  CHECK(got == want);

  const Vec t = veronese_affine_truncated(Vec{3.0, 5.0}, 2);
  CHECK(t.size() == w.size() - 1);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(t[i] == w[i + 1]);
}

TEST_CASE("veronese_homogeneous: examples") {
  const Vec e = veronese_homogeneous(Vec{1.0, 0.0, 0.0}, 2);
  REQUIRE(e.size() == 6);
  int nonzeros = 0;
  for (double v : e) nonzeros += (v != 0.0);
  CHECK(nonzeros == 1);  // only w^2 survives
  CHECK(*std::max_element(e.begin(), e.end()) == 1.0);

  const Vec zero = veronese_homogeneous(Vec{0.0, 0.0, 0.0}, 2);
  for (double v : zero) CHECK(v == 0.0);

  // setting the first homogeneous coordinate to 1 recovers the affine lift as a multiset
  CounterRng rng(5, 21);
  for (int rep = 0; rep < 5; ++rep) {
    Vec x{rng.next_gaussian(), rng.next_gaussian()};
    Vec hom_in{1.0, x[0], x[1]};
    std::vector<double> a = veronese_affine(x, 3);
    std::vector<double> h = veronese_homogeneous(hom_in, 3);
    std::sort(a.begin(), a.end());
    std::sort(h.begin(), h.end());
    REQUIRE(a.size() == h.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(h[i]).epsilon(1e-12));
  }
}

TEST_CASE("evaluation_matrix: examples") {
  Matrix origin(1, 2);
  const Matrix e1 = evaluation_matrix(origin, enumerate_monomials(2, 2));
  REQUIRE(e1.rows() == 1);
  REQUIRE(e1.cols() == 6);
  CHECK(e1(0, 0) == 1.0);
  for (std::size_t j = 1; j < 6; ++j) CHECK(e1(0, j) == 0.0);

  Matrix pts(2, 1);
  pts(0, 0) = 1.0;
  pts(1, 0) = 2.0;
  const Matrix e2 = evaluation_matrix(pts, enumerate_monomials(1, 2));
  CHECK(e2(0, 0) == 1.0);
  CHECK(e2(0, 1) == 1.0);
  CHECK(e2(0, 2) == 1.0);
  CHECK(e2(1, 0) == 1.0);
  CHECK(e2(1, 1) == 2.0);
  CHECK(e2(1, 2) == 4.0);
}

TEST_CASE("evaluation_matrix: k^2 grid rank equals k^2 for k <= 3") {
  for (int k = 1; k <= 3; ++k) {
    Matrix grid(static_cast<std::size_t>(k) * k, 2);
    std::size_t r = 0;
    for (int a = 1; a <= k; ++a)
      for (int b = 1; b <= k; ++b) {
        grid(r, 0) = a;
        grid(r, 1) = b;
        ++r;
      }
    const Matrix ev = evaluation_matrix(grid, enumerate_monomials(2, 2 * k));
    CHECK(rank_of(ev, 1e-9) == static_cast<std::size_t>(k) * k);
  }
}

TEST_CASE("vanishing_polynomials: examples and residual bound") {
  // two points in the plane, degree-1 basis: exactly the line through them
  Matrix two(2, 2);
  two(0, 0) = 0.0; two(0, 1) = 1.0;
  two(1, 0) = 2.0; two(1, 1) = 0.0;
  const MonomialBasis b21 = enumerate_monomials(2, 1);
  auto lines = vanishing_polynomials(two, b21);
  REQUIRE(lines.size() == 1);
  CHECK(std::fabs(eval_poly(lines[0], Vec{0.0, 1.0})) <= 1e-9);
  CHECK(std::fabs(eval_poly(lines[0], Vec{2.0, 0.0})) <= 1e-9);

  // m-1 generic points leave exactly a one-dimensional kernel
  CounterRng rng(2, 22);
  const MonomialBasis b22 = enumerate_monomials(2, 2);
  Matrix generic(5, 2);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 2; ++j) generic(i, j) = rng.next_gaussian();
  auto kernel = vanishing_polynomials(generic, b22);
  REQUIRE(kernel.size() == 1);
  double nq = 0.0;
  for (double c : kernel[0].coeffs) nq += c * c;
  nq = std::sqrt(nq);
  for (int i = 0; i < 5; ++i) {
    Vec y = generic.row_vec(i);
    double reach = std::max({1.0, std::fabs(y[0]), std::fabs(y[1])});
    CHECK(std::fabs(eval_poly(kernel[0], y)) <= 1e-9 * nq * reach * reach);
  }

  // no points: the whole space vanishes
  CHECK(vanishing_polynomials(Matrix(0, 2), b22).size() == 6);
}

TEST_CASE("eval_poly agrees with the lift inner product") {
  CounterRng rng(9, 23);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 1 + rep % 3;
    const int d = 1 + rep % 4;
    const MonomialBasis b = enumerate_monomials(n, d);
    Poly p{b, Vec(b.size())};
    for (double& c : p.coeffs) c = rng.next_gaussian();
    Vec x(n);
    for (double& v : x) v = rng.next_gaussian();
    const Vec lift = veronese_affine(x, d);
    const double direct = eval_poly(p, x);
    const double via_lift = dot(p.coeffs, lift);
    CHECK(std::fabs(direct - via_lift) <= 1e-12 * std::max(1.0, std::fabs(direct)));
  }
}

TEST_CASE("poly_mul: (x+1)^2 = x^2+2x+1") {
  const MonomialBasis b = enumerate_monomials(1, 1);
  Poly p{b, Vec{1.0, 1.0}};  // 1 + x
  const Poly q = poly_mul(p, p);
  REQUIRE(q.basis.degree == 2);
  REQUIRE(q.coeffs.size() == 3);
  CHECK(q.coeffs[0] == doctest::Approx(1.0));
  CHECK(q.coeffs[1] == doctest::Approx(2.0));
  CHECK(q.coeffs[2] == doctest::Approx(1.0));
}

TEST_CASE("PointCloud: normalization and validation") {
  Matrix pts(2, 1);
  pts(0, 0) = 0.0;
  pts(1, 0) = 1.0;
  PointCloud c(pts, Vec{2.0, 6.0});
  CHECK(c.weights()[0] == doctest::Approx(0.25));
  CHECK(c.weights()[1] == doctest::Approx(0.75));
  PointCloud u(pts);
  CHECK(u.weights()[0] == doctest::Approx(0.5));
  CHECK_THROWS_AS(PointCloud(Matrix(0, 2)), std::invalid_argument);
  CHECK_THROWS_AS(PointCloud(pts, Vec{1.0, -0.5}), std::invalid_argument);
}
