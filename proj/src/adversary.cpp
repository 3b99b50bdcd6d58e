#include "polynet/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "polynet/errors.hpp"
#include "polynet/lp.hpp"
#include "polynet/rng.hpp"

namespace polynet {

namespace {

double kept_threshold(const Poly& p, const PointCloud& cloud) {
  return -1e-9 * poly_scale(p, cloud.points());
}

std::vector<std::size_t> kept_set(const Poly& p, const PointCloud& cloud, double threshold) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    if (eval_poly(p, cloud.point(i)) >= threshold) kept.push_back(i);
  return kept;
}

double mass_of(const PointCloud& cloud, const std::vector<std::size_t>& idx) {
  double s = 0.0;
  for (std::size_t i : idx) s += cloud.weights()[i];
  return s;
}

// Re-verification baked into every report: the polynomial must satisfy the
// net constraints, and the kept set / mass must match direct evaluation.
AdversaryReport finalize_report(Poly p, const PointCloud& cloud, const Matrix& net_points,
                                AdversaryMethod method, bool exact, int degree) {
  const double net_tol = 1e-9 * poly_scale(p, net_points);
  for (std::size_t i = 0; i < net_points.rows(); ++i) {
    if (eval_poly(p, net_points.row_vec(i)) < -net_tol)
      throw NumericalError("adversary: candidate polynomial violates the net constraints");
  }
  AdversaryReport rep;
  rep.kept_indices = kept_set(p, cloud, kept_threshold(p, cloud));
  rep.kept_mass = mass_of(cloud, rep.kept_indices);
  rep.worst_poly = std::move(p);
  rep.method = method;
  rep.exact = exact;
  rep.degree = degree;
  return rep;
}

}  // namespace

double poly_scale(const Poly& p, const Matrix& points) {
  double c = 0.0;
  for (double v : p.coeffs) c = std::max(c, std::fabs(v));
  double reach = 1.0;
  for (std::size_t i = 0; i < points.rows(); ++i)
    for (std::size_t j = 0; j < points.cols(); ++j) reach = std::max(reach, std::fabs(points(i, j)));
  return std::max(c, 1e-300) * std::pow(reach, p.basis.degree);
}

AdversaryReport exact_min_mass(const PointCloud& cloud, const Matrix& net_points, int degree,
                               double tol, const ExactAdversaryOptions& opts) {
  const int n = static_cast<int>(cloud.dim());
  if (net_points.rows() > 0 && net_points.cols() != cloud.dim())
    throw std::invalid_argument("exact_min_mass: net dimension mismatch");
  const std::size_t N = cloud.size();
  if (N > opts.point_cap)
    throw CapabilityError("exact_min_mass: cloud exceeds the subset-enumeration cap");
  if (N >= 63) throw CapabilityError("exact_min_mass: subset mask overflow");

  const MonomialBasis basis = enumerate_monomials(n, degree);
  const std::size_t m = basis.size();
  const Matrix net_eval = evaluation_matrix(net_points, basis);
  const Matrix cloud_eval = evaluation_matrix(cloud.points(), basis);

  // kept-subsets in ascending (mass, mask) order; the first one admitting a
  // polynomial >= 0 on the net and <= -1 off the subset is the exact minimum
  // (scaling any strictly-negative-off-S witness reaches the -1 normalization).
  std::vector<std::uint64_t> masks(std::uint64_t{1} << N);
  std::iota(masks.begin(), masks.end(), std::uint64_t{0});
  std::vector<double> mass(masks.size(), 0.0);
  for (std::uint64_t s = 0; s < masks.size(); ++s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i)
      if (s & (std::uint64_t{1} << i)) acc += cloud.weights()[i];
    mass[s] = acc;
  }
  std::stable_sort(masks.begin(), masks.end(), [&](std::uint64_t a, std::uint64_t b) {
    if (mass[a] != mass[b]) return mass[a] < mass[b];
    return a < b;
  });

  std::vector<LinearConstraint> net_ineqs;
  for (std::size_t i = 0; i < net_eval.rows(); ++i) {
    LinearConstraint c;  // -v(x)·coef <= 0, i.e. P(x) >= 0
    c.row.resize(m);
    for (std::size_t j = 0; j < m; ++j) c.row[j] = -net_eval(i, j);
    c.bound = 0.0;
    net_ineqs.push_back(std::move(c));
  }

  for (std::uint64_t s : masks) {
    std::vector<LinearConstraint> ineqs = net_ineqs;
    for (std::size_t i = 0; i < N; ++i) {
      if (s & (std::uint64_t{1} << i)) continue;
      LinearConstraint c;  // v(y)·coef <= -1, i.e. P(y) <= -1
      c.row.resize(m);
      for (std::size_t j = 0; j < m; ++j) c.row[j] = cloud_eval(i, j);
      c.bound = -1.0;
      ineqs.push_back(std::move(c));
    }
    const auto x = lp_feasible_point(m, ineqs, {}, tol);
    if (!x) continue;
    Poly p{basis, *x};
    return finalize_report(std::move(p), cloud, net_points, AdversaryMethod::ExactSubset, true,
                           degree);
  }
  throw NumericalError("exact_min_mass: no feasible kept-subset (P == 0 should always qualify)");
}

AdversaryReport heuristic_min_mass(const PointCloud& cloud, const Matrix& net_points, int degree,
                                   std::uint64_t seed, int iterations, double tol,
                                   const std::vector<Poly>& starts) {
  const int n = static_cast<int>(cloud.dim());
  if (net_points.rows() > 0 && net_points.cols() != cloud.dim())
    throw std::invalid_argument("heuristic_min_mass: net dimension mismatch");
  if (iterations < 1) throw std::invalid_argument("heuristic_min_mass: iterations must be >= 1");

  const MonomialBasis basis = enumerate_monomials(n, degree);
  const std::size_t m = basis.size();
  const Matrix net_eval = evaluation_matrix(net_points, basis);
  const Matrix cloud_eval = evaluation_matrix(cloud.points(), basis);

  // shift the constant coefficient just enough to restore P >= 0 on the net,
  // then rescale to the unit coefficient sphere
  auto repair = [&](Vec& c) {
    double worst = 0.0;
    for (std::size_t i = 0; i < net_eval.rows(); ++i) {
      double v = 0.0;
      for (std::size_t j = 0; j < m; ++j) v += net_eval(i, j) * c[j];
      worst = std::min(worst, v);
    }
    if (worst < 0.0) c[0] -= worst;
    const double nrm = norm2(c);
    if (nrm > 1e-300)
      for (double& v : c) v /= nrm;
    else
      c[0] = 1.0;
  };

  auto kept_mass_of = [&](const Vec& c) {
    double mx = 0.0;
    for (double v : c) mx = std::max(mx, std::fabs(v));
    double reach = 1.0;
    for (std::size_t i = 0; i < cloud_eval.rows(); ++i)
      for (std::size_t j = 0; j < cloud.dim(); ++j)
        reach = std::max(reach, std::fabs(cloud.points()(i, j)));
    const double thr = -1e-9 * std::max(mx, 1e-300) * std::pow(reach, degree);
    double kept = 0.0;
    for (std::size_t i = 0; i < cloud_eval.rows(); ++i) {
      double v = 0.0;
      for (std::size_t j = 0; j < m; ++j) v += cloud_eval(i, j) * c[j];
      if (v >= thr) kept += cloud.weights()[i];
    }
    return kept;
  };

  // embed a lower-degree start polynomial into the working basis
  auto embed = [&](const Poly& p) -> Vec {
    Vec c(m, 0.0);
    for (std::size_t k = 0; k < p.basis.size(); ++k) {
      std::vector<int> padded = p.basis.exponents[k];
      padded.resize(n, 0);
      const auto it = std::find(basis.exponents.begin(), basis.exponents.end(), padded);
      if (it == basis.exponents.end()) {
        if (std::fabs(p.coeffs[k]) > 0.0)
          throw std::invalid_argument("heuristic_min_mass: start polynomial degree too high");
        continue;
      }
      c[static_cast<std::size_t>(it - basis.exponents.begin())] += p.coeffs[k];
    }
    return c;
  };

  CounterRng rng(seed, 0xad5e7ea2ULL);

  const Matrix ns = null_space(net_eval, 1e-9);
  std::vector<Vec> initials;
  for (const Poly& p : starts) initials.push_back(embed(p));
  const int restarts = std::max<std::size_t>(8, initials.size() + 4);
  while (initials.size() < static_cast<std::size_t>(restarts)) {
    Vec c(m, 0.0);
    if (ns.cols() > 0) {
      for (std::size_t col = 0; col < ns.cols(); ++col) {
        const double g = rng.next_gaussian();
        for (std::size_t j = 0; j < m; ++j) c[j] += g * ns(j, col);
      }
    }
    for (std::size_t j = 0; j < m; ++j) c[j] += 0.2 * rng.next_gaussian();
    initials.push_back(std::move(c));
  }

  const int steps = std::max(1, iterations / restarts);
  Vec best;
  double best_mass = 2.0;
  for (Vec c : initials) {
    repair(c);
    double cur = kept_mass_of(c);
    if (cur < best_mass) {
      best_mass = cur;
      best = c;
    }
    for (int t = 0; t < steps; ++t) {
      const double frac = static_cast<double>(t) / static_cast<double>(steps);
      const double sigma = 0.5 * std::pow(2e-3, frac);
      const double temp = 0.05 * std::pow(1e-3, frac);
      Vec cand = c;
      for (double& v : cand) v += sigma * rng.next_gaussian();
      repair(cand);
      const double cm = kept_mass_of(cand);
      if (cm <= cur || rng.next_double() < std::exp(-(cm - cur) / temp)) {
        c = std::move(cand);
        cur = cm;
        if (cur < best_mass) {
          best_mass = cur;
          best = c;
        }
      }
    }
  }
  (void)tol;

  Poly p{basis, best};
  return finalize_report(std::move(p), cloud, net_points, AdversaryMethod::Heuristic, false,
                         degree);
}

std::pair<Poly, double> non_net_witness(const PointCloud& cloud, const Matrix& candidate_net,
                                        int half_degree, double tol) {
  const int n = static_cast<int>(cloud.dim());
  if (candidate_net.rows() > 0 && candidate_net.cols() != cloud.dim())
    throw std::invalid_argument("non_net_witness: net dimension mismatch");
  const std::uint64_t m_half = basis_size(n, half_degree);
  if (candidate_net.rows() + 1 > m_half)
    throw CapabilityError(
        "non_net_witness: candidate net too large, no vanishing polynomial guaranteed");

  const MonomialBasis basis = enumerate_monomials(n, half_degree);
  const std::vector<Poly> vanish = vanishing_polynomials(candidate_net, basis, tol);
  if (vanish.empty())
    throw NumericalError("non_net_witness: vanishing space empty despite the counting bound");
  const Poly& q = vanish.front();

  double min_sq = -1.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double v = eval_poly(q, cloud.point(i));
    if (std::fabs(v) > 1e-9 && (min_sq < 0.0 || v * v < min_sq)) min_sq = v * v;
  }
  if (min_sq < 0.0)
    throw CapabilityError(
        "non_net_witness: every cloud point lies on the zero set of the vanishing polynomial");
  const double eta = 0.5 * min_sq;

  Poly p = poly_mul(q, q);
  for (double& c : p.coeffs) c = -c;
  p.coeffs[0] += eta;  // constant monomial is first in graded-lex order

  double kept = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double v = eval_poly(q, cloud.point(i));
    if (v * v <= eta) kept += cloud.weights()[i];
  }
  return {std::move(p), kept};
}

}  // namespace polynet
