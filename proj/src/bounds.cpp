#include "polynet/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "polynet/errors.hpp"
#include "polynet/linalg.hpp"
#include "polynet/poly.hpp"

namespace polynet {

namespace {

std::uint64_t binom(std::uint64_t top, std::uint64_t bottom) {
  if (bottom > top) return 0;
  bottom = std::min(bottom, top - bottom);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= bottom; ++i) {
    acc = acc * (top - bottom + i) / i;
    if (acc > static_cast<unsigned __int128>(UINT64_MAX))
      throw CapabilityError("caratheodory_bounds: binomial overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

// fraction-free (Bareiss) elimination over exact integers; returns the rank
std::uint64_t bareiss_rank(std::vector<boost::multiprecision::cpp_int> a, std::size_t rows,
                           std::size_t cols) {
  using boost::multiprecision::cpp_int;
  auto at = [&](std::size_t i, std::size_t j) -> cpp_int& { return a[i * cols + j]; };
  cpp_int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && at(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(pivot, j), at(r, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        at(i, j) = (at(r, c) * at(i, j) - at(i, c) * at(r, j)) / prev;
      at(i, c) = 0;
    }
    prev = at(r, c);
    ++r;
  }
  return r;
}

}  // namespace

BoundsRecord caratheodory_bounds(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("caratheodory_bounds: need n >= 1, k >= 1");
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t uk = static_cast<std::uint64_t>(k);

  BoundsRecord rec;
  rec.n = n;
  rec.k = k;
  rec.degree = 2 * k;
  rec.trivial_upper = binom(2 * uk + un, un);
  const std::uint64_t mid = binom(uk + un, un);
  // the middle term can exceed the leading one (e.g. n=3, k=1) while the full
  // expression stays nonnegative, so evaluate in signed arithmetic
  const __int128 lower = static_cast<__int128>(rec.trivial_upper) -
                         static_cast<__int128>(un) * mid + static_cast<__int128>(binom(un, 2));
  rec.lower_item2 = lower > 0 ? static_cast<std::uint64_t>(lower) : 0;
  if (rec.trivial_upper < un + 1)
    throw CapabilityError("caratheodory_bounds: upper-bound formula underflows");
  rec.upper_item3 = rec.trivial_upper - un - 1;
  rec.exact_d2 = un + 1;
  rec.asymptotic_ratio = 1.0 - static_cast<double>(n) / std::ldexp(1.0, n);
  rec.monotone_chain_note =
      "the Caratheodory number of the even-degree Veronese variety is monotone in the degree: "
      "kappa(V(n,2k)) <= kappa(V(n,2k+1))";
  return rec;
}

GridMeasurement grid_vanishing_dimension(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("grid_vanishing_dimension: need n >= 1, k >= 1");
  const int degree = 2 * k;
  const std::uint64_t m = basis_size(n, degree);

  unsigned __int128 gs = 1;
  for (int i = 0; i < n; ++i) {
    gs *= static_cast<unsigned>(k);
    if (gs > static_cast<unsigned __int128>(UINT64_MAX))
      throw CapabilityError("grid_vanishing_dimension: grid size overflow");
  }
  const std::uint64_t grid_size = static_cast<std::uint64_t>(gs);
  if (static_cast<unsigned __int128>(grid_size) * m > 10'000'000)
    throw CapabilityError("grid_vanishing_dimension: evaluation matrix exceeds the memory budget");

  Matrix grid(grid_size, n);
  std::vector<int> idx(n, 0);
  for (std::uint64_t r = 0; r < grid_size; ++r) {
    for (int j = 0; j < n; ++j) grid(r, j) = static_cast<double>(idx[j] + 1);
    for (int j = n - 1; j >= 0; --j) {
      if (++idx[j] < k) break;
      idx[j] = 0;
    }
  }

  const MonomialBasis basis = enumerate_monomials(n, degree);
  const Matrix eval = evaluation_matrix(grid, basis);

  GridMeasurement out;
  out.n = n;
  out.k = k;
  out.grid_size = grid_size;
  out.exact_rank = (k <= 5 && degree <= 10);
  if (out.exact_rank) {
    // entries are exact small integers (<= k^degree <= 5^10), so rank is
    // computed by fraction-free integer elimination with no tolerance at all
    std::vector<boost::multiprecision::cpp_int> ints(eval.rows() * eval.cols());
    for (std::size_t i = 0; i < eval.rows(); ++i)
      for (std::size_t j = 0; j < eval.cols(); ++j)
        ints[i * eval.cols() + j] = static_cast<long long>(std::llround(eval(i, j)));
    out.restriction_rank = bareiss_rank(std::move(ints), eval.rows(), eval.cols());
  } else {
    out.restriction_rank = rank_of(eval, 1e-10);
  }
  out.vanishing_dim = m - out.restriction_rank;
  out.lower_bound_check = out.restriction_rank >= caratheodory_bounds(n, k).lower_item2;
  return out;
}

}  // namespace polynet
