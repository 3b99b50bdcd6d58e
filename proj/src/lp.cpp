#include "polynet/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "polynet/errors.hpp"

namespace polynet {
namespace {

using Rational = boost::multiprecision::cpp_rational;

enum class KernelStatus { Optimal, Infeasible, Unbounded, CapHit };

template <typename T>
struct KernelResult {
  KernelStatus status = KernelStatus::Infeasible;
  std::vector<T> x;  // original (free) variables
  T value{};
};

template <typename T>
T scalar_abs(const T& v) {
  return v < T(0) ? T(-v) : v;
}

// Dense tableau simplex over scalar T. Standard form is built here: free
// variables are split into positive parts, one slack per inequality, one
// artificial per row for phase 1. Bland's rule throughout.
template <typename T>
class SimplexKernel {
 public:
  SimplexKernel(std::size_t num_vars, const std::vector<std::vector<T>>& ineq_rows,
                const std::vector<T>& ineq_bounds, const std::vector<std::vector<T>>& eq_rows,
                const std::vector<T>& eq_bounds, const std::vector<T>& objective, T pivot_tol,
                long max_iters)
      : n_(num_vars),
        num_ineq_(ineq_rows.size()),
        rows_(ineq_rows.size() + eq_rows.size()),
        struct_cols_(2 * num_vars + ineq_rows.size()),
        total_cols_(2 * num_vars + ineq_rows.size() + rows_),
        ztol_(pivot_tol),
        max_iters_(max_iters) {
    tab_.assign(rows_, std::vector<T>(total_cols_, T(0)));
    rhs_.assign(rows_, T(0));
    basis_.assign(rows_, 0);
    cost_.assign(struct_cols_, T(0));
    for (std::size_t k = 0; k < n_; ++k) {
      cost_[k] = objective[k];
      cost_[n_ + k] = -objective[k];
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      const bool is_ineq = i < num_ineq_;
      const std::vector<T>& a = is_ineq ? ineq_rows[i] : eq_rows[i - num_ineq_];
      T b = is_ineq ? ineq_bounds[i] : eq_bounds[i - num_ineq_];
      const bool flip = b < T(0);
      const T sign = flip ? T(-1) : T(1);
      for (std::size_t k = 0; k < n_; ++k) {
        tab_[i][k] = sign * a[k];
        tab_[i][n_ + k] = -sign * a[k];
      }
      if (is_ineq) tab_[i][2 * n_ + i] = sign;
      tab_[i][struct_cols_ + i] = T(1);  // artificial
      rhs_[i] = sign * b;
      basis_[i] = struct_cols_ + i;
    }
  }

  KernelResult<T> solve() {
    KernelResult<T> out;
    // phase 1: minimize the sum of artificials
    obj_.assign(total_cols_, T(0));
    obj_val_ = T(0);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < struct_cols_; ++j) obj_[j] -= tab_[i][j];
      obj_val_ -= rhs_[i];
    }
    const KernelStatus p1 = iterate(/*allow_artificials=*/false);
    if (p1 == KernelStatus::CapHit) {
      out.status = KernelStatus::CapHit;
      return out;
    }
    if (p1 == KernelStatus::Unbounded) {
      out.status = KernelStatus::CapHit;  // cannot happen for a sound phase 1; replay exactly
      return out;
    }
    T feas_gap = -obj_val_;  // phase-1 optimum (>= 0)
    if (feas_gap > feasibility_tol()) {
      out.status = KernelStatus::Infeasible;
      return out;
    }
    drive_out_artificials();

    // phase 2: restore the real objective
    obj_.assign(total_cols_, T(0));
    obj_val_ = T(0);
    for (std::size_t j = 0; j < struct_cols_; ++j) obj_[j] = cost_[j];
    for (std::size_t i = 0; i < rows_; ++i) {
      const std::size_t bj = basis_[i];
      const T cb = bj < struct_cols_ ? cost_[bj] : T(0);
      if (cb == T(0)) continue;
      for (std::size_t j = 0; j < total_cols_; ++j) obj_[j] -= cb * tab_[i][j];
      obj_val_ -= cb * rhs_[i];
    }
    const KernelStatus p2 = iterate(/*allow_artificials=*/false);
    if (p2 != KernelStatus::Optimal) {
      out.status = p2;
      return out;
    }

    std::vector<T> xstd(struct_cols_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      if (basis_[i] < struct_cols_) xstd[basis_[i]] = rhs_[i];
    out.x.assign(n_, T(0));
    for (std::size_t k = 0; k < n_; ++k) out.x[k] = xstd[k] - xstd[n_ + k];
    out.value = T(0);
    for (std::size_t k = 0; k < n_; ++k) out.value += cost_[k] * out.x[k];
    out.status = KernelStatus::Optimal;
    return out;
  }

 private:
  T feasibility_tol() const {
    if constexpr (std::is_same_v<T, double>) {
      double scale = 1.0;
      for (const T& b : rhs_) scale = std::max(scale, std::fabs(b));
      return 1e-8 * scale;
    } else {
      return T(0);
    }
  }

  KernelStatus iterate(bool allow_artificials) {
    const std::size_t price_cols = allow_artificials ? total_cols_ : struct_cols_;
    for (long it = 0; it < max_iters_; ++it) {
      // Bland: entering column = smallest index with negative reduced cost
      std::size_t enter = total_cols_;
      for (std::size_t j = 0; j < price_cols; ++j) {
        if (obj_[j] < -ztol_) {
          enter = j;
          break;
        }
      }
      if (enter == total_cols_) return KernelStatus::Optimal;

      std::size_t leave = rows_;
      T best_ratio{};
      for (std::size_t i = 0; i < rows_; ++i) {
        if (tab_[i][enter] > ztol_) {
          const T ratio = rhs_[i] / tab_[i][enter];
          if (leave == rows_ || ratio < best_ratio ||
              (ratio == best_ratio && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave == rows_) return KernelStatus::Unbounded;
      pivot(leave, enter);
    }
    return KernelStatus::CapHit;
  }

  void pivot(std::size_t prow, std::size_t pcol) {
    const T piv = tab_[prow][pcol];
    for (std::size_t j = 0; j < total_cols_; ++j) tab_[prow][j] /= piv;
    rhs_[prow] /= piv;
    tab_[prow][pcol] = T(1);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == prow) continue;
      const T f = tab_[i][pcol];
      if (f == T(0)) continue;
      for (std::size_t j = 0; j < total_cols_; ++j) tab_[i][j] -= f * tab_[prow][j];
      tab_[i][pcol] = T(0);
      rhs_[i] -= f * rhs_[prow];
    }
    const T fo = obj_[pcol];
    if (fo != T(0)) {
      for (std::size_t j = 0; j < total_cols_; ++j) obj_[j] -= fo * tab_[prow][j];
      obj_[pcol] = T(0);
      obj_val_ -= fo * rhs_[prow];
    }
    basis_[prow] = pcol;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < struct_cols_) continue;
      std::size_t j = struct_cols_;
      for (std::size_t k = 0; k < struct_cols_; ++k) {
        if (scalar_abs(tab_[i][k]) > ztol_) {
          j = k;
          break;
        }
      }
      if (j < struct_cols_) pivot(i, j);
      // otherwise the row is redundant; the artificial stays basic at zero and
      // never re-enters because artificial columns are not priced
    }
  }

  std::size_t n_, num_ineq_, rows_, struct_cols_, total_cols_;
  T ztol_;
  long max_iters_;
  std::vector<std::vector<T>> tab_;
  std::vector<T> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<T> cost_;  // over structural columns
  std::vector<T> obj_;   // current reduced-cost row
  T obj_val_{};
};

template <typename T>
KernelResult<T> run_kernel(const LinearProgram& lp, T pivot_tol, long max_iters) {
  std::vector<std::vector<T>> ineq_rows, eq_rows;
  std::vector<T> ineq_bounds, eq_bounds, objective(lp.num_vars, T(0));
  for (std::size_t k = 0; k < lp.num_vars && k < lp.objective.size(); ++k)
    objective[k] = T(lp.objective[k]);
  for (const auto& c : lp.ineqs) {
    std::vector<T> row(lp.num_vars);
    for (std::size_t k = 0; k < lp.num_vars; ++k) row[k] = T(c.row[k]);
    ineq_rows.push_back(std::move(row));
    ineq_bounds.emplace_back(c.bound);
  }
  for (const auto& c : lp.eqs) {
    std::vector<T> row(lp.num_vars);
    for (std::size_t k = 0; k < lp.num_vars; ++k) row[k] = T(c.row[k]);
    eq_rows.push_back(std::move(row));
    eq_bounds.emplace_back(c.bound);
  }
  SimplexKernel<T> kernel(lp.num_vars, ineq_rows, ineq_bounds, eq_rows, eq_bounds, objective,
                          pivot_tol, max_iters);
  return kernel.solve();
}

bool recheck(const LinearProgram& lp, const Vec& x, double tol) {
  for (const auto& c : lp.ineqs) {
    double ax = 0.0;
    for (std::size_t k = 0; k < lp.num_vars; ++k) ax += c.row[k] * x[k];
    if (ax > c.bound + tol * (1.0 + std::fabs(c.bound))) return false;
  }
  for (const auto& c : lp.eqs) {
    double ax = 0.0;
    for (std::size_t k = 0; k < lp.num_vars; ++k) ax += c.row[k] * x[k];
    if (std::fabs(ax - c.bound) > tol * (1.0 + std::fabs(c.bound))) return false;
  }
  return true;
}

void validate(const LinearProgram& lp) {
  auto check_row = [&](const LinearConstraint& c) {
    if (c.row.size() != lp.num_vars)
      throw std::invalid_argument("lp_solve: constraint row length mismatch");
    for (double v : c.row)
      if (!std::isfinite(v)) throw std::invalid_argument("lp_solve: non-finite entry");
    if (!std::isfinite(c.bound)) throw std::invalid_argument("lp_solve: non-finite bound");
  };
  for (const auto& c : lp.ineqs) check_row(c);
  for (const auto& c : lp.eqs) check_row(c);
  for (double v : lp.objective)
    if (!std::isfinite(v)) throw std::invalid_argument("lp_solve: non-finite objective");
}

long iteration_cap(const LinearProgram& lp) {
  const long rows = static_cast<long>(lp.ineqs.size() + lp.eqs.size());
  const long cols = static_cast<long>(2 * lp.num_vars + lp.ineqs.size() + lp.eqs.size());
  return 2000 + 40 * (rows + cols);
}

LpResult exact_replay(const LinearProgram& lp) {
  KernelResult<Rational> r =
      run_kernel<Rational>(lp, Rational(0), 8 * iteration_cap(lp));
  LpResult out;
  switch (r.status) {
    case KernelStatus::Optimal: {
      out.status = LpStatus::Optimal;
      out.x.resize(lp.num_vars);
      for (std::size_t k = 0; k < lp.num_vars; ++k)
        out.x[k] = static_cast<double>(r.x[k]);
      out.value = static_cast<double>(r.value);
      return out;
    }
    case KernelStatus::Infeasible:
      out.status = LpStatus::Infeasible;
      return out;
    case KernelStatus::Unbounded:
      out.status = LpStatus::Unbounded;
      return out;
    default:
      throw NumericalError("lp_solve: exact rational replay hit the iteration cap");
  }
}

}  // namespace

LpResult lp_solve(const LinearProgram& lp, double tol) {
  validate(lp);
  const bool exact_eligible =
      lp.num_vars <= 30 && lp.ineqs.size() + lp.eqs.size() <= 500;

  KernelResult<double> r = run_kernel<double>(lp, 1e-10, iteration_cap(lp));
  if (r.status == KernelStatus::Optimal) {
    if (recheck(lp, r.x, tol)) {
      return LpResult{LpStatus::Optimal, std::move(r.x), r.value};
    }
  } else if (r.status == KernelStatus::Infeasible) {
    return LpResult{LpStatus::Infeasible, {}, 0.0};
  } else if (r.status == KernelStatus::Unbounded) {
    return LpResult{LpStatus::Unbounded, {}, 0.0};
  }
  // iteration cap or failed re-check
  if (!exact_eligible)
    throw NumericalError("lp_solve: floating solve failed and instance too large for exact replay");
  return exact_replay(lp);
}

std::optional<Vec> lp_feasible_point(std::size_t num_vars,
                                     const std::vector<LinearConstraint>& ineqs,
                                     const std::vector<LinearConstraint>& eqs, double tol) {
  if (ineqs.empty() && eqs.empty()) return Vec(num_vars, 0.0);

  // Chebyshev-style auxiliary variable: maximize the minimum slack s
  LinearProgram lp;
  lp.num_vars = num_vars + 1;
  lp.objective.assign(num_vars + 1, 0.0);
  lp.objective[num_vars] = -1.0;  // minimize -s
  double bscale = 1.0;
  for (const auto& c : ineqs) bscale = std::max(bscale, std::fabs(c.bound));
  for (const auto& c : ineqs) {
    LinearConstraint row;
    row.row = c.row;
    row.row.push_back(1.0);
    row.bound = c.bound;
    lp.ineqs.push_back(std::move(row));
  }
  {
    LinearConstraint cap;  // keep the slack bounded
    cap.row.assign(num_vars + 1, 0.0);
    cap.row[num_vars] = 1.0;
    cap.bound = 1.0 + bscale;
    lp.ineqs.push_back(std::move(cap));
  }
  for (const auto& c : eqs) {
    LinearConstraint row;
    row.row = c.row;
    row.row.push_back(0.0);
    row.bound = c.bound;
    lp.eqs.push_back(std::move(row));
  }

  LpResult r = lp_solve(lp, tol);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  const double slack = r.x[num_vars];
  if (slack < -tol) return std::nullopt;
  return Vec(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(num_vars));
}

}  // namespace polynet
