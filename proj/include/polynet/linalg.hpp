#pragma once

#include <cstddef>
#include <vector>

namespace polynet {

using Vec = std::vector<double>;

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  Vec row_vec(std::size_t i) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  Vec col_vec(std::size_t j) const {
    Vec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Symmetric matrix; construction symmetrizes the input exactly.
struct SymMatrix {
  explicit SymMatrix(Matrix m);
  explicit SymMatrix(std::size_t dim) : entries(dim, dim, 0.0) {}

  std::size_t dim() const { return entries.rows(); }
  Matrix entries;
};

struct EigResult {
  Vec values;      // descending
  Matrix vectors;  // orthonormal columns, vectors.col(i) pairs with values[i]
};

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Throws NumericalError if the sweep cap is hit before convergence.
EigResult sym_eig(const SymMatrix& a, double tol = 1e-9);

struct SvdResult {
  Matrix u;   // rows(a) x k, orthonormal columns (zero columns for zero sigma)
  Vec sigma;  // descending, length min-free: cols(a)
  Matrix v;   // cols(a) x cols(a), orthogonal
};

/// One-sided Jacobi SVD (high relative accuracy at the sizes used here).
SvdResult svd(const Matrix& a);

/// Orthonormal basis of the right null space of a, as matrix columns.
/// Singular values <= tol * sigma_max count as zero.
Matrix null_space(const Matrix& a, double tol = 1e-9);

/// Numerical rank under the relative singular-value cutoff tol.
std::size_t rank_of(const Matrix& a, double tol = 1e-9);

// small vector helpers
double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
double norm_inf(const Vec& a);
Vec matvec(const Matrix& a, const Vec& x);
Matrix matmul(const Matrix& a, const Matrix& b);
double frobenius(const Matrix& a);

}  // namespace polynet
