#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gsys/scalar.hpp"

namespace gsys {

/// Dense row-major matrix over Q(i).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  GaussianRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const GaussianRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const GaussianRational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Matrix transpose() const;
  bool is_zero() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussianRational> data_;
};

std::vector<GaussianRational> operator*(const Matrix& m, std::span<const GaussianRational> v);

/// Gauss-Jordan inverse of a square matrix; nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// Row echelon form from fraction-free elimination over Z[i] on sparse rows. Rows are scaled
/// to Gaussian integers, combined as a*row - b*pivot and divided by their integer content.
struct EchelonForm {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
  /// First `rank` rows of the echelon matrix, converted back to Q(i).
  Matrix rows;
};

EchelonForm fraction_free_echelon(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Particular solution of m x = rhs with every free coordinate set to zero, or nullopt
/// when rhs is outside the column space.
std::optional<std::vector<GaussianRational>> solve_particular(const Matrix& m,
                                                              std::span<const GaussianRational> rhs);

/// Basis of the right kernel, one vector per free column (that coordinate = 1).
std::vector<std::vector<GaussianRational>> nullspace(const Matrix& m);

}  // namespace gsys
