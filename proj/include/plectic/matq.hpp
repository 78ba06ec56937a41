#pragma once

#include "plectic/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plectic {

/// Dense matrix over the rationals; all eliminations exact.
class Mat {
public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static Mat identity(int n);
  static Mat zero(int rows, int cols) { return Mat(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const Rat& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  bool is_zero() const;
  Mat transpose() const;
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b);
  std::vector<Rat> apply(const std::vector<Rat>& x) const;

  /// Horizontal concatenation [A | B].
  static Mat hcat(const Mat& a, const Mat& b);
  /// Block diagonal.
  static Mat block_diag(const Mat& a, const Mat& b);

  int rank() const;
  /// Columns form a basis of the kernel.
  Mat kernel_basis() const;
  /// Indices of a maximal linearly independent set of columns.
  std::vector<int> pivot_columns() const;
  /// Basis of the column space, as a matrix of selected columns.
  Mat column_space_basis() const;
  /// Solve A x = b; nullopt when inconsistent.
  std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const;
  /// Solve A X = B columnwise; nullopt when any column is inconsistent.
  std::optional<Mat> solve_many(const Mat& b) const;

  std::string str() const;

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

} // namespace plectic
