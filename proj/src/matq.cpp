#include "plectic/matq.hpp"

#include <sstream>
#include <stdexcept>

namespace plectic {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
  return m;
}

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("Mat::mul: shape mismatch");
  Mat r(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Rat& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const Rat& bkj = b.at(k, j);
        if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Mat::add: shape");
  Mat r(a.rows_, a.cols_);
  for (size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
  return r;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Mat::sub: shape");
  Mat r(a.rows_, a.cols_);
  for (size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
  return r;
}

bool operator==(const Mat& a, const Mat& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

std::vector<Rat> Mat::apply(const std::vector<Rat>& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("Mat::apply: shape");
  std::vector<Rat> y(rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (!at(r, c).is_zero()) y[r] += at(r, c) * x[c];
  return y;
}

Mat Mat::hcat(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("Mat::hcat: rows");
  Mat r(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
  }
  return r;
}

Mat Mat::block_diag(const Mat& a, const Mat& b) {
  Mat r(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) r.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return r;
}

namespace {

// Row-reduce in place; returns pivot columns.
std::vector<int> row_reduce(Mat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int r = row; r < m.rows(); ++r)
      if (!m.at(r, col).is_zero()) { p = r; break; }
    if (p < 0) continue;
    if (p != row)
      for (int c = 0; c < m.cols(); ++c) std::swap(m.at(p, c), m.at(row, c));
    Rat inv = Rat(1) / m.at(row, col);
    for (int c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col).is_zero()) continue;
      Rat f = m.at(r, col);
      for (int c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

} // namespace

int Mat::rank() const {
  Mat m(*this);
  return static_cast<int>(row_reduce(m).size());
}

std::vector<int> Mat::pivot_columns() const {
  Mat m(*this);
  return row_reduce(m);
}

Mat Mat::column_space_basis() const {
  std::vector<int> piv = pivot_columns();
  Mat b(rows_, static_cast<int>(piv.size()));
  for (size_t j = 0; j < piv.size(); ++j)
    for (int i = 0; i < rows_; ++i) b.at(i, static_cast<int>(j)) = at(i, piv[j]);
  return b;
}

Mat Mat::kernel_basis() const {
  Mat m(*this);
  std::vector<int> pivots = row_reduce(m);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat k(cols_, static_cast<int>(free_cols.size()));
  for (size_t j = 0; j < free_cols.size(); ++j) {
    int fc = free_cols[j];
    k.at(fc, static_cast<int>(j)) = Rat(1);
    for (size_t pi = 0; pi < pivots.size(); ++pi)
      k.at(pivots[pi], static_cast<int>(j)) = -m.at(static_cast<int>(pi), fc);
  }
  return k;
}

std::optional<std::vector<Rat>> Mat::solve(const std::vector<Rat>& b) const {
  Mat bb(rows_, 1);
  for (int i = 0; i < rows_; ++i) bb.at(i, 0) = b[i];
  auto x = solve_many(bb);
  if (!x) return std::nullopt;
  std::vector<Rat> out(cols_);
  for (int i = 0; i < cols_; ++i) out[i] = x->at(i, 0);
  return out;
}

std::optional<Mat> Mat::solve_many(const Mat& b) const {
  if (b.rows() != rows_) throw std::invalid_argument("Mat::solve_many: shape");
  Mat aug = hcat(*this, b);
  std::vector<int> pivots = row_reduce(aug);
  // Inconsistent if a pivot falls in the b block.
  for (int c : pivots)
    if (c >= cols_) return std::nullopt;
  Mat x(cols_, b.cols());
  for (size_t pi = 0; pi < pivots.size(); ++pi)
    for (int j = 0; j < b.cols(); ++j)
      x.at(pivots[pi], j) = aug.at(static_cast<int>(pi), cols_ + j);
  return x;
}

std::string Mat::str() const {
  std::ostringstream os;
  for (int r = 0; r < rows_; ++r) {
    os << "[";
    for (int c = 0; c < cols_; ++c) os << (c ? " " : "") << at(r, c).str();
    os << "]\n";
  }
  return os.str();
}

} // namespace plectic
