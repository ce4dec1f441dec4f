#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "lefschetz/scalar.hpp"

namespace lefschetz {

template <Scalar S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<S> row(std::size_t r) const {
    return std::vector<S>(data_.begin() + (std::ptrdiff_t)(r * cols_), data_.begin() + (std::ptrdiff_t)((r + 1) * cols_));
  }
  void append_row(const std::vector<S>& row) {
    if (row.size() != cols_) throw std::invalid_argument("Matrix::append_row: wrong length");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: shape mismatch in product");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) = r(i, j) + x * b(k, j);
      }
    return r;
  }
  std::vector<S> apply(const std::vector<S>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Matrix: shape mismatch in apply");
    std::vector<S> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!v[j].is_zero()) r[i] = r[i] + (*this)(i, j) * v[j];
    return r;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

class InconsistentSystem : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised over local rings when a column has nonzero entries but no unit.
class UndecidablePivot : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <Scalar S>
struct SolveResult {
  bool unique = false;
  std::size_t rank = 0;
  std::vector<S> solution;               // particular solution
  std::vector<std::vector<S>> kernel;    // basis of the solution space of A x = 0
};

// Gaussian elimination pivoting on the first invertible entry of each column.
// Consistent overdetermined systems leave exactly-zero rows; anything else
// throws InconsistentSystem.
template <Scalar S>
SolveResult<S> solve(Matrix<S> a, std::vector<S> b) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m) throw std::invalid_argument("solve: right-hand side has wrong length");
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = m;
    bool nonzero = false;
    for (std::size_t i = r; i < m; ++i) {
      if (a(i, c).is_invertible()) {
        p = i;
        break;
      }
      if (!a(i, c).is_zero()) nonzero = true;
    }
    if (p == m) {
      if (nonzero) throw UndecidablePivot("solve: column " + std::to_string(c) + " has only non-unit entries");
      continue;
    }
    if (p != r) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(r, j));
      std::swap(b[p], b[r]);
    }
    const S inv = a(r, c).inv();
    for (std::size_t j = c; j < n; ++j) a(r, j) = a(r, j) * inv;
    b[r] = b[r] * inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const S f = a(i, c);
      for (std::size_t j = c; j < n; ++j)
        if (!a(r, j).is_zero()) a(i, j) = a(i, j) - f * a(r, j);
      b[i] = b[i] - f * b[r];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (!a(i, j).is_zero()) throw UndecidablePivot("solve: residual row is not exactly zero");
    if (!b[i].is_zero()) throw InconsistentSystem("solve: inconsistent system");
  }
  SolveResult<S> out;
  out.rank = r;
  out.unique = (r == n);
  out.solution.assign(n, S{});
  for (std::size_t k = 0; k < r; ++k) out.solution[pivot_cols[k]] = b[k];
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<S> v(n);
    v[f] = S::one();
    for (std::size_t k = 0; k < r; ++k) v[pivot_cols[k]] = -a(k, f);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

// Leibniz expansion; division free, so it is valid over any commutative ring.
template <Scalar S>
S determinant(const Matrix<S>& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("determinant: matrix is not square");
  if (n == 0) return S::one();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  S total{};
  bool any = true;
  while (any) {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    S term = S::one();
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i) term = term * a(i, perm[i]);
    total = (inversions % 2) ? total - term : total + term;
    any = std::next_permutation(perm.begin(), perm.end());
  }
  return total;
}

// Row echelon basis built one row at a time. Each row pivots on its first
// invertible entry; over a field that is the leftmost nonzero entry, so after
// finalize() the rows are the reduced row echelon form of the span and the
// non-pivot columns index a basis of the quotient. Over a local ring (jets)
// a pivot may sit right of nilpotent entries; elimination stays exact because
// every row is zero on the pivot columns of the rows inserted before it.
template <Scalar S>
class Echelon {
 public:
  explicit Echelon(std::size_t cols = 0) : cols_(cols), pivot_of_col_(cols, npos) {}

  static constexpr std::size_t npos = (std::size_t)-1;

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == cols_; }

  // Returns true when the row enlarged the span.
  bool insert(std::vector<S> row) {
    if (row.size() != cols_) throw std::invalid_argument("Echelon::insert: wrong length");
    reduce_in_place(row);
    std::size_t lead = npos, first = npos;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (row[j].is_zero()) continue;
      if (first == npos) first = j;
      if (row[j].is_invertible()) {
        lead = j;
        break;
      }
    }
    if (first == npos) return false;
    if (lead == npos) throw UndecidablePivot("Echelon: reduced row has no unit entry");
    const S inv = row[lead].inv();
    for (std::size_t j = first; j < cols_; ++j)
      if (!row[j].is_zero()) row[j] = row[j] * inv;
    pivot_of_col_[lead] = rows_.size();
    pivot_col_.push_back(lead);
    start_.push_back(first);
    rows_.push_back(std::move(row));
    finalized_ = false;
    return true;
  }

  // Clear every pivot column in every row.
  void finalize() {
    if (finalized_) return;
    for (std::size_t k = rows_.size(); k-- > 0;) {
      const std::size_t c = pivot_col_[k];
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i == k || rows_[i][c].is_zero()) continue;
        const S f = rows_[i][c];
        axpy(rows_[i], f, k);
        start_[i] = std::min(start_[i], start_[k]);
      }
    }
    finalized_ = true;
  }

  // Rows are applied in insertion order, which is valid before and after
  // finalize().
  void reduce_in_place(std::vector<S>& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::size_t c = pivot_col_[k];
      if (v[c].is_zero()) continue;
      const S f = v[c];
      axpy(v, f, k);
    }
  }

  bool is_pivot(std::size_t c) const { return pivot_of_col_[c] != npos; }
  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> f;
    for (std::size_t c = 0; c < cols_; ++c)
      if (!is_pivot(c)) f.push_back(c);
    return f;
  }
  const std::vector<std::vector<S>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivot_columns() const { return pivot_col_; }
  bool finalized() const { return finalized_; }

 private:
  // v -= f * rows_[k]
  void axpy(std::vector<S>& v, const S& f, std::size_t k) const {
    const auto& pr = rows_[k];
    for (std::size_t j = start_[k]; j < cols_; ++j)
      if (!pr[j].is_zero()) v[j] = v[j] - f * pr[j];
  }

  std::size_t cols_;
  std::vector<std::size_t> pivot_of_col_;
  std::vector<std::size_t> pivot_col_;
  std::vector<std::size_t> start_;
  std::vector<std::vector<S>> rows_;
  bool finalized_ = true;
};

}  // namespace lefschetz
