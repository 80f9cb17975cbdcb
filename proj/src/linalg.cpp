#include "obslab/linalg.hpp"

#include <algorithm>

namespace obslab {

RatMatrix zero_matrix(Index rows, Index cols) {
  RatMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = 0;
  return m;
}

RatMatrix identity_matrix(Index n) {
  RatMatrix m = zero_matrix(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool is_zero(const RatMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

Rref rref(RatMatrix m) {
  Rref out;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index sel = -1;
    for (Index r = row; r < m.rows(); ++r) {
      if (!m(r, col).is_zero()) { sel = r; break; }
    }
    if (sel < 0) continue;
    if (sel != row) m.row(sel).swap(m.row(row));
    Rat inv = m(row, col).inverse();
    for (Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      Rat factor = m(r, col);
      for (Index c = col; c < m.cols(); ++c) {
        if (!m(row, c).is_zero()) m(r, c) -= factor * m(row, c);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

Index rank(const RatMatrix& m) { return static_cast<Index>(rref(m).pivots.size()); }

RatMatrix kernel_basis(const RatMatrix& m) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (Index p : r.pivots) is_pivot[p] = true;
  std::vector<Index> free_cols;
  for (Index c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  RatMatrix k = zero_matrix(m.cols(), static_cast<Index>(free_cols.size()));
  for (size_t f = 0; f < free_cols.size(); ++f) {
    Index fc = free_cols[f];
    k(fc, f) = 1;
    for (size_t i = 0; i < r.pivots.size(); ++i) k(r.pivots[i], f) = -r.reduced(i, fc);
  }
  return k;
}

LinearSolution solve_exact(const RatMatrix& m, const RatVector& b) {
  if (b.size() != m.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "right-hand side length does not match row count");
  }
  RatMatrix aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  Rref r = rref(aug);
  LinearSolution out;
  out.kernel = kernel_basis(m);
  out.rank = static_cast<Index>(std::count_if(r.pivots.begin(), r.pivots.end(),
                                              [&](Index p) { return p < m.cols(); }));
  bool inconsistent = !r.pivots.empty() && r.pivots.back() == m.cols();
  if (!inconsistent) {
    RatVector x(m.cols());
    for (Index i = 0; i < m.cols(); ++i) x(i) = 0;
    for (size_t i = 0; i < r.pivots.size(); ++i) x(r.pivots[i]) = r.reduced(i, m.cols());
    out.particular = std::move(x);
  }
  return out;
}

SparseVec sparse_from_dense(const RatVector& v) {
  SparseVec out;
  for (Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) out.emplace_back(i, v(i));
  return out;
}

std::vector<Rat> SparseEliminator::reduce_dense(const SparseVec& v) const {
  std::vector<Rat> acc(dim_);
  for (const auto& [i, c] : v) {
    if (i < 0 || i >= dim_) throw Error(ErrorKind::DimensionMismatch, "sparse index out of range");
    acc[i] += c;
  }
  for (const auto& [pivot, row] : rows_) {
    if (acc[pivot].is_zero()) continue;
    Rat factor = acc[pivot];
    for (const auto& [j, c] : row) acc[j] -= factor * c;
  }
  return acc;
}

SparseVec SparseEliminator::reduce(const SparseVec& v) const {
  std::vector<Rat> acc = reduce_dense(v);
  SparseVec out;
  for (Index i = 0; i < dim_; ++i)
    if (!acc[i].is_zero()) out.emplace_back(i, acc[i]);
  return out;
}

bool SparseEliminator::contains(const SparseVec& v) const { return reduce(v).empty(); }

bool SparseEliminator::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  Index pivot = r.front().first;
  Rat inv = r.front().second.inverse();
  for (auto& [j, c] : r) c *= inv;
  rows_.emplace(pivot, std::move(r));
  return true;
}

Index sparse_rank(const std::vector<SparseVec>& vectors, Index dimension) {
  SparseEliminator e(dimension);
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

}  // namespace obslab
