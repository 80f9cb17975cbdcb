#pragma once

#include <Eigen/Core>

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "obslab/error.hpp"
#include "obslab/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<obslab::Rat> : GenericNumTraits<obslab::Rat> {
  using Real = obslab::Rat;
  using NonInteger = obslab::Rat;
  using Literal = obslab::Rat;
  using Nested = obslab::Rat;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace obslab {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RatMatrix = Matrix<Rat>;
using RatVector = Vector<Rat>;
using Index = Eigen::Index;

RatMatrix zero_matrix(Index rows, Index cols);
RatMatrix identity_matrix(Index n);
bool is_zero(const RatMatrix& m);

/// Reduced row echelon form with the pivot column of each nonzero row.
struct Rref {
  RatMatrix reduced;
  std::vector<Index> pivots;
};

Rref rref(RatMatrix m);
Index rank(const RatMatrix& m);
/// Columns span the (right) kernel; free columns in increasing order.
RatMatrix kernel_basis(const RatMatrix& m);

struct LinearSolution {
  std::optional<RatVector> particular;
  RatMatrix kernel;
  Index rank = 0;
};

/// Solves m x = b exactly. Throws DimensionMismatch if b has the wrong length.
LinearSolution solve_exact(const RatMatrix& m, const RatVector& b);

/// Sparse vector: strictly increasing indices, no zero entries.
using SparseVec = std::vector<std::pair<Index, Rat>>;

SparseVec sparse_from_dense(const RatVector& v);

/// Incremental exact row reduction over sparse vectors. Keeps an echelon
/// basis (one row per pivot, leading coefficient 1) of everything inserted.
class SparseEliminator {
 public:
  explicit SparseEliminator(Index dimension) : dim_(dimension) {}

  Index dimension() const { return dim_; }
  Index rank() const { return static_cast<Index>(rows_.size()); }

  /// Returns true if v was independent of the current span.
  bool insert(const SparseVec& v);
  bool contains(const SparseVec& v) const;
  /// v minus its projection on the span (remainder against pivots).
  SparseVec reduce(const SparseVec& v) const;
  const std::map<Index, SparseVec>& rows() const { return rows_; }

 private:
  std::vector<Rat> reduce_dense(const SparseVec& v) const;

  Index dim_;
  std::map<Index, SparseVec> rows_;  // pivot -> row with leading 1
};

/// Rank of the span of the given sparse vectors.
Index sparse_rank(const std::vector<SparseVec>& vectors, Index dimension);

}  // namespace obslab
