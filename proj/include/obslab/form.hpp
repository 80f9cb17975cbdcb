#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "obslab/linalg.hpp"
#include "obslab/ring.hpp"

namespace obslab {

/// Strictly increasing tuple of variable indices naming dx_{i1}^...^dx_{ip}.
using DiffIndex = std::vector<int>;

/// Differential form sum_J c_J dx_J with polynomial coefficients. The ring is
/// supplied by the operations that need it; wedge and sums are ring-free.
class PForm {
 public:
  PForm() = default;
  PForm(int c) : PForm(Poly(c)) {}  // NOLINT(google-explicit-constructor)
  PForm(const Poly& f);              // NOLINT(google-explicit-constructor) 0-form
  static PForm monomial(const DiffIndex& idx, const Poly& coeff);
  static PForm zero(int degree);

  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<DiffIndex, Poly>& terms() const& { return terms_; }
  std::map<DiffIndex, Poly> terms() && { return std::move(terms_); }
  Poly coefficient(const DiffIndex& idx) const;
  void add_term(const DiffIndex& idx, const Poly& coeff);

  PForm& operator+=(const PForm& o);
  PForm& operator-=(const PForm& o);
  friend PForm operator+(PForm a, const PForm& b) { a += b; return a; }
  friend PForm operator-(PForm a, const PForm& b) { a -= b; return a; }
  PForm operator-() const;
  /// Wedge product.
  friend PForm operator*(const PForm& a, const PForm& b);
  friend PForm operator*(const Poly& f, const PForm& w);
  PForm scaled(const Rat& c) const;
  friend bool operator==(const PForm& a, const PForm& b) {
    return a.terms_.size() == b.terms_.size() && (a - b).is_zero();
  }

 private:
  int degree_ = 0;
  std::map<DiffIndex, Poly> terms_;
};

PForm wedge(const PForm& a, const PForm& b);

/// Exterior derivative over k. Differentials of inverse variables u = 1/g are
/// rewritten as du = -u^2 dg, so results only involve kept differentials.
PForm d_total(const Ring& ring, const Poly& f);
PForm d_total(const Ring& ring, const PForm& w);
PForm dvar(const Ring& ring, int v);

/// Coefficients reduced to normal form, zero terms dropped.
PForm reduce(const Ring& ring, const PForm& w);
PForm pullback(const RingMap& map, const PForm& w);

/// Bidegree (j1, j2): j2 counts Artin differentials among the indices.
std::pair<int, int> bidegree_of(const Ring& ring, const DiffIndex& idx);
std::map<std::pair<int, int>, PForm> bidegree_split(const Ring& ring, const PForm& w);

std::string str(const Ring& ring, const PForm& w);

/// Ordered p-subsets of `pool` (lexicographic).
std::vector<DiffIndex> subsets(const std::vector<int>& pool, int p);
/// Sign of the permutation sorting `idx`; 0 when an index repeats.
int sort_sign(DiffIndex& idx);

using FormMatrix = Matrix<PForm>;

}  // namespace obslab

namespace Eigen {

template <>
struct NumTraits<obslab::PForm> : GenericNumTraits<obslab::PForm> {
  using Real = obslab::PForm;
  using NonInteger = obslab::PForm;
  using Literal = obslab::PForm;
  using Nested = obslab::PForm;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 32,
    MulCost = 128
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
