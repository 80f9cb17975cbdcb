#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "obslab/artin.hpp"
#include "obslab/linalg.hpp"

namespace obslab {

/// Permutation of {0..n-1}; sigma[i] is the image of i.
using Perm = std::vector<int>;

int perm_sign(const Perm& sigma);
int descents(const Perm& sigma);
Perm perm_inverse(const Perm& sigma);

/// Element of Q[S_n], stored densely over a fixed enumeration of S_n.
class GroupElement {
 public:
  explicit GroupElement(int n);
  static GroupElement identity(int n);

  int degree() const { return n_; }
  size_t order() const { return coeffs_.size(); }
  const Perm& perm(size_t k) const;
  const Rat& operator[](size_t k) const { return coeffs_[k]; }
  Rat& operator[](size_t k) { return coeffs_[k]; }
  Rat coefficient(const Perm& sigma) const;
  Rat& coefficient(const Perm& sigma);

  GroupElement& operator+=(const GroupElement& o);
  GroupElement& operator-=(const GroupElement& o);
  friend GroupElement operator+(GroupElement a, const GroupElement& b) { a += b; return a; }
  friend GroupElement operator-(GroupElement a, const GroupElement& b) { a -= b; return a; }
  /// (a*b) acts as a after b.
  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
  GroupElement scaled(const Rat& c) const;
  friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.coeffs_ == b.coeffs_; }
  bool is_zero() const;

 private:
  int n_;
  std::vector<Rat> coeffs_;
};

/// Signed shuffle sum: sum over compositions (p_1..p_k) of n with p_i >= 0 of
/// sum_{sigma in Sh(p_1..p_k)} sgn(sigma) sigma.
GroupElement lambda_operation(int n, int k);

/// Eulerian idempotents e^(1)..e^(n) in Q[S_n], checked at construction for
/// completeness, orthogonality and agreement with the shuffle operations.
class EulerianSystem {
 public:
  explicit EulerianSystem(int n);
  int degree() const { return n_; }
  /// e^(i) for 0 <= i <= n (e^(0) = 0 for n >= 1).
  const GroupElement& idempotent(int i) const { return e_.at(static_cast<size_t>(i)); }
  /// The Adams-type operation lambda^k = sum_i k^i e^(i).
  GroupElement lambda(int k) const;

 private:
  int n_;
  std::vector<GroupElement> e_;
};

/// Cached, thread-safe access; throws InvalidInput outside 1 <= n <= 6.
const EulerianSystem& eulerian(int n);

/// Normalized bar complex C_n = A (x) m_A^{(x) n}, 0 <= n <= N+1.
class BarComplex {
 public:
  BarComplex(const ArtinAlgebra& a, int truncation);

  const ArtinAlgebra& algebra() const { return a_; }
  int truncation() const { return n_max_; }
  Index dim(int n) const;
  /// Basis index of a0 (x) a1 (x) ... (x) an, with a_i >= 1 for i >= 1.
  Index encode(const std::vector<Index>& tensor) const;
  std::vector<Index> decode(int n, Index k) const;

  /// Columns of b_n : C_n -> C_{n-1} (1 <= n <= N+1).
  const std::vector<SparseVec>& boundary(int n) const;
  RatMatrix boundary_matrix(int n) const;
  SparseVec apply_boundary(int n, const SparseVec& v) const;
  Index boundary_rank(int n) const;

  /// Multilinear chain a0 (x) a1 (x) ... from coordinate vectors; unit parts of
  /// a_i (i >= 1) are dropped.
  SparseVec chain(const std::vector<RatVector>& factors) const;
  /// Action of a group algebra element on C_n (sigma moves a_i to position sigma(i)).
  SparseVec act(const GroupElement& g, const SparseVec& v) const;
  RatMatrix action_matrix(const GroupElement& g) const;

 private:
  ArtinAlgebra a_;
  int n_max_;
  std::vector<std::vector<SparseVec>> b_;
  mutable std::vector<Index> ranks_;
};

struct HomologyInfo {
  int degree = 0;
  Index dim = 0;
  std::vector<SparseVec> representatives;  // cycles whose classes form a basis
};

/// HH_n(A) for n <= N. TruncationExceeded if n > N or N beyond the cap.
HomologyInfo hh(const BarComplex& bar, int n, bool with_representatives = false);
Index hh_dim(const BarComplex& bar, int n);

struct WeightPiece {
  int weight = 0;
  Index dim = 0;
};
/// Dimensions of the e^(l)-image homology of HH_n, l = 0..n.
std::vector<WeightPiece> weight_split(const BarComplex& bar, int n);

/// Homology class in the bar complex.
struct HochschildClass {
  int degree = 0;
  int weight = -1;  // -1 when not homogeneous
  SparseVec representative;
};

/// psi^m applied to a chain representative (via the shuffle operation lambda^m).
HochschildClass adams(const BarComplex& bar, int m, const HochschildClass& c);
/// The scalar s with adams(m, c) = s c in homology, if c is an eigenvector.
std::optional<Rat> adams_eigenvalue(const BarComplex& bar, int m, const HochschildClass& c);

/// HKR antisymmetrization Omega^l_A -> C_l, one chain per Kaehler basis element.
struct HkrReport {
  int degree = 0;
  Index omega_dim = 0;
  Index weight_dim = 0;   // dim HH^(l)_l
  Index image_rank = 0;   // rank of the induced map to homology
  bool cycles = false;
  bool in_weight = false;
  bool relations_to_boundaries = false;
  bool injective = false;
  bool onto_weight = false;
  std::vector<SparseVec> chains;
};
HkrReport hkr_map(const BarComplex& bar, int l);

struct KunnethRow {
  int degree = 0;
  Index lhs = 0;  // dim HH_j(A (x) B)
  Index rhs = 0;  // sum dim HH_j1(A) dim HH_j2(B)
  std::vector<Index> lhs_weights, rhs_weights;
  bool equal = false;
};
struct KunnethReport {
  std::vector<KunnethRow> rows;
  bool equal = false;
};
/// FeasibilityExceeded if dim(A (x) B) > 9.
KunnethReport kunneth_check(const ArtinAlgebra& a, const ArtinAlgebra& b, int max_degree,
                            bool weights = true);

}  // namespace obslab
