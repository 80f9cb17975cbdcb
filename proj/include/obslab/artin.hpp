#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "obslab/form.hpp"
#include "obslab/linalg.hpp"
#include "obslab/ring.hpp"

namespace obslab {

/// Finite-dimensional local k-algebra k[a_1..a_n]/I with residue field k,
/// carried with its standard-monomial basis (1 first) and multiplication table.
class ArtinAlgebra {
 public:
  ArtinAlgebra() = default;
  /// Strict constructor: NotArtinian if infinite or not local,
  /// NotLocalNormalized if a generator has a constant or linear part.
  static ArtinAlgebra make(const std::vector<std::string>& names, const std::vector<Poly>& gens,
                           MonomialOrder order = MonomialOrder::DegRevLex);
  static ArtinAlgebra make(const std::vector<std::string>& names,
                           const std::vector<std::string>& gens,
                           MonomialOrder order = MonomialOrder::DegRevLex);
  /// Local artinian quotient without the normalization requirement.
  static ArtinAlgebra quotient(const std::vector<std::string>& names, const std::vector<Poly>& gens,
                               MonomialOrder order = MonomialOrder::DegRevLex);
  static ArtinAlgebra field();
  /// k[x]/(x^n).
  static ArtinAlgebra truncated(const std::string& name, int n);

  int nvars() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  MonomialOrder order() const { return order_; }
  const GroebnerBasis& gb() const { return ring_.gb(); }
  /// The algebra as a ring whose variables are all Artin variables.
  const Ring& ring() const { return ring_; }
  const std::vector<Exponent>& basis() const { return basis_; }
  Index dim() const { return static_cast<Index>(basis_.size()); }
  /// Basis indices of the maximal ideal (all but the unit).
  std::vector<Index> max_ideal() const;
  std::optional<Index> index_of(const Exponent& e) const;

  Poly reduce(const Poly& p) const { return ring_.reduce(ring_.embed(p)); }
  Poly parse(const std::string& text) const { return reduce(ring_.parse(text)); }
  RatVector coords(const Poly& p) const;
  Poly element(const RatVector& v) const;
  Poly basis_element(Index i) const { return Poly::monomial(basis_[i]); }
  /// Coordinates of basis_i * basis_j.
  const RatVector& product(Index i, Index j) const { return table_->at(i * dim() + j); }
  RatVector multiply(const RatVector& a, const RatVector& b) const;
  /// Smallest N with m^N = 0.
  int nilpotency() const;
  std::string str(const Poly& p) const { return ring_.str(p); }

 private:
  static ArtinAlgebra build(const std::vector<std::string>& names, const std::vector<Poly>& gens,
                            MonomialOrder order, bool strict);

  std::vector<std::string> names_;
  MonomialOrder order_ = MonomialOrder::DegRevLex;
  Ring ring_;
  std::vector<Exponent> basis_;
  std::shared_ptr<const std::vector<RatVector>> table_;
};

/// Local unital homomorphism given by the images of the source variables.
class AlgebraMorphism {
 public:
  AlgebraMorphism() = default;
  /// NotWellDefined if a relation does not vanish or an image is not in m.
  static AlgebraMorphism make(const ArtinAlgebra& source, const ArtinAlgebra& target,
                              const std::vector<Poly>& images);
  static AlgebraMorphism identity(const ArtinAlgebra& a);
  static AlgebraMorphism augmentation(const ArtinAlgebra& a);  // A -> k

  const ArtinAlgebra& source() const { return source_; }
  const ArtinAlgebra& target() const { return target_; }
  const std::vector<Poly>& images() const { return images_; }
  Poly apply(const Poly& p) const;
  /// dim target x dim source matrix in the standard bases.
  RatMatrix matrix() const;
  bool surjective() const { return rank(matrix()) == target_.dim(); }
  AlgebraMorphism then(const AlgebraMorphism& next) const;

 private:
  ArtinAlgebra source_, target_;
  std::vector<Poly> images_;
};

/// Surjection B -> A whose kernel M is annihilated by m_B.
struct SmallExtension {
  ArtinAlgebra B, A;
  AlgebraMorphism proj;
  std::vector<Poly> kernel;  // k-basis of M inside B
  bool principal = false;
  Poly eta;                  // generator when principal
  RatMatrix section_matrix;  // dim B x dim A, proj o section = id

  /// k-linear section A -> B through the shared standard monomials.
  Poly section(const Poly& a) const;
  /// For a principal extension: the scalar c with b = c * eta, if b lies in (eta).
  std::optional<Rat> eta_multiple(const RatVector& b_coords) const;
};

/// A := B/(eta) on the same variables; NotAnnihilated if m_B * eta != 0.
SmallExtension small_extension(const ArtinAlgebra& B, const Poly& eta);
/// General small extension from a surjective morphism.
SmallExtension small_extension(const AlgebraMorphism& f);

/// Omega^p_{A/k} as a finite k-space spanned by {monomial * da_J}.
class KaehlerModule {
 public:
  KaehlerModule() = default;
  KaehlerModule(const ArtinAlgebra& a, int p);

  const ArtinAlgebra& algebra() const { return algebra_; }
  int degree() const { return p_; }
  Index dim() const { return static_cast<Index>(free_.size()); }
  Index span_size() const { return static_cast<Index>(span_.size()); }
  const std::vector<std::pair<Exponent, DiffIndex>>& spanning_set() const { return span_; }
  const RatMatrix& relations() const { return relations_; }

  /// Coordinates of a p-form over the algebra's ring (coefficients reduced first).
  RatVector coords(const PForm& w) const;
  /// Coordinates of the spanning element m * da_J.
  RatVector span_coords(const Exponent& m, const DiffIndex& j) const;
  /// Representative form of basis element s.
  PForm representative(Index s) const;

 private:
  ArtinAlgebra algebra_;
  int p_ = 0;
  std::vector<std::pair<Exponent, DiffIndex>> span_;
  std::map<std::pair<Exponent, DiffIndex>, Index> span_index_;
  RatMatrix relations_;
  std::vector<Index> free_;                    // basis columns
  std::vector<Index> basis_of_column_;         // -1 for pivot columns
  std::map<Index, RatVector> pivot_expansion_;  // pivot column -> basis coordinates
};

/// Matrix of Omega^p(phi): Omega^p_source -> Omega^p_target.
RatMatrix kaehler_map(const AlgebraMorphism& phi, int p);

/// Tensor product A (x) B with variables of A first; clashing names get a prime.
ArtinAlgebra tensor(const ArtinAlgebra& a, const ArtinAlgebra& b);

struct FiberedProduct {
  ArtinAlgebra algebra;
  AlgebraMorphism to_b, to_c;
};

/// B x_A C presented on minimal generators of its maximal ideal.
FiberedProduct fibered_product(const AlgebraMorphism& g, const AlgebraMorphism& f);

struct SMapReport {
  Index dim_source = 0;
  Index dim_target = 0;
  Index rank = 0;
  bool injective = false;
  bool surjective = false;
  bool bijective = false;
};

/// Compares Omega^j of B x_A C with Omega^j_B x_{Omega^j_A} Omega^j_C.
SMapReport s_map_forms(const AlgebraMorphism& g, const AlgebraMorphism& f, int j);

/// True iff d(eta) (x) 1 != 0 in Omega^1_B (x)_B A.
bool differential_injectivity(const SmallExtension& e);

/// Kernel W_1 of Omega^1_B -> Omega^1_A together with the projection onto
/// the line spanned by d(eta), after extending d(eta) to a basis of W_1.
struct EtaProjection {
  KaehlerModule omega_b;
  RatMatrix kernel;      // columns: basis of W_1, d(eta) first
  RatVector deta;        // coordinates of d(eta) in Omega^1_B
  /// Coefficient of d(eta) for a vector in W_1; nullopt if not in W_1.
  std::optional<Rat> project(const RatVector& w) const;
};
EtaProjection eta_projection(const SmallExtension& e);

/// Form coordinates over a ring R (x) A: a kept R-differential subset, the
/// Artin form degree, and a Kaehler basis index.
struct FormKey {
  DiffIndex space;
  int adeg = 0;
  Index basis = 0;
  auto operator<=>(const FormKey&) const = default;
};
using FormCoords = std::map<FormKey, Poly>;

/// Canonical coordinates for forms over a ring whose Artin variables present
/// a given algebra. Coefficients are normal forms without Artin variables.
class FormSpace {
 public:
  FormSpace() = default;
  /// `ring` must end with the algebra's variables as Artin variables (or have none).
  FormSpace(const Ring& ring, const ArtinAlgebra& algebra);
  static FormSpace over(const Ring& base, const ArtinAlgebra& algebra);

  const Ring& ring() const { return ring_; }
  const ArtinAlgebra& algebra() const { return algebra_; }
  const KaehlerModule& kaehler(int q) const;
  int offset() const { return offset_; }

  FormCoords coords(const PForm& w) const;
  PForm form(const FormCoords& c) const;
  bool is_zero(const PForm& w) const { return coords(w).empty(); }
  bool equal(const PForm& a, const PForm& b) const { return is_zero(a - b); }
  /// Canonical representative form.
  PForm canonical(const PForm& w) const { return form(coords(w)); }
  /// Embeds a base-ring polynomial or an algebra element.
  Poly from_base(const Poly& p) const;
  Poly from_algebra(const Poly& a) const;
  std::string key_str(const FormKey& k) const;

 private:
  Ring ring_;
  ArtinAlgebra algebra_;
  int offset_ = 0;
  std::vector<KaehlerModule> kaehler_;
};

}  // namespace obslab
