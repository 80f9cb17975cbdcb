#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "obslab/artin.hpp"
#include "obslab/koszul.hpp"
#include "obslab/local_cohomology.hpp"

namespace obslab {

/// Affine patch U_i = Spec R_i with Y cut out by the regular sequence f_i.
struct Patch {
  std::string name;
  Ring ring;
  std::vector<Poly> f;
};

/// U_ij with maps R_i -> R_ij and R_j -> R_ij. `transition` is the p x p
/// matrix D over R_ij with f_i = D f_j.
struct Overlap {
  int i = 0, j = 0;
  Ring ring;
  RingMap from_i, from_j;
  PolyMatrix transition;
};

/// U_ijk with maps from R_ij, R_ik and R_jk.
struct Triple {
  int i = 0, j = 0, k = 0;
  Ring ring;
  RingMap from_ij, from_ik, from_jk;
};

struct Cover {
  std::vector<Patch> patches;
  std::vector<Overlap> overlaps;
  std::vector<Triple> triples;

  int codim() const { return patches.empty() ? 0 : static_cast<int>(patches.front().f.size()); }
  /// InvalidInput when (i, j) is not an overlap; i < j.
  const Overlap& overlap(int i, int j) const;
  const Triple* triple(int i, int j, int k) const;
};

/// Checks regularity on each patch, equal ideals on overlaps (computes the
/// transition matrices) and compatibility of the maps on triples.
/// Overlaps must have i < j. Throws NotRegular, InvalidInput or NotWellDefined.
Cover make_cover(std::vector<Patch> patches, std::vector<Overlap> overlaps,
                 std::vector<Triple> triples = {});

/// Sequence and ring on a patch (simplex {i}) or on an overlap ({i, j}, in
/// patch i's generators).
struct Site {
  Ring ring;
  std::vector<Poly> f;
};
Site site(const Cover& c, const std::vector<int>& simplex);

/// Embedded deformation Y' of Y over A, given by f^A_i on U_i (x) A.
struct EmbeddedDeformation {
  ArtinAlgebra algebra;
  std::vector<std::vector<Poly>> f;  // over FormSpace::over(R_i, algebra).ring()
};

struct DeformationData {
  std::vector<FormSpace> spaces;                     // R_i (x) A
  std::map<std::pair<int, int>, FormSpace> overlap_spaces;  // R_ij (x) A
  std::map<std::pair<int, int>, PolyMatrix> transition;     // f^A_i = D^A f^A_j on U_ij
};

/// f^A_i reduces to f_i termwise mod m_A, f^A_i is regular, and the ideals
/// agree on overlaps. Throws InvalidInput or NotRegular.
DeformationData validate_deformation(const Cover& c, const EmbeddedDeformation& y);

/// Normal cochain: values nu(f_l) per simplex, in R/(f) of the site, written
/// in the generators of the simplex's first patch.
struct NormalCochain {
  int degree = 1;
  std::map<std::vector<int>, std::vector<Poly>> values;
};

/// nu reduced mod (f) + relations of each site.
NormalCochain normalize(const Cover& c, const NormalCochain& nu);
/// (delta nu)_ij = nu_i - D_ij nu_j on U_ij, for a 0-cochain.
NormalCochain coboundary(const Cover& c, const NormalCochain& nu);
/// mu_ik = mu_ij + D_ij mu_jk on every triple.
bool is_cocycle(const Cover& c, const NormalCochain& mu);
bool equal(const Cover& c, const NormalCochain& a, const NormalCochain& b);
NormalCochain scale(const Rat& r, const NormalCochain& nu);
NormalCochain subtract(const Cover& c, const NormalCochain& a, const NormalCochain& b);

/// psi: f + eps * nu on the site, over R (x) k[eps].
std::vector<Poly> psi(const FormSpace& eps_space, const std::vector<Poly>& f, const std::vector<Poly>& nu);
/// The first-order deformation f_i + eps * nu_i of a global section nu.
EmbeddedDeformation psi(const Cover& c, const NormalCochain& nu);

/// The algebra k[eps], variable "eps".
const ArtinAlgebra& dual_numbers();

/// phi(nu) = [sum_l (-1)^(l-1) nu_l df_1 ^ .. ^ ^df_l ^ .. ^ df_p / f] in H^p_Y(Omega^{p-1}).
LocalCohClass phi(const Site& s, const std::vector<Poly>& nu);
/// pi(nu) = [(w1 eps + w2 ^ deps) / f] in H^p_Y(reduced Omega^p over k[eps]) with
/// w1 = sum_l df_1 ^ .. ^ d(nu_l) ^ .. ^ df_p and
/// w2 = sum_l (-1)^(p-l) nu_l df_1 ^ .. ^ ^df_l ^ .. ^ df_p.
/// The class depends on the lift nu of the normal vector: adding g f_l to nu_l
/// adds [g eps df_1 ^ .. ^ df_p / f].
LocalCohClass pi(const Site& s, const std::vector<Poly>& nu);

/// Class-valued Cech cochain over R (x) A. Degree 0: keys {i}; degree 1: {i, j}.
struct ClassCochain {
  int degree = 1;
  ArtinAlgebra algebra;
  int form_degree = 0;
  bool reduced = true;  // coefficients in Omega^q(R (x) A) / Omega^q(R)
  std::map<std::vector<int>, LocalCohClass> values;
};

/// T_A(Y')_i = [omega-bar^A_i / f_i] from the Koszul resolutions.
ClassCochain T_A(const Cover& c, const EmbeddedDeformation& y);
/// Restrictions of the patch classes to each overlap, compared in patch i's module.
std::map<std::pair<int, int>, bool> overlap_agreement(const Cover& c, const ClassCochain& alpha);

/// Sum of terms of an R (x) A polynomial keyed by base monomial, with the
/// algebra parts as polynomials in the algebra's variables.
std::map<Exponent, Poly> split_algebra(const FormSpace& space, const Poly& f);
/// Coefficientwise lift along the section A -> B.
Poly lift_poly(const SmallExtension& e, const FormSpace& sa, const FormSpace& sb, const Poly& f);
PForm lift_form(const SmallExtension& e, const FormSpace& sa, const FormSpace& sb, const PForm& w);
/// Coefficientwise image under a morphism of the algebras.
Poly map_coefficients(const AlgebraMorphism& phi, const FormSpace& src, const FormSpace& dst, const Poly& f);
/// Coefficientwise image under B -> A.
Poly project_poly(const SmallExtension& e, const FormSpace& sb, const FormSpace& sa, const Poly& f);

struct ObstructionData {
  NormalCochain mu;                                       // written in patch i's generators
  std::map<std::pair<int, int>, std::vector<Poly>> h;     // f^B_i - D^B f^B_j = eta h
  std::vector<std::vector<Poly>> lifts;                   // f^B_i
  std::map<std::pair<int, int>, PolyMatrix> transition;   // D^B
  bool cocycle = false;
};

/// Lifts Y' to B patchwise (section lifts unless `lifts` is given) and reads
/// off the obstruction cochain. Throws InvalidInput if a supplied lift does
/// not reduce to f^A, NotWellDefined if a difference is not in eta R.
ObstructionData lift_and_obstruct(const Cover& c, const SmallExtension& e, const EmbeddedDeformation& y,
                                  const std::optional<std::vector<std::vector<Poly>>>& lifts = std::nullopt);

/// v_e(Y', g) = g(eta) mu.
NormalCochain v_e(const Cover& c, const SmallExtension& e, const EmbeddedDeformation& y, const Rat& g_eta);

enum class LiftStrategy { GlobalLift, Perturbed };

/// delta_1 of a 0-cocycle of T_A-classes: lift each patch numerator along the
/// section (plus [eta gamma_i / f_i] when perturbed) and restrict to overlaps.
ClassCochain delta_1(const Cover& c, const SmallExtension& e, const ClassCochain& alpha,
                     LiftStrategy strategy = LiftStrategy::GlobalLift, unsigned seed = 1);
bool is_zero(const ClassCochain& c);
/// alpha_ik = alpha_ij + alpha_jk on every triple, restricted to U_ijk in
/// patch i's generators.
bool is_cocycle(const Cover& c, const ClassCochain& alpha);

enum class H1Status { Coboundary, NonzeroUpToBound, Inconclusive, NotCocycle };
const char* to_string(H1Status s);

struct H1Verdict {
  H1Status status = H1Status::Inconclusive;
  int degree_bound = 0;
  int exponent = 0;          // class cochains: exponent of the witness space
  Index unknowns = 0;
  Index equations = 0;
  bool witness_verified = false;
  std::optional<NormalCochain> normal_witness;
  std::optional<ClassCochain> class_witness;
  std::string note;
};

/// Searches a 0-cochain nu with coefficients of degree <= D and delta nu = mu.
/// InvalidInput unless mu is a cocycle.
H1Verdict cech_h1_test(const Cover& c, const NormalCochain& mu, int degree_bound);
/// Same for classes, with witness numerators of degree <= D over the
/// exponents max(a) .. max(a) + 1 of the cochain. InvalidInput unless alpha
/// is a cocycle.
H1Verdict cech_h1_test(const Cover& c, const ClassCochain& alpha, int degree_bound);

struct SemiregReport {
  ObstructionData obstruction;
  Rat g_eta;
  ClassCochain left, right;  // pi(g h) and delta_e of the lifted T_A classes
  std::map<std::pair<int, int>, bool> entry_equal;
  bool cochain_equal = false;
  bool cochain_cocycle = false;  // verdict NotCocycle when false
  ClassCochain delta_global;  // delta_1 with the global lift
  bool delta_global_zero = false;
  H1Verdict verdict;
};

/// Computes both sides of the semiregularity square on the cover. Throws
/// HypothesisViolated unless e is principal with d(eta) injective.
SemiregReport semireg_verify(const Cover& c, const SmallExtension& e, const EmbeddedDeformation& y,
                             const Rat& g_eta, int degree_bound,
                             const std::optional<std::vector<std::vector<Poly>>>& lifts = std::nullopt);

/// Deformation over A' obtained by applying gamma : A -> A' to the coefficients.
EmbeddedDeformation base_change(const Cover& c, const EmbeddedDeformation& y, const AlgebraMorphism& gamma);

}  // namespace obslab
