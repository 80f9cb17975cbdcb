#pragma once

#include <optional>
#include <string>
#include <vector>

#include "obslab/artin.hpp"
#include "obslab/form.hpp"
#include "obslab/local_cohomology.hpp"

namespace obslab {

using PolyMatrix = Matrix<Poly>;

/// 0 <- L_0 <- L_1 <- ... <- L_n with M_l : L_l -> L_{l-1}.
struct PerfectComplex {
  FormSpace space;
  std::vector<Index> ranks;
  std::vector<PolyMatrix> maps;  // maps[l-1] = M_l

  const Ring& ring() const { return space.ring(); }
  int length() const { return static_cast<int>(maps.size()); }
  const PolyMatrix& M(int l) const { return maps.at(static_cast<size_t>(l - 1)); }
  /// M_l M_{l+1} = 0 in the ring, for all l.
  bool is_complex() const;
};

/// InvalidInput on shape errors or when the complex property fails.
PerfectComplex make_complex(const FormSpace& space, const std::vector<PolyMatrix>& maps);

/// Koszul complex, L_l = Lambda^l R^p with basis e_I, I increasing, and
/// d(e_I) = sum_k (-1)^(k-1) f_{i_k} e_{I - i_k}.
struct KoszulData {
  std::vector<Poly> sequence;
  std::vector<std::vector<DiffIndex>> bases;  // bases[l] lists the I with |I| = l
  PerfectComplex complex;

  const Ring& ring() const { return complex.ring(); }
  const FormSpace& space() const { return complex.space; }
  int length() const { return static_cast<int>(sequence.size()); }
};

/// InvalidInput if p = 0 or some f_i is a unit.
KoszulData koszul(const FormSpace& space, const std::vector<Poly>& f);
KoszulData koszul(const Ring& ring, const std::vector<Poly>& f);

enum class Regularity { Certified, Refuted, Inconclusive };
const char* to_string(Regularity r);

struct RegularityVerdict {
  Regularity status = Regularity::Inconclusive;
  std::string method;
  int position = -1;             // refuted: f_position is a zero divisor mod the earlier ones
  std::optional<Poly> witness;   // refuted: q not in (f_<position) with q f_position in it
};

/// Certified when the leading monomials of the sequence, with inverses cleared
/// and algebra variables set to zero, are pairwise coprime. Otherwise decided
/// by exact colon ideals (f_1..f_{k-1}) : f_k in the ambient polynomial ring.
RegularityVerdict regularity_check(const Ring& ring, const std::vector<Poly>& f);
RegularityVerdict regularity_check(const KoszulData& k);

/// Local fundamental class c_l = (1/p!) dM_l dM_{l+1} ... dM_{l+p-1}, a map
/// L_{l+p-1} -> L_{l-1} (x) Omega^p, for 1 <= l <= n - p + 1.
struct FundamentalClass {
  int degree = 0;
  std::vector<FormMatrix> components;  // components[l-1] = c_l
  bool cocycle = false;

  const FormMatrix& c(int l) const { return components.at(static_cast<size_t>(l - 1)); }
};

/// Cocycle identity M_{l-1} c_l = (-1)^p c_{l-1} M_{l+p-1}, checked exactly.
FundamentalClass fundamental_class(const PerfectComplex& f, int p);
bool fundamental_cocycle_holds(const PerfectComplex& f, const FundamentalClass& c);

/// Koszul resolution with the single map L_p -> L_0 (x) Omega^p given by omega.
struct ExtClassDiagram {
  FormSpace space;
  std::vector<Poly> sequence;   // the resolved sequence over R (x) A
  std::vector<Poly> reference;  // sequence mod m_A
  PForm omega;
};

/// omega = df^A_1 ^ ... ^ df^A_p.
ExtClassDiagram chern_koszul(const KoszulData& k);
/// omega - df_1 ^ ... ^ df_p for the reference sequence.
ExtClassDiagram reduce_relative(const ExtClassDiagram& beta);
/// [omega / (f_1 ... f_p)] over the reference sequence, the limit of the
/// diagram. NotRegular if either sequence is not certified.
LocalCohClass ext_to_loc(const ExtClassDiagram& beta);

/// [c_1 / (f_1 ... f_p)] where c_1 : L_p -> L_0 (x) Omega^p is the single
/// component reaching L_0; equals (-1)^(p(p-1)/2) [df_1 ^ ... ^ df_p / f].
/// Over R (x) A the denominators f^A are rewritten over the reference sequence.
LocalCohClass newton_class(const KoszulData& k);

/// Sets algebra variables to zero and drops their differentials.
Poly augment(const Ring& ring, const Poly& f);
PForm augment(const Ring& ring, const PForm& w);

}  // namespace obslab
