#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "obslab/artin.hpp"
#include "obslab/form.hpp"
#include "obslab/groebner.hpp"

namespace obslab {

/// H^p_J of the form modules over R (x) A, J generated by a regular sequence
/// f_1..f_p of the base ring R. Classes are generalized fractions
/// [w / (f_1^a ... f_p^a)].
class LocalCohModule {
 public:
  /// NotRegular unless the sequence is certified regular on R.
  static std::shared_ptr<const LocalCohModule> make(const FormSpace& space,
                                                    const std::vector<Poly>& f);
  /// Same, without the regularity certificate (caller already holds one).
  static std::shared_ptr<const LocalCohModule> make_trusted(const FormSpace& space,
                                                            const std::vector<Poly>& f);

  const FormSpace& space() const { return space_; }
  const Ring& ring() const { return space_.ring(); }
  const Ring& base() const { return base_; }
  /// Sequence embedded in the full ring.
  const std::vector<Poly>& sequence() const { return f_; }
  int length() const { return static_cast<int>(f_.size()); }
  Poly product() const;

  /// Base-ring Groebner basis of (f_1^a, ..., f_p^a) plus the ring relations.
  const GroebnerBasis& power_ideal(int a) const;
  /// Tracked basis of (f_1...f_p, f_1^a, ..., f_p^a) plus the relations.
  const GroebnerBasis& drop_ideal(int a) const;
  bool same_as(const LocalCohModule& o) const;

  LocalCohModule(FormSpace space, std::vector<Poly> f);

 private:
  FormSpace space_;
  Ring base_;
  std::vector<Poly> f_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<GroebnerBasis>> power_, drop_;
};
using LocalCohModulePtr = std::shared_ptr<const LocalCohModule>;

struct LocalCohClass {
  LocalCohModulePtr module;
  PForm numerator;
  int exponent = 1;
};

/// [w / f^a], canonicalized.
LocalCohClass make_class(const LocalCohModulePtr& module, const PForm& numerator, int exponent = 1);
LocalCohClass zero_class(const LocalCohModulePtr& module, int degree);

/// Minimal exponent, numerator in normal form coordinatewise.
LocalCohClass canonicalize(const LocalCohClass& c);
/// Same class written with exponent a >= c.exponent.
LocalCohClass raise(const LocalCohClass& c, int a);
bool is_zero(const LocalCohClass& c);
bool equal(const LocalCohClass& a, const LocalCohClass& b);

/// SequenceMismatch unless both classes live in the same module.
LocalCohClass add(const LocalCohClass& a, const LocalCohClass& b);
LocalCohClass subtract(const LocalCohClass& a, const LocalCohClass& b);
LocalCohClass scale(const Poly& r, const LocalCohClass& c);
LocalCohClass scale(const Rat& r, const LocalCohClass& c);

/// Smallest b with f_i^b = sum_j D_ij g_j^a, and det D. NotRegular unless
/// (f) and (g) have the same radical, decided in the base ring.
struct PowerTransition {
  int exponent = 1;
  Poly det;
};
PowerTransition power_transition(const LocalCohModule& m, const std::vector<Poly>& g, int a);

/// [w / g^a] rewritten over the module's sequence, for a sequence g of the
/// full ring with the same radical (transformation law, det of the
/// transition matrix).
LocalCohClass transform(const LocalCohModulePtr& module, const PForm& numerator,
                        const std::vector<Poly>& g, int exponent = 1);
/// Image under a ring map: the numerator is pulled back and the denominator
/// becomes the image sequence, then rewritten over `target`'s sequence.
LocalCohClass restrict_class(const LocalCohClass& c, const RingMap& map,
                             const LocalCohModulePtr& target);

/// Over R (x) k[eps]: keeps the w2 with w2 ^ deps in the numerator, drops
/// the rest. The result lives in H^p_J(Omega_R).
LocalCohClass contract_eps(const LocalCohClass& c);
/// Numerator component of bidegree (j1, j2); BadBidegree unless j1 + j2 is
/// the numerator degree.
LocalCohClass bidegree_project(const LocalCohClass& c, int j1, int j2);

/// "[numerator / (f1 ... fp)^a]".
std::string str(const LocalCohClass& c);

/// Extends R -> S to R (x) A -> S (x) A (identity on the algebra variables).
RingMap extend_to_algebra(const RingMap& base_map, const FormSpace& source, const FormSpace& target);

/// Determinant of a square matrix of ring elements, reduced in `ring`.
Poly determinant(const Ring& ring, const std::vector<std::vector<Poly>>& m);

}  // namespace obslab
