#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "obslab/groebner.hpp"

namespace obslab {

enum class VarKind { Space, Inverse, Artin };

/// Quotient of a polynomial ring. Inverse variables u carry the relation
/// u*g - 1 for their declared g; Artin variables generate an artinian
/// coefficient algebra and always come last.
class Ring {
 public:
  Ring() = default;
  static Ring polynomial(const std::vector<std::string>& names,
                         MonomialOrder order = MonomialOrder::DegRevLex);

  /// Adjoins an inverse of g (a polynomial in the current variables).
  Ring localized(const Poly& g, const std::string& inverse_name) const;
  /// Appends Artin variables with the given relations (in the enlarged variable set).
  Ring with_artin(const std::vector<std::string>& names, const std::vector<Poly>& relations) const;

  int nvars() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<VarKind>& kinds() const { return kinds_; }
  VarKind kind(int v) const { return kinds_[v]; }
  /// For an inverse variable, the element it inverts.
  const Poly& inverted(int v) const { return inverted_[v]; }
  const std::vector<Poly>& relations() const { return relations_; }
  const GroebnerBasis& gb() const { return *gb_; }
  MonomialOrder order() const { return order_; }

  std::vector<int> space_vars() const;
  std::vector<int> artin_vars() const;
  /// Variables whose differentials are kept (everything but inverse variables).
  std::vector<int> differential_vars() const;
  bool has_artin() const { return !artin_vars().empty(); }
  int index_of(const std::string& name) const;  // -1 when absent

  Poly var(int v) const { return Poly::variable(nvars(), v); }
  Poly one() const { return Poly::constant(nvars(), 1); }
  Poly zero() const { return Poly::constant(nvars(), 0); }
  Poly parse(const std::string& text) const;
  Poly embed(const Poly& p) const { return p.with_nvars(nvars()); }
  Poly reduce(const Poly& p) const;
  bool is_zero(const Poly& p) const { return reduce(p).is_zero(); }
  bool equal(const Poly& a, const Poly& b) const { return is_zero(a - b); }
  std::string str(const Poly& p) const { return p.str(names_); }

  /// Inverse of h in this ring, if h is a unit.
  std::optional<Poly> inverse(const Poly& h) const;
  /// Groebner basis of the ring relations together with extra generators.
  GroebnerBasis ideal_with(const std::vector<Poly>& extra, bool track = false) const;

  /// The subring without Artin variables (same leading variables).
  Ring base() const;

 private:
  void rebuild();

  std::vector<std::string> names_;
  std::vector<VarKind> kinds_;
  std::vector<Poly> inverted_;
  std::vector<Poly> relations_;
  MonomialOrder order_ = MonomialOrder::DegRevLex;
  std::shared_ptr<const GroebnerBasis> gb_;
};

/// Ring homomorphism given by images of the source variables.
class RingMap {
 public:
  RingMap() = default;
  /// `images` lists targets of the non-inverse source variables in order;
  /// inverse variables are sent to inverses of the images of their g.
  /// Throws NotWellDefined when a relation does not map to zero or an
  /// inverted element does not map to a unit.
  static RingMap make(const Ring& source, const Ring& target, const std::vector<Poly>& images);
  static RingMap identity(const Ring& ring);

  const Ring& source() const { return source_; }
  const Ring& target() const { return target_; }
  const std::vector<Poly>& images() const { return images_; }
  Poly apply(const Poly& p) const;
  RingMap then(const RingMap& next) const;  // next after this

 private:
  Ring source_, target_;
  std::vector<Poly> images_;
};

}  // namespace obslab
