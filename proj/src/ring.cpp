#include "obslab/ring.hpp"

#include <algorithm>

#include "obslab/error.hpp"

namespace obslab {

Ring Ring::polynomial(const std::vector<std::string>& names, MonomialOrder order) {
  Ring r;
  r.names_ = names;
  r.kinds_.assign(names.size(), VarKind::Space);
  r.inverted_.assign(names.size(), Poly());
  r.order_ = order;
  for (size_t i = 0; i < names.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (names[i] == names[j]) throw Error(ErrorKind::InvalidInput, "duplicate variable " + names[i]);
  r.rebuild();
  return r;
}

void Ring::rebuild() { gb_ = std::make_shared<GroebnerBasis>(groebner(relations_, nvars(), order_)); }

Ring Ring::localized(const Poly& g, const std::string& inverse_name) const {
  if (has_artin()) throw Error(ErrorKind::InvalidInput, "localize before adjoining Artin variables");
  if (index_of(inverse_name) >= 0)
    throw Error(ErrorKind::InvalidInput, "duplicate variable " + inverse_name);
  Ring r = *this;
  int n = nvars() + 1;
  r.names_.push_back(inverse_name);
  r.kinds_.push_back(VarKind::Inverse);
  for (auto& p : r.relations_) p = p.with_nvars(n);
  for (auto& p : r.inverted_)
    if (p.nvars() > 0) p = p.with_nvars(n);
  Poly gg = g.with_nvars(n);
  r.inverted_.push_back(gg);
  r.relations_.push_back(Poly::variable(n, n - 1) * gg - Poly::constant(n, 1));
  r.rebuild();
  return r;
}

Ring Ring::with_artin(const std::vector<std::string>& names, const std::vector<Poly>& relations) const {
  Ring r = *this;
  int n = nvars() + static_cast<int>(names.size());
  for (const auto& nm : names) {
    if (r.index_of(nm) >= 0) throw Error(ErrorKind::InvalidInput, "duplicate variable " + nm);
    r.names_.push_back(nm);
    r.kinds_.push_back(VarKind::Artin);
    r.inverted_.push_back(Poly());
  }
  for (auto& p : r.relations_) p = p.with_nvars(n);
  for (auto& p : r.inverted_)
    if (p.nvars() > 0) p = p.with_nvars(n);
  for (const auto& p : relations) r.relations_.push_back(p.with_nvars(n));
  r.rebuild();
  return r;
}

std::vector<int> Ring::space_vars() const {
  std::vector<int> out;
  for (int v = 0; v < nvars(); ++v)
    if (kinds_[v] == VarKind::Space) out.push_back(v);
  return out;
}

std::vector<int> Ring::artin_vars() const {
  std::vector<int> out;
  for (int v = 0; v < nvars(); ++v)
    if (kinds_[v] == VarKind::Artin) out.push_back(v);
  return out;
}

std::vector<int> Ring::differential_vars() const {
  std::vector<int> out;
  for (int v = 0; v < nvars(); ++v)
    if (kinds_[v] != VarKind::Inverse) out.push_back(v);
  return out;
}

int Ring::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

Poly Ring::parse(const std::string& text) const { return parse_poly(text, names_); }

Poly Ring::reduce(const Poly& p) const { return normal_form(p, *gb_); }

std::optional<Poly> Ring::inverse(const Poly& h) const {
  GroebnerBasis gb = ideal_with({h}, true);
  if (!gb.is_unit()) return std::nullopt;
  Lift l = lift(one(), gb);
  // Inputs are the relations followed by h.
  return reduce(l.cofactors.back());
}

GroebnerBasis Ring::ideal_with(const std::vector<Poly>& extra, bool track) const {
  std::vector<Poly> gens = relations_;
  for (const auto& p : extra) gens.push_back(embed(p));
  return groebner(gens, nvars(), order_, track);
}

Ring Ring::base() const {
  auto av = artin_vars();
  if (av.empty()) return *this;
  int n = av.front();
  Ring r;
  r.names_.assign(names_.begin(), names_.begin() + n);
  r.kinds_.assign(kinds_.begin(), kinds_.begin() + n);
  r.order_ = order_;
  for (int v = 0; v < n; ++v) r.inverted_.push_back(inverted_[v].nvars() ? inverted_[v].with_nvars(n) : Poly());
  for (const auto& p : relations_) {
    bool uses = std::any_of(av.begin(), av.end(), [&](int v) { return p.uses_var(v); });
    if (!uses) r.relations_.push_back(p.with_nvars(n));
  }
  r.rebuild();
  return r;
}

RingMap RingMap::make(const Ring& source, const Ring& target, const std::vector<Poly>& images) {
  RingMap m;
  m.source_ = source;
  m.target_ = target;
  size_t next = 0;
  m.images_.resize(source.nvars());
  for (int v = 0; v < source.nvars(); ++v) {
    if (source.kind(v) == VarKind::Inverse) continue;
    if (next >= images.size())
      throw Error(ErrorKind::DimensionMismatch, "ring map needs an image per variable");
    m.images_[v] = target.reduce(target.embed(images[next++]));
  }
  if (next != images.size()) throw Error(ErrorKind::DimensionMismatch, "too many ring map images");
  for (int v = 0; v < source.nvars(); ++v) {
    if (source.kind(v) != VarKind::Inverse) continue;
    // Inverted elements only involve earlier variables.
    std::vector<Poly> partial = m.images_;
    for (auto& p : partial)
      if (p.nvars() != target.nvars()) p = target.zero();
    Poly g = target.reduce(source.inverted(v).substitute(partial));
    auto inv = target.inverse(g);
    if (!inv)
      throw Error(ErrorKind::NotWellDefined,
                  "image of inverted element " + source.str(source.inverted(v)) + " is not a unit");
    m.images_[v] = *inv;
  }
  for (const auto& rel : source.relations())
    if (!m.apply(rel).is_zero())
      throw Error(ErrorKind::NotWellDefined, "relation " + source.str(rel) + " does not map to zero");
  return m;
}

RingMap RingMap::identity(const Ring& ring) {
  RingMap m;
  m.source_ = ring;
  m.target_ = ring;
  for (int v = 0; v < ring.nvars(); ++v) m.images_.push_back(ring.var(v));
  return m;
}

Poly RingMap::apply(const Poly& p) const {
  return target_.reduce(source_.embed(p).substitute(images_));
}

RingMap RingMap::then(const RingMap& next) const {
  RingMap m;
  m.source_ = source_;
  m.target_ = next.target_;
  for (const auto& img : images_) m.images_.push_back(next.apply(img));
  return m;
}

}  // namespace obslab
