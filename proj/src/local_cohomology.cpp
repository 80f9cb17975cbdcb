#include "obslab/local_cohomology.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "obslab/error.hpp"
#include "obslab/koszul.hpp"

namespace obslab {

namespace {

using BaseCoords = std::map<FormKey, Poly>;

BaseCoords base_coords(const LocalCohModule& m, const PForm& w) {
  BaseCoords out;
  const int nb = m.base().nvars();
  for (auto& [k, c] : m.space().coords(w)) out.emplace(k, c.with_nvars(nb));
  return out;
}

PForm from_base_coords(const LocalCohModule& m, const BaseCoords& c) {
  FormCoords full;
  const int n = m.ring().nvars();
  for (const auto& [k, q] : c)
    if (!q.is_zero()) full.emplace(k, q.with_nvars(n));
  return m.space().form(full);
}

std::string registry_key(const FormSpace& space, const std::vector<Poly>& f) {
  std::ostringstream os;
  const Ring& r = space.ring();
  for (const auto& nm : r.names()) os << nm << ',';
  os << '|';
  for (int v = 0; v < r.nvars(); ++v) os << static_cast<int>(r.kind(v));
  os << '|';
  for (const auto& p : r.relations()) os << r.str(p) << ';';
  os << '|';
  for (const auto& p : f) os << r.str(p) << ';';
  return os.str();
}

LocalCohModulePtr make_module(const FormSpace& space, const std::vector<Poly>& f, bool check) {
  static std::mutex mu;
  static std::map<std::string, LocalCohModulePtr> registry;
  const Ring& r = space.ring();
  std::vector<Poly> emb;
  for (const auto& p : f) {
    Poly q = r.reduce(r.embed(p));
    for (int v : r.artin_vars())
      if (q.uses_var(v))
        throw Error(ErrorKind::InvalidInput, "local cohomology sequence must live in the base ring");
    emb.push_back(q);
  }
  std::string key = registry_key(space, emb) + (check ? "" : "!");
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
  }
  if (check && !emb.empty()) {
    Ring base = r.base();
    std::vector<Poly> fb;
    for (const auto& p : emb) fb.push_back(p.with_nvars(base.nvars()));
    RegularityVerdict v = regularity_check(base, fb);
    if (v.status != Regularity::Certified)
      throw Error(ErrorKind::NotRegular, "sequence is not certified regular (" + v.method + ")");
  }
  auto m = std::make_shared<const LocalCohModule>(space, emb);
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = registry.emplace(key, m);
  return it->second;
}

void require_same(const LocalCohClass& a, const LocalCohClass& b) {
  if (!a.module || !b.module) throw Error(ErrorKind::InvalidInput, "class without a module");
  if (a.module != b.module && !a.module->same_as(*b.module))
    throw Error(ErrorKind::SequenceMismatch, "classes over different sequences");
}

}  // namespace

LocalCohModule::LocalCohModule(FormSpace space, std::vector<Poly> f)
    : space_(std::move(space)), base_(space_.ring().base()), f_(std::move(f)) {}

LocalCohModulePtr LocalCohModule::make(const FormSpace& space, const std::vector<Poly>& f) {
  return make_module(space, f, true);
}

LocalCohModulePtr LocalCohModule::make_trusted(const FormSpace& space, const std::vector<Poly>& f) {
  return make_module(space, f, false);
}

Poly LocalCohModule::product() const {
  Poly p = ring().one();
  for (const auto& g : f_) p *= g;
  return ring().reduce(p);
}

const GroebnerBasis& LocalCohModule::power_ideal(int a) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = power_[a];
  if (!slot) {
    std::vector<Poly> gens;
    for (const auto& g : f_) gens.push_back(g.with_nvars(base_.nvars()).pow(static_cast<unsigned>(a)));
    slot = std::make_unique<GroebnerBasis>(base_.ideal_with(gens));
  }
  return *slot;
}

const GroebnerBasis& LocalCohModule::drop_ideal(int a) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = drop_[a];
  if (!slot) {
    std::vector<Poly> gens;
    Poly prod = base_.one();
    for (const auto& g : f_) prod *= g.with_nvars(base_.nvars());
    gens.push_back(prod);
    for (const auto& g : f_) gens.push_back(g.with_nvars(base_.nvars()).pow(static_cast<unsigned>(a)));
    slot = std::make_unique<GroebnerBasis>(base_.ideal_with(gens, true));
  }
  return *slot;
}

bool LocalCohModule::same_as(const LocalCohModule& o) const {
  if (ring().names() != o.ring().names() || f_.size() != o.f_.size()) return false;
  if (space_.algebra().names() != o.space_.algebra().names()) return false;
  if (!same_ideal(ring().gb(), o.ring().gb())) return false;
  for (size_t i = 0; i < f_.size(); ++i)
    if (!ring().equal(f_[i], o.f_[i])) return false;
  return true;
}

LocalCohClass make_class(const LocalCohModulePtr& module, const PForm& numerator, int exponent) {
  if (exponent < 1) throw Error(ErrorKind::InvalidInput, "exponent must be positive");
  return canonicalize(LocalCohClass{module, numerator, exponent});
}

LocalCohClass zero_class(const LocalCohModulePtr& module, int degree) {
  return LocalCohClass{module, PForm::zero(degree), 1};
}

LocalCohClass canonicalize(const LocalCohClass& c) {
  const LocalCohModule& m = *c.module;
  LocalCohClass out{c.module, PForm::zero(c.numerator.degree()), 1};
  if (m.length() == 0) {
    PForm w = m.space().canonical(c.numerator);
    if (!w.is_zero()) out.numerator = w;
    return out;
  }
  BaseCoords coords = base_coords(m, c.numerator);
  int a = c.exponent;
  const size_t nrel = m.base().relations().size();
  while (a > 1 && !coords.empty()) {
    const GroebnerBasis& gb = m.drop_ideal(a);
    BaseCoords next;
    bool ok = true;
    for (const auto& [k, q] : coords) {
      Lift l = lift(q, gb);
      if (!l.remainder.is_zero()) {
        ok = false;
        break;
      }
      next.emplace(k, l.cofactors[nrel]);
    }
    if (!ok) break;
    coords = std::move(next);
    --a;
  }
  if (coords.empty()) return out;
  const GroebnerBasis& gb = m.power_ideal(a);
  BaseCoords reduced;
  for (const auto& [k, q] : coords) {
    Poly r = normal_form(q, gb);
    if (!r.is_zero()) reduced.emplace(k, r);
  }
  if (reduced.empty()) return out;
  out.numerator = from_base_coords(m, reduced);
  out.exponent = a;
  return out;
}

LocalCohClass raise(const LocalCohClass& c, int a) {
  if (a < c.exponent) throw Error(ErrorKind::InvalidInput, "cannot lower the exponent by raising");
  if (a == c.exponent) return c;
  const LocalCohModule& m = *c.module;
  Poly factor = m.product().pow(static_cast<unsigned>(a - c.exponent));
  return LocalCohClass{c.module, reduce(m.ring(), factor * c.numerator), a};
}

bool is_zero(const LocalCohClass& c) { return canonicalize(c).numerator.is_zero(); }

bool equal(const LocalCohClass& a, const LocalCohClass& b) { return is_zero(subtract(a, b)); }

LocalCohClass add(const LocalCohClass& a, const LocalCohClass& b) {
  require_same(a, b);
  if (a.numerator.is_zero()) return canonicalize(b);
  if (b.numerator.is_zero()) return canonicalize(a);
  if (a.numerator.degree() != b.numerator.degree())
    throw Error(ErrorKind::DimensionMismatch, "classes of different form degree");
  int e = std::max(a.exponent, b.exponent);
  LocalCohClass ra = raise(a, e), rb = raise(b, e);
  return canonicalize(LocalCohClass{a.module, ra.numerator + rb.numerator, e});
}

LocalCohClass subtract(const LocalCohClass& a, const LocalCohClass& b) {
  return add(a, scale(Rat(-1), b));
}

LocalCohClass scale(const Poly& r, const LocalCohClass& c) {
  const Ring& ring = c.module->ring();
  return canonicalize(LocalCohClass{c.module, reduce(ring, ring.embed(r) * c.numerator), c.exponent});
}

LocalCohClass scale(const Rat& r, const LocalCohClass& c) {
  return LocalCohClass{c.module, c.numerator.scaled(r), c.exponent};
}

Poly determinant(const Ring& ring, const std::vector<std::vector<Poly>>& m) {
  const size_t n = m.size();
  if (n == 0) return ring.one();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Poly det = ring.zero();
  do {
    int sign = 1;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Poly term = ring.one();
    for (size_t i = 0; i < n; ++i) term *= ring.embed(m[i][static_cast<size_t>(perm[i])]);
    det += sign > 0 ? term : -term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return ring.reduce(det);
}

namespace {

constexpr int kMaxPowerSearch = 64;

Poly without_artin(const Ring& ring, const Ring& base, const Poly& f) {
  std::vector<Poly> images;
  for (int v = 0; v < ring.nvars(); ++v)
    images.push_back(ring.kind(v) == VarKind::Artin ? base.zero() : base.var(v));
  return base.reduce(ring.reduce(f).substitute(images));
}

/// Every f lies in the radical of (g), tested by inverting f.
bool in_radical(const Ring& base, const std::vector<Poly>& f, const std::vector<Poly>& g) {
  for (const auto& x : f) {
    if (base.is_zero(x)) continue;
    Ring inv = base.localized(x, "_rad");
    std::vector<Poly> ge;
    for (const auto& y : g) ge.push_back(inv.embed(y));
    if (!inv.ideal_with(ge).is_unit()) return false;
  }
  return true;
}

}  // namespace

PowerTransition power_transition(const LocalCohModule& m, const std::vector<Poly>& g, int a) {
  const Ring& ring = m.ring();
  const int p = m.length();
  std::vector<Poly> fb, gb_base;
  for (const auto& x : m.sequence()) fb.push_back(without_artin(ring, m.base(), x));
  for (const auto& x : g) gb_base.push_back(without_artin(ring, m.base(), x));
  if (!in_radical(m.base(), fb, gb_base) || !in_radical(m.base(), gb_base, fb))
    throw Error(ErrorKind::NotRegular, "sequences do not generate the same support");
  std::vector<Poly> powers;
  for (const auto& x : g) powers.push_back(ring.reduce(ring.embed(x)).pow(static_cast<unsigned>(a)));
  GroebnerBasis gb = ring.ideal_with(powers, true);
  const size_t nrel = ring.relations().size();
  for (int b = 1; b <= kMaxPowerSearch; ++b) {
    std::vector<std::vector<Poly>> d;
    bool ok = true;
    for (int i = 0; i < p && ok; ++i) {
      Lift l = lift(m.sequence()[static_cast<size_t>(i)].pow(static_cast<unsigned>(b)), gb);
      if (!l.remainder.is_zero()) {
        ok = false;
        break;
      }
      d.emplace_back(l.cofactors.begin() + static_cast<long>(nrel), l.cofactors.end());
    }
    if (ok) return {b, determinant(ring, d)};
  }
  throw Error(ErrorKind::FeasibilityExceeded, "power of the sequence beyond the search cap");
}

LocalCohClass transform(const LocalCohModulePtr& module, const PForm& numerator,
                        const std::vector<Poly>& g, int exponent) {
  const LocalCohModule& m = *module;
  const Ring& ring = m.ring();
  const int p = m.length();
  if (static_cast<int>(g.size()) != p)
    throw Error(ErrorKind::SequenceMismatch, "sequence length differs from the module's");
  if (p == 0) return make_class(module, numerator, 1);
  std::vector<Poly> ge;
  bool same = true;
  for (int i = 0; i < p; ++i) {
    ge.push_back(ring.reduce(ring.embed(g[static_cast<size_t>(i)])));
    if (!ring.equal(ge.back(), m.sequence()[static_cast<size_t>(i)])) same = false;
  }
  if (same) return make_class(module, numerator, exponent);
  PowerTransition t = power_transition(m, ge, exponent);
  return make_class(module, reduce(ring, t.det * numerator), t.exponent);
}

LocalCohClass restrict_class(const LocalCohClass& c, const RingMap& map, const LocalCohModulePtr& target) {
  PForm w = pullback(map, c.numerator);
  std::vector<Poly> g;
  for (const auto& f : c.module->sequence()) g.push_back(map.apply(f));
  return transform(target, w, g, c.exponent);
}

LocalCohClass contract_eps(const LocalCohClass& c) {
  const LocalCohModule& m = *c.module;
  const ArtinAlgebra& alg = m.space().algebra();
  if (alg.nvars() != 1 || alg.dim() != 2)
    throw Error(ErrorKind::InvalidInput, "contraction needs coefficients in k[eps]");
  FormSpace target_space(m.base(), ArtinAlgebra::field());
  std::vector<Poly> fb;
  for (const auto& f : m.sequence()) fb.push_back(f.with_nvars(m.base().nvars()));
  LocalCohModulePtr target = LocalCohModule::make_trusted(target_space, fb);
  int deg = std::max(c.numerator.degree() - 1, 0);
  PForm out = PForm::zero(deg);
  const int nb = m.base().nvars();
  for (const auto& [k, q] : m.space().coords(c.numerator)) {
    if (k.adeg != 1) continue;
    out += PForm::monomial(k.space, q.with_nvars(nb));
  }
  return make_class(target, out, c.exponent);
}

LocalCohClass bidegree_project(const LocalCohClass& c, int j1, int j2) {
  const LocalCohModule& m = *c.module;
  if (j1 < 0 || j2 < 0 || j1 + j2 != c.numerator.degree())
    throw Error(ErrorKind::BadBidegree, "bidegree does not sum to the numerator degree");
  FormCoords keep;
  for (auto& [k, q] : m.space().coords(c.numerator))
    if (static_cast<int>(k.space.size()) == j1 && k.adeg == j2) keep.emplace(k, q);
  PForm w = keep.empty() ? PForm::zero(c.numerator.degree()) : m.space().form(keep);
  return canonicalize(LocalCohClass{c.module, w, c.exponent});
}

std::string str(const LocalCohClass& c) {
  const LocalCohModule& m = *c.module;
  std::string num = c.numerator.is_zero() ? "0" : str(m.ring(), c.numerator);
  std::string den;
  for (const auto& f : m.sequence()) {
    std::string s = "(" + m.ring().str(f) + ")";
    if (c.exponent > 1) s += "^" + std::to_string(c.exponent);
    den += den.empty() ? s : "*" + s;
  }
  if (den.empty()) return "[" + num + "]";
  return "[" + num + " / " + den + "]";
}

RingMap extend_to_algebra(const RingMap& base_map, const FormSpace& source, const FormSpace& target) {
  std::vector<Poly> images;
  const Ring& sb = base_map.source();
  for (int v = 0; v < sb.nvars(); ++v)
    if (sb.kind(v) != VarKind::Inverse) images.push_back(base_map.images()[static_cast<size_t>(v)]);
  if (source.algebra().nvars() != target.algebra().nvars())
    throw Error(ErrorKind::DimensionMismatch, "algebras differ");
  for (int i = 0; i < source.algebra().nvars(); ++i)
    images.push_back(target.from_algebra(Poly::variable(target.algebra().nvars(), i)));
  return RingMap::make(source.ring(), target.ring(), images);
}

}  // namespace obslab
