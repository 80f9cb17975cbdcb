#include "obslab/cech.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "obslab/error.hpp"

namespace obslab {

namespace {

constexpr Index kMaxUnknowns = 6000;

using Key = std::pair<int, int>;

std::vector<Poly> reduced(const Ring& ring, const std::vector<Poly>& f) {
  std::vector<Poly> out;
  for (const auto& g : f) out.push_back(ring.reduce(ring.embed(g)));
  return out;
}

std::vector<Poly> map_all(const RingMap& m, const std::vector<Poly>& f) {
  std::vector<Poly> out;
  for (const auto& g : f) out.push_back(m.apply(g));
  return out;
}

/// D with f = D g in the ring, as cofactors after the relations.
PolyMatrix transition_matrix(const Ring& ring, const std::vector<Poly>& f, const std::vector<Poly>& g) {
  const Index p = static_cast<Index>(f.size());
  GroebnerBasis gb = ring.ideal_with(g, true);
  const size_t nrel = ring.relations().size();
  PolyMatrix d(p, p);
  for (Index l = 0; l < p; ++l) {
    Lift lf = lift(ring.embed(f[static_cast<size_t>(l)]), gb);
    if (!lf.remainder.is_zero()) throw Error(ErrorKind::InvalidInput, "ideals differ on an overlap");
    for (Index k = 0; k < p; ++k) d(l, k) = ring.reduce(lf.cofactors[nrel + static_cast<size_t>(k)]);
  }
  return d;
}

PolyMatrix map_matrix(const RingMap& m, const PolyMatrix& d) {
  PolyMatrix out(d.rows(), d.cols());
  for (Index r = 0; r < d.rows(); ++r)
    for (Index c = 0; c < d.cols(); ++c) out(r, c) = m.apply(d(r, c));
  return out;
}

std::vector<Poly> times(const Ring& ring, const PolyMatrix& d, const std::vector<Poly>& v) {
  std::vector<Poly> out;
  for (Index r = 0; r < d.rows(); ++r) {
    Poly s = ring.zero();
    for (Index c = 0; c < d.cols(); ++c) s += ring.embed(d(r, c)) * ring.embed(v[static_cast<size_t>(c)]);
    out.push_back(ring.reduce(s));
  }
  return out;
}

bool same_images(const Ring& ring, const RingMap& a, const RingMap& b) {
  for (size_t v = 0; v < a.images().size(); ++v)
    if (!ring.equal(a.images()[v], b.images()[v])) return false;
  return true;
}

PForm embed_form(const PForm& w, int nvars) {
  PForm out = PForm::zero(w.degree());
  for (const auto& [idx, c] : w.terms()) out.add_term(idx, c.with_nvars(nvars));
  return out;
}

/// df_1 ^ .. ^ df_p with factor l replaced by `w` (a 1-form) or omitted (w empty).
PForm wedge_replacing(const std::vector<PForm>& df, size_t l, const std::optional<PForm>& w) {
  PForm out(1);
  for (size_t k = 0; k < df.size(); ++k) {
    if (k == l) {
      if (w) out = out * *w;
      continue;
    }
    out = out * df[k];
  }
  return out;
}

std::vector<PForm> differentials(const Ring& ring, const std::vector<Poly>& f) {
  std::vector<PForm> out;
  for (const auto& g : f) out.push_back(d_total(ring, g));
  return out;
}

bool same_algebra(const ArtinAlgebra& a, const ArtinAlgebra& b) {
  return a.names() == b.names() && a.dim() == b.dim() && same_ideal(a.gb(), b.gb());
}

/// Restriction data for [w / f_i^a] along R_i (x) A -> R_ij (x) A: the
/// restricted class is [det * pullback(w) / f_target^b].
struct Restrictor {
  RingMap map;
  LocalCohModulePtr target;
  Poly det;
  int exponent = 1;

  Restrictor(const RingMap& m, const LocalCohModulePtr& source, const LocalCohModulePtr& tgt, int a)
      : map(m), target(tgt) {
    const Ring& ring = tgt->ring();
    det = ring.one();
    exponent = a;
    const int p = tgt->length();
    if (p == 0) return;
    std::vector<Poly> g = map_all(m, source->sequence());
    bool same = true;
    for (int i = 0; i < p; ++i)
      if (!ring.equal(g[static_cast<size_t>(i)], tgt->sequence()[static_cast<size_t>(i)])) same = false;
    if (same) return;
    PowerTransition t = power_transition(*tgt, g, a);
    det = t.det;
    exponent = t.exponent;
  }

  /// Numerator over the target, exponent `exponent`.
  PForm numerator(const PForm& w) const { return reduce(target->ring(), det * pullback(map, w)); }
};

/// Coordinates of [w / f^b] raised to exponent e, modulo (f^e): keys are
/// (form key, base monomial).
std::map<std::pair<FormKey, Exponent>, Rat> class_coords(const LocalCohModulePtr& m, const PForm& w, int b, int e) {
  std::map<std::pair<FormKey, Exponent>, Rat> out;
  if (w.is_zero()) return out;
  Poly factor = m->product().pow(static_cast<unsigned>(std::max(e - b, 0)));
  PForm raised = factor * w;
  const GroebnerBasis& gb = m->power_ideal(e);
  const int nb = m->base().nvars();
  for (const auto& [k, q] : m->space().coords(raised)) {
    Poly r = normal_form(q.with_nvars(nb), gb);
    for (const auto& [ex, c] : r.terms()) out[{k, ex}] += c;
  }
  return out;
}

/// Form keys of degree q over the space: kept base differentials, algebra
/// degree and Kaehler index. With `reduced`, the unit key of each base
/// subset is left out.
std::vector<FormKey> form_keys(const FormSpace& space, int q, bool reduced) {
  std::vector<int> pool;
  for (int v : space.ring().differential_vars())
    if (v < space.offset()) pool.push_back(v);
  std::optional<Index> unit;
  const KaehlerModule& k0 = space.kaehler(0);
  for (Index s = 0; s < k0.dim(); ++s) {
    PForm rep = k0.representative(s);
    if (rep.coefficient({}).is_constant()) unit = s;
  }
  std::vector<FormKey> out;
  for (int j1 = 0; j1 <= std::min<int>(q, static_cast<int>(pool.size())); ++j1) {
    int j2 = q - j1;
    if (j2 > space.algebra().nvars()) continue;
    const KaehlerModule& km = space.kaehler(j2);
    for (const auto& sub : subsets(pool, j1))
      for (Index s = 0; s < km.dim(); ++s) {
        if (reduced && j2 == 0 && unit && s == *unit) continue;
        out.push_back(FormKey{sub, j2, s});
      }
  }
  return out;
}

Patch& require_patch(std::vector<Patch>& patches, int i) {
  if (i < 0 || i >= static_cast<int>(patches.size())) throw Error(ErrorKind::InvalidInput, "patch index out of range");
  return patches[static_cast<size_t>(i)];
}

}  // namespace

Poly map_coefficients(const AlgebraMorphism& phi, const FormSpace& src, const FormSpace& dst, const Poly& f) {
  Poly out = dst.ring().zero();
  const int n = dst.ring().nvars();
  for (const auto& [r, a] : split_algebra(src, f)) {
    Exponent e(r);
    e.resize(static_cast<size_t>(n), 0);
    out += Poly::monomial(e) * dst.from_algebra(phi.apply(a));
  }
  return dst.ring().reduce(out);
}

const Overlap& Cover::overlap(int i, int j) const {
  for (const auto& o : overlaps)
    if (o.i == i && o.j == j) return o;
  throw Error(ErrorKind::InvalidInput, "no overlap " + std::to_string(i) + "," + std::to_string(j));
}

const Triple* Cover::triple(int i, int j, int k) const {
  for (const auto& t : triples)
    if (t.i == i && t.j == j && t.k == k) return &t;
  return nullptr;
}

Cover make_cover(std::vector<Patch> patches, std::vector<Overlap> overlaps, std::vector<Triple> triples) {
  if (patches.empty()) throw Error(ErrorKind::InvalidInput, "a cover needs at least one patch");
  const size_t p = patches.front().f.size();
  for (auto& pt : patches) {
    if (pt.ring.has_artin()) throw Error(ErrorKind::InvalidInput, "patch rings carry no algebra variables");
    if (pt.f.size() != p) throw Error(ErrorKind::InvalidInput, "sequences of different length");
    pt.f = reduced(pt.ring, pt.f);
    RegularityVerdict v = regularity_check(pt.ring, pt.f);
    if (v.status != Regularity::Certified)
      throw Error(ErrorKind::NotRegular, "sequence on patch " + pt.name + " is not regular");
  }
  for (auto& o : overlaps) {
    if (o.i >= o.j) throw Error(ErrorKind::InvalidInput, "overlaps are listed with i < j");
    const Patch& pi = require_patch(patches, o.i);
    const Patch& pj = require_patch(patches, o.j);
    if (o.from_i.source().names() != pi.ring.names() || o.from_j.source().names() != pj.ring.names())
      throw Error(ErrorKind::InvalidInput, "overlap maps do not start at the patch rings");
    std::vector<Poly> fi = map_all(o.from_i, pi.f), fj = map_all(o.from_j, pj.f);
    o.transition = transition_matrix(o.ring, fi, fj);
    transition_matrix(o.ring, fj, fi);
  }
  std::set<Key> seen;
  for (const auto& o : overlaps)
    if (!seen.insert({o.i, o.j}).second) throw Error(ErrorKind::InvalidInput, "overlap listed twice");
  Cover c{std::move(patches), std::move(overlaps), {}};
  for (auto& t : triples) {
    if (!(t.i < t.j && t.j < t.k)) throw Error(ErrorKind::InvalidInput, "triples are listed with i < j < k");
    const Overlap& ij = c.overlap(t.i, t.j);
    const Overlap& ik = c.overlap(t.i, t.k);
    const Overlap& jk = c.overlap(t.j, t.k);
    if (!same_images(t.ring, ij.from_i.then(t.from_ij), ik.from_i.then(t.from_ik)) ||
        !same_images(t.ring, ij.from_j.then(t.from_ij), jk.from_i.then(t.from_jk)) ||
        !same_images(t.ring, ik.from_j.then(t.from_ik), jk.from_j.then(t.from_jk)))
      throw Error(ErrorKind::NotWellDefined, "maps into a triple overlap do not commute");
  }
  c.triples = std::move(triples);
  return c;
}

Site site(const Cover& c, const std::vector<int>& simplex) {
  if (simplex.size() == 1) {
    const Patch& p = c.patches.at(static_cast<size_t>(simplex[0]));
    return Site{p.ring, p.f};
  }
  if (simplex.size() == 2) {
    const Overlap& o = c.overlap(simplex[0], simplex[1]);
    return Site{o.ring, map_all(o.from_i, c.patches[static_cast<size_t>(o.i)].f)};
  }
  if (simplex.size() == 3) {
    const Triple* t = c.triple(simplex[0], simplex[1], simplex[2]);
    if (!t) throw Error(ErrorKind::InvalidInput, "no such triple overlap");
    const Overlap& o = c.overlap(t->i, t->j);
    return Site{t->ring, map_all(t->from_ij, map_all(o.from_i, c.patches[static_cast<size_t>(t->i)].f))};
  }
  throw Error(ErrorKind::InvalidInput, "simplices have one to three vertices");
}

DeformationData validate_deformation(const Cover& c, const EmbeddedDeformation& y) {
  if (y.f.size() != c.patches.size()) throw Error(ErrorKind::InvalidInput, "one sequence per patch");
  DeformationData out;
  for (size_t i = 0; i < c.patches.size(); ++i) {
    const Patch& pt = c.patches[i];
    FormSpace sa = FormSpace::over(pt.ring, y.algebra);
    if (y.f[i].size() != pt.f.size()) throw Error(ErrorKind::InvalidInput, "deformed sequence length differs");
    std::vector<Poly> fa = reduced(sa.ring(), y.f[i]);
    for (size_t l = 0; l < fa.size(); ++l) {
      Poly g = augment(sa.ring(), fa[l]).with_nvars(pt.ring.nvars());
      if (!pt.ring.equal(g, pt.f[l]))
        throw Error(ErrorKind::InvalidInput, "f^A on patch " + pt.name + " does not reduce to f");
    }
    RegularityVerdict v = regularity_check(sa.ring(), fa);
    if (v.status != Regularity::Certified)
      throw Error(ErrorKind::NotRegular, "deformed sequence on patch " + pt.name + " is not regular");
    out.spaces.push_back(std::move(sa));
  }
  for (const auto& o : c.overlaps) {
    FormSpace s = FormSpace::over(o.ring, y.algebra);
    RingMap mi = extend_to_algebra(o.from_i, out.spaces[static_cast<size_t>(o.i)], s);
    RingMap mj = extend_to_algebra(o.from_j, out.spaces[static_cast<size_t>(o.j)], s);
    std::vector<Poly> fi = map_all(mi, y.f[static_cast<size_t>(o.i)]);
    std::vector<Poly> fj = map_all(mj, y.f[static_cast<size_t>(o.j)]);
    out.transition[{o.i, o.j}] = transition_matrix(s.ring(), fi, fj);
    transition_matrix(s.ring(), fj, fi);
    out.overlap_spaces.emplace(Key{o.i, o.j}, std::move(s));
  }
  return out;
}

NormalCochain normalize(const Cover& c, const NormalCochain& nu) {
  NormalCochain out{nu.degree, {}};
  for (const auto& [simplex, v] : nu.values) {
    Site s = site(c, simplex);
    if (v.size() != s.f.size()) throw Error(ErrorKind::DimensionMismatch, "one value per generator");
    GroebnerBasis gb = s.ring.ideal_with(s.f);
    std::vector<Poly> w;
    for (const auto& x : v) w.push_back(normal_form(s.ring.embed(x), gb));
    out.values[simplex] = std::move(w);
  }
  return out;
}

NormalCochain coboundary(const Cover& c, const NormalCochain& nu) {
  if (nu.degree != 0) throw Error(ErrorKind::InvalidInput, "coboundary of a 0-cochain");
  const size_t p = static_cast<size_t>(c.codim());
  NormalCochain out{1, {}};
  for (const auto& o : c.overlaps) {
    auto get = [&](int i) {
      auto it = nu.values.find({i});
      return it == nu.values.end() ? std::vector<Poly>(p, c.patches[static_cast<size_t>(i)].ring.zero())
                                   : it->second;
    };
    std::vector<Poly> a = map_all(o.from_i, get(o.i));
    std::vector<Poly> b = times(o.ring, o.transition, map_all(o.from_j, get(o.j)));
    std::vector<Poly> d;
    for (size_t l = 0; l < p; ++l) d.push_back(a[l] - b[l]);
    out.values[{o.i, o.j}] = d;
  }
  return normalize(c, out);
}

bool is_cocycle(const Cover& c, const NormalCochain& mu) {
  if (mu.degree != 1) return false;
  const size_t p = static_cast<size_t>(c.codim());
  auto get = [&](int i, int j) {
    auto it = mu.values.find({i, j});
    return it == mu.values.end() ? std::vector<Poly>(p, c.overlap(i, j).ring.zero()) : it->second;
  };
  for (const auto& t : c.triples) {
    const Overlap& ij = c.overlap(t.i, t.j);
    std::vector<Poly> lhs = map_all(t.from_ik, get(t.i, t.k));
    std::vector<Poly> a = map_all(t.from_ij, get(t.i, t.j));
    std::vector<Poly> b = times(t.ring, map_matrix(t.from_ij, ij.transition), map_all(t.from_jk, get(t.j, t.k)));
    Site s = site(c, {t.i, t.j, t.k});
    GroebnerBasis gb = t.ring.ideal_with(s.f);
    for (size_t l = 0; l < p; ++l)
      if (!normal_form(lhs[l] - a[l] - b[l], gb).is_zero()) return false;
  }
  return true;
}

bool equal(const Cover& c, const NormalCochain& a, const NormalCochain& b) {
  NormalCochain d = subtract(c, a, b);
  for (const auto& [k, v] : d.values)
    for (const auto& x : v)
      if (!x.is_zero()) return false;
  return true;
}

NormalCochain scale(const Rat& r, const NormalCochain& nu) {
  NormalCochain out = nu;
  for (auto& [k, v] : out.values)
    for (auto& x : v) x = x.scaled(r);
  return out;
}

NormalCochain subtract(const Cover& c, const NormalCochain& a, const NormalCochain& b) {
  if (a.degree != b.degree) throw Error(ErrorKind::DimensionMismatch, "cochains of different degree");
  NormalCochain out{a.degree, a.values};
  for (const auto& [k, v] : b.values) {
    auto it = out.values.find(k);
    if (it == out.values.end()) {
      out.values[k] = scale(Rat(-1), NormalCochain{b.degree, {{k, v}}}).values[k];
      continue;
    }
    for (size_t l = 0; l < v.size(); ++l) it->second[l] = it->second[l] - v[l];
  }
  return normalize(c, out);
}

const ArtinAlgebra& dual_numbers() {
  static const ArtinAlgebra eps = ArtinAlgebra::truncated("eps", 2);
  return eps;
}

std::vector<Poly> psi(const FormSpace& eps_space, const std::vector<Poly>& f, const std::vector<Poly>& nu) {
  if (f.size() != nu.size()) throw Error(ErrorKind::DimensionMismatch, "one value per generator");
  const Ring& ring = eps_space.ring();
  Poly eps = eps_space.from_algebra(Poly::variable(1, 0));
  std::vector<Poly> out;
  for (size_t l = 0; l < f.size(); ++l) out.push_back(ring.reduce(ring.embed(f[l]) + eps * ring.embed(nu[l])));
  return out;
}

EmbeddedDeformation psi(const Cover& c, const NormalCochain& nu) {
  if (nu.degree != 0) throw Error(ErrorKind::InvalidInput, "psi takes a global section");
  EmbeddedDeformation y{dual_numbers(), {}};
  for (size_t i = 0; i < c.patches.size(); ++i) {
    const Patch& pt = c.patches[i];
    auto it = nu.values.find({static_cast<int>(i)});
    std::vector<Poly> v = it == nu.values.end() ? std::vector<Poly>(pt.f.size(), pt.ring.zero()) : it->second;
    y.f.push_back(psi(FormSpace::over(pt.ring, dual_numbers()), pt.f, v));
  }
  validate_deformation(c, y);
  return y;
}

LocalCohClass phi(const Site& s, const std::vector<Poly>& nu) {
  const size_t p = s.f.size();
  if (p == 0 || nu.size() != p) throw Error(ErrorKind::DimensionMismatch, "one value per generator");
  FormSpace space(s.ring, ArtinAlgebra::field());
  std::vector<PForm> df = differentials(s.ring, s.f);
  PForm w = PForm::zero(static_cast<int>(p) - 1);
  for (size_t l = 0; l < p; ++l) {
    PForm t = s.ring.embed(nu[l]) * wedge_replacing(df, l, std::nullopt);
    w += (l % 2 == 0) ? t : -t;
  }
  return make_class(LocalCohModule::make(space, s.f), reduce(s.ring, w), 1);
}

LocalCohClass pi(const Site& s, const std::vector<Poly>& nu) {
  const size_t p = s.f.size();
  if (p == 0 || nu.size() != p) throw Error(ErrorKind::DimensionMismatch, "one value per generator");
  FormSpace space = FormSpace::over(s.ring, dual_numbers());
  const Ring& ring = space.ring();
  const int n = ring.nvars();
  std::vector<PForm> df = differentials(s.ring, s.f);
  PForm w1 = PForm::zero(static_cast<int>(p)), w2 = PForm::zero(static_cast<int>(p) - 1);
  for (size_t l = 0; l < p; ++l) {
    Poly v = s.ring.embed(nu[l]);
    w1 += wedge_replacing(df, l, d_total(s.ring, v));
    PForm t = v * wedge_replacing(df, l, std::nullopt);
    w2 += ((p - 1 - l) % 2 == 0) ? t : -t;
  }
  Poly eps = space.from_algebra(Poly::variable(1, 0));
  PForm deps = dvar(ring, space.offset());
  PForm num = eps * embed_form(w1, n) + embed_form(w2, n) * deps;
  std::vector<Poly> f;
  for (const auto& g : s.f) f.push_back(ring.embed(g));
  return make_class(LocalCohModule::make(space, f), reduce(ring, num), 1);
}

ClassCochain T_A(const Cover& c, const EmbeddedDeformation& y) {
  DeformationData data = validate_deformation(c, y);
  ClassCochain out{0, y.algebra, c.codim(), true, {}};
  for (size_t i = 0; i < c.patches.size(); ++i) {
    KoszulData k = koszul(data.spaces[i], y.f[i]);
    out.values[{static_cast<int>(i)}] = ext_to_loc(reduce_relative(chern_koszul(k)));
  }
  return out;
}

std::map<std::pair<int, int>, bool> overlap_agreement(const Cover& c, const ClassCochain& alpha) {
  if (alpha.degree != 0) throw Error(ErrorKind::InvalidInput, "overlap agreement of a 0-cochain");
  std::map<Key, bool> out;
  for (const auto& o : c.overlaps) {
    const LocalCohClass& ai = alpha.values.at({o.i});
    const LocalCohClass& aj = alpha.values.at({o.j});
    FormSpace s = FormSpace::over(o.ring, alpha.algebra);
    std::vector<Poly> f;
    for (const auto& g : site(c, {o.i, o.j}).f) f.push_back(s.ring().embed(g));
    LocalCohModulePtr m = LocalCohModule::make_trusted(s, f);
    LocalCohClass ri = restrict_class(ai, extend_to_algebra(o.from_i, ai.module->space(), s), m);
    LocalCohClass rj = restrict_class(aj, extend_to_algebra(o.from_j, aj.module->space(), s), m);
    out[{o.i, o.j}] = equal(ri, rj);
  }
  return out;
}

std::map<Exponent, Poly> split_algebra(const FormSpace& space, const Poly& f) {
  std::map<Exponent, Poly> out;
  const int off = space.offset();
  const int na = space.algebra().nvars();
  for (const auto& [e, c] : space.ring().reduce(space.ring().embed(f)).terms()) {
    Exponent r(e.begin(), e.begin() + off), a(e.begin() + off, e.end());
    a.resize(static_cast<size_t>(na), 0);
    auto it = out.try_emplace(r, Poly::constant(na, 0)).first;
    it->second.add_term(a, c);
  }
  return out;
}

Poly lift_poly(const SmallExtension& e, const FormSpace& sa, const FormSpace& sb, const Poly& f) {
  if (sa.offset() != sb.offset()) throw Error(ErrorKind::DimensionMismatch, "base rings differ");
  Poly out = sb.ring().zero();
  const int n = sb.ring().nvars();
  for (const auto& [r, a] : split_algebra(sa, f)) {
    Exponent x(r);
    x.resize(static_cast<size_t>(n), 0);
    out += Poly::monomial(x) * sb.from_algebra(e.section(a));
  }
  return sb.ring().reduce(out);
}

PForm lift_form(const SmallExtension& e, const FormSpace& sa, const FormSpace& sb, const PForm& w) {
  const int off = sa.offset();
  PForm out = PForm::zero(w.degree());
  for (const auto& [idx, c] : sa.canonical(w).terms()) {
    PForm t = lift_poly(e, sa, sb, c);
    for (int v : idx) {
      if (v < off) {
        t = t * dvar(sb.ring(), v);
      } else {
        Poly x = Poly::variable(sa.algebra().nvars(), v - off);
        t = t * d_total(sb.ring(), sb.from_algebra(e.section(x)));
      }
    }
    out += t;
  }
  return reduce(sb.ring(), out);
}

Poly project_poly(const SmallExtension& e, const FormSpace& sb, const FormSpace& sa, const Poly& f) {
  return map_coefficients(e.proj, sb, sa, f);
}

ObstructionData lift_and_obstruct(const Cover& c, const SmallExtension& e, const EmbeddedDeformation& y,
                                  const std::optional<std::vector<std::vector<Poly>>>& lifts) {
  if (!same_algebra(y.algebra, e.A)) throw Error(ErrorKind::InvalidInput, "deformation is not over the target of e");
  if (!e.principal) throw Error(ErrorKind::HypothesisViolated, "obstruction cochains need a principal extension");
  DeformationData data = validate_deformation(c, y);
  ObstructionData out;
  std::vector<FormSpace> sb;
  for (size_t i = 0; i < c.patches.size(); ++i) {
    sb.push_back(FormSpace::over(c.patches[i].ring, e.B));
    const FormSpace& sa = data.spaces[i];
    std::vector<Poly> lifted;
    if (lifts) {
      if (lifts->size() != c.patches.size() || (*lifts)[i].size() != y.f[i].size())
        throw Error(ErrorKind::DimensionMismatch, "one lift per generator");
      for (size_t l = 0; l < y.f[i].size(); ++l) {
        Poly g = sb[i].ring().reduce(sb[i].ring().embed((*lifts)[i][l]));
        if (!sa.ring().equal(project_poly(e, sb[i], sa, g), y.f[i][l]))
          throw Error(ErrorKind::InvalidInput, "supplied lift does not reduce to f^A");
        lifted.push_back(g);
      }
    } else {
      for (const auto& g : y.f[i]) lifted.push_back(lift_poly(e, sa, sb[i], g));
    }
    out.lifts.push_back(std::move(lifted));
  }
  const size_t p = static_cast<size_t>(c.codim());
  out.mu.degree = 1;
  for (const auto& o : c.overlaps) {
    const Key key{o.i, o.j};
    FormSpace s = FormSpace::over(o.ring, e.B);
    const FormSpace& sa = data.overlap_spaces.at(key);
    const PolyMatrix& da = data.transition.at(key);
    PolyMatrix db(da.rows(), da.cols());
    for (Index r = 0; r < da.rows(); ++r)
      for (Index q = 0; q < da.cols(); ++q) db(r, q) = lift_poly(e, sa, s, da(r, q));
    RingMap mi = extend_to_algebra(o.from_i, sb[static_cast<size_t>(o.i)], s);
    RingMap mj = extend_to_algebra(o.from_j, sb[static_cast<size_t>(o.j)], s);
    std::vector<Poly> fi = map_all(mi, out.lifts[static_cast<size_t>(o.i)]);
    std::vector<Poly> fj = times(s.ring(), db, map_all(mj, out.lifts[static_cast<size_t>(o.j)]));
    std::vector<Poly> h;
    for (size_t l = 0; l < p; ++l) {
      Poly hl = Poly::constant(o.ring.nvars(), 0);
      for (const auto& [r, b] : split_algebra(s, fi[l] - fj[l])) {
        std::optional<Rat> m = e.eta_multiple(e.B.coords(b));
        if (!m) throw Error(ErrorKind::NotWellDefined, "lift difference is not in eta R");
        if (!m->is_zero()) hl.add_term(r, *m);
      }
      h.push_back(hl);
    }
    out.h[key] = h;
    out.mu.values[{o.i, o.j}] = h;
    out.transition[key] = db;
  }
  out.mu = normalize(c, out.mu);
  out.cocycle = is_cocycle(c, out.mu);
  return out;
}

NormalCochain v_e(const Cover& c, const SmallExtension& e, const EmbeddedDeformation& y, const Rat& g_eta) {
  return scale(g_eta, lift_and_obstruct(c, e, y).mu);
}

ClassCochain delta_1(const Cover& c, const SmallExtension& e, const ClassCochain& alpha, LiftStrategy strategy,
                     unsigned seed) {
  if (alpha.degree != 0) throw Error(ErrorKind::InvalidInput, "delta_1 takes a 0-cochain");
  if (!same_algebra(alpha.algebra, e.A)) throw Error(ErrorKind::InvalidInput, "classes are not over the target of e");
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<LocalCohClass> lifted;
  for (size_t i = 0; i < c.patches.size(); ++i) {
    const LocalCohClass& a = alpha.values.at({static_cast<int>(i)});
    const FormSpace& sa = a.module->space();
    FormSpace sb = FormSpace::over(c.patches[i].ring, e.B);
    std::vector<Poly> f;
    for (const auto& g : c.patches[i].f) f.push_back(sb.ring().embed(g));
    LocalCohModulePtr m = LocalCohModule::make_trusted(sb, f);
    PForm w = lift_form(e, sa, sb, a.numerator);
    int q = alpha.form_degree;
    if (strategy == LiftStrategy::Perturbed) {
      std::vector<int> pool;
      for (int v : sb.ring().differential_vars())
        if (v < sb.offset()) pool.push_back(v);
      if (q <= static_cast<int>(pool.size())) {
        PForm gamma = PForm::zero(q);
        for (const auto& sub : subsets(pool, q)) {
          Poly g = sb.ring().zero();
          g += Poly::constant(sb.ring().nvars(), coef(rng));
          for (int v : pool) g += sb.ring().var(v).scaled(Rat(coef(rng)));
          gamma += PForm::monomial(sub, g);
        }
        Poly eta = sb.from_algebra(e.eta);
        PForm bump = eta * gamma;
        w = w + bump * m->product().pow(static_cast<unsigned>(a.exponent - 1));
      }
    }
    lifted.push_back(LocalCohClass{m, reduce(sb.ring(), w), a.exponent});
  }
  ClassCochain out{1, e.B, alpha.form_degree, alpha.reduced, {}};
  for (const auto& o : c.overlaps) {
    FormSpace s = FormSpace::over(o.ring, e.B);
    std::vector<Poly> f;
    for (const auto& g : site(c, {o.i, o.j}).f) f.push_back(s.ring().embed(g));
    LocalCohModulePtr m = LocalCohModule::make_trusted(s, f);
    const LocalCohClass& li = lifted[static_cast<size_t>(o.i)];
    const LocalCohClass& lj = lifted[static_cast<size_t>(o.j)];
    LocalCohClass ri = restrict_class(li, extend_to_algebra(o.from_i, li.module->space(), s), m);
    LocalCohClass rj = restrict_class(lj, extend_to_algebra(o.from_j, lj.module->space(), s), m);
    out.values[{o.i, o.j}] = subtract(ri, rj);
  }
  return out;
}

bool is_zero(const ClassCochain& c) {
  for (const auto& [k, v] : c.values)
    if (!is_zero(v)) return false;
  return true;
}

bool is_cocycle(const Cover& c, const ClassCochain& alpha) {
  if (alpha.degree != 1) return false;
  for (const auto& t : c.triples) {
    FormSpace s = FormSpace::over(t.ring, alpha.algebra);
    std::vector<Poly> f;
    for (const auto& g : site(c, {t.i, t.j, t.k}).f) f.push_back(s.ring().embed(g));
    LocalCohModulePtr m = LocalCohModule::make_trusted(s, f);
    auto get = [&](int a, int b, const RingMap& map) {
      auto it = alpha.values.find({a, b});
      if (it == alpha.values.end()) return zero_class(m, alpha.form_degree);
      return restrict_class(it->second, extend_to_algebra(map, it->second.module->space(), s), m);
    };
    LocalCohClass ik = get(t.i, t.k, t.from_ik);
    LocalCohClass sum = add(get(t.i, t.j, t.from_ij), get(t.j, t.k, t.from_jk));
    if (!equal(ik, sum)) return false;
  }
  return true;
}

const char* to_string(H1Status s) {
  switch (s) {
    case H1Status::Coboundary: return "coboundary";
    case H1Status::NonzeroUpToBound: return "nonzero-up-to-bound";
    case H1Status::Inconclusive: return "inconclusive";
    case H1Status::NotCocycle: return "not-a-cocycle";
  }
  return "inconclusive";
}

H1Verdict cech_h1_test(const Cover& c, const NormalCochain& mu_in, int degree_bound) {
  if (mu_in.degree != 1) throw Error(ErrorKind::InvalidInput, "H^1 test takes a 1-cochain");
  NormalCochain mu = normalize(c, mu_in);
  if (!is_cocycle(c, mu)) throw Error(ErrorKind::InvalidInput, "cochain is not a cocycle");
  H1Verdict v;
  v.degree_bound = degree_bound;
  const size_t p = static_cast<size_t>(c.codim());
  struct Unknown {
    int patch;
    size_t comp;
    Exponent mono;
  };
  std::vector<Unknown> unknowns;
  for (size_t i = 0; i < c.patches.size(); ++i) {
    GroebnerBasis gb = c.patches[i].ring.ideal_with(c.patches[i].f);
    for (const auto& m : standard_monomials_upto(gb, degree_bound))
      for (size_t l = 0; l < p; ++l) unknowns.push_back({static_cast<int>(i), l, m});
  }
  v.unknowns = static_cast<Index>(unknowns.size());
  if (v.unknowns > kMaxUnknowns) {
    v.note = "witness space exceeds the unknown cap";
    return v;
  }
  std::map<std::tuple<int, size_t, Exponent>, Index> rows;
  std::vector<std::vector<std::pair<Index, Rat>>> columns(unknowns.size());
  std::vector<std::pair<Index, Rat>> rhs;
  auto row_of = [&](int ov, size_t l, const Exponent& e) {
    auto [it, fresh] = rows.try_emplace({ov, l, e}, static_cast<Index>(rows.size()));
    return it->second;
  };
  for (size_t oi = 0; oi < c.overlaps.size(); ++oi) {
    const Overlap& o = c.overlaps[oi];
    GroebnerBasis gb = o.ring.ideal_with(site(c, {o.i, o.j}).f);
    for (size_t u = 0; u < unknowns.size(); ++u) {
      const Unknown& x = unknowns[u];
      if (x.patch != o.i && x.patch != o.j) continue;
      const Ring& src = c.patches[static_cast<size_t>(x.patch)].ring;
      Poly m = Poly::monomial(x.mono).with_nvars(src.nvars());
      if (x.patch == o.i) {
        Poly r = normal_form(o.from_i.apply(m), gb);
        for (const auto& [e, cf] : r.terms()) columns[u].push_back({row_of(static_cast<int>(oi), x.comp, e), cf});
      } else {
        Poly mj = o.from_j.apply(m);
        for (size_t l = 0; l < p; ++l) {
          Poly r = normal_form(o.ring.embed(o.transition(static_cast<Index>(l), static_cast<Index>(x.comp))) * mj, gb);
          for (const auto& [e, cf] : r.terms()) columns[u].push_back({row_of(static_cast<int>(oi), l, e), -cf});
        }
      }
    }
    auto it = mu.values.find({o.i, o.j});
    if (it == mu.values.end()) continue;
    for (size_t l = 0; l < p; ++l)
      for (const auto& [e, cf] : it->second[l].terms()) rhs.push_back({row_of(static_cast<int>(oi), l, e), cf});
  }
  const Index nrows = static_cast<Index>(rows.size());
  v.equations = nrows;
  RatMatrix a = zero_matrix(nrows, v.unknowns);
  RatVector b = RatVector::Constant(nrows, Rat(0));
  for (size_t u = 0; u < columns.size(); ++u)
    for (const auto& [r, cf] : columns[u]) a(r, static_cast<Index>(u)) += cf;
  for (const auto& [r, cf] : rhs) b(r) += cf;
  LinearSolution sol = solve_exact(a, b);
  if (!sol.particular) {
    v.status = H1Status::NonzeroUpToBound;
    return v;
  }
  NormalCochain w{0, {}};
  for (size_t i = 0; i < c.patches.size(); ++i)
    w.values[{static_cast<int>(i)}] = std::vector<Poly>(p, c.patches[i].ring.zero());
  for (size_t u = 0; u < unknowns.size(); ++u) {
    const Rat& x = (*sol.particular)(static_cast<Index>(u));
    if (x.is_zero()) continue;
    const Unknown& un = unknowns[u];
    auto& slot = w.values[{un.patch}][un.comp];
    slot += Poly::monomial(un.mono, x).with_nvars(slot.nvars());
  }
  v.status = H1Status::Coboundary;
  v.witness_verified = equal(c, coboundary(c, w), mu);
  v.normal_witness = w;
  return v;
}

H1Verdict cech_h1_test(const Cover& c, const ClassCochain& alpha, int degree_bound) {
  if (alpha.degree != 1) throw Error(ErrorKind::InvalidInput, "H^1 test takes a 1-cochain");
  if (!is_cocycle(c, alpha)) throw Error(ErrorKind::InvalidInput, "class cochain is not a cocycle");
  H1Verdict v;
  v.degree_bound = degree_bound;
  int e0 = 1;
  for (const auto& [k, x] : alpha.values) e0 = std::max(e0, canonicalize(x).exponent);
  const int q = alpha.form_degree;
  std::vector<FormSpace> spaces;
  std::vector<LocalCohModulePtr> modules;
  for (const auto& pt : c.patches) {
    FormSpace s = FormSpace::over(pt.ring, alpha.algebra);
    std::vector<Poly> f;
    for (const auto& g : pt.f) f.push_back(s.ring().embed(g));
    modules.push_back(LocalCohModule::make_trusted(s, f));
    spaces.push_back(std::move(s));
  }
  std::vector<FormSpace> ospaces;
  std::vector<LocalCohModulePtr> omodules;
  for (const auto& o : c.overlaps) {
    FormSpace s = FormSpace::over(o.ring, alpha.algebra);
    std::vector<Poly> f;
    for (const auto& g : site(c, {o.i, o.j}).f) f.push_back(s.ring().embed(g));
    omodules.push_back(LocalCohModule::make_trusted(s, f));
    ospaces.push_back(std::move(s));
  }
  for (int a = e0; a <= e0 + 1; ++a) {
    struct Unknown {
      int patch;
      PForm numerator;
    };
    std::vector<Unknown> unknowns;
    for (size_t i = 0; i < c.patches.size(); ++i) {
      const GroebnerBasis& gb = modules[i]->power_ideal(a);
      std::vector<FormKey> keys = form_keys(spaces[i], q, alpha.reduced);
      const int n = spaces[i].ring().nvars();
      for (const auto& m : standard_monomials_upto(gb, degree_bound))
        for (const auto& k : keys) {
          Exponent x(m);
          x.resize(static_cast<size_t>(n), 0);
          unknowns.push_back({static_cast<int>(i), spaces[i].form({{k, Poly::monomial(x)}})});
        }
    }
    v.unknowns = static_cast<Index>(unknowns.size());
    v.exponent = a;
    if (v.unknowns > kMaxUnknowns) {
      v.status = H1Status::Inconclusive;
      v.note = "witness space exceeds the unknown cap";
      return v;
    }
    std::map<std::tuple<size_t, FormKey, Exponent>, Index> rows;
    std::vector<std::vector<std::pair<Index, Rat>>> columns(unknowns.size());
    std::vector<std::pair<Index, Rat>> rhs;
    auto row_of = [&](size_t ov, const FormKey& k, const Exponent& e) {
      auto [it, fresh] = rows.try_emplace({ov, k, e}, static_cast<Index>(rows.size()));
      return it->second;
    };
    for (size_t oi = 0; oi < c.overlaps.size(); ++oi) {
      const Overlap& o = c.overlaps[oi];
      Restrictor ri(extend_to_algebra(o.from_i, spaces[static_cast<size_t>(o.i)], ospaces[oi]),
                    modules[static_cast<size_t>(o.i)], omodules[oi], a);
      Restrictor rj(extend_to_algebra(o.from_j, spaces[static_cast<size_t>(o.j)], ospaces[oi]),
                    modules[static_cast<size_t>(o.j)], omodules[oi], a);
      std::optional<LocalCohClass> target;
      auto it = alpha.values.find({o.i, o.j});
      if (it != alpha.values.end()) {
        if (!it->second.module->same_as(*omodules[oi]))
          throw Error(ErrorKind::SequenceMismatch, "cochain entry is not over patch i's generators");
        target = canonicalize(it->second);
      }
      int e = std::max(ri.exponent, rj.exponent);
      if (target) e = std::max(e, target->exponent);
      for (size_t u = 0; u < unknowns.size(); ++u) {
        const Unknown& x = unknowns[u];
        if (x.patch != o.i && x.patch != o.j) continue;
        const Restrictor& r = x.patch == o.i ? ri : rj;
        Rat sign = x.patch == o.i ? Rat(1) : Rat(-1);
        for (const auto& [key, cf] : class_coords(omodules[oi], r.numerator(x.numerator), r.exponent, e))
          columns[u].push_back({row_of(oi, key.first, key.second), sign * cf});
      }
      if (target)
        for (const auto& [key, cf] : class_coords(omodules[oi], target->numerator, target->exponent, e))
          rhs.push_back({row_of(oi, key.first, key.second), cf});
    }
    const Index nrows = static_cast<Index>(rows.size());
    v.equations = nrows;
    RatMatrix m = zero_matrix(nrows, v.unknowns);
    RatVector b = RatVector::Constant(nrows, Rat(0));
    for (size_t u = 0; u < columns.size(); ++u)
      for (const auto& [r, cf] : columns[u]) m(r, static_cast<Index>(u)) += cf;
    for (const auto& [r, cf] : rhs) b(r) += cf;
    LinearSolution sol = solve_exact(m, b);
    if (!sol.particular) continue;
    ClassCochain w{0, alpha.algebra, q, alpha.reduced, {}};
    std::vector<PForm> nums(c.patches.size(), PForm::zero(q));
    for (size_t u = 0; u < unknowns.size(); ++u) {
      const Rat& x = (*sol.particular)(static_cast<Index>(u));
      if (!x.is_zero()) nums[static_cast<size_t>(unknowns[u].patch)] += unknowns[u].numerator.scaled(x);
    }
    for (size_t i = 0; i < c.patches.size(); ++i)
      w.values[{static_cast<int>(i)}] = make_class(modules[i], reduce(spaces[i].ring(), nums[i]), a);
    bool ok = true;
    for (size_t oi = 0; oi < c.overlaps.size(); ++oi) {
      const Overlap& o = c.overlaps[oi];
      LocalCohClass ri = restrict_class(w.values.at({o.i}), extend_to_algebra(o.from_i, spaces[static_cast<size_t>(o.i)], ospaces[oi]), omodules[oi]);
      LocalCohClass rj = restrict_class(w.values.at({o.j}), extend_to_algebra(o.from_j, spaces[static_cast<size_t>(o.j)], ospaces[oi]), omodules[oi]);
      LocalCohClass d = subtract(ri, rj);
      auto it = alpha.values.find({o.i, o.j});
      if (it != alpha.values.end()) d = subtract(d, it->second);
      if (!is_zero(d)) ok = false;
    }
    v.status = H1Status::Coboundary;
    v.witness_verified = ok;
    v.class_witness = std::move(w);
    return v;
  }
  v.status = H1Status::NonzeroUpToBound;
  return v;
}

SemiregReport semireg_verify(const Cover& c, const SmallExtension& e, const EmbeddedDeformation& y,
                             const Rat& g_eta, int degree_bound,
                             const std::optional<std::vector<std::vector<Poly>>>& lifts) {
  if (!e.principal) throw Error(ErrorKind::HypothesisViolated, "extension is not principal");
  if (!differential_injectivity(e)) throw Error(ErrorKind::HypothesisViolated, "d(eta) vanishes in Omega_B (x) A");
  const int p = c.codim();
  if (p < 1) throw Error(ErrorKind::InvalidInput, "semiregularity needs codimension at least 1");
  SemiregReport rep;
  rep.g_eta = g_eta;
  rep.obstruction = lift_and_obstruct(c, e, y, lifts);
  EtaProjection proj = eta_projection(e);
  rep.left = ClassCochain{1, dual_numbers(), p, true, {}};
  rep.right = rep.left;
  std::vector<FormSpace> sb;
  for (const auto& pt : c.patches) sb.push_back(FormSpace::over(pt.ring, e.B));
  for (const auto& o : c.overlaps) {
    const Key key{o.i, o.j};
    Site s = site(c, {o.i, o.j});
    std::vector<Poly> gmu;
    for (const auto& x : rep.obstruction.h.at(key)) gmu.push_back(x.scaled(g_eta));
    LocalCohClass left = pi(s, gmu);
    FormSpace sbij = FormSpace::over(o.ring, e.B);
    RingMap mi = extend_to_algebra(o.from_i, sb[static_cast<size_t>(o.i)], sbij);
    RingMap mj = extend_to_algebra(o.from_j, sb[static_cast<size_t>(o.j)], sbij);
    std::vector<Poly> fi = map_all(mi, rep.obstruction.lifts[static_cast<size_t>(o.i)]);
    std::vector<Poly> fj = times(sbij.ring(), rep.obstruction.transition.at(key),
                                 map_all(mj, rep.obstruction.lifts[static_cast<size_t>(o.j)]));
    PForm wi(1), wj(1);
    for (const auto& g : fi) wi = wi * d_total(sbij.ring(), g);
    for (const auto& g : fj) wj = wj * d_total(sbij.ring(), g);
    // Split the difference into eta-multiples and d(eta) components.
    std::map<std::pair<DiffIndex, Exponent>, RatVector> w0, w1;
    for (const auto& [k, coef] : sbij.coords(wi - wj)) {
      if (k.adeg >= 2) continue;
      PForm rep_s = sbij.kaehler(k.adeg).representative(k.basis);
      RatVector vec = k.adeg == 0 ? e.B.coords(rep_s.coefficient({})) : proj.omega_b.coords(rep_s);
      auto& target = k.adeg == 0 ? w0 : w1;
      for (const auto& [ex, cf] : coef.terms()) {
        Exponent r(ex.begin(), ex.begin() + sbij.offset());
        auto it = target.try_emplace({k.space, r}, RatVector::Constant(vec.size(), Rat(0))).first;
        it->second += vec * cf;
      }
    }
    PForm om1 = PForm::zero(p), om2 = PForm::zero(p - 1);
    for (const auto& [sr, vec] : w0) {
      std::optional<Rat> m = e.eta_multiple(vec);
      if (!m) throw Error(ErrorKind::NotWellDefined, "lift difference has a component outside (eta)");
      if (!m->is_zero()) om1 += PForm::monomial(sr.first, Poly::monomial(sr.second, *m));
    }
    for (const auto& [sr, vec] : w1) {
      std::optional<Rat> m = proj.project(vec);
      if (!m) throw Error(ErrorKind::NotWellDefined, "lift difference has a component outside W_1");
      if (!m->is_zero()) om2 += PForm::monomial(sr.first, Poly::monomial(sr.second, *m));
    }
    const FormSpace& se = left.module->space();
    const int n = se.ring().nvars();
    Poly eps = se.from_algebra(Poly::variable(1, 0));
    PForm deps = dvar(se.ring(), se.offset());
    PForm num = eps * embed_form(om1, n) + embed_form(om2, n) * deps;
    LocalCohClass right = scale(g_eta, make_class(left.module, reduce(se.ring(), num), 1));
    rep.entry_equal[key] = equal(left, right);
    rep.left.values[{o.i, o.j}] = left;
    rep.right.values[{o.i, o.j}] = right;
  }
  rep.cochain_equal = std::all_of(rep.entry_equal.begin(), rep.entry_equal.end(),
                                  [](const auto& kv) { return kv.second; });
  rep.delta_global = delta_1(c, e, T_A(c, y), LiftStrategy::GlobalLift);
  rep.delta_global_zero = is_zero(rep.delta_global);
  rep.cochain_cocycle = is_cocycle(c, rep.right);
  if (rep.cochain_cocycle) {
    rep.verdict = cech_h1_test(c, rep.right, degree_bound);
  } else {
    rep.verdict.status = H1Status::NotCocycle;
    rep.verdict.degree_bound = degree_bound;
    rep.verdict.note = "cochain fails the cocycle identity on a triple overlap";
  }
  return rep;
}

EmbeddedDeformation base_change(const Cover& c, const EmbeddedDeformation& y, const AlgebraMorphism& gamma) {
  if (!same_algebra(gamma.source(), y.algebra)) throw Error(ErrorKind::InvalidInput, "morphism does not start at A");
  EmbeddedDeformation out{gamma.target(), {}};
  for (size_t i = 0; i < c.patches.size(); ++i) {
    FormSpace src = FormSpace::over(c.patches[i].ring, y.algebra);
    FormSpace dst = FormSpace::over(c.patches[i].ring, gamma.target());
    std::vector<Poly> f;
    for (const auto& g : y.f.at(i)) f.push_back(map_coefficients(gamma, src, dst, g));
    out.f.push_back(std::move(f));
  }
  validate_deformation(c, out);
  return out;
}

}  // namespace obslab
