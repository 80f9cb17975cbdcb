#include "obslab/koszul.hpp"

#include <algorithm>
#include <numeric>

#include "obslab/error.hpp"

namespace obslab {

namespace {

FormMatrix as_forms(const PolyMatrix& m) {
  FormMatrix out(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) out(r, c) = PForm(m(r, c));
  return out;
}

FormMatrix differential(const Ring& ring, const PolyMatrix& m) {
  FormMatrix out(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) out(r, c) = d_total(ring, m(r, c));
  return out;
}

FormMatrix product(const Ring& ring, const FormMatrix& a, const FormMatrix& b) {
  FormMatrix out(a.rows(), b.cols());
  for (Index r = 0; r < a.rows(); ++r)
    for (Index c = 0; c < b.cols(); ++c) {
      PForm s;
      bool first = true;
      for (Index k = 0; k < a.cols(); ++k) {
        if (a(r, k).is_zero() || b(k, c).is_zero()) continue;
        PForm t = a(r, k) * b(k, c);
        s = first ? t : s + t;
        first = false;
      }
      out(r, c) = first ? PForm::zero(0) : reduce(ring, s);
    }
  return out;
}

/// Multiplies out the inverse variables: for u = 1/g, f becomes g^B f with u g = 1.
Poly clear_inverses(const Ring& ring, const Poly& f) {
  Poly out = f;
  for (int v = ring.nvars() - 1; v >= 0; --v) {
    if (ring.kind(v) != VarKind::Inverse) continue;
    int top = out.degree_in(v);
    if (top <= 0) continue;
    Poly g = ring.embed(ring.inverted(v));
    Poly acc = Poly::constant(ring.nvars(), 0);
    for (const auto& [e, c] : out.terms()) {
      Exponent e2 = e;
      int b = e2[v];
      e2[v] = 0;
      acc += g.pow(static_cast<unsigned>(top - b)) * Poly::monomial(e2, c);
    }
    out = acc;
  }
  return out;
}

Poly shifted(const Poly& p, int n) { return shift_vars(p, 1, n + 1); }

/// Generators of (I : f) for the ideal I in the free polynomial ring.
std::vector<Poly> colon(const std::vector<Poly>& ideal, const Poly& f, int n) {
  const int n1 = n + 1;
  Poly t = Poly::variable(n1, 0);
  std::vector<Poly> gens;
  for (const auto& g : ideal) gens.push_back(t * shifted(g, n));
  gens.push_back((Poly::constant(n1, 1) - t) * shifted(f, n));
  GroebnerBasis elim = groebner(gens, n1, MonomialOrder::Lex);
  GroebnerBasis fgb = groebner({f}, n, MonomialOrder::DegRevLex, true);
  std::vector<Poly> out;
  for (const auto& h : elim.gens) {
    if (h.uses_var(0)) continue;
    Poly back = Poly::constant(n, 0);
    for (const auto& [e, c] : h.terms()) back.add_term(Exponent(e.begin() + 1, e.end()), c);
    Lift l = lift(back, fgb);
    if (!l.remainder.is_zero()) throw Error(ErrorKind::DivisionFailure, "intersection element not divisible");
    out.push_back(l.cofactors.front());
  }
  return out;
}

}  // namespace

bool PerfectComplex::is_complex() const {
  for (int l = 1; l < length(); ++l) {
    PolyMatrix p = M(l) * M(l + 1);
    for (Index r = 0; r < p.rows(); ++r)
      for (Index c = 0; c < p.cols(); ++c)
        if (!ring().is_zero(p(r, c))) return false;
  }
  return true;
}

PerfectComplex make_complex(const FormSpace& space, const std::vector<PolyMatrix>& maps) {
  PerfectComplex f;
  f.space = space;
  if (maps.empty()) throw Error(ErrorKind::InvalidInput, "a complex needs at least one map");
  f.ranks.push_back(maps.front().rows());
  for (size_t l = 0; l < maps.size(); ++l) {
    if (maps[l].rows() != f.ranks.back())
      throw Error(ErrorKind::DimensionMismatch, "consecutive maps do not compose");
    f.ranks.push_back(maps[l].cols());
    PolyMatrix m = maps[l];
    for (Index r = 0; r < m.rows(); ++r)
      for (Index c = 0; c < m.cols(); ++c) m(r, c) = space.ring().reduce(space.ring().embed(m(r, c)));
    f.maps.push_back(std::move(m));
  }
  if (!f.is_complex()) throw Error(ErrorKind::InvalidInput, "maps do not form a complex");
  return f;
}

KoszulData koszul(const FormSpace& space, const std::vector<Poly>& f) {
  const Ring& ring = space.ring();
  const int p = static_cast<int>(f.size());
  if (p == 0) throw Error(ErrorKind::InvalidInput, "Koszul complex of an empty sequence");
  KoszulData k;
  for (const auto& g : f) {
    Poly q = ring.reduce(ring.embed(g));
    if (ring.ideal_with({q}).is_unit())
      throw Error(ErrorKind::InvalidInput, "sequence element " + ring.str(q) + " is a unit");
    k.sequence.push_back(q);
  }
  std::vector<int> pool(static_cast<size_t>(p));
  std::iota(pool.begin(), pool.end(), 0);
  for (int l = 0; l <= p; ++l) k.bases.push_back(subsets(pool, l));
  std::vector<PolyMatrix> maps;
  for (int l = 1; l <= p; ++l) {
    const auto& rows = k.bases[static_cast<size_t>(l - 1)];
    const auto& cols = k.bases[static_cast<size_t>(l)];
    PolyMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
    m.setConstant(ring.zero());
    for (size_t c = 0; c < cols.size(); ++c) {
      const DiffIndex& idx = cols[c];
      for (int j = 0; j < l; ++j) {
        DiffIndex rest = idx;
        rest.erase(rest.begin() + j);
        auto r = std::find(rows.begin(), rows.end(), rest) - rows.begin();
        Poly entry = k.sequence[static_cast<size_t>(idx[static_cast<size_t>(j)])];
        m(r, static_cast<Index>(c)) += (j % 2 == 0) ? entry : -entry;
      }
    }
    maps.push_back(std::move(m));
  }
  k.complex = make_complex(space, maps);
  return k;
}

KoszulData koszul(const Ring& ring, const std::vector<Poly>& f) {
  if (ring.has_artin()) throw Error(ErrorKind::InvalidInput, "pass the form space for rings with algebra variables");
  return koszul(FormSpace(ring, ArtinAlgebra::field()), f);
}

const char* to_string(Regularity r) {
  switch (r) {
    case Regularity::Certified: return "certified";
    case Regularity::Refuted: return "refuted";
    case Regularity::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

RegularityVerdict regularity_check(const Ring& ring, const std::vector<Poly>& f) {
  RegularityVerdict v;
  const int n = ring.nvars();
  std::vector<Poly> seq;
  for (const auto& g : f) seq.push_back(ring.reduce(ring.embed(g)));
  if (seq.empty()) {
    v.status = Regularity::Certified;
    v.method = "empty sequence";
    return v;
  }
  // Leading terms of the cleared reductions mod the algebra variables.
  bool coprime = true;
  std::vector<Exponent> leads;
  for (const auto& g : seq) {
    Poly c = clear_inverses(ring, augment(ring, g));
    if (c.is_zero()) {
      coprime = false;
      break;
    }
    if (c.is_constant()) continue;
    leads.push_back(c.leading_term(ring.order()).first);
  }
  for (size_t i = 0; coprime && i < leads.size(); ++i)
    for (size_t j = i + 1; j < leads.size(); ++j)
      for (int x = 0; x < n; ++x)
        if (leads[i][x] > 0 && leads[j][x] > 0) coprime = false;
  if (coprime) {
    v.status = Regularity::Certified;
    v.method = "coprime leading terms";
    return v;
  }
  std::vector<Poly> ideal = ring.relations();
  for (size_t k = 0; k < seq.size(); ++k) {
    GroebnerBasis gb = groebner(ideal, n, ring.order());
    for (const auto& q : colon(ideal, seq[k], n)) {
      if (!ideal_contains(gb, q)) {
        v.status = Regularity::Refuted;
        v.method = "colon ideal";
        v.position = static_cast<int>(k);
        v.witness = ring.reduce(q);
        return v;
      }
    }
    ideal.push_back(seq[k]);
  }
  v.status = Regularity::Certified;
  v.method = "colon ideals";
  return v;
}

RegularityVerdict regularity_check(const KoszulData& k) { return regularity_check(k.ring(), k.sequence); }

FundamentalClass fundamental_class(const PerfectComplex& f, int p) {
  const int n = f.length();
  if (p < 1 || p > n) throw Error(ErrorKind::InvalidInput, "fundamental class degree out of range");
  const Ring& ring = f.ring();
  std::vector<FormMatrix> dm;
  for (int l = 1; l <= n; ++l) dm.push_back(differential(ring, f.M(l)));
  FundamentalClass out;
  out.degree = p;
  Rat scale = factorial(static_cast<unsigned>(p)).inverse();
  for (int l = 1; l + p - 1 <= n; ++l) {
    FormMatrix prod = dm[static_cast<size_t>(l - 1)];
    for (int j = 1; j < p; ++j) prod = product(ring, prod, dm[static_cast<size_t>(l - 1 + j)]);
    for (Index r = 0; r < prod.rows(); ++r)
      for (Index c = 0; c < prod.cols(); ++c) prod(r, c) = f.space.canonical(prod(r, c).scaled(scale));
    out.components.push_back(std::move(prod));
  }
  out.cocycle = fundamental_cocycle_holds(f, out);
  return out;
}

bool fundamental_cocycle_holds(const PerfectComplex& f, const FundamentalClass& c) {
  const int p = c.degree;
  const Ring& ring = f.ring();
  const int count = static_cast<int>(c.components.size());
  for (int l = 2; l <= count; ++l) {
    FormMatrix lhs = product(ring, as_forms(f.M(l - 1)), c.c(l));
    FormMatrix rhs = product(ring, c.c(l - 1), as_forms(f.M(l + p - 1)));
    for (Index r = 0; r < lhs.rows(); ++r)
      for (Index k = 0; k < lhs.cols(); ++k) {
        PForm diff = p % 2 == 0 ? lhs(r, k) - rhs(r, k) : lhs(r, k) + rhs(r, k);
        if (!f.space.is_zero(diff)) return false;
      }
  }
  return true;
}

Poly augment(const Ring& ring, const Poly& f) {
  if (!ring.has_artin()) return ring.reduce(ring.embed(f));
  std::vector<Poly> images;
  for (int v = 0; v < ring.nvars(); ++v)
    images.push_back(ring.kind(v) == VarKind::Artin ? ring.zero() : ring.var(v));
  return ring.reduce(ring.embed(f).substitute(images));
}

PForm augment(const Ring& ring, const PForm& w) {
  PForm out = PForm::zero(w.degree());
  for (const auto& [idx, c] : w.terms()) {
    bool artin = std::any_of(idx.begin(), idx.end(), [&](int v) { return ring.kind(v) == VarKind::Artin; });
    if (artin) continue;
    out += PForm::monomial(idx, augment(ring, c));
  }
  return reduce(ring, out);
}

ExtClassDiagram chern_koszul(const KoszulData& k) {
  ExtClassDiagram beta;
  beta.space = k.space();
  beta.sequence = k.sequence;
  const Ring& ring = k.ring();
  PForm w = PForm(ring.one());
  for (const auto& f : k.sequence) {
    beta.reference.push_back(augment(ring, f));
    w = w * d_total(ring, f);
  }
  beta.omega = beta.space.canonical(w);
  if (beta.omega.is_zero()) beta.omega = PForm::zero(k.length());
  return beta;
}

ExtClassDiagram reduce_relative(const ExtClassDiagram& beta) {
  ExtClassDiagram out = beta;
  const Ring& ring = beta.space.ring();
  PForm w = PForm(ring.one());
  for (const auto& f : beta.reference) w = w * d_total(ring, f);
  out.omega = beta.space.canonical(beta.omega - w);
  if (out.omega.is_zero()) out.omega = PForm::zero(beta.omega.degree());
  return out;
}

LocalCohClass ext_to_loc(const ExtClassDiagram& beta) {
  const Ring& ring = beta.space.ring();
  RegularityVerdict v = regularity_check(ring, beta.sequence);
  if (v.status != Regularity::Certified)
    throw Error(ErrorKind::NotRegular, "resolved sequence is not certified regular");
  LocalCohModulePtr module = LocalCohModule::make(beta.space, beta.reference);
  return make_class(module, beta.omega, 1);
}

LocalCohClass newton_class(const KoszulData& k) {
  const int p = k.length();
  FundamentalClass fc = fundamental_class(k.complex, p);
  std::vector<Poly> reference;
  for (const auto& f : k.sequence) reference.push_back(augment(k.ring(), f));
  LocalCohModulePtr module = LocalCohModule::make(k.space(), reference);
  return transform(module, fc.c(1)(0, 0), k.sequence, 1);
}

}  // namespace obslab
