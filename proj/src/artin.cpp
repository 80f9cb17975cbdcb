#include "obslab/artin.hpp"

#include <algorithm>

#include "obslab/error.hpp"

namespace obslab {

ArtinAlgebra ArtinAlgebra::build(const std::vector<std::string>& names,
                                 const std::vector<Poly>& gens, MonomialOrder order, bool strict) {
  const int n = static_cast<int>(names.size());
  ArtinAlgebra a;
  a.names_ = names;
  a.order_ = order;
  std::vector<Poly> embedded;
  for (const auto& g : gens) {
    Poly p = g.with_nvars(n);
    if (strict)
      for (const auto& [e, c] : p.terms())
        if (total_degree(e) <= 1)
          throw Error(ErrorKind::NotLocalNormalized,
                      "generator " + p.str(names) + " has a constant or linear part");
    embedded.push_back(p);
  }
  a.ring_ = Ring::polynomial({}, order).with_artin(names, embedded);
  QuotientBasis qb = quotient_basis(a.ring_.gb());
  if (!qb.finite) throw Error(ErrorKind::NotArtinian, "quotient is infinite-dimensional");
  if (qb.monomials.empty()) throw Error(ErrorKind::NotArtinian, "quotient is the zero ring");
  a.basis_ = qb.monomials;
  // Local with residue field k: every variable is nilpotent.
  for (int v = 0; v < n; ++v) {
    Poly pw = Poly::variable(n, v).pow(static_cast<unsigned>(a.basis_.size()));
    if (!a.ring_.reduce(pw).is_zero())
      throw Error(ErrorKind::NotArtinian, "variable " + names[v] + " is not nilpotent");
  }
  auto table = std::make_shared<std::vector<RatVector>>();
  const Index d = a.dim();
  table->reserve(static_cast<size_t>(d * d));
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      table->push_back(a.coords(a.basis_element(i) * a.basis_element(j)));
  a.table_ = table;
  return a;
}

ArtinAlgebra ArtinAlgebra::make(const std::vector<std::string>& names, const std::vector<Poly>& gens,
                                MonomialOrder order) {
  return build(names, gens, order, true);
}

ArtinAlgebra ArtinAlgebra::make(const std::vector<std::string>& names,
                                const std::vector<std::string>& gens, MonomialOrder order) {
  std::vector<Poly> polys;
  for (const auto& g : gens) polys.push_back(parse_poly(g, names));
  return build(names, polys, order, true);
}

ArtinAlgebra ArtinAlgebra::quotient(const std::vector<std::string>& names,
                                    const std::vector<Poly>& gens, MonomialOrder order) {
  return build(names, gens, order, false);
}

ArtinAlgebra ArtinAlgebra::field() { return build({}, {}, MonomialOrder::DegRevLex, true); }

ArtinAlgebra ArtinAlgebra::truncated(const std::string& name, int n) {
  return build({name}, {Poly::variable(1, 0).pow(static_cast<unsigned>(n))},
               MonomialOrder::DegRevLex, true);
}

std::vector<Index> ArtinAlgebra::max_ideal() const {
  std::vector<Index> out;
  for (Index i = 1; i < dim(); ++i) out.push_back(i);
  return out;
}

std::optional<Index> ArtinAlgebra::index_of(const Exponent& e) const {
  auto it = std::find(basis_.begin(), basis_.end(), e);
  if (it == basis_.end()) return std::nullopt;
  return static_cast<Index>(it - basis_.begin());
}

RatVector ArtinAlgebra::coords(const Poly& p) const {
  RatVector v = RatVector::Constant(dim(), Rat(0));
  for (const auto& [e, c] : reduce(p).terms()) {
    auto idx = index_of(e);
    if (!idx) throw Error(ErrorKind::InvalidInput, "normal form outside the standard basis");
    v(*idx) += c;
  }
  return v;
}

Poly ArtinAlgebra::element(const RatVector& v) const {
  Poly p = Poly::constant(nvars(), 0);
  for (Index i = 0; i < dim(); ++i)
    if (!v(i).is_zero()) p.add_term(basis_[i], v(i));
  return p;
}

RatVector ArtinAlgebra::multiply(const RatVector& a, const RatVector& b) const {
  RatVector out = RatVector::Constant(dim(), Rat(0));
  for (Index i = 0; i < dim(); ++i) {
    if (a(i).is_zero()) continue;
    for (Index j = 0; j < dim(); ++j) {
      if (b(j).is_zero()) continue;
      out += product(i, j) * (a(i) * b(j));
    }
  }
  return out;
}

int ArtinAlgebra::nilpotency() const {
  // m^N is spanned by basis elements of degree >= N when m is generated by the variables.
  std::vector<RatVector> layer;
  for (Index i : max_ideal()) {
    RatVector e = RatVector::Constant(dim(), Rat(0));
    e(i) = 1;
    layer.push_back(e);
  }
  int n = 1;
  while (!layer.empty()) {
    RatMatrix m(dim(), static_cast<Index>(layer.size()));
    for (size_t k = 0; k < layer.size(); ++k) m.col(static_cast<Index>(k)) = layer[k];
    if (rank(m) == 0) return n;
    std::vector<RatVector> next;
    SparseEliminator seen(dim());
    for (const auto& v : layer)
      for (Index i : max_ideal()) {
        RatVector e = RatVector::Constant(dim(), Rat(0));
        e(i) = 1;
        RatVector w = multiply(v, e);
        if (seen.insert(sparse_from_dense(w))) next.push_back(w);
      }
    layer = std::move(next);
    ++n;
  }
  return n;
}

AlgebraMorphism AlgebraMorphism::make(const ArtinAlgebra& source, const ArtinAlgebra& target,
                                      const std::vector<Poly>& images) {
  if (static_cast<int>(images.size()) != source.nvars())
    throw Error(ErrorKind::DimensionMismatch, "morphism needs one image per variable");
  AlgebraMorphism m;
  m.source_ = source;
  m.target_ = target;
  for (const auto& img : images) {
    Poly r = target.reduce(img);
    if (!r.constant_term().is_zero())
      throw Error(ErrorKind::NotWellDefined, "morphism is not local");
    m.images_.push_back(r);
  }
  for (const auto& g : source.gb().gens)
    if (!m.apply(g).is_zero())
      throw Error(ErrorKind::NotWellDefined, "relation " + source.str(g) + " does not map to zero");
  return m;
}

AlgebraMorphism AlgebraMorphism::identity(const ArtinAlgebra& a) {
  std::vector<Poly> images;
  for (int v = 0; v < a.nvars(); ++v) images.push_back(Poly::variable(a.nvars(), v));
  return make(a, a, images);
}

AlgebraMorphism AlgebraMorphism::augmentation(const ArtinAlgebra& a) {
  return make(a, ArtinAlgebra::field(), std::vector<Poly>(a.nvars(), Poly::constant(0, 0)));
}

Poly AlgebraMorphism::apply(const Poly& p) const {
  std::vector<Poly> imgs;
  for (const auto& i : images_) imgs.push_back(i.with_nvars(target_.nvars()));
  if (source_.nvars() == 0) return target_.reduce(Poly::constant(target_.nvars(), p.constant_term()));
  return target_.reduce(p.with_nvars(source_.nvars()).substitute(imgs).with_nvars(target_.nvars()));
}

RatMatrix AlgebraMorphism::matrix() const {
  RatMatrix m(target_.dim(), source_.dim());
  for (Index j = 0; j < source_.dim(); ++j) m.col(j) = target_.coords(apply(source_.basis_element(j)));
  return m;
}

AlgebraMorphism AlgebraMorphism::then(const AlgebraMorphism& next) const {
  std::vector<Poly> imgs;
  for (const auto& i : images_) imgs.push_back(next.apply(i));
  return make(source_, next.target_, imgs);
}

Poly SmallExtension::section(const Poly& a) const {
  return B.element(section_matrix * A.coords(a));
}

std::optional<Rat> SmallExtension::eta_multiple(const RatVector& b) const {
  RatVector e = B.coords(eta);
  Index k = 0;
  while (k < e.size() && e(k).is_zero()) ++k;
  Rat c = b(k) / e(k);
  for (Index i = 0; i < e.size(); ++i)
    if (b(i) != c * e(i)) return std::nullopt;
  return c;
}

namespace {

RatMatrix monomial_section(const ArtinAlgebra& b, const ArtinAlgebra& a) {
  RatMatrix s = zero_matrix(b.dim(), a.dim());
  for (Index j = 0; j < a.dim(); ++j) {
    auto idx = b.index_of(a.basis()[j]);
    if (!idx) throw Error(ErrorKind::InvalidInput, "standard monomials of A are not standard in B");
    s(*idx, j) = 1;
  }
  return s;
}

void check_annihilated(const SmallExtension& e) {
  for (const auto& m : e.kernel)
    for (int v = 0; v < e.B.nvars(); ++v)
      if (!e.B.reduce(Poly::variable(e.B.nvars(), v) * m).is_zero())
        throw Error(ErrorKind::NotAnnihilated, "m_B does not annihilate the kernel element " + e.B.str(m));
}

}  // namespace

SmallExtension small_extension(const ArtinAlgebra& B, const Poly& eta) {
  Poly r = B.reduce(eta);
  if (r.is_zero()) throw Error(ErrorKind::InvalidInput, "eta must be nonzero");
  if (!r.constant_term().is_zero()) throw Error(ErrorKind::InvalidInput, "eta must lie in m_B");
  SmallExtension e;
  e.B = B;
  e.kernel = {r};
  e.principal = true;
  e.eta = r;
  check_annihilated(e);
  std::vector<Poly> gens = B.gb().gens;
  gens.push_back(r);
  e.A = ArtinAlgebra::quotient(B.names(), gens, B.order());
  std::vector<Poly> imgs;
  for (int v = 0; v < B.nvars(); ++v) imgs.push_back(Poly::variable(B.nvars(), v));
  e.proj = AlgebraMorphism::make(B, e.A, imgs);
  e.section_matrix = monomial_section(B, e.A);
  return e;
}

SmallExtension small_extension(const AlgebraMorphism& f) {
  if (!f.surjective()) throw Error(ErrorKind::InvalidInput, "small extension needs a surjection");
  SmallExtension e;
  e.B = f.source();
  e.A = f.target();
  e.proj = f;
  RatMatrix m = f.matrix();
  RatMatrix ker = kernel_basis(m);
  for (Index c = 0; c < ker.cols(); ++c) e.kernel.push_back(e.B.element(ker.col(c)));
  check_annihilated(e);
  e.principal = e.kernel.size() == 1;
  if (e.principal) e.eta = e.kernel.front();
  bool same_vars = e.A.names() == e.B.names();
  if (same_vars)
    for (int v = 0; v < e.B.nvars() && same_vars; ++v)
      same_vars = f.images()[v] == e.A.reduce(Poly::variable(e.A.nvars(), v));
  if (same_vars) {
    e.section_matrix = monomial_section(e.B, e.A);
  } else {
    e.section_matrix = zero_matrix(e.B.dim(), e.A.dim());
    for (Index j = 0; j < e.A.dim(); ++j) {
      RatVector t = RatVector::Constant(e.A.dim(), Rat(0));
      t(j) = 1;
      e.section_matrix.col(j) = *solve_exact(m, t).particular;
    }
  }
  return e;
}

KaehlerModule::KaehlerModule(const ArtinAlgebra& a, int p) : algebra_(a), p_(p) {
  std::vector<int> vars;
  for (int v = 0; v < a.nvars(); ++v) vars.push_back(v);
  std::vector<Exponent> monos = a.basis();
  std::sort(monos.begin(), monos.end(), [&](const Exponent& x, const Exponent& y) {
    return compare_monomials(x, y, a.order()) > 0;
  });
  auto jsets = subsets(vars, p);
  for (const auto& m : monos)
    for (const auto& j : jsets) {
      span_index_[{m, j}] = static_cast<Index>(span_.size());
      span_.emplace_back(m, j);
    }
  const Index ncol = span_size();
  std::vector<RatVector> rows;
  const Ring& ring = a.ring();
  auto raw_coords = [&](const PForm& w) {
    RatVector v = RatVector::Constant(ncol, Rat(0));
    for (const auto& [idx, c] : w.terms())
      for (const auto& [e, val] : ring.reduce(c).terms()) v(span_index_.at({e, idx})) += val;
    return v;
  };
  if (p >= 1) {
    auto prev = subsets(vars, p - 1);
    for (const auto& g : a.gb().gens) {
      PForm dg = d_total(ring, g);
      for (const auto& m : a.basis())
        for (const auto& j : prev) {
          PForm rel = wedge(Poly::monomial(m) * dg, PForm::monomial(j, ring.one()));
          RatVector v = raw_coords(rel);
          if (!is_zero(RatMatrix(v))) rows.push_back(v);
        }
    }
  }
  relations_ = zero_matrix(static_cast<Index>(rows.size()), ncol);
  for (size_t r = 0; r < rows.size(); ++r) relations_.row(static_cast<Index>(r)) = rows[r].transpose();
  Rref rr = rref(relations_);
  std::vector<bool> is_pivot(static_cast<size_t>(ncol), false);
  for (Index c : rr.pivots) is_pivot[static_cast<size_t>(c)] = true;
  basis_of_column_.assign(static_cast<size_t>(ncol), -1);
  for (Index c = 0; c < ncol; ++c)
    if (!is_pivot[static_cast<size_t>(c)]) {
      basis_of_column_[static_cast<size_t>(c)] = static_cast<Index>(free_.size());
      free_.push_back(c);
    }
  for (size_t r = 0; r < rr.pivots.size(); ++r) {
    RatVector exp = RatVector::Constant(dim(), Rat(0));
    for (Index s = 0; s < dim(); ++s) exp(s) = -rr.reduced(static_cast<Index>(r), free_[static_cast<size_t>(s)]);
    pivot_expansion_.emplace(rr.pivots[r], exp);
  }
}

RatVector KaehlerModule::span_coords(const Exponent& m, const DiffIndex& j) const {
  auto it = span_index_.find({m, j});
  if (it == span_index_.end()) throw Error(ErrorKind::InvalidInput, "not a spanning element");
  Index c = it->second;
  Index b = basis_of_column_[static_cast<size_t>(c)];
  if (b >= 0) {
    RatVector v = RatVector::Constant(dim(), Rat(0));
    v(b) = 1;
    return v;
  }
  return pivot_expansion_.at(c);
}

RatVector KaehlerModule::coords(const PForm& w) const {
  RatVector v = RatVector::Constant(dim(), Rat(0));
  const Ring& ring = algebra_.ring();
  for (const auto& [idx, c] : w.terms()) {
    if (static_cast<int>(idx.size()) != p_) throw Error(ErrorKind::DimensionMismatch, "form degree mismatch");
    for (const auto& [e, val] : ring.reduce(ring.embed(c)).terms()) v += span_coords(e, idx) * val;
  }
  return v;
}

PForm KaehlerModule::representative(Index s) const {
  const auto& [m, j] = span_[static_cast<size_t>(free_[static_cast<size_t>(s)])];
  return PForm::monomial(j, Poly::monomial(m));
}

RatMatrix kaehler_map(const AlgebraMorphism& phi, int p) {
  KaehlerModule src(phi.source(), p), tgt(phi.target(), p);
  const Ring& tr = phi.target().ring();
  RatMatrix m = zero_matrix(tgt.dim(), src.dim());
  for (Index s = 0; s < src.dim(); ++s) {
    PForm rep = src.representative(s);
    PForm img = PForm::zero(p);
    for (const auto& [idx, c] : rep.terms()) {
      PForm t = phi.apply(c);
      for (int v : idx) t = wedge(t, d_total(tr, phi.images()[v]));
      img += t;
    }
    m.col(s) = tgt.coords(img);
  }
  return m;
}

ArtinAlgebra tensor(const ArtinAlgebra& a, const ArtinAlgebra& b) {
  std::vector<std::string> names = a.names();
  for (auto nm : b.names()) {
    while (std::find(names.begin(), names.end(), nm) != names.end()) nm += "_2";
    names.push_back(nm);
  }
  const int n = static_cast<int>(names.size());
  std::vector<Poly> gens;
  for (const auto& g : a.gb().gens) gens.push_back(g.with_nvars(n));
  for (const auto& g : b.gb().gens) gens.push_back(shift_vars(g, a.nvars(), n));
  return ArtinAlgebra::make(names, gens, a.order());
}

FiberedProduct fibered_product(const AlgebraMorphism& g, const AlgebraMorphism& f) {
  const ArtinAlgebra& B = g.source();
  const ArtinAlgebra& C = f.source();
  if (g.target().names() != f.target().names() || g.target().dim() != f.target().dim())
    throw Error(ErrorKind::InvalidInput, "fibered product needs a common target");
  const Index nb = B.dim(), nc = C.dim(), na = g.target().dim();
  RatMatrix stack = zero_matrix(na + 1, nb + nc);
  stack.block(0, 0, na, nb) = g.matrix();
  stack.block(0, nb, na, nc) = -f.matrix();
  stack(na, 0) = 1;  // unit coordinate of b vanishes on m_P
  RatMatrix mp = kernel_basis(stack);
  auto mult = [&](const RatVector& x, const RatVector& y) {
    RatVector out(nb + nc);
    out.head(nb) = B.multiply(x.head(nb), y.head(nb));
    out.tail(nc) = C.multiply(x.tail(nc), y.tail(nc));
    return out;
  };
  SparseEliminator span(nb + nc);
  for (Index i = 0; i < mp.cols(); ++i)
    for (Index j = i; j < mp.cols(); ++j) span.insert(sparse_from_dense(mult(mp.col(i), mp.col(j))));
  std::vector<RatVector> gens;
  for (Index i = 0; i < mp.cols(); ++i)
    if (span.insert(sparse_from_dense(mp.col(i)))) gens.push_back(mp.col(i));
  const int r = static_cast<int>(gens.size());
  const int top = static_cast<int>(mp.cols()) + 1;
  RatVector unit = RatVector::Constant(nb + nc, Rat(0));
  unit(0) = 1;
  unit(nb) = 1;
  auto monos = monomials_upto(r, top);
  RatMatrix eval(nb + nc, static_cast<Index>(monos.size()));
  for (size_t k = 0; k < monos.size(); ++k) {
    RatVector v = unit;
    for (int i = 0; i < r; ++i)
      for (int t = 0; t < monos[k][i]; ++t) v = mult(v, gens[static_cast<size_t>(i)]);
    eval.col(static_cast<Index>(k)) = v;
  }
  RatMatrix ker = kernel_basis(eval);
  std::vector<Poly> rels;
  for (Index c = 0; c < ker.cols(); ++c) {
    Poly p = Poly::constant(r, 0);
    for (size_t k = 0; k < monos.size(); ++k)
      if (!ker(static_cast<Index>(k), c).is_zero()) p.add_term(monos[k], ker(static_cast<Index>(k), c));
    rels.push_back(p);
  }
  std::vector<std::string> names;
  for (int i = 0; i < r; ++i) names.push_back("z" + std::to_string(i + 1));
  FiberedProduct out;
  out.algebra = ArtinAlgebra::make(names, groebner(rels, r, B.order()).gens, B.order());
  if (out.algebra.dim() != mp.cols() + 1)
    throw Error(ErrorKind::InvalidInput, "fibered product presentation has the wrong dimension");
  std::vector<Poly> to_b, to_c;
  for (const auto& v : gens) {
    to_b.push_back(B.element(v.head(nb)));
    to_c.push_back(C.element(v.tail(nc)));
  }
  out.to_b = AlgebraMorphism::make(out.algebra, B, to_b);
  out.to_c = AlgebraMorphism::make(out.algebra, C, to_c);
  return out;
}

SMapReport s_map_forms(const AlgebraMorphism& g, const AlgebraMorphism& f, int j) {
  FiberedProduct fp = fibered_product(g, f);
  KaehlerModule kp(fp.algebra, j), kb(g.source(), j), kc(f.source(), j);
  RatMatrix og = kaehler_map(g, j), of = kaehler_map(f, j);
  RatMatrix cond(og.rows(), kb.dim() + kc.dim());
  cond << og, -of;
  SMapReport rep;
  rep.dim_source = kp.dim();
  rep.dim_target = kb.dim() + kc.dim() - rank(cond);
  RatMatrix s(kb.dim() + kc.dim(), kp.dim());
  s << kaehler_map(fp.to_b, j), kaehler_map(fp.to_c, j);
  rep.rank = rank(s);
  rep.injective = rep.rank == rep.dim_source;
  rep.surjective = rep.rank == rep.dim_target;
  rep.bijective = rep.injective && rep.surjective;
  return rep;
}

bool differential_injectivity(const SmallExtension& e) {
  KaehlerModule om(e.B, 1);
  const Ring& ring = e.B.ring();
  RatVector deta = om.coords(d_total(ring, e.eta));
  RatMatrix m(om.dim(), om.dim() + 1);
  for (Index s = 0; s < om.dim(); ++s) m.col(s) = om.coords(e.eta * om.representative(s));
  m.col(om.dim()) = deta;
  return rank(m) > rank(RatMatrix(m.leftCols(om.dim())));
}

std::optional<Rat> EtaProjection::project(const RatVector& w) const {
  LinearSolution sol = solve_exact(kernel, w);
  if (!sol.particular) return std::nullopt;
  return (*sol.particular)(0);
}

EtaProjection eta_projection(const SmallExtension& e) {
  EtaProjection out;
  out.omega_b = KaehlerModule(e.B, 1);
  out.deta = out.omega_b.coords(d_total(e.B.ring(), e.eta));
  RatMatrix w1 = kernel_basis(kaehler_map(e.proj, 1));
  RatMatrix m(out.deta.size(), w1.cols() + 1);
  m.col(0) = out.deta;
  m.rightCols(w1.cols()) = w1;
  Rref rr = rref(m);
  if (rr.pivots.empty() || rr.pivots.front() != 0)
    throw Error(ErrorKind::HypothesisViolated, "d(eta) vanishes in Omega^1_B");
  out.kernel = RatMatrix(m.rows(), static_cast<Index>(rr.pivots.size()));
  for (size_t k = 0; k < rr.pivots.size(); ++k) out.kernel.col(static_cast<Index>(k)) = m.col(rr.pivots[k]);
  return out;
}

FormSpace::FormSpace(const Ring& ring, const ArtinAlgebra& algebra) : ring_(ring), algebra_(algebra) {
  auto av = ring.artin_vars();
  if (static_cast<int>(av.size()) != algebra.nvars())
    throw Error(ErrorKind::DimensionMismatch, "ring and algebra disagree on Artin variables");
  offset_ = av.empty() ? ring.nvars() : av.front();
  for (int q = 0; q <= algebra.nvars(); ++q) kaehler_.emplace_back(algebra, q);
}

FormSpace FormSpace::over(const Ring& base, const ArtinAlgebra& algebra) {
  const int n = base.nvars() + algebra.nvars();
  std::vector<Poly> rels;
  for (const auto& g : algebra.gb().gens) rels.push_back(shift_vars(g, base.nvars(), n));
  return FormSpace(base.with_artin(algebra.names(), rels), algebra);
}

const KaehlerModule& FormSpace::kaehler(int q) const { return kaehler_.at(static_cast<size_t>(q)); }

Poly FormSpace::from_base(const Poly& p) const { return p.with_nvars(ring_.nvars()); }

Poly FormSpace::from_algebra(const Poly& a) const {
  return shift_vars(a.with_nvars(algebra_.nvars()), offset_, ring_.nvars());
}

FormCoords FormSpace::coords(const PForm& w) const {
  FormCoords out;
  const int n = ring_.nvars();
  const int na = algebra_.nvars();
  for (const auto& [idx, c] : w.terms()) {
    DiffIndex sp, ja;
    for (int v : idx) {
      if (ring_.kind(v) == VarKind::Inverse)
        throw Error(ErrorKind::InvalidInput, "form uses the differential of an inverse variable");
      if (v >= offset_) {
        ja.push_back(v - offset_);
      } else {
        sp.push_back(v);
      }
    }
    const KaehlerModule& km = kaehler(static_cast<int>(ja.size()));
    for (const auto& [e, val] : ring_.reduce(ring_.embed(c)).terms()) {
      Exponent er(e.begin(), e.end()), ea(static_cast<size_t>(na));
      for (int i = 0; i < na; ++i) {
        ea[i] = e[offset_ + i];
        er[offset_ + i] = 0;
      }
      RatVector vec = km.span_coords(ea, ja);
      for (Index s = 0; s < vec.size(); ++s) {
        if (vec(s).is_zero()) continue;
        FormKey key{sp, static_cast<int>(ja.size()), s};
        auto it = out.try_emplace(key, Poly::constant(n, 0)).first;
        it->second.add_term(er, val * vec(s));
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero()) {
      it = out.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

PForm FormSpace::form(const FormCoords& c) const {
  if (c.empty()) return PForm();
  PForm out = PForm::zero(static_cast<int>(c.begin()->first.space.size()) + c.begin()->first.adeg);
  const int n = ring_.nvars();
  for (const auto& [key, coeff] : c) {
    PForm rep = kaehler(key.adeg).representative(key.basis);
    for (const auto& [idx, m] : rep.terms()) {
      DiffIndex full = key.space;
      for (int v : idx) full.push_back(v + offset_);
      out += PForm::monomial(full, coeff * shift_vars(m, offset_, n));
    }
  }
  return out;
}

std::string FormSpace::key_str(const FormKey& k) const {
  std::string s;
  for (int v : k.space) s += (s.empty() ? "d" : "^d") + ring_.names()[v];
  if (k.adeg > 0 || algebra_.nvars() > 0) {
    PForm rep = kaehler(k.adeg).representative(k.basis);
    std::string r = str(algebra_.ring(), rep);
    s += (s.empty() ? "" : " (x) ") + r;
  }
  return s.empty() ? "1" : s;
}

}  // namespace obslab
