#include "obslab/hochschild.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "obslab/error.hpp"

namespace obslab {

namespace {

constexpr int kMaxGroupDegree = 6;
constexpr Index kMaxChainDim = 200000;

struct SymmetricGroup {
  int n = 0;
  std::vector<Perm> perms;
  std::map<Perm, size_t> index;
  std::vector<size_t> mult;  // mult[a * size + b] = index of perms[a] o perms[b]
};

const SymmetricGroup& symmetric_group(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<SymmetricGroup>> cache;
  if (n < 0 || n > kMaxGroupDegree)
    throw Error(ErrorKind::InvalidInput, "symmetric group degree out of range");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    auto g = std::make_unique<SymmetricGroup>();
    g->n = n;
    Perm p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[i] = i;
    do {
      g->index.emplace(p, g->perms.size());
      g->perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    const size_t sz = g->perms.size();
    g->mult.resize(sz * sz);
    Perm c(static_cast<size_t>(n));
    for (size_t a = 0; a < sz; ++a)
      for (size_t b = 0; b < sz; ++b) {
        for (int i = 0; i < n; ++i) c[i] = g->perms[a][g->perms[b][i]];
        g->mult[a * sz + b] = g->index.at(c);
      }
    slot = std::move(g);
  }
  return *slot;
}

/// Coefficients of prod_{i=0}^{n-1} (x - d + i) / n!, lowest degree first.
std::vector<Rat> garsia_polynomial(int n, int d) {
  std::vector<Rat> poly{Rat(1)};
  for (int i = 0; i < n; ++i) {
    Rat shift(i - d);
    std::vector<Rat> next(poly.size() + 1);
    for (size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] += poly[k] * shift;
    }
    poly = std::move(next);
  }
  Rat nf = factorial(static_cast<unsigned>(n)).inverse();
  for (auto& c : poly) c *= nf;
  return poly;
}

std::vector<GroupElement> garsia_idempotents(int n, bool use_inverse) {
  const SymmetricGroup& g = symmetric_group(n);
  std::vector<GroupElement> e(static_cast<size_t>(n + 1), GroupElement(n));
  for (size_t k = 0; k < g.perms.size(); ++k) {
    const Perm& s = g.perms[k];
    int d = descents(use_inverse ? perm_inverse(s) : s);
    auto poly = garsia_polynomial(n, d);
    int sign = perm_sign(s);
    for (int j = 0; j <= n; ++j) e[static_cast<size_t>(j)][k] += sign > 0 ? poly[j] : -poly[j];
  }
  return e;
}

}  // namespace

int perm_sign(const Perm& sigma) {
  int sign = 1;
  for (size_t i = 0; i < sigma.size(); ++i)
    for (size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j]) sign = -sign;
  return sign;
}

int descents(const Perm& sigma) {
  int d = 0;
  for (size_t i = 0; i + 1 < sigma.size(); ++i)
    if (sigma[i] > sigma[i + 1]) ++d;
  return d;
}

Perm perm_inverse(const Perm& sigma) {
  Perm inv(sigma.size());
  for (size_t i = 0; i < sigma.size(); ++i) inv[sigma[i]] = static_cast<int>(i);
  return inv;
}

GroupElement::GroupElement(int n) : n_(n), coeffs_(symmetric_group(n).perms.size()) {}

GroupElement GroupElement::identity(int n) {
  GroupElement g(n);
  g.coeffs_[0] = 1;  // the identity is first in lexicographic order
  return g;
}

const Perm& GroupElement::perm(size_t k) const { return symmetric_group(n_).perms[k]; }

Rat GroupElement::coefficient(const Perm& sigma) const {
  return coeffs_[symmetric_group(n_).index.at(sigma)];
}

Rat& GroupElement::coefficient(const Perm& sigma) {
  return coeffs_[symmetric_group(n_).index.at(sigma)];
}

GroupElement& GroupElement::operator+=(const GroupElement& o) {
  for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

GroupElement& GroupElement::operator-=(const GroupElement& o) {
  for (size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  if (a.n_ != b.n_) throw Error(ErrorKind::DimensionMismatch, "group algebra degree mismatch");
  const SymmetricGroup& g = symmetric_group(a.n_);
  const size_t sz = g.perms.size();
  GroupElement out(a.n_);
  for (size_t x = 0; x < sz; ++x) {
    if (a.coeffs_[x].is_zero()) continue;
    for (size_t y = 0; y < sz; ++y) {
      if (b.coeffs_[y].is_zero()) continue;
      out.coeffs_[g.mult[x * sz + y]] += a.coeffs_[x] * b.coeffs_[y];
    }
  }
  return out;
}

GroupElement GroupElement::scaled(const Rat& c) const {
  GroupElement out = *this;
  for (auto& v : out.coeffs_) v *= c;
  return out;
}

bool GroupElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& r) { return r.is_zero(); });
}

GroupElement lambda_operation(int n, int k) {
  GroupElement out(n);
  if (n == 0 || k <= 0) {
    if (k > 0) out[0] = 1;
    return out;
  }
  // Assign each of 0..n-1 to a block; within a block the order is kept, so a
  // block assignment determines the shuffle: blocks are laid out in order.
  std::vector<int> block(static_cast<size_t>(n), 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      // Positions are filled block by block; sigma maps the i-th source slot
      // (source = concatenation of blocks) to its position.
      std::vector<int> sizes(static_cast<size_t>(k), 0);
      for (int b : block) ++sizes[static_cast<size_t>(b)];
      std::vector<int> start(static_cast<size_t>(k), 0);
      for (int b = 1; b < k; ++b) start[b] = start[b - 1] + sizes[b - 1];
      Perm sigma(static_cast<size_t>(n));
      std::vector<int> next = start;
      for (int p = 0; p < n; ++p) sigma[next[block[p]]++] = p;
      out.coefficient(sigma) += perm_sign(sigma);
      return;
    }
    for (int b = 0; b < k; ++b) {
      block[pos] = b;
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

EulerianSystem::EulerianSystem(int n) : n_(n) {
  if (n < 1 || n > kMaxGroupDegree) throw Error(ErrorKind::InvalidInput, "eulerian degree must be in 1..6");
  std::vector<GroupElement> lambdas;
  for (int k = 1; k <= n + 1; ++k) lambdas.push_back(lambda_operation(n, k));
  auto matches = [&](const std::vector<GroupElement>& e) {
    for (int k = 1; k <= n + 1; ++k) {
      GroupElement sum(n);
      for (int j = 0; j <= n; ++j) sum += e[static_cast<size_t>(j)].scaled(pow(Rat(k), static_cast<unsigned>(j)));
      if (!(sum == lambdas[static_cast<size_t>(k - 1)])) return false;
    }
    return true;
  };
  e_ = garsia_idempotents(n, false);
  if (!matches(e_)) {
    e_ = garsia_idempotents(n, true);
    if (!matches(e_)) throw Error(ErrorKind::InvalidInput, "eulerian idempotents disagree with shuffles");
  }
  GroupElement total(n);
  for (const auto& e : e_) total += e;
  if (!(total == GroupElement::identity(n)))
    throw Error(ErrorKind::InvalidInput, "eulerian idempotents are not complete");
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      GroupElement p = e_[static_cast<size_t>(i)] * e_[static_cast<size_t>(j)];
      bool ok = i == j ? p == e_[static_cast<size_t>(i)] : p.is_zero();
      if (!ok) throw Error(ErrorKind::InvalidInput, "eulerian idempotents are not orthogonal");
    }
}

GroupElement EulerianSystem::lambda(int k) const {
  GroupElement sum(n_);
  for (int j = 0; j <= n_; ++j) sum += e_[static_cast<size_t>(j)].scaled(pow(Rat(k), static_cast<unsigned>(j)));
  return sum;
}

const EulerianSystem& eulerian(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<EulerianSystem>> cache;
  if (n < 1 || n > kMaxGroupDegree) throw Error(ErrorKind::InvalidInput, "eulerian degree must be in 1..6");
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
  }
  auto sys = std::make_unique<EulerianSystem>(n);
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::move(sys);
  return *slot;
}

BarComplex::BarComplex(const ArtinAlgebra& a, int truncation) : a_(a), n_max_(truncation) {
  if (truncation < 0) throw Error(ErrorKind::InvalidInput, "negative truncation");
  for (int n = 0; n <= truncation + 1; ++n)
    if (dim(n) > kMaxChainDim)
      throw Error(ErrorKind::TruncationExceeded, "bar complex chain space too large");
  const Index da = a.dim();
  b_.resize(static_cast<size_t>(truncation + 2));
  ranks_.assign(static_cast<size_t>(truncation + 2), -1);
  for (int n = 1; n <= truncation + 1; ++n) {
    auto& cols = b_[static_cast<size_t>(n)];
    cols.reserve(static_cast<size_t>(dim(n)));
    std::vector<Rat> acc(static_cast<size_t>(dim(n - 1)));
    std::vector<Index> touched;
    auto add = [&](const std::vector<Index>& t, const Rat& c) {
      Index k = encode(t);
      if (acc[static_cast<size_t>(k)].is_zero()) touched.push_back(k);
      acc[static_cast<size_t>(k)] += c;
    };
    for (Index k = 0; k < dim(n); ++k) {
      auto t = decode(n, k);
      touched.clear();
      std::vector<Index> s(static_cast<size_t>(n));
      // i = 0: a0 a1 (x) a2 ...
      {
        const RatVector& prod = a.product(t[0], t[1]);
        for (Index c = 0; c < da; ++c) {
          if (prod(c).is_zero()) continue;
          s[0] = c;
          for (int i = 2; i <= n; ++i) s[static_cast<size_t>(i - 1)] = t[static_cast<size_t>(i)];
          add(s, prod(c));
        }
      }
      for (int i = 1; i < n; ++i) {
        const RatVector& prod = a.product(t[static_cast<size_t>(i)], t[static_cast<size_t>(i + 1)]);
        Rat sign = (i % 2 == 0) ? Rat(1) : Rat(-1);
        for (Index c = 1; c < da; ++c) {
          if (prod(c).is_zero()) continue;
          for (int j = 0; j < i; ++j) s[static_cast<size_t>(j)] = t[static_cast<size_t>(j)];
          s[static_cast<size_t>(i)] = c;
          for (int j = i + 2; j <= n; ++j) s[static_cast<size_t>(j - 1)] = t[static_cast<size_t>(j)];
          add(s, sign * prod(c));
        }
      }
      {
        const RatVector& prod = a.product(t[static_cast<size_t>(n)], t[0]);
        Rat sign = (n % 2 == 0) ? Rat(1) : Rat(-1);
        for (Index c = 0; c < da; ++c) {
          if (prod(c).is_zero()) continue;
          s[0] = c;
          for (int j = 1; j < n; ++j) s[static_cast<size_t>(j)] = t[static_cast<size_t>(j)];
          add(s, sign * prod(c));
        }
      }
      std::sort(touched.begin(), touched.end());
      SparseVec col;
      for (Index idx : touched) {
        Rat& v = acc[static_cast<size_t>(idx)];
        if (!v.is_zero()) col.emplace_back(idx, v);
        v = Rat();
      }
      cols.push_back(std::move(col));
    }
  }
}

Index BarComplex::dim(int n) const {
  Index d = a_.dim();
  for (int i = 0; i < n; ++i) d *= a_.dim() - 1;
  return d;
}

Index BarComplex::encode(const std::vector<Index>& t) const {
  const Index dm = a_.dim() - 1;
  Index k = 0;
  for (size_t i = t.size(); i-- > 1;) k = k * dm + (t[i] - 1);
  return k * a_.dim() + t[0];
}

std::vector<Index> BarComplex::decode(int n, Index k) const {
  const Index dm = a_.dim() - 1;
  std::vector<Index> t(static_cast<size_t>(n + 1));
  t[0] = k % a_.dim();
  k /= a_.dim();
  for (int i = 1; i <= n; ++i) {
    t[static_cast<size_t>(i)] = k % dm + 1;
    k /= dm;
  }
  return t;
}

const std::vector<SparseVec>& BarComplex::boundary(int n) const {
  if (n < 1 || n > n_max_ + 1) throw Error(ErrorKind::TruncationExceeded, "boundary degree outside truncation");
  return b_[static_cast<size_t>(n)];
}

RatMatrix BarComplex::boundary_matrix(int n) const {
  const auto& cols = boundary(n);
  RatMatrix m = zero_matrix(dim(n - 1), dim(n));
  for (size_t c = 0; c < cols.size(); ++c)
    for (const auto& [r, v] : cols[c]) m(r, static_cast<Index>(c)) = v;
  return m;
}

SparseVec BarComplex::apply_boundary(int n, const SparseVec& v) const {
  const auto& cols = boundary(n);
  std::map<Index, Rat> acc;
  for (const auto& [k, c] : v)
    for (const auto& [r, x] : cols[static_cast<size_t>(k)]) acc[r] += c * x;
  SparseVec out;
  for (auto& [r, x] : acc)
    if (!x.is_zero()) out.emplace_back(r, x);
  return out;
}

Index BarComplex::boundary_rank(int n) const {
  if (n == 0 || dim(n) == 0) return 0;
  Index& r = ranks_.at(static_cast<size_t>(n));
  if (r < 0) r = sparse_rank(boundary(n), dim(n - 1));
  return r;
}

SparseVec BarComplex::chain(const std::vector<RatVector>& factors) const {
  const int n = static_cast<int>(factors.size()) - 1;
  std::map<Index, Rat> acc;
  std::vector<Index> t(factors.size());
  std::function<void(int, Rat)> rec = [&](int i, Rat c) {
    if (i > n) {
      acc[encode(t)] += c;
      return;
    }
    const RatVector& f = factors[static_cast<size_t>(i)];
    for (Index j = (i == 0 ? 0 : 1); j < f.size(); ++j) {
      if (f(j).is_zero()) continue;
      t[static_cast<size_t>(i)] = j;
      rec(i + 1, c * f(j));
    }
  };
  rec(0, Rat(1));
  SparseVec out;
  for (auto& [k, c] : acc)
    if (!c.is_zero()) out.emplace_back(k, c);
  return out;
}

SparseVec BarComplex::act(const GroupElement& g, const SparseVec& v) const {
  const int n = g.degree();
  std::map<Index, Rat> acc;
  std::vector<Index> s(static_cast<size_t>(n + 1));
  for (const auto& [k, c] : v) {
    auto t = decode(n, k);
    s[0] = t[0];
    for (size_t p = 0; p < g.order(); ++p) {
      if (g[p].is_zero()) continue;
      const Perm& sigma = g.perm(p);
      for (int i = 0; i < n; ++i) s[static_cast<size_t>(sigma[i] + 1)] = t[static_cast<size_t>(i + 1)];
      acc[encode(s)] += c * g[p];
    }
  }
  SparseVec out;
  for (auto& [k, c] : acc)
    if (!c.is_zero()) out.emplace_back(k, c);
  return out;
}

RatMatrix BarComplex::action_matrix(const GroupElement& g) const {
  const int n = g.degree();
  RatMatrix m = zero_matrix(dim(n), dim(n));
  for (Index k = 0; k < dim(n); ++k)
    for (const auto& [r, v] : act(g, SparseVec{{k, Rat(1)}})) m(r, k) = v;
  return m;
}

Index hh_dim(const BarComplex& bar, int n) {
  if (n < 0 || n > bar.truncation()) throw Error(ErrorKind::TruncationExceeded, "degree beyond truncation");
  return bar.dim(n) - bar.boundary_rank(n) - bar.boundary_rank(n + 1);
}

HomologyInfo hh(const BarComplex& bar, int n, bool with_representatives) {
  HomologyInfo info;
  info.degree = n;
  info.dim = hh_dim(bar, n);
  if (!with_representatives || info.dim == 0) return info;
  SparseEliminator bounds(bar.dim(n));
  for (const auto& c : bar.boundary(n + 1)) bounds.insert(c);
  RatMatrix cycles = n == 0 ? identity_matrix(bar.dim(0)) : kernel_basis(bar.boundary_matrix(n));
  for (Index c = 0; c < cycles.cols(); ++c) {
    SparseVec v = sparse_from_dense(cycles.col(c));
    if (bounds.insert(v)) info.representatives.push_back(v);
  }
  return info;
}

std::vector<WeightPiece> weight_split(const BarComplex& bar, int n) {
  if (n < 0 || n > bar.truncation()) throw Error(ErrorKind::TruncationExceeded, "degree beyond truncation");
  std::vector<WeightPiece> out;
  if (n == 0) {
    out.push_back({0, hh_dim(bar, 0)});
    return out;
  }
  if (n + 1 > kMaxGroupDegree) throw Error(ErrorKind::TruncationExceeded, "weights need n + 1 <= 6");
  const EulerianSystem& en = eulerian(n);
  const EulerianSystem& en1 = eulerian(n + 1);
  for (int l = 0; l <= n; ++l) {
    SparseEliminator img(bar.dim(n)), bimg(bar.dim(n - 1)), bimg1(bar.dim(n));
    for (Index k = 0; k < bar.dim(n); ++k) {
      SparseVec v = bar.act(en.idempotent(l), SparseVec{{k, Rat(1)}});
      if (img.insert(v)) bimg.insert(bar.apply_boundary(n, v));
    }
    for (Index k = 0; k < bar.dim(n + 1); ++k) {
      SparseVec v = bar.act(en1.idempotent(l), SparseVec{{k, Rat(1)}});
      bimg1.insert(bar.apply_boundary(n + 1, v));
    }
    out.push_back({l, img.rank() - bimg.rank() - bimg1.rank()});
  }
  return out;
}

HochschildClass adams(const BarComplex& bar, int m, const HochschildClass& c) {
  if (m < 1) throw Error(ErrorKind::InvalidInput, "Adams operations need m >= 1");
  HochschildClass out = c;
  if (c.degree == 0) return out;
  out.representative = bar.act(lambda_operation(c.degree, m), c.representative);
  return out;
}

std::optional<Rat> adams_eigenvalue(const BarComplex& bar, int m, const HochschildClass& c) {
  SparseEliminator bounds(bar.dim(c.degree));
  for (const auto& col : bar.boundary(c.degree + 1)) bounds.insert(col);
  SparseVec rv = bounds.reduce(c.representative);
  SparseVec rw = bounds.reduce(adams(bar, m, c).representative);
  if (rv.empty()) return std::nullopt;
  Rat s = rw.empty() ? Rat(0) : Rat(0);
  // Find the scalar from the first entry of rv.
  Index lead = rv.front().first;
  for (const auto& [k, x] : rw)
    if (k == lead) s = x / rv.front().second;
  std::map<Index, Rat> diff;
  for (const auto& [k, x] : rw) diff[k] += x;
  for (const auto& [k, x] : rv) diff[k] -= s * x;
  for (const auto& [k, x] : diff)
    if (!x.is_zero()) return std::nullopt;
  return s;
}

HkrReport hkr_map(const BarComplex& bar, int l) {
  const ArtinAlgebra& a = bar.algebra();
  KaehlerModule km(a, l);
  HkrReport rep;
  rep.degree = l;
  rep.omega_dim = km.dim();
  std::vector<RatVector> var_coords;
  for (int v = 0; v < a.nvars(); ++v) var_coords.push_back(a.coords(Poly::variable(a.nvars(), v)));
  std::vector<Perm> perms;
  {
    Perm p(static_cast<size_t>(l));
    for (int i = 0; i < l; ++i) p[i] = i;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<SparseVec> span_chains;
  for (const auto& [m, j] : km.spanning_set()) {
    std::map<Index, Rat> acc;
    for (const auto& sigma : perms) {
      std::vector<RatVector> factors{a.coords(Poly::monomial(m))};
      for (int i = 0; i < l; ++i) factors.push_back(var_coords[static_cast<size_t>(j[sigma[i]])]);
      int sign = perm_sign(sigma);
      for (const auto& [k, c] : bar.chain(factors)) acc[k] += sign > 0 ? c : -c;
    }
    SparseVec v;
    for (auto& [k, c] : acc)
      if (!c.is_zero()) v.emplace_back(k, c);
    span_chains.push_back(std::move(v));
  }
  RatMatrix rel = km.relations();
  // Basis chains: each basis element is the spanning element of its free column.
  for (Index s = 0; s < km.dim(); ++s) {
    PForm r = km.representative(s);
    const auto& [idx, coeff] = *r.terms().begin();
    Exponent m = coeff.terms().begin()->first;
    const auto& span = km.spanning_set();
    auto it = std::find(span.begin(), span.end(), std::make_pair(m, idx));
    rep.chains.push_back(span_chains[static_cast<size_t>(it - span.begin())]);
  }
  rep.cycles = true;
  if (l >= 1)
    for (const auto& c : rep.chains)
      if (!bar.apply_boundary(l, c).empty()) rep.cycles = false;
  rep.in_weight = true;
  if (l >= 1) {
    const GroupElement& e = eulerian(l).idempotent(l);
    for (const auto& c : rep.chains)
      if (bar.act(e, c) != c) rep.in_weight = false;
  }
  SparseEliminator bounds(bar.dim(l));
  for (const auto& col : bar.boundary(l + 1)) bounds.insert(col);
  rep.relations_to_boundaries = true;
  for (Index r = 0; r < rel.rows(); ++r) {
    std::map<Index, Rat> acc;
    for (Index c = 0; c < rel.cols(); ++c) {
      if (rel(r, c).is_zero()) continue;
      for (const auto& [k, x] : span_chains[static_cast<size_t>(c)]) acc[k] += rel(r, c) * x;
    }
    SparseVec v;
    for (auto& [k, x] : acc)
      if (!x.is_zero()) v.emplace_back(k, x);
    if (!bounds.contains(v)) rep.relations_to_boundaries = false;
  }
  Index before = bounds.rank();
  for (const auto& c : rep.chains) bounds.insert(c);
  rep.image_rank = bounds.rank() - before;
  rep.weight_dim = weight_split(bar, l)[static_cast<size_t>(l)].dim;
  rep.injective = rep.image_rank == rep.omega_dim;
  rep.onto_weight = rep.image_rank == rep.weight_dim;
  return rep;
}

KunnethReport kunneth_check(const ArtinAlgebra& a, const ArtinAlgebra& b, int max_degree, bool weights) {
  if (a.dim() * b.dim() > 9) throw Error(ErrorKind::FeasibilityExceeded, "dim(A (x) B) exceeds 9");
  ArtinAlgebra t = tensor(a, b);
  BarComplex ba(a, max_degree), bb(b, max_degree), bt(t, max_degree);
  KunnethReport rep;
  rep.equal = true;
  std::vector<std::vector<WeightPiece>> wa, wb;
  if (weights)
    for (int j = 0; j <= max_degree; ++j) {
      wa.push_back(weight_split(ba, j));
      wb.push_back(weight_split(bb, j));
    }
  for (int j = 0; j <= max_degree; ++j) {
    KunnethRow row;
    row.degree = j;
    row.lhs = hh_dim(bt, j);
    for (int j1 = 0; j1 <= j; ++j1) row.rhs += hh_dim(ba, j1) * hh_dim(bb, j - j1);
    row.equal = row.lhs == row.rhs;
    if (weights) {
      for (const auto& w : weight_split(bt, j)) row.lhs_weights.push_back(w.dim);
      row.rhs_weights.assign(static_cast<size_t>(j + 1), 0);
      for (int j1 = 0; j1 <= j; ++j1)
        for (const auto& x : wa[static_cast<size_t>(j1)])
          for (const auto& y : wb[static_cast<size_t>(j - j1)])
            row.rhs_weights[static_cast<size_t>(x.weight + y.weight)] += x.dim * y.dim;
      row.equal = row.equal && row.lhs_weights == row.rhs_weights;
    }
    rep.equal = rep.equal && row.equal;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace obslab
