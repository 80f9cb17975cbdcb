#include "obslab/form.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "obslab/error.hpp"

namespace obslab {

PForm::PForm(const Poly& f) {
  if (!f.is_zero()) terms_.emplace(DiffIndex{}, f);
}

PForm PForm::monomial(const DiffIndex& idx, const Poly& coeff) {
  PForm w = zero(static_cast<int>(idx.size()));
  DiffIndex sorted = idx;
  int s = sort_sign(sorted);
  if (s != 0) w.add_term(sorted, s > 0 ? coeff : -coeff);
  return w;
}

PForm PForm::zero(int degree) {
  PForm w;
  w.degree_ = degree;
  return w;
}

Poly PForm::coefficient(const DiffIndex& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? Poly() : it->second;
}

void PForm::add_term(const DiffIndex& idx, const Poly& coeff) {
  if (coeff.is_zero()) return;
  int deg = static_cast<int>(idx.size());
  if (terms_.empty()) {
    degree_ = deg;
  } else if (deg != degree_) {
    throw Error(ErrorKind::DimensionMismatch, "adding forms of different degree");
  }
  auto [it, inserted] = terms_.emplace(idx, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PForm& PForm::operator+=(const PForm& o) {
  for (const auto& [idx, c] : o.terms_) add_term(idx, c);
  if (terms_.empty() && o.terms_.empty()) degree_ = std::max(degree_, o.degree_);
  return *this;
}

PForm& PForm::operator-=(const PForm& o) { return *this += -o; }

PForm PForm::operator-() const {
  PForm w = *this;
  for (auto& [idx, c] : w.terms_) c = -c;
  return w;
}

PForm wedge(const PForm& a, const PForm& b) {
  PForm out = PForm::zero(a.degree() + b.degree());
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      DiffIndex idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      int s = sort_sign(idx);
      if (s == 0) continue;
      Poly c = ca * cb;
      out.add_term(idx, s > 0 ? c : -c);
    }
  }
  return out;
}

PForm operator*(const PForm& a, const PForm& b) { return wedge(a, b); }

PForm operator*(const Poly& f, const PForm& w) {
  PForm out = PForm::zero(w.degree());
  for (const auto& [idx, c] : w.terms()) out.add_term(idx, f * c);
  return out;
}

PForm PForm::scaled(const Rat& c) const {
  PForm out = zero(degree_);
  for (const auto& [idx, v] : terms_) out.add_term(idx, v.scaled(c));
  return out;
}

int sort_sign(DiffIndex& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i)
    for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

std::vector<DiffIndex> subsets(const std::vector<int>& pool, int p) {
  std::vector<DiffIndex> out;
  if (p < 0 || p > static_cast<int>(pool.size())) return out;
  DiffIndex cur;
  std::function<void(size_t)> rec = [&](size_t start) {
    if (static_cast<int>(cur.size()) == p) {
      out.push_back(cur);
      return;
    }
    for (size_t i = start; i < pool.size(); ++i) {
      cur.push_back(pool[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

PForm dvar(const Ring& ring, int v) {
  if (ring.kind(v) != VarKind::Inverse) return PForm::monomial({v}, ring.one());
  Poly u = ring.var(v);
  return (-(u * u)) * d_total(ring, ring.inverted(v));
}

PForm d_total(const Ring& ring, const Poly& f) {
  Poly g = ring.embed(f);
  PForm out = PForm::zero(1);
  for (int v = 0; v < ring.nvars(); ++v) {
    Poly dv = g.derivative(v);
    if (dv.is_zero()) continue;
    out += dv * dvar(ring, v);
  }
  return reduce(ring, out);
}

PForm d_total(const Ring& ring, const PForm& w) {
  PForm out = PForm::zero(w.degree() + 1);
  for (const auto& [idx, c] : w.terms()) out += wedge(d_total(ring, c), PForm::monomial(idx, ring.one()));
  return reduce(ring, out);
}

PForm reduce(const Ring& ring, const PForm& w) {
  PForm out = PForm::zero(w.degree());
  for (const auto& [idx, c] : w.terms()) out.add_term(idx, ring.reduce(c));
  return out;
}

PForm pullback(const RingMap& map, const PForm& w) {
  const Ring& tgt = map.target();
  PForm out = PForm::zero(w.degree());
  for (const auto& [idx, c] : w.terms()) {
    PForm t = map.apply(c);
    for (int v : idx) t = wedge(t, d_total(tgt, map.images()[v]));
    out += t;
  }
  return reduce(tgt, out);
}

std::pair<int, int> bidegree_of(const Ring& ring, const DiffIndex& idx) {
  int j2 = 0;
  for (int v : idx)
    if (ring.kind(v) == VarKind::Artin) ++j2;
  return {static_cast<int>(idx.size()) - j2, j2};
}

std::map<std::pair<int, int>, PForm> bidegree_split(const Ring& ring, const PForm& w) {
  std::map<std::pair<int, int>, PForm> out;
  for (const auto& [idx, c] : w.terms()) {
    auto key = bidegree_of(ring, idx);
    auto it = out.try_emplace(key, PForm::zero(w.degree())).first;
    it->second.add_term(idx, c);
  }
  return out;
}

std::string str(const Ring& ring, const PForm& w) {
  if (w.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : w.terms()) {
    if (!first) os << " + ";
    first = false;
    std::string cs = ring.str(c);
    if (idx.empty()) {
      os << "(" << cs << ")";
      continue;
    }
    if (cs != "1") os << "(" << cs << ")*";
    for (size_t i = 0; i < idx.size(); ++i) {
      if (i) os << "^";
      os << "d" << ring.names()[idx[i]];
    }
  }
  return os.str();
}

}  // namespace obslab
