#include "obslab/groebner.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "obslab/error.hpp"

namespace obslab {

namespace {

struct OrderLess {
  MonomialOrder order;
  bool operator()(const Exponent& a, const Exponent& b) const {
    return compare_monomials(a, b, order) < 0;
  }
};

using Work = std::map<Exponent, Rat, OrderLess>;

void add_into(Work& w, const Poly& g, const Exponent& shift, const Rat& factor) {
  Exponent e(shift.size());
  for (const auto& [ge, gc] : g.terms()) {
    for (size_t i = 0; i < shift.size(); ++i) e[i] = ge[i] + shift[i];
    auto [it, inserted] = w.emplace(e, gc * factor);
    if (!inserted) {
      it->second += gc * factor;
      if (it->second.is_zero()) w.erase(it);
    }
  }
}

Exponent quotient_exponent(const Exponent& num, const Exponent& den) {
  Exponent r(num.size());
  for (size_t i = 0; i < num.size(); ++i) r[i] = num[i] - den[i];
  return r;
}

/// Fully reduces p by (gens, leads); optionally accumulates quotients.
Poly reduce(const Poly& p, const std::vector<Poly>& gens, const std::vector<Exponent>& leads,
            MonomialOrder order, int nvars, std::vector<Poly>* quotients) {
  Work w{OrderLess{order}};
  Poly src = p.with_nvars(nvars);
  for (const auto& [e, c] : src.terms()) w.emplace(e, c);
  Poly rem = Poly::constant(nvars, 0);
  if (quotients) quotients->assign(gens.size(), Poly::constant(nvars, 0));
  while (!w.empty()) {
    auto top = std::prev(w.end());
    Exponent e = top->first;
    Rat c = top->second;
    size_t k = 0;
    while (k < gens.size() && !divides(leads[k], e)) ++k;
    if (k == gens.size()) {
      rem.add_term(e, c);
      w.erase(top);
      continue;
    }
    Rat lc = gens[k].coefficient(leads[k]);
    Rat factor = -(c / lc);
    Exponent shift = quotient_exponent(e, leads[k]);
    add_into(w, gens[k], shift, factor);
    if (quotients) (*quotients)[k].add_term(shift, -factor);
  }
  return rem;
}

struct Element {
  Poly poly;
  Exponent lead;
  std::vector<Poly> rep;  // in terms of the inputs, when tracking
};

void make_monic(Element& el, MonomialOrder order) {
  auto [e, c] = el.poly.leading_term(order);
  el.lead = e;
  if (c.is_one()) return;
  Rat inv = c.inverse();
  el.poly = el.poly.scaled(inv);
  for (auto& r : el.rep) r = r.scaled(inv);
}

}  // namespace

bool GroebnerBasis::is_unit() const {
  return gens.size() == 1 && gens[0].is_constant() && !gens[0].is_zero();
}

GroebnerBasis groebner(const std::vector<Poly>& input, int nvars, MonomialOrder order,
                       bool track) {
  GroebnerBasis out;
  out.nvars = nvars;
  out.order = order;
  for (const auto& g : input) out.inputs.push_back(g.with_nvars(nvars));
  const size_t m = out.inputs.size();
  Poly zero = Poly::constant(nvars, 0);

  std::vector<Element> basis;
  auto reduce_element = [&](Element el) -> std::optional<Element> {
    std::vector<Poly> gens;
    std::vector<Exponent> leads;
    for (const auto& b : basis) {
      gens.push_back(b.poly);
      leads.push_back(b.lead);
    }
    std::vector<Poly> q;
    Poly r = reduce(el.poly, gens, leads, order, nvars, track ? &q : nullptr);
    if (r.is_zero()) return std::nullopt;
    if (track)
      for (size_t k = 0; k < basis.size(); ++k) {
        if (q[k].is_zero()) continue;
        for (size_t i = 0; i < m; ++i) el.rep[i] -= q[k] * basis[k].rep[i];
      }
    el.poly = r;
    make_monic(el, order);
    return el;
  };

  struct Pair {
    size_t i, j;
    Exponent lcm;
  };
  std::vector<Pair> pairs;
  auto add_element = [&](Element el) {
    size_t idx = basis.size();
    basis.push_back(std::move(el));
    for (size_t i = 0; i < idx; ++i)
      pairs.push_back({i, idx, exponent_lcm(basis[i].lead, basis[idx].lead)});
  };

  for (size_t i = 0; i < m; ++i) {
    if (out.inputs[i].is_zero()) continue;
    Element el{out.inputs[i], {}, {}};
    if (track) {
      el.rep.assign(m, zero);
      el.rep[i] = Poly::constant(nvars, 1);
    }
    if (auto r = reduce_element(std::move(el))) add_element(std::move(*r));
  }

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      return compare_monomials(a.lcm, b.lcm, order) < 0;
    });
    Pair pr = *best;
    pairs.erase(best);
    const Element& a = basis[pr.i];
    const Element& b = basis[pr.j];
    // Product criterion.
    bool coprime = true;
    for (int v = 0; v < nvars; ++v)
      if (a.lead[v] > 0 && b.lead[v] > 0) coprime = false;
    if (coprime) continue;
    // Chain criterion against a third element with no pending pairs.
    bool chain = false;
    for (size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j || !divides(basis[k].lead, pr.lcm)) continue;
      auto pending = [&](size_t x, size_t y) {
        if (x > y) std::swap(x, y);
        return std::any_of(pairs.begin(), pairs.end(),
                           [&](const Pair& q) { return q.i == x && q.j == y; });
      };
      if (!pending(pr.i, k) && !pending(pr.j, k)) chain = true;
    }
    if (chain) continue;
    Exponent sa = quotient_exponent(pr.lcm, a.lead);
    Exponent sb = quotient_exponent(pr.lcm, b.lead);
    Element s{a.poly.times_monomial(sa, 1) - b.poly.times_monomial(sb, 1), {}, {}};
    if (track) {
      s.rep.resize(m);
      for (size_t i = 0; i < m; ++i)
        s.rep[i] = a.rep[i].times_monomial(sa, 1) - b.rep[i].times_monomial(sb, 1);
    }
    if (auto r = reduce_element(std::move(s))) {
      if (r->poly.is_constant()) {
        basis.clear();
        pairs.clear();
        add_element(std::move(*r));
        break;
      }
      add_element(std::move(*r));
    }
  }

  // Minimalize, then interreduce.
  std::vector<Element> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j || !divides(basis[j].lead, basis[i].lead)) continue;
      if (basis[j].lead != basis[i].lead || j < i) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const Element& x, const Element& y) {
    return compare_monomials(x.lead, y.lead, order) < 0;
  });
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> gens;
    std::vector<Exponent> leads;
    for (size_t j = 0; j < minimal.size(); ++j) {
      if (j == i) continue;
      gens.push_back(minimal[j].poly);
      leads.push_back(minimal[j].lead);
    }
    Poly tail = minimal[i].poly;
    Rat lc = tail.coefficient(minimal[i].lead);
    tail.add_term(minimal[i].lead, -lc);
    std::vector<Poly> q;
    Poly r = reduce(tail, gens, leads, order, nvars, track ? &q : nullptr);
    if (track) {
      size_t idx = 0;
      for (size_t j = 0; j < minimal.size(); ++j) {
        if (j == i) continue;
        if (!q[idx].is_zero())
          for (size_t t = 0; t < m; ++t) minimal[i].rep[t] -= q[idx] * minimal[j].rep[t];
        ++idx;
      }
    }
    r.add_term(minimal[i].lead, lc);
    minimal[i].poly = r;
  }
  for (auto& el : minimal) {
    out.gens.push_back(el.poly);
    out.leads.push_back(el.lead);
    if (track) out.transform.push_back(el.rep);
  }
  return out;
}

Poly normal_form(const Poly& p, const GroebnerBasis& gb) {
  return reduce(p, gb.gens, gb.leads, gb.order, gb.nvars, nullptr);
}

bool ideal_contains(const GroebnerBasis& gb, const Poly& p) { return normal_form(p, gb).is_zero(); }

bool same_ideal(const GroebnerBasis& a, const GroebnerBasis& b) {
  if (a.nvars != b.nvars) return false;
  for (const auto& g : a.gens)
    if (!ideal_contains(b, g)) return false;
  for (const auto& g : b.gens)
    if (!ideal_contains(a, g)) return false;
  return true;
}

Lift lift(const Poly& p, const GroebnerBasis& gb) {
  if (!gb.tracked()) throw Error(ErrorKind::InvalidInput, "lift requires a tracked basis");
  std::vector<Poly> q;
  Lift out;
  out.remainder = reduce(p, gb.gens, gb.leads, gb.order, gb.nvars, &q);
  out.cofactors.assign(gb.inputs.size(), Poly::constant(gb.nvars, 0));
  for (size_t k = 0; k < gb.gens.size(); ++k) {
    if (q[k].is_zero()) continue;
    for (size_t i = 0; i < gb.inputs.size(); ++i)
      out.cofactors[i] += q[k] * gb.transform[k][i];
  }
  return out;
}

std::vector<Exponent> monomials_upto(int nvars, int max_degree) {
  std::vector<Exponent> out;
  if (max_degree < 0) return out;
  Exponent e(nvars, 0);
  // Enumerate by total degree, then by a fixed recursive pattern.
  for (int d = 0; d <= max_degree; ++d) {
    std::vector<Exponent> layer;
    std::function<void(int, int)> rec = [&](int var, int left) {
      if (var == nvars - 1 || nvars == 0) {
        if (nvars == 0) {
          if (left == 0) layer.push_back(e);
          return;
        }
        e[var] = left;
        layer.push_back(e);
        e[var] = 0;
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[var] = k;
        rec(var + 1, left - k);
      }
      e[var] = 0;
    };
    rec(0, d);
    std::sort(layer.begin(), layer.end(), [](const Exponent& a, const Exponent& b) {
      return compare_monomials(a, b, MonomialOrder::DegRevLex) < 0;
    });
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<Exponent> standard_monomials_upto(const GroebnerBasis& gb, int max_degree) {
  std::vector<Exponent> out;
  if (gb.is_unit()) return out;
  for (auto& e : monomials_upto(gb.nvars, max_degree)) {
    bool standard = std::none_of(gb.leads.begin(), gb.leads.end(),
                                 [&](const Exponent& l) { return divides(l, e); });
    if (standard) out.push_back(std::move(e));
  }
  return out;
}

QuotientBasis quotient_basis(const GroebnerBasis& gb, size_t cap) {
  QuotientBasis out;
  if (gb.is_unit()) {
    out.finite = true;
    return out;
  }
  std::vector<int> bound(gb.nvars, -1);
  for (const auto& l : gb.leads) {
    int support = 0, var = -1;
    for (int v = 0; v < gb.nvars; ++v)
      if (l[v] > 0) {
        ++support;
        var = v;
      }
    if (support == 1 && (bound[var] < 0 || l[var] < bound[var])) bound[var] = l[var];
  }
  if (std::any_of(bound.begin(), bound.end(), [](int b) { return b < 0; })) return out;
  int maxdeg = 0;
  for (int b : bound) maxdeg += b - 1;
  size_t count = 1;
  for (int b : bound) {
    count *= static_cast<size_t>(b);
    if (count > cap) throw Error(ErrorKind::FeasibilityExceeded, "quotient staircase too large");
  }
  out.finite = true;
  out.monomials = standard_monomials_upto(gb, maxdeg);
  return out;
}

}  // namespace obslab
