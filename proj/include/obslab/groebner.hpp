#pragma once

#include <optional>
#include <vector>

#include "obslab/polynomial.hpp"

namespace obslab {

/// Reduced Groebner basis with monic generators, sorted by leading monomial.
/// When built with tracking, `transform[k]` expresses gens[k] in the input
/// generators.
struct GroebnerBasis {
  int nvars = 0;
  MonomialOrder order = MonomialOrder::DegRevLex;
  std::vector<Poly> gens;
  std::vector<Exponent> leads;
  std::vector<Poly> inputs;
  std::vector<std::vector<Poly>> transform;

  bool is_unit() const;
  bool tracked() const { return !transform.empty() || gens.empty(); }
};

GroebnerBasis groebner(const std::vector<Poly>& gens, int nvars,
                       MonomialOrder order = MonomialOrder::DegRevLex, bool track = false);

Poly normal_form(const Poly& p, const GroebnerBasis& gb);
bool ideal_contains(const GroebnerBasis& gb, const Poly& p);
bool same_ideal(const GroebnerBasis& a, const GroebnerBasis& b);

/// Division certificate p = sum cofactors[i] * inputs[i] + remainder.
/// Requires a tracked basis.
struct Lift {
  Poly remainder;
  std::vector<Poly> cofactors;
};
Lift lift(const Poly& p, const GroebnerBasis& gb);

struct QuotientBasis {
  bool finite = false;
  std::vector<Exponent> monomials;  // ascending degrevlex, 1 first
};

/// Standard monomials; infinite-flag when the staircase is unbounded.
QuotientBasis quotient_basis(const GroebnerBasis& gb, size_t cap = 100000);

/// Standard monomials of total degree at most `max_degree`.
std::vector<Exponent> standard_monomials_upto(const GroebnerBasis& gb, int max_degree);

/// All exponent vectors in `nvars` variables of total degree at most d.
std::vector<Exponent> monomials_upto(int nvars, int max_degree);

}  // namespace obslab
