#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "obslab/artin.hpp"
#include "obslab/groebner.hpp"
#include "obslab/linalg.hpp"
#include "obslab/ring.hpp"

using namespace obslab;

namespace {

// Plain multivariate division, written independently of the library's reducer.
Poly divide_rem(Poly f, const std::vector<Poly>& g, MonomialOrder ord) {
  Poly rem = Poly::constant(f.nvars(), 0);
  while (!f.is_zero()) {
    auto [lf, cf] = f.leading_term(ord);
    bool hit = false;
    for (const auto& q : g) {
      auto [lq, cq] = q.leading_term(ord);
      if (!divides(lq, lf)) continue;
      Exponent s(lf.size());
      for (size_t i = 0; i < s.size(); ++i) s[i] = lf[i] - lq[i];
      f -= q.times_monomial(s, cf / cq);
      hit = true;
      break;
    }
    if (!hit) {
      rem.add_term(lf, cf);
      f.add_term(lf, -cf);
    }
  }
  return rem;
}

Poly s_poly(const Poly& a, const Poly& b, MonomialOrder ord) {
  auto [la, ca] = a.leading_term(ord);
  auto [lb, cb] = b.leading_term(ord);
  Exponent l = exponent_lcm(la, lb), sa(l.size()), sb(l.size());
  for (size_t i = 0; i < l.size(); ++i) {
    sa[i] = l[i] - la[i];
    sb[i] = l[i] - lb[i];
  }
  return a.times_monomial(sa, ca.inverse()) - b.times_monomial(sb, cb.inverse());
}

Poly random_poly(std::mt19937& rng, int nvars, int max_deg, int terms) {
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, max_deg);
  Poly p = Poly::constant(nvars, 0);
  for (int t = 0; t < terms; ++t) {
    Exponent e(static_cast<size_t>(nvars));
    int budget = deg(rng);
    for (int v = 0; v < nvars && budget > 0; ++v) {
      std::uniform_int_distribution<int> take(0, budget);
      e[static_cast<size_t>(v)] = take(rng);
      budget -= e[static_cast<size_t>(v)];
    }
    p.add_term(e, coef(rng));
  }
  return p;
}

RatMatrix random_matrix(std::mt19937& rng, Index r, Index c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  RatMatrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("rationals are canonical") {
  CHECK(Rat::parse("6/-4").str() == "-3/2");
  CHECK(Rat::parse("-10/5").str() == "-2");
  CHECK((Rat(1, 3) + Rat(1, 6)).str() == "1/2");
  CHECK(Rat(2, 3).inverse() == Rat(3, 2));
  CHECK(factorial(5) == Rat(120));
  CHECK_THROWS(Rat(1) / Rat(0));
}

TEST_CASE("polynomial parsing and printing") {
  std::vector<std::string> v{"x", "y"};
  Poly p = parse_poly("(x+y)^2 - 1/2*y", v);
  CHECK(p == parse_poly("x^2 + 2*x*y + y^2 - 1/2*y", v));
  CHECK(p.degree() == 2);
  CHECK(parse_poly(p.str(v), v) == p);
  CHECK_THROWS_AS(parse_poly("x + z", v), Error);
  CHECK_THROWS_AS(parse_poly("x +* y", v), Error);
  CHECK(p.derivative(0) == parse_poly("2*x + 2*y", v));
}

TEST_CASE("solve_exact on random systems") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> dim(1, 6);
    Index r = dim(rng), c = dim(rng);
    RatMatrix m = random_matrix(rng, r, c, -2, 2);
    if (trial % 3 == 0 && c > 1) m.col(c - 1) = m.col(0) * Rat(3) - m.col(1 % c);
    RatVector x = random_matrix(rng, c, 1, -5, 5);
    RatVector b = m * x;
    LinearSolution s = solve_exact(m, b);
    REQUIRE(s.particular);
    CHECK(m * *s.particular == b);
    CHECK(s.kernel.cols() + s.rank == c);
    CHECK(is_zero(m * s.kernel));
    CHECK(rank(s.kernel) == s.kernel.cols());
    CHECK(s.rank == rank(m.transpose()));
  }
  RatMatrix m = zero_matrix(2, 2);
  m(0, 0) = 1;
  RatVector b(2);
  b << Rat(1), Rat(1);
  CHECK_FALSE(solve_exact(m, b).particular);
  CHECK_THROWS_AS(solve_exact(m, RatVector(3)), Error);
}

TEST_CASE("sparse elimination matches dense rank") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    RatMatrix m = random_matrix(rng, 5, 7, -1, 1);
    std::vector<SparseVec> rows;
    for (Index i = 0; i < m.rows(); ++i) rows.push_back(sparse_from_dense(m.row(i).transpose()));
    CHECK(sparse_rank(rows, 7) == rank(m));
  }
}

TEST_CASE("groebner bases satisfy Buchberger's criterion") {
  std::mt19937 rng(3);
  for (MonomialOrder ord : {MonomialOrder::DegRevLex, MonomialOrder::Lex}) {
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Poly> in;
      for (int k = 0; k < 3; ++k) in.push_back(random_poly(rng, 3, 2, 3));
      GroebnerBasis gb = groebner(in, 3, ord, true);
      for (const auto& f : in) CHECK(divide_rem(f, gb.gens, ord).is_zero());
      for (size_t i = 0; i < gb.gens.size(); ++i) {
        CHECK(gb.gens[i].leading_term(ord).second == Rat(1));
        for (size_t j = i + 1; j < gb.gens.size(); ++j)
          CHECK(divide_rem(s_poly(gb.gens[i], gb.gens[j], ord), gb.gens, ord).is_zero());
        for (size_t j = 0; j < gb.gens.size(); ++j) {
          if (i == j) continue;
          for (const auto& [e, c] : gb.gens[j].terms()) CHECK_FALSE(divides(gb.leads[i], e));
        }
      }
      for (size_t k = 0; k < gb.gens.size(); ++k) {
        Poly back = Poly::constant(3, 0);
        for (size_t l = 0; l < in.size(); ++l) back += gb.transform[k][l] * in[l];
        CHECK(back == gb.gens[k]);
      }
      Poly member = random_poly(rng, 3, 2, 2) * in[0] + random_poly(rng, 3, 1, 2) * in[2];
      CHECK(ideal_contains(gb, member));
      Lift l = lift(member, gb);
      CHECK(l.remainder.is_zero());
    }
  }
}

TEST_CASE("quotient bases of monomial ideals") {
  std::vector<std::string> v{"x", "y"};
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      auto gb = groebner({parse_poly("x^" + std::to_string(a), v), parse_poly("y^" + std::to_string(b), v)}, 2);
      QuotientBasis qb = quotient_basis(gb);
      CHECK(qb.finite);
      CHECK(qb.monomials.size() == static_cast<size_t>(a * b));
    }
  CHECK_FALSE(quotient_basis(groebner({parse_poly("x*y", v)}, 2)).finite);
  CHECK(groebner({parse_poly("x*y-1", v), parse_poly("x", v)}, 2).is_unit());
}

TEST_CASE("localized rings and ring maps") {
  Ring r = Ring::polynomial({"t"}).localized(Poly::variable(1, 0), "u");
  CHECK(r.is_zero(r.parse("u*t - 1")));
  auto inv = r.inverse(r.parse("t^2"));
  REQUIRE(inv);
  CHECK(r.equal(*inv, r.parse("u^2")));
  CHECK_FALSE(r.inverse(r.parse("t-1")));
  Ring s = Ring::polynomial({"s"});
  RingMap m = RingMap::make(s, r, {r.parse("u")});
  CHECK(r.equal(m.apply(s.parse("s^2 + s")), r.parse("u^2 + u")));
  CHECK_THROWS_AS(RingMap::make(r, s, {s.parse("s - 1")}), Error);
  CHECK_NOTHROW(RingMap::make(r, r, {r.parse("t^3")}));
}

TEST_CASE("artin algebras") {
  ArtinAlgebra a = ArtinAlgebra::truncated("a", 4);
  CHECK(a.dim() == 4);
  CHECK(a.nilpotency() == 4);
  ArtinAlgebra fat = ArtinAlgebra::make({"x", "y"}, std::vector<std::string>{"x^2", "x*y", "y^2"});
  CHECK(fat.dim() == 3);
  CHECK(fat.nilpotency() == 2);
  CHECK_THROWS_AS(ArtinAlgebra::make({"x", "y"}, std::vector<std::string>{"x^2"}), Error);
  CHECK_THROWS_AS(ArtinAlgebra::make({"x"}, std::vector<std::string>{"x - x^2"}), Error);
  std::mt19937 rng(5);
  ArtinAlgebra b = ArtinAlgebra::make({"x", "y"}, std::vector<std::string>{"x^2 - y^3", "x*y"});
  for (int trial = 0; trial < 20; ++trial) {
    RatVector p = random_matrix(rng, b.dim(), 1, -2, 2), q = random_matrix(rng, b.dim(), 1, -2, 2),
              r = random_matrix(rng, b.dim(), 1, -2, 2);
    CHECK(b.multiply(b.multiply(p, q), r) == b.multiply(p, b.multiply(q, r)));
    CHECK(b.multiply(p, q) == b.multiply(q, p));
    CHECK(b.coords(b.element(p) * b.element(q)) == b.multiply(p, q));
  }
}

TEST_CASE("kaehler modules of small algebras") {
  for (int n = 2; n <= 5; ++n) {
    ArtinAlgebra a = ArtinAlgebra::truncated("t", n);
    CHECK(KaehlerModule(a, 0).dim() == n);
    CHECK(KaehlerModule(a, 1).dim() == n - 1);
    CHECK(KaehlerModule(a, 2).dim() == 0);
  }
  ArtinAlgebra fat = ArtinAlgebra::make({"x", "y"}, std::vector<std::string>{"x^2", "x*y", "y^2"});
  CHECK(KaehlerModule(fat, 1).dim() == 3);
  CHECK(KaehlerModule(fat, 2).dim() == 1);
}

TEST_CASE("small extensions") {
  ArtinAlgebra b = ArtinAlgebra::truncated("a", 3);
  SmallExtension e = small_extension(b, b.parse("a^2"));
  CHECK(e.A.dim() == 2);
  CHECK(e.principal);
  CHECK(differential_injectivity(e));
  CHECK_THROWS_AS(small_extension(b, b.parse("a")), Error);
  for (Index i = 0; i < e.A.dim(); ++i) {
    Poly lifted = e.section(e.A.basis_element(i));
    CHECK(e.A.reduce(e.proj.apply(lifted)) == e.A.basis_element(i));
  }
  AlgebraMorphism aug = AlgebraMorphism::augmentation(ArtinAlgebra::truncated("e", 2));
  SmallExtension f = small_extension(aug);
  CHECK(f.principal);
  CHECK(f.kernel.size() == 1);
}
