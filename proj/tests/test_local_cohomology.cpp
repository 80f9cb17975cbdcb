#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "obslab/local_cohomology.hpp"

using namespace obslab;

namespace {

struct Plane {
  Ring r = Ring::polynomial({"x", "y"});
  FormSpace s{r, ArtinAlgebra::field()};
  LocalCohModulePtr m = LocalCohModule::make(s, {r.parse("x"), r.parse("y")});
  PForm dxdy = dvar(r, 0) * dvar(r, 1);
  Poly mono(int i, int j) const { return Poly::monomial({i, j}); }
};

// [x^i y^j w / (x y)^a] vanishes iff x^i y^j lies in (x^a, y^a).
bool staircase_zero(int i, int j, int a) { return i >= a || j >= a; }

}  // namespace

TEST_CASE("monomial classes against the staircase") {
  Plane p;
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> ex(0, 6), ax(1, 4), form(0, 2);
  int checked = 0, zeros = 0;
  while (checked < 200) {
    int i = ex(rng), j = ex(rng);
    if (i + j > 6) continue;
    int a = ax(rng);
    PForm w;
    switch (form(rng)) {
      case 0: w = PForm(p.mono(i, j)); break;
      case 1: w = p.mono(i, j) * dvar(p.r, 0); break;
      default: w = p.mono(i, j) * p.dxdy; break;
    }
    LocalCohClass c = make_class(p.m, w, a);
    CAPTURE(i);
    CAPTURE(j);
    CAPTURE(a);
    CHECK(is_zero(c) == staircase_zero(i, j, a));
    zeros += staircase_zero(i, j, a);
    ++checked;
  }
  CHECK(zeros > 20);
  CHECK(zeros < 180);
}

TEST_CASE("class arithmetic") {
  Plane p;
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> co(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    Poly g = p.r.zero(), h = p.r.zero();
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j) {
        g.add_term({i, j}, co(rng));
        h.add_term({i, j}, co(rng));
      }
    LocalCohClass a = make_class(p.m, g * p.dxdy, 2), b = make_class(p.m, h * p.dxdy, 3);
    CHECK(equal(raise(a, 4), a));
    CHECK(equal(subtract(add(a, b), b), a));
    CHECK(equal(add(a, b), add(b, a)));
    CHECK(is_zero(subtract(a, a)));
    CHECK(equal(scale(Rat(2), a), add(a, a)));
    CHECK(equal(scale(p.r.parse("x*y"), raise(a, 3)), make_class(p.m, g * p.dxdy, 1)));
    CHECK(equal(canonicalize(a), a));
  }
}

TEST_CASE("canonical forms drop the exponent when possible") {
  Plane p;
  LocalCohClass c = canonicalize(make_class(p.m, p.r.parse("x*y") * p.dxdy, 2));
  CHECK(c.exponent == 1);
  CHECK(str(c) == "[dx^dy / (x)*(y)]");
}

TEST_CASE("transformation law") {
  Plane p;
  LocalCohClass base = make_class(p.m, p.dxdy);
  CHECK(equal(transform(p.m, p.r.parse("x") * p.dxdy, {p.r.parse("x^2"), p.r.parse("y")}), base));
  CHECK(equal(transform(p.m, p.dxdy, {p.r.parse("x"), p.r.parse("y + x")}), base));
  CHECK(equal(transform(p.m, p.dxdy, {p.r.parse("y"), p.r.parse("x")}), scale(Rat(-1), base)));
  CHECK(equal(transform(p.m, p.dxdy, {p.r.parse("x + y^2"), p.r.parse("y")}), base));
  CHECK(equal(transform(p.m, p.dxdy, {p.r.parse("2*x"), p.r.parse("y")}), scale(Rat(1, 2), base)));
  CHECK_THROWS_AS(transform(p.m, p.dxdy, {p.r.parse("x"), p.r.parse("x")}), Error);
}

TEST_CASE("restriction is natural and preserves the residue") {
  Plane p;
  LocalCohClass base = make_class(p.m, p.dxdy);
  RingMap swap = RingMap::make(p.r, p.r, {p.r.parse("y"), p.r.parse("x")});
  CHECK(equal(restrict_class(base, swap, p.m), base));
  RingMap shear = RingMap::make(p.r, p.r, {p.r.parse("x + y^2"), p.r.parse("y")});
  CHECK(equal(restrict_class(base, shear, p.m), base));
  Ring loc = p.r.localized(p.r.parse("x + 1"), "u");
  FormSpace ls(loc, ArtinAlgebra::field());
  LocalCohModulePtr lm = LocalCohModule::make(ls, {loc.parse("x"), loc.parse("y")});
  RingMap inc = RingMap::make(p.r, loc, {loc.parse("x"), loc.parse("y")});
  LocalCohClass unit = make_class(p.m, p.r.parse("x + 1") * p.dxdy);
  CHECK_FALSE(is_zero(restrict_class(unit, inc, lm)));
  CHECK(is_zero(restrict_class(make_class(p.m, p.r.parse("x") * p.dxdy), inc, lm)));
}

TEST_CASE("dual-number classes") {
  Ring r = Ring::polynomial({"t"});
  FormSpace s = FormSpace::over(r, ArtinAlgebra::truncated("eps", 2));
  const Ring& re = s.ring();
  LocalCohModulePtr m = LocalCohModule::make(s, {re.parse("t")});
  PForm dt = dvar(re, 0), de = dvar(re, 1);
  LocalCohClass c = make_class(m, re.parse("eps") * dt + re.parse("3") * de);
  LocalCohClass w2 = contract_eps(c);
  CHECK(w2.numerator.degree() == 0);
  CHECK_FALSE(is_zero(w2));
  CHECK(is_zero(contract_eps(make_class(m, re.parse("eps") * dt))));
  CHECK(equal(bidegree_project(c, 1, 0), make_class(m, re.parse("eps") * dt)));
  CHECK(equal(bidegree_project(c, 0, 1), make_class(m, re.parse("3") * de)));
  CHECK_THROWS_AS(bidegree_project(c, 2, 0), Error);
  CHECK(is_zero(make_class(m, re.parse("eps*t") * dt)));
}

TEST_CASE("irregular sequences are rejected") {
  Plane p;
  CHECK_THROWS_AS(LocalCohModule::make(p.s, {p.r.parse("x*y"), p.r.parse("x")}), Error);
  LocalCohModulePtr z = LocalCohModule::make(p.s, {p.r.parse("x")});
  CHECK_THROWS_AS(add(make_class(z, PForm(1)), make_class(p.m, PForm(1))), Error);
}
