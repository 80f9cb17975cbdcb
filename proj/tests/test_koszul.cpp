#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "obslab/koszul.hpp"

using namespace obslab;

namespace {

Poly random_poly(std::mt19937& rng, const Ring& r) {
  std::uniform_int_distribution<int> coef(-2, 2);
  Poly p = r.zero();
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; a + b <= 2; ++b)
      for (int c = 0; a + b + c <= 2; ++c) p.add_term({a, b, c}, coef(rng));
  return p;
}

}  // namespace

TEST_CASE("koszul complexes are complexes") {
  Ring r = Ring::polynomial({"x", "y", "z"});
  std::mt19937 rng(2);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<Poly> f{random_poly(rng, r), random_poly(rng, r), random_poly(rng, r)};
    bool unit = false;
    for (const auto& g : f) unit = unit || g.is_constant();
    if (unit) continue;
    KoszulData k = koszul(r, f);
    CHECK(k.complex.ranks == std::vector<Index>{1, 3, 3, 1});
    CHECK(k.complex.is_complex());
  }
  CHECK_THROWS_AS(koszul(r, {r.parse("x"), r.parse("1")}), Error);
  CHECK_THROWS_AS(koszul(r, {}), Error);
}

TEST_CASE("koszul sign convention") {
  Ring r = Ring::polynomial({"x", "y"});
  KoszulData k = koszul(r, {r.parse("x"), r.parse("y")});
  CHECK(k.complex.M(1)(0, 0) == r.parse("x"));
  CHECK(k.complex.M(1)(0, 1) == r.parse("y"));
  CHECK(k.complex.M(2)(0, 0) == r.parse("-y"));
  CHECK(k.complex.M(2)(1, 0) == r.parse("x"));
}

TEST_CASE("regularity decisions") {
  Ring r = Ring::polynomial({"x", "y", "z"});
  CHECK(regularity_check(r, {r.parse("x"), r.parse("y")}).status == Regularity::Certified);
  CHECK(regularity_check(r, {r.parse("x^2 + y"), r.parse("y^2 + z")}).status == Regularity::Certified);
  RegularityVerdict bad = regularity_check(r, {r.parse("x*y"), r.parse("x*z")});
  REQUIRE(bad.status == Regularity::Refuted);
  REQUIRE(bad.witness);
  GroebnerBasis before = r.ideal_with({r.parse("x*y")});
  CHECK_FALSE(ideal_contains(before, *bad.witness));
  CHECK(ideal_contains(before, *bad.witness * r.parse("x*z")));
  RegularityVerdict dup = regularity_check(r, {r.parse("x"), r.parse("x")});
  CHECK(dup.status == Regularity::Refuted);
  // (y(x-1), x) is regular but its leading terms are not coprime.
  CHECK(regularity_check(r, {r.parse("x*y - y"), r.parse("x")}).status == Regularity::Certified);
  Ring loc = r.localized(r.parse("x"), "u");
  CHECK(regularity_check(loc, {loc.parse("x*y"), loc.parse("x*z")}).status == Regularity::Certified);
}

TEST_CASE("fundamental class cocycle") {
  Ring r = Ring::polynomial({"x", "y", "z"});
  for (const auto& seq : std::vector<std::vector<std::string>>{{"x", "y"}, {"x", "y", "z"}, {"x^2 - y", "y*z + x"}}) {
    std::vector<Poly> f;
    for (const auto& s : seq) f.push_back(r.parse(s));
    KoszulData k = koszul(r, f);
    for (int p = 1; p <= 2; ++p) {
      FundamentalClass c = fundamental_class(k.complex, p);
      CHECK(c.cocycle);
      CHECK(fundamental_cocycle_holds(k.complex, c));
    }
  }
}

TEST_CASE("newton class of koszul(x, y)") {
  Ring r = Ring::polynomial({"x", "y"});
  KoszulData k = koszul(r, {r.parse("x"), r.parse("y")});
  LocalCohClass n = newton_class(k);
  CHECK_FALSE(is_zero(n));
  LocalCohModulePtr m = LocalCohModule::make(k.space(), k.sequence);
  PForm dxdy = dvar(r, 0) * dvar(r, 1);
  CHECK(equal(n, make_class(m, -dxdy)));
  CHECK_FALSE(equal(n, make_class(m, dxdy)));
  Ring r1 = Ring::polynomial({"t"});
  KoszulData k1 = koszul(r1, {r1.parse("t - 1")});
  LocalCohModulePtr m1 = LocalCohModule::make(k1.space(), k1.sequence);
  CHECK(equal(newton_class(k1), make_class(m1, dvar(r1, 0))));
}

TEST_CASE("chern classes over an artinian base") {
  Ring r = Ring::polynomial({"x", "y"});
  FormSpace s = FormSpace::over(r, ArtinAlgebra::truncated("e", 2));
  const Ring& re = s.ring();
  KoszulData k = koszul(s, {re.parse("x + e"), re.parse("y - x*e")});
  CHECK(k.complex.is_complex());
  CHECK(regularity_check(k).status == Regularity::Certified);
  ExtClassDiagram beta = chern_koszul(k);
  ExtClassDiagram rel = reduce_relative(beta);
  CHECK(augment(re, rel.omega).is_zero());
  LocalCohClass c = ext_to_loc(rel);
  CHECK_FALSE(is_zero(c));
  LocalCohClass trivial = ext_to_loc(reduce_relative(chern_koszul(koszul(s, {re.parse("x"), re.parse("y")}))));
  CHECK(is_zero(trivial));
}
