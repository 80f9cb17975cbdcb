#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "obslab/cech.hpp"
#include "obslab/problem.hpp"

using namespace obslab;

namespace {

std::string example(const std::string& name) { return std::string(OBSLAB_SOURCE_DIR) + "/examples_problems/" + name; }

Poly random_element(std::mt19937& rng, const Ring& r, const std::vector<std::string>& vars, int max_deg) {
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, max_deg), terms(1, 3);
  std::string s = "0";
  const int n = terms(rng);
  for (int t = 0; t < n; ++t) {
    s += " + " + std::to_string(coef(rng));
    for (const auto& v : vars) s += "*" + v + "^" + std::to_string(deg(rng));
  }
  return r.parse(s);
}

struct P1 {
  Ring u0 = Ring::polynomial({"t"}), u1 = Ring::polynomial({"s"});
  Ring u01 = u0.localized(u0.parse("t"), "u");
  Cover cover;
  ArtinAlgebra b = ArtinAlgebra::truncated("a", 3);
  SmallExtension e = small_extension(b, b.parse("a^2"));

  Overlap overlap() const {
    Overlap o;
    o.i = 0;
    o.j = 1;
    o.ring = u01;
    o.from_i = RingMap::make(u0, u01, {u01.parse("t")});
    o.from_j = RingMap::make(u1, u01, {u01.parse("u")});
    return o;
  }
  P1() { cover = make_cover({{"U0", u0, {u0.parse("t-1")}}, {"U1", u1, {u1.parse("s-1")}}}, {overlap()}); }

  EmbeddedDeformation deformation(const ArtinAlgebra& a, const std::string& f0, const std::string& f1) const {
    return {a, {{FormSpace::over(u0, a).ring().parse(f0)}, {FormSpace::over(u1, a).ring().parse(f1)}}};
  }
};

bool coboundary_of(const Cover& c, const NormalCochain& mu, int bound = 8) {
  H1Verdict v = cech_h1_test(c, mu, bound);
  return v.status == H1Status::Coboundary && v.witness_verified;
}

PForm top_differential(const Ring& ring, const std::vector<Poly>& f) {
  PForm w = Poly(1);
  for (const auto& g : f) w = w * d_total(ring, ring.embed(g));
  return w;
}

}  // namespace

TEST_CASE("two-chart cover of the projective line") {
  P1 p;
  REQUIRE(p.cover.overlaps.size() == 1);
  const PolyMatrix& d = p.cover.overlaps[0].transition;
  CHECK(p.u01.equal(d(0, 0), p.u01.parse("-t")));
  CHECK(p.cover.codim() == 1);
  Site s = site(p.cover, {0, 1});
  CHECK(p.u01.equal(s.f[0], p.u01.parse("t-1")));

  Overlap bad = p.overlap();
  CHECK_THROWS_AS(make_cover({{"U0", p.u0, {p.u0.parse("t-1")}}, {"U1", p.u1, {p.u1.parse("s-2")}}}, {bad}), Error);
  CHECK_THROWS_AS(make_cover({{"U0", p.u0, {p.u0.parse("t-1")}}, {"U1", p.u1, {}}}, {bad}), Error);
  CHECK_THROWS_AS(make_cover({{"U0", p.u0, {p.u0.parse("t^2-1")}}, {"U1", p.u1, {p.u1.parse("s-1")}}}, {bad}),
                  Error);
  CHECK_THROWS_AS(p.cover.overlap(1, 0), Error);
}

TEST_CASE("coboundaries of random normal 0-cochains are detected") {
  Problem pr = load_problem(example("a1_three_patch.json"));
  const Cover& c = pr.require_cover();
  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    NormalCochain nu{0, {}};
    for (int i = 0; i < 3; ++i) nu.values[{i}] = {random_element(rng, c.patches[static_cast<size_t>(i)].ring, {"t"}, 3)};
    NormalCochain mu = coboundary(c, nu);
    CHECK(is_cocycle(c, mu));
    H1Verdict v = cech_h1_test(c, mu, 8);
    REQUIRE(v.status == H1Status::Coboundary);
    CHECK(v.witness_verified);
    REQUIRE(v.normal_witness);
    CHECK(equal(c, coboundary(c, *v.normal_witness), mu));
  }
  NormalCochain broken = coboundary(c, NormalCochain{0, {{{0}, {c.patches[0].ring.parse("1")}}}});
  broken.values[{0, 2}] = {c.overlap(0, 2).ring.parse("5")};
  CHECK_FALSE(is_cocycle(c, broken));
  CHECK_THROWS_AS(cech_h1_test(c, broken, 8), Error);
}

TEST_CASE("obstruction cochains are cocycles and independent of the lift") {
  Problem pr = load_problem(example("a1_three_patch.json"));
  const Cover& c = pr.require_cover();
  const SmallExtension& e = pr.extension("e");
  std::mt19937 rng(23);
  for (const char* name : {"Y", "Ytwist"}) {
    CAPTURE(name);
    const EmbeddedDeformation& y = pr.deformation(name).deformation;
    ObstructionData ob = lift_and_obstruct(c, e, y);
    CHECK(ob.cocycle);
    CHECK(is_cocycle(c, ob.mu));
    CHECK(coboundary_of(c, ob.mu));
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<std::vector<Poly>> lifts = ob.lifts;
      for (size_t i = 0; i < lifts.size(); ++i) {
        FormSpace sb = FormSpace::over(c.patches[i].ring, e.B);
        Poly r = sb.from_base(random_element(rng, c.patches[i].ring, {"t"}, 2));
        lifts[i][0] += sb.from_algebra(e.eta) * r;
      }
      ObstructionData other = lift_and_obstruct(c, e, y, lifts);
      CHECK(other.cocycle);
      CHECK(coboundary_of(c, subtract(c, other.mu, ob.mu)));
    }
  }
  P1 p;
  EmbeddedDeformation y = p.deformation(p.e.A, "t-1+3*a", "s-1-3*a");
  std::vector<std::vector<Poly>> wrong = lift_and_obstruct(p.cover, p.e, y).lifts;
  wrong[0][0] += FormSpace::over(p.u0, p.b).ring().parse("a");
  CHECK_THROWS_AS(lift_and_obstruct(p.cover, p.e, y, wrong), Error);
}

TEST_CASE("contracting pi recovers phi up to sign") {
  std::mt19937 rng(29);
  Ring plane = Ring::polynomial({"x", "y"});
  Site s2{plane, {plane.parse("x"), plane.parse("y")}};
  Site s2b{plane, {plane.parse("x-y^2"), plane.parse("y+1")}};
  for (const Site& s : {s2, s2b}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Poly> nu{random_element(rng, plane, {"x", "y"}, 3), random_element(rng, plane, {"x", "y"}, 3)};
      LocalCohClass lhs = contract_eps(pi(s, nu));
      CHECK(equal(lhs, scale(Rat(-1), phi(s, nu))));
    }
  }
  P1 p;
  for (const std::vector<int>& simplex : {std::vector<int>{0}, {1}, {0, 1}}) {
    Site s = site(p.cover, simplex);
    std::vector<std::string> vars = simplex.size() == 2 ? std::vector<std::string>{"t", "u"}
                                    : simplex[0] == 0  ? std::vector<std::string>{"t"}
                                                       : std::vector<std::string>{"s"};
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Poly> nu{random_element(rng, s.ring, vars, 4)};
      CHECK(equal(contract_eps(pi(s, nu)), phi(s, nu)));
    }
  }
}

TEST_CASE("pi is additive and shifts by the fundamental class") {
  std::mt19937 rng(31);
  Ring plane = Ring::polynomial({"x", "y"});
  Site s{plane, {plane.parse("x+y^2"), plane.parse("y")}};
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<Poly> a{random_element(rng, plane, {"x", "y"}, 2), random_element(rng, plane, {"x", "y"}, 2)};
    std::vector<Poly> b{random_element(rng, plane, {"x", "y"}, 2), random_element(rng, plane, {"x", "y"}, 2)};
    std::vector<Poly> sum{a[0] + b[0], a[1] + b[1]};
    CHECK(equal(pi(s, sum), add(pi(s, a), pi(s, b))));

    Poly g = random_element(rng, plane, {"x", "y"}, 2);
    for (size_t l = 0; l < 2; ++l) {
      std::vector<Poly> shifted = a;
      shifted[l] += g * s.f[l];
      LocalCohClass base = pi(s, a);
      const FormSpace& space = base.module->space();
      Poly eps = space.from_algebra(Poly::variable(1, 0));
      PForm num = (eps * space.ring().embed(g)) * top_differential(space.ring(), s.f);
      LocalCohClass expected = make_class(base.module, reduce(space.ring(), num), 1);
      CHECK(equal(subtract(pi(s, shifted), base), expected));
    }
  }
}

TEST_CASE("T over dual numbers of psi is pi") {
  P1 p;
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 6; ++trial) {
    // a global normal vector: nu_0 = -nu_1 at the point, plus multiples of f
    Rat c0(coef(rng));
    NormalCochain nu{0, {}};
    nu.values[{0}] = {Poly::constant(1, c0) + random_element(rng, p.u0, {"t"}, 2) * p.u0.parse("t-1")};
    nu.values[{1}] = {Poly::constant(1, -c0) + random_element(rng, p.u1, {"s"}, 2) * p.u1.parse("s-1")};
    CHECK(coboundary_of(p.cover, coboundary(p.cover, nu)));
    EmbeddedDeformation y = psi(p.cover, nu);
    ClassCochain t = T_A(p.cover, y);
    for (int i = 0; i < 2; ++i) CHECK(equal(t.values.at({i}), pi(site(p.cover, {i}), nu.values.at({i}))));
  }
  for (int c0 = -3; c0 <= 3; ++c0) {
    NormalCochain nu{0, {{{0}, {p.u0.parse(std::to_string(c0))}}, {{1}, {p.u1.parse(std::to_string(-c0))}}}};
    for (const auto& [k, ok] : overlap_agreement(p.cover, T_A(p.cover, psi(p.cover, nu)))) CHECK(ok);
  }
}

TEST_CASE("delta_1 with the global lift vanishes") {
  P1 p;
  EmbeddedDeformation y = p.deformation(p.e.A, "t-1+3*a", "s-1-3*a");
  ClassCochain alpha = T_A(p.cover, y);
  CHECK(is_zero(delta_1(p.cover, p.e, alpha)));
  for (unsigned seed : {1u, 7u, 19u}) {
    ClassCochain pert = delta_1(p.cover, p.e, alpha, LiftStrategy::Perturbed, seed);
    CHECK(is_cocycle(p.cover, pert));
    H1Verdict v = cech_h1_test(p.cover, pert, 8);
    CHECK(v.status == H1Status::Coboundary);
    CHECK(v.witness_verified);
  }
  ArtinAlgebra dual = ArtinAlgebra::truncated("a", 2);
  SmallExtension to_field = small_extension(dual, dual.parse("a"));
  CHECK(to_field.A.dim() == 1);
  EmbeddedDeformation y0 = p.deformation(to_field.A, "t-1", "s-1");
  CHECK(is_zero(delta_1(p.cover, to_field, T_A(p.cover, y0))));
}

TEST_CASE("semiregularity square on the projective line") {
  P1 p;
  EmbeddedDeformation y = p.deformation(p.e.A, "t-1+3*a", "s-1-3*a");
  SemiregReport r = semireg_verify(p.cover, p.e, y, Rat(1), 8);
  CHECK(r.cochain_equal);
  CHECK(r.cochain_cocycle);
  CHECK(r.delta_global_zero);
  CHECK(r.verdict.status == H1Status::Coboundary);
  CHECK(r.verdict.witness_verified);
  CHECK_FALSE(is_zero(r.left));
  for (const auto& [k, ok] : r.entry_equal) CHECK(ok);

  SemiregReport zero = semireg_verify(p.cover, p.e, y, Rat(0), 8);
  CHECK(is_zero(zero.left));
  CHECK(is_zero(zero.right));
  CHECK(zero.cochain_equal);

  SemiregReport half = semireg_verify(p.cover, p.e, y, Rat(1, 2), 8);
  CHECK(half.cochain_equal);
  CHECK(equal(p.cover, half.obstruction.mu, r.obstruction.mu));

  Cover single = make_cover({{"U", p.u0, {p.u0.parse("t-1")}}}, {});
  EmbeddedDeformation ys{p.e.A, {{FormSpace::over(p.u0, p.e.A).ring().parse("t-1+3*a")}}};
  SemiregReport s = semireg_verify(single, p.e, ys, Rat(1), 8);
  CHECK(s.left.values.empty());
  CHECK(s.cochain_equal);
  CHECK(s.verdict.status == H1Status::Coboundary);
}

TEST_CASE("semireg on three patches") {
  Problem pr = load_problem(example("a1_three_patch.json"));
  const Cover& c = pr.require_cover();
  const SmallExtension& e = pr.extension("e");
  SemiregReport r = semireg_verify(c, e, pr.deformation("Y").deformation, pr.functionals.at("e"), 8);
  CHECK(r.cochain_equal);
  CHECK(r.cochain_cocycle);
  CHECK(r.verdict.status == H1Status::Coboundary);
  // transitions that fail to compose on the triple leave a non-cocycle
  SemiregReport t = semireg_verify(c, e, pr.deformation("Ytwist").deformation, pr.functionals.at("e"), 8);
  CHECK_FALSE(t.cochain_cocycle);
  CHECK(t.verdict.status == H1Status::NotCocycle);
}

TEST_CASE("semireg requires an injective differential") {
  P1 p;
  ArtinAlgebra b = ArtinAlgebra::make(
      {"x", "y"}, std::vector<std::string>{"4*x^3+2*x*y^3", "5*y^4+3*x^2*y^2", "x^5+x*y^5+x^3*y^3",
                                           "x^4*y+y^6+x^2*y^4"});
  SmallExtension e = small_extension(b, b.parse("x^4+y^5+x^2*y^3"));
  CHECK(e.principal);
  CHECK(b.dim() == 12);
  CHECK_FALSE(differential_injectivity(e));
  EmbeddedDeformation y = p.deformation(e.A, "t-1", "s-1");
  try {
    semireg_verify(p.cover, e, y, Rat(1), 8);
    FAIL("expected HypothesisViolated");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::HypothesisViolated);
  }
}

TEST_CASE("obstruction classes are natural under base change") {
  P1 p;
  ArtinAlgebra b2 = ArtinAlgebra::truncated("b", 3);
  SmallExtension e2 = small_extension(b2, b2.parse("b^2"));
  AlgebraMorphism lifted = AlgebraMorphism::make(p.b, b2, {b2.parse("2*b+b^2")});
  AlgebraMorphism gamma = AlgebraMorphism::make(p.e.A, e2.A, {e2.A.parse("2*b")});
  CHECK(b2.reduce(lifted.apply(p.e.eta)) == b2.reduce(b2.parse("4*b^2")));

  std::mt19937 rng(41);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int trial = 0; trial < 5; ++trial) {
    const std::string k = std::to_string(coef(rng));
    EmbeddedDeformation y = p.deformation(p.e.A, "t-1+(" + k + ")*a", "s-1-(" + k + ")*a");
    EmbeddedDeformation y2 = base_change(p.cover, y, gamma);
    ObstructionData ob = lift_and_obstruct(p.cover, p.e, y);
    std::vector<std::vector<Poly>> lifts2;
    for (size_t i = 0; i < 2; ++i) {
      const Ring& r = p.cover.patches[i].ring;
      lifts2.push_back({map_coefficients(lifted, FormSpace::over(r, p.b), FormSpace::over(r, b2), ob.lifts[i][0])});
    }
    ObstructionData ob2 = lift_and_obstruct(p.cover, e2, y2, lifts2);
    CHECK(coboundary_of(p.cover, subtract(p.cover, ob2.mu, scale(Rat(4), ob.mu))));
    NormalCochain v = v_e(p.cover, p.e, y, Rat(3));
    NormalCochain v2 = v_e(p.cover, e2, y2, Rat(3, 4));
    CHECK(coboundary_of(p.cover, subtract(p.cover, v2, v)));
  }
  Problem pr = load_problem(example("p1_two_patch.json"));
  ObstructionData o1 = lift_and_obstruct(pr.require_cover(), pr.extension("e"), pr.deformation("Y").deformation);
  ObstructionData o2 = lift_and_obstruct(pr.require_cover(), pr.extension("e2"), pr.deformation("Y2").deformation);
  CHECK(equal(pr.require_cover(), o2.mu, scale(Rat(4), o1.mu)));
}

TEST_CASE("liftable deformations have vanishing obstruction") {
  P1 p;
  // t = 1 - 3a - a^2 over k[a]/a^3, seen from both charts
  EmbeddedDeformation yb = p.deformation(p.b, "t-1+3*a+a^2", "s-1-3*a-10*a^2");
  CHECK_NOTHROW(validate_deformation(p.cover, yb));
  EmbeddedDeformation y = p.deformation(p.e.A, "t-1+3*a", "s-1-3*a");
  ObstructionData ob = lift_and_obstruct(p.cover, p.e, y, yb.f);
  CHECK(coboundary_of(p.cover, ob.mu));
  CHECK(coboundary_of(p.cover, lift_and_obstruct(p.cover, p.e, y).mu));

  Problem pr = load_problem(example("a1_three_patch.json"));
  const Cover& c = pr.require_cover();
  ObstructionData tw = lift_and_obstruct(c, pr.extension("e"), pr.deformation("Ytwist").deformation);
  H1Verdict v = cech_h1_test(c, tw.mu, 8);
  CHECK(v.status == H1Status::Coboundary);
  CHECK(v.witness_verified);
}

TEST_CASE("engineered nonzero class on the two-chart cover") {
  P1 p;
  Cover c0 = make_cover({{"U0", p.u0, {}}, {"U1", p.u1, {}}}, {p.overlap()});
  FormSpace sp(p.u01, ArtinAlgebra::field());
  auto module = LocalCohModule::make(sp, {});
  ClassCochain alpha{1, ArtinAlgebra::field(), 1, false, {}};
  // u dt = dt / t generates H^1(P^1, Omega^1)
  alpha.values[{0, 1}] = make_class(module, p.u01.parse("u") * dvar(p.u01, 0), 1);
  H1Verdict v = cech_h1_test(c0, alpha, 8);
  CHECK(v.status == H1Status::NonzeroUpToBound);
  CHECK(v.unknowns > 0);
  for (const char* num : {"u^3", "t^2", "1", "u^2 + 5*t"}) {
    CAPTURE(num);
    ClassCochain beta = alpha;
    beta.values[{0, 1}] = make_class(module, p.u01.parse(num) * dvar(p.u01, 0), 1);
    H1Verdict w = cech_h1_test(c0, beta, 8);
    CHECK(w.status == H1Status::Coboundary);
    CHECK(w.witness_verified);
  }
}
