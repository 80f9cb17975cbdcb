#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "obslab/hochschild.hpp"

using namespace obslab;

namespace {

std::vector<std::string> rels(std::initializer_list<const char*> r) { return {r.begin(), r.end()}; }

// Full (unnormalized) Hochschild complex A^{(x)(n+1)} with b = sum (-1)^i d_i,
// built straight from the multiplication table.
RatMatrix unnormalized_boundary(const ArtinAlgebra& a, int n) {
  const Index d = a.dim();
  auto pw = [&](int k) {
    Index r = 1;
    for (int i = 0; i < k; ++i) r *= d;
    return r;
  };
  RatMatrix m = zero_matrix(pw(n), pw(n + 1));
  std::vector<Index> t(static_cast<size_t>(n + 1));
  for (Index col = 0; col < pw(n + 1); ++col) {
    Index c = col;
    for (int i = n; i >= 0; --i) {
      t[static_cast<size_t>(i)] = c % d;
      c /= d;
    }
    for (int i = 0; i <= n; ++i) {
      const RatVector& prod = i < n ? a.product(t[static_cast<size_t>(i)], t[static_cast<size_t>(i + 1)])
                                    : a.product(t[static_cast<size_t>(n)], t[0]);
      for (Index k = 0; k < d; ++k) {
        if (prod(k).is_zero()) continue;
        std::vector<Index> out;
        if (i < n) {
          for (int j = 0; j < i; ++j) out.push_back(t[static_cast<size_t>(j)]);
          out.push_back(k);
          for (int j = i + 2; j <= n; ++j) out.push_back(t[static_cast<size_t>(j)]);
        } else {
          out.push_back(k);
          for (int j = 1; j < n; ++j) out.push_back(t[static_cast<size_t>(j)]);
        }
        Index row = 0;
        for (Index x : out) row = row * d + x;
        m(row, col) += (i % 2 == 0 ? prod(k) : -prod(k));
      }
    }
  }
  return m;
}

Index oracle_hh(const ArtinAlgebra& a, int n) {
  Index dim_n = 1;
  for (int i = 0; i <= n; ++i) dim_n *= a.dim();
  Index r_out = n == 0 ? 0 : rank(unnormalized_boundary(a, n));
  Index r_in = rank(unnormalized_boundary(a, n + 1));
  return dim_n - r_out - r_in;
}

bool homologous(const BarComplex& bar, int n, const SparseVec& x, const SparseVec& y) {
  SparseEliminator el(bar.dim(n));
  for (const auto& col : bar.boundary(n + 1)) el.insert(col);
  SparseVec diff = x;
  for (const auto& [i, c] : y) diff.push_back({i, -c});
  std::map<Index, Rat> acc;
  for (const auto& [i, c] : diff) acc[i] += c;
  SparseVec clean;
  for (const auto& [i, c] : acc)
    if (!c.is_zero()) clean.push_back({i, c});
  return el.contains(clean);
}

}  // namespace

TEST_CASE("permutation helpers") {
  CHECK(perm_sign({1, 0, 2}) == -1);
  CHECK(perm_sign({1, 2, 0}) == 1);
  CHECK(descents({2, 1, 0}) == 2);
  CHECK(perm_inverse({1, 2, 0}) == Perm{2, 0, 1});
}

TEST_CASE("eulerian idempotents for n <= 5") {
  for (int n = 1; n <= 5; ++n) {
    const EulerianSystem& es = eulerian(n);
    GroupElement total(n);
    for (int i = 0; i <= n; ++i) total += es.idempotent(i);
    CHECK(total == GroupElement::identity(n));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        GroupElement p = es.idempotent(i) * es.idempotent(j);
        if (i == j) CHECK(p == es.idempotent(i));
        else CHECK(p.is_zero());
      }
    for (int k = 1; k <= 3; ++k) CHECK(es.lambda(k) == lambda_operation(n, k));
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b) CHECK(es.lambda(a) * es.lambda(b) == es.lambda(a * b));
  }
  CHECK_THROWS_AS(eulerian(7), Error);
}

TEST_CASE("idempotents commute with the Hochschild boundary") {
  for (const ArtinAlgebra& a : {ArtinAlgebra::truncated("e", 2), ArtinAlgebra::truncated("t", 3)}) {
    BarComplex bar(a, 4);
    for (int n = 2; n <= 5; ++n) {
      RatMatrix b = bar.boundary_matrix(n);
      for (int i = 0; i <= n; ++i) {
        RatMatrix top = bar.action_matrix(eulerian(n).idempotent(i));
        if (i == n) {
          CHECK(is_zero(b * top));
          continue;
        }
        RatMatrix bottom = bar.action_matrix(eulerian(n - 1).idempotent(i));
        CHECK(b * top == bottom * b);
      }
    }
  }
}

TEST_CASE("normalized bar complex agrees with the full complex") {
  std::vector<ArtinAlgebra> algebras{ArtinAlgebra::truncated("e", 2), ArtinAlgebra::truncated("t", 3),
                                     ArtinAlgebra::make({"x", "y"}, rels({"x^2", "x*y", "y^2"}))};
  for (const auto& a : algebras) {
    BarComplex bar(a, 4);
    const int top = a.dim() == 2 ? 4 : 3;
    for (int n = 0; n <= top; ++n) {
      CAPTURE(n);
      CHECK(hh_dim(bar, n) == oracle_hh(a, n));
    }
  }
}

TEST_CASE("truncated polynomial rings") {
  for (int m = 2; m <= 4; ++m) {
    BarComplex bar(ArtinAlgebra::truncated("t", m), 4);
    CHECK(hh_dim(bar, 0) == m);
    for (int n = 1; n <= 4; ++n) CHECK(hh_dim(bar, n) == m - 1);
  }
  BarComplex eps(ArtinAlgebra::truncated("e", 2), 3);
  std::vector<Index> dims;
  for (int n = 0; n <= 3; ++n) dims.push_back(hh_dim(eps, n));
  CHECK(dims == std::vector<Index>{2, 1, 1, 1});
  CHECK_THROWS_AS(hh_dim(eps, 4), Error);
}

TEST_CASE("weight decomposition sums to the total") {
  ArtinAlgebra fat = ArtinAlgebra::make({"x", "y"}, rels({"x^2", "x*y", "y^2"}));
  BarComplex bar(fat, 3);
  for (int n = 0; n <= 3; ++n) {
    Index total = 0;
    for (const auto& w : weight_split(bar, n)) total += w.dim;
    CHECK(total == hh_dim(bar, n));
  }
  auto w2 = weight_split(bar, 2);
  REQUIRE(w2.size() == 3);
  CHECK(w2[1].dim == 4);
  CHECK(w2[2].dim == 1);
}

TEST_CASE("HKR embeds Kaehler forms as the top weight") {
  std::vector<ArtinAlgebra> algebras{ArtinAlgebra::truncated("e", 2), ArtinAlgebra::truncated("t", 3),
                                     ArtinAlgebra::make({"x", "y"}, rels({"x^2", "x*y", "y^2"}))};
  for (const auto& a : algebras) {
    BarComplex bar(a, 3);
    for (int l = 1; l <= 3; ++l) {
      CAPTURE(l);
      HkrReport r = hkr_map(bar, l);
      CHECK(r.cycles);
      CHECK(r.in_weight);
      CHECK(r.relations_to_boundaries);
      CHECK(r.injective);
      CHECK(r.onto_weight);
      CHECK(r.weight_dim == KaehlerModule(a, l).dim());
      CHECK(r.omega_dim == KaehlerModule(a, l).dim());
    }
  }
}

TEST_CASE("Adams operations compose and scale by m^weight") {
  BarComplex bar(ArtinAlgebra::truncated("e", 2), 4);
  for (int n = 1; n <= 3; ++n) {
    HomologyInfo h = hh(bar, n, true);
    for (const auto& rep : h.representatives) {
      HochschildClass c{n, -1, rep};
      for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
          HochschildClass lhs = adams(bar, a, adams(bar, b, c));
          HochschildClass rhs = adams(bar, a * b, c);
          CHECK(homologous(bar, n, lhs.representative, rhs.representative));
        }
    }
  }
  ArtinAlgebra fat = ArtinAlgebra::make({"x", "y"}, rels({"x^2", "x*y", "y^2"}));
  BarComplex fb(fat, 3);
  for (int l = 1; l <= 2; ++l) {
    HkrReport r = hkr_map(fb, l);
    for (const auto& chain : r.chains) {
      for (int m = 2; m <= 3; ++m) {
        auto ev = adams_eigenvalue(fb, m, {l, l, chain});
        REQUIRE(ev);
        CHECK(*ev == pow(Rat(m), static_cast<unsigned>(l)));
      }
    }
  }
}

TEST_CASE("Kunneth for dual numbers") {
  ArtinAlgebra e = ArtinAlgebra::truncated("e", 2);
  KunnethReport r = kunneth_check(e, e, 2);
  CHECK(r.equal);
  ArtinAlgebra ee = tensor(e, e);
  CHECK(ee.dim() == 4);
  BarComplex left(ee, 2), single(e, 2);
  for (int j = 0; j <= 2; ++j) {
    Index rhs = 0;
    for (int j1 = 0; j1 <= j; ++j1) rhs += oracle_hh(e, j1) * oracle_hh(e, j - j1);
    CHECK(hh_dim(left, j) == rhs);
    CHECK(r.rows[static_cast<size_t>(j)].lhs == rhs);
  }
  CHECK_THROWS_AS(kunneth_check(ArtinAlgebra::truncated("a", 4), ArtinAlgebra::truncated("b", 3), 1), Error);
}
