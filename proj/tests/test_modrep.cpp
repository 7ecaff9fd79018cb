#include <random>

#include "doctest.h"
#include "endolift/error.hpp"
#include "endolift/modrep.hpp"
#include "test_util.hpp"

using namespace endolift;
using testutil::random_module;

namespace {

FMatrix unipotent(int m = 1, GfElem x = 1) {
  FMatrix a = FMatrix::identity(m, 2);
  a.set(0, 1, x);
  return a;
}

// Right multiplication by an element: e_x -> e_{x h}.
FMatrix right_mult(const GroupSpec& g, std::size_t h) {
  FMatrix r(1, g.order(), g.order());
  for (std::size_t x = 0; x < g.order(); ++x) r.set(g.fin()->mul(x, h), x, 1);
  return r;
}

ModuleRep left_ideal(const GroupSpec& g, std::size_t nu) {
  const ModuleRep reg = regular_module(g);
  const FMatrix gen = FMatrix::identity(1, g.order()) + right_mult(g, nu);
  return submodule(reg, column_space_basis(gen)).module;
}

bool same_span(const std::vector<FMatrix>& a, const std::vector<FMatrix>& b, std::size_t rows) {
  FMatrix va(1, rows, 0), vb(1, rows, 0);
  for (const auto& x : a) va = hcat(va, vectorize(x));
  for (const auto& x : b) vb = hcat(vb, vectorize(x));
  return rank(va) == rank(vb) && rank(hcat(va, vb)) == rank(va);
}

}  // namespace

TEST_CASE("from_action validates relations") {
  const auto g3 = GroupSpec::make(3);
  const auto k = ModuleRep::from_action(g3, FMatrix::identity(1, 1), FMatrix::identity(1, 1));
  CHECK(k.dim() == 1);
  CHECK(k == trivial_module(g3));

  const auto n1 = ModuleRep::from_action(g3, unipotent(), unipotent());
  CHECK(n1.dim() == 2);
  // S = T gives ST = I, whose powers trivially agree.
  CHECK_NOTHROW(ModuleRep::from_action(GroupSpec::make(4), unipotent(), unipotent()));

  FMatrix bad = FMatrix::from_rows(1, {{1, 1}, {1, 0}});
  try {
    ModuleRep::from_action(g3, bad, unipotent());
    FAIL("expected a relation violation");
  } catch (const RelationViolation& e) {
    CHECK(std::string(e.what()).find("sigma^2") != std::string::npos);
  }
  CHECK_THROWS_AS(ModuleRep::from_action(g3, FMatrix::identity(1, 2), FMatrix::identity(1, 3)),
                  DimensionMismatch);
}

TEST_CASE("regular module: radical and socle") {
  for (int d = 3; d <= 5; ++d) {
    const auto g = GroupSpec::make(d);
    const auto kd = regular_module(g);
    CHECK(kd.dim() == g.order());
    CHECK(socle(kd).inclusion.cols() == 1);
    CHECK(radical(kd).inclusion.cols() == g.order() - 1);
    const FMatrix id = FMatrix::identity(1, kd.dim());
    CHECK(radical(kd).inclusion.cols() == rank(hcat(kd.S() + id, kd.T() + id)));

    // Socle is the image of [(1+sigma)(1+tau)]^(2^(d-2)).
    const FMatrix w = ((kd.S() + id) * (kd.T() + id)).pow(g.braid_exponent());
    const FMatrix soc = socle(kd).inclusion;
    CHECK(rank(w) == 1);
    CHECK(rank(hcat(soc, w)) == 1);
  }
  const auto g = GroupSpec::make(3);
  CHECK(radical(trivial_module(g)).inclusion.cols() == 0);
  CHECK(socle(trivial_module(g)).inclusion.cols() == 1);
}

TEST_CASE("socle is additive") {
  std::mt19937_64 rng(41);
  const auto g = GroupSpec::make(3);
  for (int i = 0; i < 10; ++i) {
    const auto a = random_module(rng, g), b = random_module(rng, g);
    CHECK(socle(direct_sum(a, b)).inclusion.cols() ==
          socle(a).inclusion.cols() + socle(b).inclusion.cols());
  }
}

TEST_CASE("tensor, dual, hom_module") {
  std::mt19937_64 rng(43);
  const auto g = GroupSpec::make(3);
  for (int i = 0; i < 8; ++i) {
    const auto m = random_module(rng, g);
    const auto n = random_module(rng, g);
    CHECK(dual(dual(m)) == m);
    CHECK(tensor(m, n).dim() == m.dim() * n.dim());
    CHECK(is_isomorphic(tensor(trivial_module(g), m), m).isomorphic);
    CHECK(hom_module(m, n).dim() == m.dim() * n.dim());
  }
}

TEST_CASE("hom_space agrees with the Kronecker system") {
  std::mt19937_64 rng(47);
  for (int d : {3, 4}) {
    const auto g = GroupSpec::make(d);
    for (int i = 0; i < 12; ++i) {
      const auto m = random_module(rng, g);
      const auto n = random_module(rng, g);
      const auto fast = hom_space(m, n);
      const auto slow = hom_space_naive(m, n);
      CHECK(fast.dim() == slow.dim());
      for (const auto& x : fast.basis) CHECK(is_module_map(m, n, x));
      CHECK(same_span(fast.basis, slow.basis, m.dim() * n.dim()));
      // Functoriality under duality.
      CHECK(hom_space(dual(n), dual(m)).dim() == fast.dim());
    }
  }
}

TEST_CASE("hom_space over GF(4)") {
  std::mt19937_64 rng(53);
  const auto g = GroupSpec::make(3);
  for (int i = 0; i < 6; ++i) {
    const auto m = random_module(rng, g, 2);
    const auto n = random_module(rng, g, 2);
    CHECK(hom_space(m, n).dim() == hom_space_naive(m, n).dim());
  }
}

TEST_CASE("projective-factoring maps: three routes agree") {
  std::mt19937_64 rng(59);
  for (int d : {3, 4}) {
    const auto g = GroupSpec::make(d);
    for (int i = 0; i < 8; ++i) {
      const auto m = random_module(rng, g);
      const auto n = random_module(rng, g);
      const auto p = phom_dim(m, n);
      CHECK(p == phom_dim_trace(m, n));
      if (m.dim() * n.dim() <= 400) CHECK(p == free_rank(hom_module(m, n)));
    }
  }
  const auto g = GroupSpec::make(3);
  CHECK(stable_hom_dim(trivial_module(g), trivial_module(g)) == 1);
  CHECK(stable_hom_dim(regular_module(g), regular_module(g)) == 0);
}

TEST_CASE("restriction and induction") {
  for (int d = 3; d <= 5; ++d) {
    const auto g = GroupSpec::make(d);
    const auto kd = regular_module(g);
    const auto rs = restrict(kd, SubgroupKind::CSigma);
    CHECK(c2_type(rs) == C2Type{0, g.order() / 2});
    CHECK(free_rank(rs) == g.order() / 2);

    for (auto [kind, nu] : {std::pair{SubgroupKind::CSigma, g.index(g.sigma())},
                            std::pair{SubgroupKind::CTau, g.index(g.tau())}}) {
      const auto ind = induce(g, kind, trivial_module(g.subgroup(kind).abstract));
      CHECK(ind.dim() == g.order() / 2);
      CHECK_NOTHROW(ModuleRep::from_action(g, ind.S(), ind.T()));
      CHECK(is_isomorphic(ind, left_ideal(g, nu)).isomorphic);
    }
  }
}

TEST_CASE("Frobenius reciprocity as a dimension identity") {
  std::mt19937_64 rng(61);
  for (int d : {3, 4}) {
    const auto g = GroupSpec::make(d);
    for (auto kind : {SubgroupKind::CSigma, SubgroupKind::CTau, SubgroupKind::Center, SubgroupKind::K1,
                      SubgroupKind::K2, SubgroupKind::Whole}) {
      const auto& sub = g.subgroup(kind);
      for (int i = 0; i < 3; ++i) {
        const auto n = random_module(rng, g);
        const auto mh = restrict(random_module(rng, g), kind);
        CHECK(mh.group() == sub.abstract);
        const auto ind = induce(g, kind, mh);
        CHECK(hom_space(ind, n).dim() == hom_space(mh, restrict(n, kind)).dim());
      }
    }
  }
}

TEST_CASE("syzygies") {
  const auto g = GroupSpec::make(3);
  const auto k = trivial_module(g);
  const auto o1 = syzygy(k, 1);
  CHECK(o1.module.dim() == 7);
  CHECK_NOTHROW(o1.seq.validate());
  CHECK(omega(k, 2).dim() == 9);
  CHECK(omega(k, -2).dim() == 9);
  CHECK(syzygy(k, -1).module.dim() == 7);
  CHECK(omega(regular_module(g), 1).dim() == 0);

  std::mt19937_64 rng(67);
  for (int i = 0; i < 8; ++i) {
    const auto m = random_module(rng, g);
    const auto back = omega(omega(m, 1), -1);
    const auto a = strip_free(m).core;
    const auto b = strip_free(back).core;
    CHECK(is_isomorphic(a, b).isomorphic);
    CHECK_NOTHROW(syzygy(m, -1).seq.validate());
  }
}

TEST_CASE("free rank and strip_free") {
  for (int d = 3; d <= 4; ++d) {
    const auto g = GroupSpec::make(d);
    CHECK(free_rank(regular_module(g)) == 1);
    CHECK(free_rank(trivial_module(g)) == 0);
  }
  std::mt19937_64 rng(71);
  const auto g = GroupSpec::make(3);
  const auto kd = regular_module(g);
  for (int i = 0; i < 10; ++i) {
    const auto m = random_module(rng, g);
    const std::size_t r = 1 + i % 2;
    ModuleRep big = m;
    for (std::size_t j = 0; j < r; ++j) big = direct_sum(big, kd);
    CHECK(free_rank(big) == free_rank(m) + r);
    const auto s1 = strip_free(m), s2 = strip_free(big);
    CHECK(s2.free_rank == s1.free_rank + r);
    CHECK(free_rank(s2.core) == 0);
    CHECK(s2.core.dim() + s2.free_rank * g.order() == big.dim());
    CHECK(is_isomorphic(s1.core, s2.core).isomorphic);
  }
}

TEST_CASE("Ext^1 and the Omega shift") {
  const auto g = GroupSpec::make(3);
  const auto k = trivial_module(g);
  CHECK(ext1(k, k).dim() == 2);
  CHECK(ext1(regular_module(g), k).dim() == 0);

  std::mt19937_64 rng(73);
  for (int i = 0; i < 8; ++i) {
    const auto v = random_module(rng, g);
    const auto w = random_module(rng, g);
    CHECK(ext1(v, w).dim() == stable_hom_dim(omega(v, 1), w));
    CHECK(ext1(regular_module(g), w).dim() == 0);
  }
}

TEST_CASE("extension middle terms") {
  const auto g = GroupSpec::make(3);
  const auto k = trivial_module(g);
  const auto e = ext1(k, k);
  const auto classes = e.enumerate();
  REQUIRE(classes.size() == 4);
  const auto split = extension_middle(classes[0]);
  CHECK(split.split);
  CHECK(is_isomorphic(split.seq.middle, direct_sum(k, k)).isomorphic);

  const auto ns = ModuleRep::from_action(g, unipotent(), FMatrix::identity(1, 2));
  const auto nt = ModuleRep::from_action(g, FMatrix::identity(1, 2), unipotent());
  const auto n1 = ModuleRep::from_action(g, unipotent(), unipotent());
  int hits[3] = {0, 0, 0};
  for (std::size_t i = 1; i < classes.size(); ++i) {
    const auto x = extension_middle(classes[i]);
    CHECK_FALSE(x.split);
    CHECK(x.seq.middle.dim() == 2);
    hits[0] += is_isomorphic(x.seq.middle, ns).isomorphic;
    hits[1] += is_isomorphic(x.seq.middle, nt).isomorphic;
    hits[2] += is_isomorphic(x.seq.middle, n1).isomorphic;
  }
  CHECK(hits[0] == 1);
  CHECK(hits[1] == 1);
  CHECK(hits[2] == 1);
}

TEST_CASE("isomorphism testing") {
  const auto g = GroupSpec::make(3);
  const auto kd = regular_module(g);
  const auto self = is_isomorphic(kd, kd);
  CHECK(self.isomorphic);
  REQUIRE(self.witness);
  CHECK(self.witness->is_identity());
  CHECK_FALSE(is_isomorphic(trivial_module(g), kd).isomorphic);

  // Conjugating by a random invertible matrix must be recognised.
  std::mt19937_64 rng(79);
  for (int i = 0; i < 6; ++i) {
    const auto m = random_module(rng, g);
    FMatrix p;
    do p = testutil::random_vectors(rng, 1, m.dim(), m.dim());
    while (!is_invertible(p));
    const FMatrix pi = *inverse(p);
    const auto n = ModuleRep::from_action(g, p * m.S() * pi, p * m.T() * pi);
    const auto r = is_isomorphic(m, n);
    CHECK(r.isomorphic);
    REQUIRE(r.witness);
    CHECK(is_module_map(m, n, *r.witness));
    CHECK(is_invertible(*r.witness));
  }
  const auto ns = ModuleRep::from_action(g, unipotent(), FMatrix::identity(1, 2));
  const auto nt = ModuleRep::from_action(g, FMatrix::identity(1, 2), unipotent());
  CHECK_FALSE(is_isomorphic(ns, nt).isomorphic);
}

TEST_CASE("N_lambda over GF(4) stays non-split") {
  const auto g = GroupSpec::make(3);
  const GfElem w = Gf2m::get(2).generator();
  const auto nl = ModuleRep::from_action(g, unipotent(2), unipotent(2, w));
  const auto n1 = ModuleRep::from_action(g, unipotent(2), unipotent(2));
  CHECK_FALSE(is_isomorphic(nl, n1).isomorphic);
  CHECK(c2_type(restrict(nl, SubgroupKind::CSigma)) == C2Type{0, 1});
  CHECK(c2_type(restrict(nl, SubgroupKind::CTau)) == C2Type{0, 1});
  CHECK(ext1(trivial_module(g, 2), trivial_module(g, 2)).dim() == 2);
}

TEST_CASE("module JSON round trip") {
  std::mt19937_64 rng(83);
  const auto g = GroupSpec::make(4);
  for (int i = 0; i < 4; ++i) {
    const auto m = random_module(rng, g);
    const auto j = module_to_json(m);
    CHECK(module_from_json(j) == m);
    CHECK(module_to_json(module_from_json(j)).dump() == j.dump());
  }
  auto j = module_to_json(regular_module(g));
  j["S"]["data"][0][0] = "0000000000000003";
  CHECK_THROWS_AS(module_from_json(j), RelationViolation);
}
