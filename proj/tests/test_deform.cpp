#include <doctest.h>

#include <set>

#include "endolift/deform.hpp"
#include "endolift/error.hpp"

using namespace endolift;

TEST_CASE("N_lambda restrictions") {
  const auto g = GroupSpec::make(3);
  const auto ns = N_lambda(g, Lambda::reflection(Nu::Sigma));
  CHECK(c2_type(restrict(ns, SubgroupKind::CSigma)) == C2Type{0, 1});
  CHECK(c2_type(restrict(ns, SubgroupKind::CTau)) == C2Type{2, 0});
  const auto n1 = N_lambda(g, Lambda::unit(1));
  CHECK(c2_type(restrict(n1, SubgroupKind::CSigma)) == C2Type{0, 1});
  CHECK(c2_type(restrict(n1, SubgroupKind::CTau)) == C2Type{0, 1});
  CHECK_THROWS_AS(Lambda::unit(0), UsageError);
  // non-split self-extension of k
  const auto k = trivial_module(g);
  for (const auto& l : {Lambda::unit(1), Lambda::reflection(Nu::Sigma), Lambda::reflection(Nu::Tau)}) {
    const auto n = N_lambda(g, l);
    CHECK(socle(n).inclusion.cols() == 1);
    CHECK_FALSE(is_isomorphic(n, direct_sum(k, k)).isomorphic);
  }
  CHECK_FALSE(is_isomorphic(n1, ns).isomorphic);
}

TEST_CASE("N_lambda over GF(4) are pairwise distinct") {
  const auto g = GroupSpec::make(3);
  const auto a = N_lambda(g, Lambda::unit(1, 2));
  const auto b = N_lambda(g, Lambda::unit(2, 2));
  const auto c = N_lambda(g, Lambda::unit(3, 2));
  CHECK_FALSE(is_isomorphic(a, b).isomorphic);
  CHECK_FALSE(is_isomorphic(b, c).isomorphic);
  CHECK(ext1(trivial_module(g, 2), trivial_module(g, 2)).dim() == 2);
}

TEST_CASE("B modules follow the trichotomy") {
  const auto g = GroupSpec::make(3);
  const auto b = B_module(g, Nu::Sigma, 1, Lambda::unit(1));
  CHECK(b.check.pass());
  CHECK(b.module.dim() == 10);
  CHECK(b.free_rank == 1);
  CHECK(is_isomorphic(b.module, direct_sum(N_lambda(g, Lambda::unit(1)), regular_module(g))).isomorphic);
  const auto b0 = B_module(g, Nu::Sigma, 0, Lambda::reflection(Nu::Tau));
  CHECK(b0.check.pass());
  CHECK(b0.module == N_lambda(g, Lambda::reflection(Nu::Tau)));
  for (int d = 3; d <= 4; ++d) {
    const auto gd = GroupSpec::make(d);
    for (Nu nu : {Nu::Sigma, Nu::Tau})
      for (int n = 0; n <= 2; ++n)
        for (const auto& l : {Lambda::unit(1), Lambda::reflection(Nu::Sigma), Lambda::reflection(Nu::Tau),
                              Lambda::unit(2, 2)}) {
          CAPTURE(d);
          CAPTURE(n);
          const auto x = B_module(gd, nu, n, l);
          for (const auto& f : x.check.failures) MESSAGE(f);
          CHECK(x.check.pass());
          if (l.kind == Lambda::Kind::Unit) CHECK(x.free_rank == static_cast<std::size_t>(n));
        }
  }
}

TEST_CASE("tangent space of k and the A-series") {
  const auto g = GroupSpec::make(3);
  const auto t = tangent_space(trivial_module(g));
  REQUIRE(t.size() == 4);
  CHECK(t[0].fingerprint == Fingerprint{false, false});
  std::set<std::pair<bool, bool>> fps;
  for (std::size_t i = 1; i < 4; ++i) fps.insert({t[i].fingerprint.sigma, t[i].fingerprint.tau});
  CHECK(fps.size() == 3);
  CHECK_THROWS_AS(tangent_space(direct_sum(trivial_module(g), trivial_module(g))), UsageError);
  for (int d = 3; d <= 4; ++d)
    for (Nu nu : {Nu::Sigma, Nu::Tau})
      for (int n = 0; n <= 2; ++n) {
        CAPTURE(d);
        CAPTURE(n);
        const auto r = tangent_check(GroupSpec::make(d), nu, n);
        for (const auto& f : r.failures) MESSAGE(f);
        CHECK(r.pass());
        CHECK(r.invariants["tangent_dim"] == 2);
      }
}

TEST_CASE("lift_step on k matches the four sign pairs") {
  const auto g = GroupSpec::make(3);
  const auto base = LiftRep::from_module(trivial_module(g));
  const auto st = lift_step(base);
  REQUIRE_FALSE(st.obstructed);
  CHECK(st.tangent_dim == 2);
  std::set<std::pair<std::uint64_t, std::uint64_t>> got, want;
  for (const auto& l : st.lifts) got.insert({l.S.get(0, 0), l.T.get(0, 0)});
  // brute force over Z/4
  for (std::uint64_t s = 0; s < 4; ++s)
    for (std::uint64_t t = 0; t < 4; ++t)
      if (s * s % 4 == 1 && t * t % 4 == 1) want.insert({s, t});
  CHECK(got == want);
}

namespace {

// All (A, B) over GF(2) with S + 2A, T + 2B a lift to Z/4.
std::size_t brute_force_lift_count(const LiftRep& l) {
  const std::size_t D = l.dim();
  const std::size_t bits = 2 * D * D;
  std::size_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    ZMatrix a(2, D, D), b(2, D, D);
    for (std::size_t u = 0; u < D * D; ++u) {
      a.set(u % D, u / D, (mask >> u & 1u) * 2);
      b.set(u % D, u / D, (mask >> (u + D * D) & 1u) * 2);
    }
    LiftRep c{l.d, 2, l.S.widen(2) + a, l.T.widen(2) + b, l.reduction};
    try {
      c.validate();
      ++count;
    } catch (const RelationViolation&) {
    }
  }
  return count;
}

}  // namespace

TEST_CASE("lift_step solution count matches brute force") {
  const auto g = GroupSpec::make(3);
  for (const auto& l : {Lambda::unit(1), Lambda::reflection(Nu::Sigma), Lambda::reflection(Nu::Tau)}) {
    const auto base = LiftRep::from_module(N_lambda(g, l));
    const auto st = lift_step(base);
    REQUIRE_FALSE(st.obstructed);
    CHECK(brute_force_lift_count(base) == (std::size_t{1} << st.cocycle_dim));
    CHECK(st.lifts.size() == (std::size_t{1} << st.tangent_dim));
    CHECK(st.tangent_dim + st.coboundary_dim == st.cocycle_dim);
    for (const auto& c : st.lifts) CHECK(st.contains(base, c));
  }
}

TEST_CASE("lift counts per level are 2^tangent for the A-series") {
  const auto g = GroupSpec::make(3);
  for (int n = 0; n <= 2; ++n) {
    std::vector<LiftRep> frontier{LiftRep::from_module(A_module(g, Nu::Sigma, n).module)};
    for (int lv = 1; lv < 3; ++lv) {
      std::vector<LiftRep> next;
      for (const auto& l : frontier) {
        const auto st = lift_step(l);
        REQUIRE_FALSE(st.obstructed);
        CHECK(st.tangent_dim == 2);
        CHECK(st.lifts.size() == 4);
        for (const auto& c : st.lifts) {
          // reduction compatibility
          const auto r = c.reduce(lv);
          CHECK_NOTHROW(r.validate());
          CHECK(r.S == l.S);
          CHECK(r.T == l.T);
          next.push_back(c);
        }
      }
      frontier = next;
    }
    CHECK(frontier.size() == 16);
  }
}

TEST_CASE("obstruction is reported") {
  // lifting u = 1 + 2^(n-1) obstructs: 3 mod 4 lifts, but 5 mod 8 does not lift to Z/16 with u^2 = 1
  const auto g = GroupSpec::make(3);
  const auto k = trivial_module(g);
  LiftRep l{3, 3, ZMatrix::from_rows(3, {{5}}), ZMatrix::from_rows(3, {{1}}), k};
  l.validate();
  const auto st = lift_step(l);
  CHECK(st.obstructed);
  CHECK(st.lifts.empty());
  CHECK_FALSE(st.obstruction.empty());
}

TEST_CASE("permutation lattices") {
  for (int d = 3; d <= 5; ++d) {
    const auto g = GroupSpec::make(d);
    for (Nu nu : {Nu::Sigma, Nu::Tau})
      for (int level = 2; level <= 3; ++level) {
        const auto p = permutation_lift(g, cyclic_subgroup(nu), level);
        CHECK(is_isomorphic(p.reduction, induced_trivial(g, nu)).isomorphic);
        const auto want = perm_character(g, cyclic_subgroup(nu)).to_class_function(g).integer_values();
        const auto got = p.character();
        for (std::size_t c = 0; c < want.size(); ++c)
          CHECK(got[c] == (static_cast<std::uint64_t>(want[c]) & level_mask(level)));
      }
  }
  // the permutation lattice one level up is among the solutions
  const auto g = GroupSpec::make(3);
  const auto p2 = permutation_lift(g, SubgroupKind::CSigma, 2);
  const auto p3 = permutation_lift(g, SubgroupKind::CSigma, 3);
  const auto st = lift_step(p2);
  CHECK(st.contains(p2, p3));
  // trace of sigma at level 2, d = 3: two fixed cosets
  const auto cl = conjugacy_classes(g);
  CHECK(p2.character()[cl.size() - 2] == 2);
}

TEST_CASE("four lifts of k at level 2") {
  for (int d = 3; d <= 4; ++d) {
    const auto ev = four_lifts(GroupSpec::make(d), Nu::Sigma, 0, 2);
    for (const auto& f : ev.check.failures) MESSAGE(f);
    CHECK(ev.check.pass());
    CHECK(ev.lifts.size() == 4);
    CHECK(ev.noniso.size() == 6);
  }
}

TEST_CASE("verify_theorem at level 3") {
  for (int d = 3; d <= 4; ++d)
    for (Nu nu : {Nu::Sigma, Nu::Tau})
      for (int n = 0; n <= 2; ++n) {
        CAPTURE(d);
        CAPTURE(n);
        const auto ev = verify_theorem(GroupSpec::make(d), nu, n, 3);
        for (const auto& f : ev.check.failures) MESSAGE(f);
        CHECK(ev.check.pass());
        CHECK(ev.tangent_dim == 2);
        CHECK(ev.lifts.size() == 4);
        for (const auto& x : ev.lifts) CHECK(x.endotrivial);
        const auto j = ev.to_json();
        CHECK(j["lifts"].size() == 4);
        CHECK(j["endotrivial_lift"].size() == 4);
      }
}

TEST_CASE("non-endotrivial lift is rejected") {
  const auto g = GroupSpec::make(3);
  const auto p = permutation_lift(g, SubgroupKind::CSigma, 2);
  std::string why;
  CHECK_FALSE(lift_is_endotrivial(p, &why));
  CHECK_FALSE(why.empty());
}
