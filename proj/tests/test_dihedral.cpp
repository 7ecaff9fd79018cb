#include <set>

#include "doctest.h"
#include "endolift/error.hpp"
#include "endolift/group.hpp"

using namespace endolift;

TEST_CASE("make_group basics") {
  const auto g = GroupSpec::make(3);
  CHECK(g.order() == 8);
  CHECK(g.fin()->order() == 8);
  CHECK_THROWS_AS(GroupSpec::make(2), UsageError);

  const auto r = g.multiply(g.sigma(), g.tau());
  CHECK(r == g.rotation());
  CHECK(g.multiply(r, r) == g.central());
  CHECK(g.multiply(g.sigma(), g.sigma()) == g.identity());
  CHECK(g.multiply(g.tau(), g.tau()) == g.identity());
  for (std::size_t x = 0; x < 8; ++x) {
    const auto e = g.element(x);
    CHECK(g.multiply(g.central(), e) == g.multiply(e, g.central()));
  }

  const auto g4 = GroupSpec::make(4);
  GroupElem p = g4.rotation();
  int ord = 1;
  while (!(p == g4.identity())) {
    p = g4.multiply(p, g4.rotation());
    ++ord;
  }
  CHECK(ord == 8);
}

TEST_CASE("associativity and inverses") {
  for (int d = 3; d <= 5; ++d) {
    const auto g = GroupSpec::make(d);
    const auto& f = *g.fin();
    for (std::size_t a = 0; a < f.order(); ++a) {
      CHECK(f.mul(a, f.inverse(a)) == 0);
      CHECK(g.multiply(g.element(a), g.inverse(g.element(a))) == g.identity());
      CHECK(f.evaluate(g.word(g.element(a))) == a);
      for (std::size_t b = 0; b < f.order(); ++b)
        for (std::size_t c = 0; c < f.order(); c += 3)
          REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
    }
  }
}

TEST_CASE("squares lie in the rotation subgroup and reflections are involutions") {
  for (int d = 3; d <= 6; ++d) {
    const auto g = GroupSpec::make(d);
    for (std::size_t x = 0; x < g.order(); ++x) {
      const auto e = g.element(x);
      CHECK(g.multiply(e, e).s == 0);
      if (e.s) CHECK(g.multiply(e, e) == g.identity());
    }
  }
}

TEST_CASE("conjugacy classes") {
  for (int d = 3; d <= 6; ++d) {
    const auto g = GroupSpec::make(d);
    const auto cl = conjugacy_classes(g);
    CHECK(cl.size() == (std::size_t{1} << (d - 2)) + 3);
    CHECK(cl.size() == 4 + ((std::size_t{1} << (d - 2)) - 1));
    std::size_t total = 0;
    for (const auto& c : cl) total += c.members.size();
    CHECK(total == g.order());
  }
  const auto cl3 = conjugacy_classes(GroupSpec::make(3));
  std::vector<std::size_t> sizes;
  for (const auto& c : cl3) sizes.push_back(c.members.size());
  CHECK(sizes == std::vector<std::size_t>{1, 1, 2, 2, 2});
  CHECK(conjugacy_classes(GroupSpec::make(4)).size() == 7);
}

TEST_CASE("subgroups and coset representatives") {
  for (int d = 3; d <= 5; ++d) {
    const auto g = GroupSpec::make(d);
    const auto& f = *g.fin();
    const std::size_t half = g.order() / 2, quarter = g.order() / 4;
    CHECK(g.subgroup(SubgroupKind::CSigma).coset_reps.size() == half);
    CHECK(g.subgroup(SubgroupKind::CTau).coset_reps.size() == half);
    CHECK(g.subgroup(SubgroupKind::K1).coset_reps.size() == quarter);
    CHECK(g.subgroup(SubgroupKind::K2).coset_reps.size() == quarter);
    CHECK(g.subgroup(SubgroupKind::Whole).coset_reps.size() == 1);
    for (auto k : {SubgroupKind::CSigma, SubgroupKind::CTau, SubgroupKind::Center, SubgroupKind::K1,
                   SubgroupKind::K2, SubgroupKind::Whole}) {
      const auto& h = g.subgroup(k);
      std::set<std::size_t> hs(h.elements.begin(), h.elements.end());
      for (auto a : h.elements)
        for (auto b : h.elements) CHECK(hs.count(f.mul(a, b)));
      std::set<std::size_t> cover;
      for (auto x : h.coset_reps)
        for (auto y : h.elements) CHECK(cover.insert(f.mul(x, y)).second);
      CHECK(cover.size() == g.order());
      CHECK(std::is_sorted(h.coset_reps.begin(), h.coset_reps.end()));
    }
  }
  CHECK_THROWS_AS(parse_subgroup("K3"), UsageError);
}
