#include <doctest.h>

#include <random>

#include "endolift/endotriv.hpp"
#include "endolift/error.hpp"
#include "test_util.hpp"

using namespace endolift;

TEST_CASE("E_nu dimensions and endotriviality") {
  for (int d = 3; d <= 5; ++d) {
    const auto& g = GroupSpec::make(d);
    for (Nu nu : {Nu::Sigma, Nu::Tau}) {
      const auto ideal = left_ideal(g, nu);
      // kD(1+nu) is free over <nu>-cosets: half the regular module
      CHECK(ideal.module.dim() * 2 == g.order());
      const auto e = E_module(g, nu);
      CHECK(e.dim() + 1 == ideal.module.dim());
      CHECK(is_endotrivial(e));
      if (d <= 4) CHECK(is_endotrivial_by_strip(e));
    }
  }
}

TEST_CASE("rad(kD)/soc(kD) splits as E_sigma + E_tau") {
  const auto& g = GroupSpec::make(4);
  const auto reg = regular_module(g);
  const auto rad = radical(reg);
  const auto soc = socle(reg).inclusion;
  const auto q = quotient(rad.module, *solve(rad.inclusion, soc)).module;
  CHECK(is_isomorphic(q, direct_sum(E_module(g, Nu::Sigma), E_module(g, Nu::Tau))).isomorphic);
}

TEST_CASE("endotrivial predicate: routes agree, controls fail") {
  const auto& g = GroupSpec::make(3);
  CHECK(is_endotrivial(trivial_module(g)));
  CHECK_FALSE(is_endotrivial(regular_module(g)));
  const auto reg = regular_module(g);
  const auto rad = radical(reg);
  // rad(kD) = Omega(k)
  CHECK(is_endotrivial(rad.module));
  CHECK(is_endotrivial_by_strip(rad.module));
  CHECK(is_isomorphic(rad.module, omega(trivial_module(g), 1)).isomorphic);
  const auto heart = quotient(rad.module, *solve(rad.inclusion, socle(reg).inclusion)).module;
  CHECK_FALSE(is_endotrivial(heart));
  CHECK_FALSE(is_endotrivial(direct_sum(trivial_module(g), trivial_module(g))));
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const auto m = testutil::random_module(rng, g);
    if (m.dim() == 0 || m.dim() > 12) continue;
    CHECK(is_endotrivial(m) == is_endotrivial_by_strip(m));
  }
}

TEST_CASE("klein syzygies") {
  for (int a = -3; a <= 3; ++a) {
    const auto k = klein_syzygy(a);
    CHECK(k.dim() == static_cast<std::size_t>(2 * std::abs(a) + 1));
    CHECK(free_rank(k) == 0);
  }
  CHECK_FALSE(is_isomorphic(klein_syzygy(1), klein_syzygy(-1)).isomorphic);
}

TEST_CASE("Xi on k, E_nu and syzygies") {
  for (int d = 3; d <= 4; ++d) {
    const auto& g = GroupSpec::make(d);
    const auto k = trivial_module(g);
    CHECK(xi_invariant(k) == XiInvariant{0, 0});
    const auto es = E_module(g, Nu::Sigma);
    const auto et = E_module(g, Nu::Tau);
    CHECK(xi_invariant(es) == XiInvariant{1, -1});
    CHECK(xi_invariant(et) == XiInvariant{-1, 1});
    // shifts add (m, m)
    for (int m = -2; m <= 2; ++m) {
      CHECK(xi_invariant(omega(k, m)) == XiInvariant{m, m});
      CHECK(xi_invariant(omega(es, m)) == XiInvariant{1 + m, -1 + m});
    }
  }
}

TEST_CASE("Xi is a homomorphism on tensor products") {
  const auto& g = GroupSpec::make(3);
  const auto es = E_module(g, Nu::Sigma);
  const auto et = E_module(g, Nu::Tau);
  const auto ok = omega(trivial_module(g), 1);
  for (const auto& [a, b] : {std::pair{es, et}, std::pair{es, ok}, std::pair{et, et}}) {
    const auto core = strip_free(tensor(a, b)).core;
    const auto xa = xi_invariant(a), xb = xi_invariant(b);
    CHECK(xi_invariant(core) == XiInvariant{xa.a1 + xb.a1, xa.a2 + xb.a2});
    CHECK(is_endotrivial(core));
  }
  // injectivity: Xi(E_sigma (x) E_tau) = 0 so the core is k
  const auto core = strip_free(tensor(es, et)).core;
  CHECK(is_isomorphic(core, trivial_module(g)).isomorphic);
  // dual negates Xi, and Xi(E_sigma*) = Xi(E_tau)
  CHECK(xi_invariant(dual(es)) == XiInvariant{-1, 1});
  CHECK(is_isomorphic(dual(es), et).isomorphic);
}

TEST_CASE("A-series certificates") {
  for (int d = 3; d <= 4; ++d) {
    const auto& g = GroupSpec::make(d);
    for (Nu nu : {Nu::Sigma, Nu::Tau}) {
      for (int n = 0; n <= (d == 3 ? 3 : 2); ++n) {
        const auto h = A_module(g, nu, n);
        const std::size_t un = static_cast<std::size_t>(n);
        CHECK(h.dim == un * g.order() / 2 + 1);
        CHECK(h.res_sigma == C2Type{1, un * g.order() / 4});
        CHECK(h.res_tau == C2Type{1, un * g.order() / 4});
        const std::int64_t two_n = 2 * n;
        CHECK(h.xi == (nu == Nu::Sigma ? XiInvariant{two_n, 0} : XiInvariant{0, two_n}));
        CHECK(is_endotrivial(h.module));
        const auto j = h.to_json();
        CHECK(j["certificate"]["dim"] == h.dim);
        CHECK(module_from_json(j) == h.module);
      }
    }
  }
  CHECK(A_module(GroupSpec::make(3), Nu::Sigma, 1).dim == 5);
  CHECK(A_module(GroupSpec::make(4), Nu::Tau, 2).dim == 17);
  CHECK_THROWS_AS(A_module(GroupSpec::make(3), Nu::Sigma, -1), UsageError);
}

TEST_CASE("A_{sigma,1} (x) A_{sigma,1} strips to A_{sigma,2}") {
  const auto& g = GroupSpec::make(3);
  const auto a1 = A_module(g, Nu::Sigma, 1).module;
  const auto s = strip_free(tensor(a1, a1));
  // 25 = core + 8 * free rank, core dim = 2 * 4 + 1
  CHECK(s.core.dim() == 9);
  CHECK(s.free_rank == 2);
  CHECK(s.core.dim() + s.free_rank * g.order() == 25);
  CHECK(is_isomorphic(s.core, A_module(g, Nu::Sigma, 2).module).isomorphic);
}

TEST_CASE("A-series members are pairwise non-isomorphic") {
  const auto& g = GroupSpec::make(3);
  const auto s2 = A_module(g, Nu::Sigma, 2).module;
  const auto t2 = A_module(g, Nu::Tau, 2).module;
  CHECK_FALSE(is_isomorphic(s2, t2).isomorphic);
  CHECK_FALSE(is_isomorphic(s2, omega(trivial_module(g), 4)).isomorphic);
}

TEST_CASE("restriction to C of the Ind kernel") {
  const auto& g = GroupSpec::make(3);
  const auto ind = induced_trivial(g, Nu::Sigma);
  CHECK(ind.dim() == g.order() / 2);
  CHECK(is_isomorphic(ind, left_ideal(g, Nu::Sigma).module).isomorphic);
}

TEST_CASE("short exact sequences and almost split middle terms") {
  for (int d = 3; d <= 4; ++d) {
    const auto& g = GroupSpec::make(d);
    for (Nu nu : {Nu::Sigma, Nu::Tau}) {
      for (int n = 0; n <= (d == 3 ? 2 : 1); ++n) {
        CAPTURE(d);
        CAPTURE(n);
        const auto r = verify_sequences(g, nu, n);
        for (const auto& f : r.failures) MESSAGE(f);
        CHECK(r.pass());
      }
    }
  }
}

TEST_CASE("parse_nu") {
  CHECK(parse_nu("sigma") == Nu::Sigma);
  CHECK(parse_nu("tau") == Nu::Tau);
  CHECK(other(Nu::Tau) == Nu::Sigma);
  CHECK_THROWS_AS(parse_nu("rho"), UsageError);
}
