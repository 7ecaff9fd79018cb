#include <doctest.h>

#include <array>
#include <set>

#include "endolift/chars.hpp"
#include "endolift/error.hpp"

using namespace endolift;

namespace {

using Mat2 = std::array<CycInt, 4>;

Mat2 mul2(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
          a[2] * b[1] + a[3] * b[3]};
}

// Trace of the Table 1 representation psi_{5,i} evaluated along a word.
CycInt table_trace(const GroupSpec& g, std::uint64_t i, const GroupElem& x) {
  const int d = g.d();
  const CycInt zero(d, 0), one(d, 1);
  const auto zi = static_cast<std::int64_t>(i);
  const Mat2 s{zero, one, one, zero};
  const Mat2 t{zero, CycInt::zeta_power(d, -zi), CycInt::zeta_power(d, zi), zero};
  Mat2 m{one, zero, zero, one};
  for (auto w : g.word(x)) m = mul2(m, w == 0 ? s : t);
  return m[0] + m[3];
}

std::int64_t linear_value(int a, const GroupSpec& g, const GroupElem& x) {
  // sigma and tau images from the table rows
  const std::array<std::array<int, 2>, 4> rows{{{1, 1}, {-1, -1}, {1, -1}, {-1, 1}}};
  std::int64_t v = 1;
  for (auto w : g.word(x)) v *= rows[a - 1][w];
  return v;
}

}  // namespace

TEST_CASE("character table matches the matrix representations") {
  for (int d = 3; d <= 5; ++d) {
    const auto g = GroupSpec::make(d);
    const auto table = char_table(g);
    const auto classes = conjugacy_classes(g);
    REQUIRE(table.size() == 4 + (std::size_t{1} << (d - 2)) - 1);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (std::size_t x : classes[c].members) {
        const auto e = g.element(x);
        for (int a = 1; a <= 4; ++a) CHECK(table[a - 1].values[c] == CycInt(d, linear_value(a, g, e)));
        for (std::size_t i = 1; i + 4 <= table.size(); ++i) CHECK(table[3 + i].values[c] == table_trace(g, i, e));
      }
    }
  }
}

TEST_CASE("table values on sigma and tau") {
  const auto g = GroupSpec::make(4);
  const auto t = char_table(g);
  const auto cl = conjugacy_classes(g);
  const std::size_t cs = cl.size() - 2, ct = cl.size() - 1;
  CHECK(t[2].values[cs] == CycInt(4, 1));
  CHECK(t[2].values[ct] == CycInt(4, -1));
  CHECK(t[3].values[cs] == CycInt(4, -1));
  for (std::size_t i = 4; i < t.size(); ++i) CHECK(t[i].values[cs].is_zero());
}

TEST_CASE("orthogonality relations") {
  for (int d = 3; d <= 5; ++d) {
    const auto g = GroupSpec::make(d);
    const auto t = char_table(g);
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = 0; b < t.size(); ++b) CHECK(inner_product(g, t[a], t[b]) == (a == b ? 1 : 0));
    // column orthogonality: sum_chi chi(c) conj chi(c') = delta |C_G(c)|
    const auto sizes = class_sizes(g);
    std::size_t total = 0;
    for (auto s : sizes) total += s;
    CHECK(total == g.order());
    for (std::size_t c = 0; c < sizes.size(); ++c)
      for (std::size_t c2 = 0; c2 < sizes.size(); ++c2) {
        CycInt s(d, 0);
        for (const auto& chi : t) s += chi.values[c] * chi.values[c2].conj();
        const std::int64_t want = c == c2 ? static_cast<std::int64_t>(g.order() / sizes[c]) : 0;
        CHECK(s == CycInt(d, want));
      }
  }
}

TEST_CASE("rho_l are integral with degree 2^(l+1)") {
  const auto g3 = GroupSpec::make(3);
  CHECK(rho(g3, 0).integer_values() == std::vector<std::int64_t>{2, -2, 0, 0, 0});
  for (int d = 3; d <= 5; ++d) {
    const auto g = GroupSpec::make(d);
    for (int l = 0; l <= d - 3; ++l) {
      const auto r = rho(g, l);
      CHECK(r.is_rational());
      for (const auto& v : r.values) CHECK(cyc_trace(v) == static_cast<std::int64_t>(v.degree()) * *v.as_integer());
      CHECK(r.integer_values()[0] == (std::int64_t{2} << l));
      CHECK(inner_product(g, r, r) == (std::int64_t{1} << l));
      CHECK(decompose(g, r) == RationalCharacter::rho(d, l));
    }
    CHECK_THROWS_AS(rho(g, d - 2), UsageError);
  }
}

TEST_CASE("regular, permutation and augmentation characters") {
  for (int d = 3; d <= 5; ++d) {
    const auto g = GroupSpec::make(d);
    const auto rt = RationalCharacter::rho_total(d);
    const auto chi = [d](int a) { return RationalCharacter::chi(d, a); };
    CHECK(decompose(g, regular_class_function(g)) == chi(1) + chi(2) + chi(3) + chi(4) + rt.scaled(2));
    const auto ps = perm_character(g, SubgroupKind::CSigma);
    CHECK(ps == chi(1) + chi(3) + rt);
    CHECK(perm_character(g, SubgroupKind::CTau) == chi(1) + chi(4) + rt);
    CHECK(ps.degree() == static_cast<std::int64_t>(g.order() / 2));
    CHECK(augmentation_ideal_character(g, Nu::Sigma) == chi(2) + chi(4) + rt);
    CHECK(augmentation_ideal_character(g, Nu::Tau) == chi(2) + chi(3) + rt);
  }
  const auto g3 = GroupSpec::make(3);
  CHECK(perm_character(g3, SubgroupKind::CSigma).mult == std::vector<std::int64_t>{1, 0, 1, 0, 1});
}

TEST_CASE("decompose rejects non-characters") {
  const auto g = GroupSpec::make(4);
  const auto t = char_table(g);
  // chi_5,1 is one of two conjugates
  CHECK_THROWS_AS(decompose(g, t[4]), CertificateFailure);
  // chi_5,2 is its own orbit at d = 4
  CHECK(decompose(g, t[5]) == RationalCharacter::rho(4, 0));
  ClassFunction f = t[0];
  f.values[1] = CycInt(4, 3);
  CHECK_THROWS_AS(decompose(g, f), CertificateFailure);
}

TEST_CASE("hom_dim_F weights") {
  for (int d = 3; d <= 5; ++d) {
    const auto rt = RationalCharacter::rho_total(d);
    CHECK(hom_dim_F(rt, rt) == (std::int64_t{1} << (d - 2)) - 1);
    CHECK(hom_dim_F(RationalCharacter::chi(d, 1), RationalCharacter::chi(d, 1)) == 1);
    CHECK(hom_dim_F(RationalCharacter::chi(d, 1), RationalCharacter::chi(d, 2)) == 0);
  }
}

TEST_CASE("hom_dim_F agrees with inner products weighted back") {
  // for rational characters <x, y> over C counts 2^l per shared rho_l, same as the End-field weight
  const auto g = GroupSpec::make(5);
  const auto a = RationalCharacter::chi(5, 1) + RationalCharacter::rho(5, 2).scaled(3) + RationalCharacter::rho(5, 1);
  const auto b = RationalCharacter::rho_total(5).scaled(2) + RationalCharacter::chi(5, 1);
  CHECK(hom_dim_F(a, b) == inner_product(g, a.to_class_function(g), b.to_class_function(g)));
}

TEST_CASE("ledger") {
  for (int d = 3; d <= 4; ++d) {
    const auto g = GroupSpec::make(d);
    for (Nu nu : {Nu::Sigma, Nu::Tau}) {
      const auto l0 = ledger(g, nu, 0);
      std::set<std::vector<std::int64_t>> seen;
      for (const auto& e : l0.entries) {
        CHECK(e.character.degree() == 1);
        seen.insert(e.character.mult);
      }
      CHECK(seen.size() == 4);
      for (int n = 0; n <= 2; ++n) {
        CAPTURE(n);
        const auto r = ledger_check(g, nu, n);
        for (const auto& f : r.failures) MESSAGE(f);
        CHECK(r.pass());
        CHECK(r.invariants["hom_dim_k"] == n * static_cast<int>(g.order() / 4) + 1);
      }
    }
  }
  // induction step: ledger(n) plus partner lands in ledger(n+1)
  const auto g = GroupSpec::make(4);
  for (int n = 0; n <= 3; ++n) {
    const auto now = ledger(g, Nu::Sigma, n);
    const auto next = ledger(g, Nu::Sigma, n + 1);
    for (const auto& e : now.entries) {
      const auto sum = e.character + e.ind_partner;
      bool hit = false;
      for (const auto& f : next.entries) hit = hit || f.character == sum;
      CHECK(hit);
    }
  }
}

TEST_CASE("char table json") {
  const auto j = char_table_json(GroupSpec::make(3));
  CHECK(j["classes"].size() == 5);
  CHECK(j["characters"].size() == 5);
  CHECK(j["decompositions"]["perm_sigma"]["text"] == "chi_1+chi_3+rho_0");
}
