#include "endolift/chars.hpp"

#include <algorithm>
#include <set>

#include "endolift/error.hpp"

namespace endolift {

namespace {

std::string chi_name(int a) { return "chi_" + std::to_string(a); }

std::size_t nonlinear_count(int d) { return (std::size_t{1} << (d - 2)) - 1; }

int orbit_of(int d, std::uint64_t i) {
  int v = 0;
  while (i % 2 == 0) {
    i /= 2;
    ++v;
  }
  return d - 3 - v;
}

std::int64_t sign(std::uint64_t e) { return e % 2 == 0 ? 1 : -1; }

nlohmann::json cyc_json(const CycInt& z) {
  if (auto v = z.as_integer()) return *v;
  nlohmann::json c = nlohmann::json::array();
  for (std::size_t i = 0; i < z.degree(); ++i) c.push_back(z.coeff(i));
  return {{"zeta_coeffs", c}};
}

}  // namespace

ClassFunction ClassFunction::operator+(const ClassFunction& o) const {
  if (d != o.d || values.size() != o.values.size()) throw DimensionMismatch("class functions on different groups");
  ClassFunction r{d, name + "+" + o.name, values};
  for (std::size_t i = 0; i < values.size(); ++i) r.values[i] += o.values[i];
  return r;
}

ClassFunction ClassFunction::operator-(const ClassFunction& o) const { return *this + o.scaled(-1); }

ClassFunction ClassFunction::scaled(std::int64_t s) const {
  ClassFunction r{d, std::to_string(s) + name, values};
  for (auto& v : r.values) v = v.scaled(s);
  return r;
}

bool ClassFunction::is_rational() const {
  return std::all_of(values.begin(), values.end(), [](const CycInt& v) { return v.is_rational(); });
}

std::vector<std::int64_t> ClassFunction::integer_values() const {
  std::vector<std::int64_t> out;
  for (const auto& v : values) {
    auto x = v.as_integer();
    if (!x) throw CertificateFailure("class function " + name + " has an irrational value " + v.to_string());
    out.push_back(*x);
  }
  return out;
}

std::vector<std::size_t> class_sizes(const GroupSpec& g) {
  std::vector<std::size_t> s;
  for (const auto& c : conjugacy_classes(g)) s.push_back(c.members.size());
  return s;
}

std::vector<ClassFunction> char_table(const GroupSpec& g) {
  const int d = g.d();
  const auto classes = conjugacy_classes(g);
  std::vector<ClassFunction> out;
  for (int a = 1; a <= 4; ++a) {
    ClassFunction f{d, chi_name(a), {}};
    for (const auto& c : classes) {
      const GroupElem x = g.element(c.representative);
      std::int64_t v = 1;
      if (a == 2) v = sign(x.s);
      if (a == 3) v = sign(x.j);
      if (a == 4) v = sign(x.j + x.s);
      f.values.emplace_back(d, v);
    }
    out.push_back(std::move(f));
  }
  for (std::size_t i = 1; i <= nonlinear_count(d); ++i) {
    ClassFunction f{d, "chi_5," + std::to_string(i), {}};
    for (const auto& c : classes) {
      const GroupElem x = g.element(c.representative);
      if (x.s == 1) {
        f.values.emplace_back(d, 0);
      } else {
        const auto e = static_cast<std::int64_t>(i * x.j);
        f.values.push_back(CycInt::zeta_power(d, e) + CycInt::zeta_power(d, -e));
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

ClassFunction rho(const GroupSpec& g, int l) {
  const int d = g.d();
  if (l < 0 || l > d - 3) throw UsageError("rho index out of range");
  const auto table = char_table(g);
  ClassFunction r{d, "rho_" + std::to_string(l), std::vector<CycInt>(table[0].values.size(), CycInt(d, 0))};
  for (std::uint64_t u = 1; u <= (std::uint64_t{1} << l); ++u) {
    const std::uint64_t i = (std::uint64_t{1} << (d - 3 - l)) * (2 * u - 1);
    const auto& chi = table[3 + i];
    for (std::size_t c = 0; c < r.values.size(); ++c) r.values[c] += chi.values[c];
  }
  return r;
}

std::int64_t inner_product(const GroupSpec& g, const ClassFunction& a, const ClassFunction& b) {
  const auto sizes = class_sizes(g);
  if (a.values.size() != sizes.size() || b.values.size() != sizes.size())
    throw DimensionMismatch("class function length does not match the class count");
  CycInt s(g.d(), 0);
  for (std::size_t c = 0; c < sizes.size(); ++c)
    s += (a.values[c] * b.values[c].conj()).scaled(static_cast<std::int64_t>(sizes[c]));
  auto v = s.as_integer();
  const auto n = static_cast<std::int64_t>(g.order());
  if (!v || *v % n != 0)
    throw CertificateFailure("inner product <" + a.name + "," + b.name + "> is not an integer: " + s.to_string() +
                             " / " + std::to_string(n));
  return *v / n;
}

RationalCharacter RationalCharacter::zero(int d) { return {d, std::vector<std::int64_t>(4 + d - 2, 0)}; }

RationalCharacter RationalCharacter::chi(int d, int a) {
  auto r = zero(d);
  r.mult.at(a - 1) = 1;
  return r;
}

RationalCharacter RationalCharacter::rho(int d, int l) {
  auto r = zero(d);
  r.mult.at(4 + l) = 1;
  return r;
}

RationalCharacter RationalCharacter::rho_total(int d) {
  auto r = zero(d);
  for (int l = 0; l <= d - 3; ++l) r.mult[4 + l] = 1;
  return r;
}

RationalCharacter RationalCharacter::operator+(const RationalCharacter& o) const {
  if (d != o.d) throw DimensionMismatch("characters of different groups");
  RationalCharacter r = *this;
  for (std::size_t i = 0; i < mult.size(); ++i) r.mult[i] += o.mult[i];
  return r;
}

RationalCharacter RationalCharacter::scaled(std::int64_t s) const {
  RationalCharacter r = *this;
  for (auto& m : r.mult) m *= s;
  return r;
}

std::int64_t RationalCharacter::degree() const {
  std::int64_t deg = mult[0] + mult[1] + mult[2] + mult[3];
  for (int l = 0; l <= d - 3; ++l) deg += mult[4 + l] * (std::int64_t{2} << l);
  return deg;
}

ClassFunction RationalCharacter::to_class_function(const GroupSpec& g) const {
  const auto table = char_table(g);
  ClassFunction f{d, to_string(), std::vector<CycInt>(table[0].values.size(), CycInt(d, 0))};
  for (int a = 0; a < 4; ++a) f = f + table[a].scaled(mult[a]);
  for (int l = 0; l <= d - 3; ++l) f = f + endolift::rho(g, l).scaled(mult[4 + l]);
  f.name = to_string();
  return f;
}

std::string RationalCharacter::to_string() const {
  std::string s;
  auto term = [&](std::int64_t m, const std::string& n) {
    if (m == 0) return;
    if (!s.empty()) s += m > 0 ? "+" : "-";
    else if (m < 0) s += "-";
    const std::int64_t a = m < 0 ? -m : m;
    if (a != 1) s += std::to_string(a);
    s += n;
  };
  for (int a = 0; a < 4; ++a) term(mult[a], chi_name(a + 1));
  for (int l = 0; l <= d - 3; ++l) term(mult[4 + l], "rho_" + std::to_string(l));
  return s.empty() ? "0" : s;
}

nlohmann::json RationalCharacter::to_json() const {
  return {{"chi", {mult[0], mult[1], mult[2], mult[3]}},
          {"rho", std::vector<std::int64_t>(mult.begin() + 4, mult.end())},
          {"degree", degree()},
          {"text", to_string()}};
}

RationalCharacter decompose(const GroupSpec& g, const ClassFunction& f) {
  const int d = g.d();
  const auto table = char_table(g);
  auto r = RationalCharacter::zero(d);
  for (int a = 0; a < 4; ++a) r.mult[a] = inner_product(g, f, table[a]);
  std::vector<std::optional<std::int64_t>> orbit(d - 2);
  for (std::size_t i = 1; i <= nonlinear_count(d); ++i) {
    const std::int64_t m = inner_product(g, f, table[3 + i]);
    auto& slot = orbit[orbit_of(d, i)];
    if (slot && *slot != m)
      throw CertificateFailure(f.name + " is not constant on the Galois orbit of chi_5," + std::to_string(i));
    slot = m;
  }
  for (int l = 0; l <= d - 3; ++l) r.mult[4 + l] = orbit[l].value_or(0);
  if (!(r.to_class_function(g) == f)) throw CertificateFailure(f.name + " is not in the span of the irreducibles");
  return r;
}

std::int64_t hom_dim_F(const RationalCharacter& x, const RationalCharacter& y) {
  if (x.d != y.d) throw DimensionMismatch("characters of different groups");
  std::int64_t s = 0;
  for (int a = 0; a < 4; ++a) s += x.mult[a] * y.mult[a];
  for (int l = 0; l <= x.d - 3; ++l) s += x.mult[4 + l] * y.mult[4 + l] * (std::int64_t{1} << l);
  return s;
}

ClassFunction permutation_class_function(const GroupSpec& g, SubgroupKind h) {
  const auto& sub = g.subgroup(h);
  const auto& fin = *g.fin();
  const std::set<std::size_t> members(sub.elements.begin(), sub.elements.end());
  ClassFunction f{g.d(), "perm(" + to_string(h) + ")", {}};
  for (const auto& c : conjugacy_classes(g)) {
    std::int64_t fixed = 0;
    for (std::size_t x : sub.coset_reps)
      if (members.count(fin.mul(fin.inverse(x), fin.mul(c.representative, x)))) ++fixed;
    f.values.emplace_back(g.d(), fixed);
  }
  return f;
}

RationalCharacter perm_character(const GroupSpec& g, SubgroupKind h) {
  return decompose(g, permutation_class_function(g, h));
}

ClassFunction regular_class_function(const GroupSpec& g) {
  ClassFunction f{g.d(), "regular", {}};
  for (const auto& c : conjugacy_classes(g))
    f.values.emplace_back(g.d(), c.representative == 0 ? static_cast<std::int64_t>(g.order()) : 0);
  return f;
}

RationalCharacter augmentation_ideal_character(const GroupSpec& g, Nu nu) {
  return decompose(g, regular_class_function(g) - permutation_class_function(g, cyclic_subgroup(nu)));
}

nlohmann::json CharacterLedger::to_json() const {
  nlohmann::json e = nlohmann::json::array();
  for (const auto& x : entries)
    e.push_back({{"case", x.label}, {"character", x.character.to_json()}, {"ind_partner", x.ind_partner.to_json()}});
  return {{"nu", endolift::to_string(nu)}, {"n", n}, {"entries", e}};
}

CharacterLedger ledger(const GroupSpec& g, Nu nu, int n) {
  if (n < 0) throw UsageError("ledger index must be >= 0");
  const int d = g.d();
  const int c = nu == Nu::Sigma ? 3 : 4;
  const int dd = nu == Nu::Sigma ? 4 : 3;
  const auto chi = [d](int a) { return RationalCharacter::chi(d, a); };
  const auto rho = RationalCharacter::rho_total(d);
  const auto x1c = chi(1) + chi(c);
  const auto x2d = chi(2) + chi(dd);
  const std::int64_t m = n / 2;
  CharacterLedger L{nu, n, {}};
  if (n % 2 == 0) {
    const auto base = x1c.scaled(m) + x2d.scaled(m) + rho.scaled(2 * m);
    L.entries = {{"i:chi_1", chi(1) + base, x2d + rho},
                 {"i:chi_" + std::to_string(c), chi(c) + base, x2d + rho},
                 {"ii:chi_2", chi(2) + base, x1c + rho},
                 {"ii:chi_" + std::to_string(dd), chi(dd) + base, x1c + rho}};
  } else {
    const auto prime_i = x1c.scaled(m) + x2d.scaled(m + 1) + rho.scaled(2 * m + 1);
    const auto prime_ii = x1c.scaled(m + 1) + x2d.scaled(m) + rho.scaled(2 * m + 1);
    L.entries = {{"i':chi_1", chi(1) + prime_i, x1c + rho},
                 {"i':chi_" + std::to_string(c), chi(c) + prime_i, x1c + rho},
                 {"ii':chi_2", chi(2) + prime_ii, x2d + rho},
                 {"ii':chi_" + std::to_string(dd), chi(dd) + prime_ii, x2d + rho}};
  }
  return L;
}

CheckResult ledger_check(const GroupSpec& g, Nu nu, int n) {
  CheckResult r;
  r.id = "ledger";
  r.inputs = {{"d", g.d()}, {"nu", to_string(nu)}, {"n", n}};
  try {
    const auto L = ledger(g, nu, n);
    r.witnesses["ledger"] = L.to_json();
    const std::int64_t deg = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(g.order() / 2) + 1;
    const std::int64_t target = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(g.order() / 4);
    for (std::size_t i = 0; i < L.entries.size(); ++i) {
      const auto& e = L.entries[i];
      r.expect(e.character.degree() == deg, e.label + " has degree " + std::to_string(e.character.degree()));
      r.expect(e.character.degree() % 2 == 1, e.label + " has even degree");
      for (std::size_t j = 0; j < i; ++j)
        r.expect(!(L.entries[j].character == e.character), e.label + " repeats " + L.entries[j].label);
      r.expect(e.ind_partner.degree() == static_cast<std::int64_t>(g.order() / 2),
               e.label + ": partner degree is not [D:<nu>]");
      const auto h = hom_dim_F(e.character, e.ind_partner);
      r.expect(h == target, e.label + ": dim_F Hom = " + std::to_string(h) + ", expected " + std::to_string(target));
    }
    // the two Ind lifts are the permutation lattice and the augmentation ideal
    const auto perm = perm_character(g, cyclic_subgroup(nu));
    const auto aug = augmentation_ideal_character(g, nu);
    std::set<std::string> partners;
    for (const auto& e : L.entries) partners.insert(e.ind_partner.to_string());
    r.expect(partners == std::set<std::string>{perm.to_string(), aug.to_string()},
             "Ind partners are not the permutation and augmentation characters");

    const auto a = A_module(g, nu, n).module;
    const auto ind = induced_trivial(g, nu);
    const auto hk = static_cast<std::int64_t>(hom_space(a, ind).dim());
    const auto ek = static_cast<std::int64_t>(ext1(a, ind).dim());
    r.invariants["hom_dim_F"] = target;
    r.invariants["hom_dim_k"] = hk;
    r.invariants["ext_dim_k"] = ek;
    r.expect(hk == target + 1, "dim_k Hom(A, Ind k) = " + std::to_string(hk) + ", expected " +
                                   std::to_string(target + 1));
    r.expect(ek == 1, "dim_k Ext^1(A, Ind k) = " + std::to_string(ek) + ", expected 1");
  } catch (const Error& e) {
    r.failures.push_back(e.what());
  }
  return r;
}

nlohmann::json char_table_json(const GroupSpec& g) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : conjugacy_classes(g)) {
    const auto x = g.element(c.representative);
    classes.push_back({{"label", c.label}, {"size", c.members.size()}, {"representative", {{"j", x.j}, {"s", x.s}}}});
  }
  nlohmann::json chars = nlohmann::json::array();
  for (const auto& f : char_table(g)) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& x : f.values) v.push_back(cyc_json(x));
    chars.push_back({{"name", f.name}, {"values", v}});
  }
  nlohmann::json rhos = nlohmann::json::array();
  for (int l = 0; l <= g.d() - 3; ++l) {
    const auto f = rho(g, l);
    rhos.push_back({{"name", f.name}, {"values", f.integer_values()}, {"end_field_dim", std::int64_t{1} << l}});
  }
  nlohmann::json decomp = nlohmann::json::object();
  decomp["regular"] = decompose(g, regular_class_function(g)).to_json();
  decomp["perm_sigma"] = perm_character(g, SubgroupKind::CSigma).to_json();
  decomp["perm_tau"] = perm_character(g, SubgroupKind::CTau).to_json();
  decomp["aug_sigma"] = augmentation_ideal_character(g, Nu::Sigma).to_json();
  decomp["aug_tau"] = augmentation_ideal_character(g, Nu::Tau).to_json();
  return {{"d", g.d()}, {"order", g.order()}, {"classes", classes}, {"characters", chars}, {"rho", rhos},
          {"decompositions", decomp}};
}

}  // namespace endolift
