#include "endolift/endotriv.hpp"

#include <map>
#include <mutex>
#include <random>
#include <tuple>

#include "endolift/error.hpp"
#include "endolift/matrix_json.hpp"

namespace endolift {

std::string to_string(Nu nu) { return nu == Nu::Sigma ? "sigma" : "tau"; }

Nu parse_nu(const std::string& s) {
  if (s == "sigma" || s == "s") return Nu::Sigma;
  if (s == "tau" || s == "t") return Nu::Tau;
  throw UsageError("nu must be sigma or tau, got '" + s + "'");
}

Nu other(Nu nu) { return nu == Nu::Sigma ? Nu::Tau : Nu::Sigma; }

SubgroupKind cyclic_subgroup(Nu nu) { return nu == Nu::Sigma ? SubgroupKind::CSigma : SubgroupKind::CTau; }

std::size_t nu_element(const GroupSpec& g, Nu nu) {
  return g.index(nu == Nu::Sigma ? g.sigma() : g.tau());
}

std::string XiInvariant::to_string() const {
  return "(" + std::to_string(a1) + "," + std::to_string(a2) + ")";
}

Submodule left_ideal(const GroupSpec& g, Nu nu, int m) {
  const ModuleRep reg = regular_module(g, m);
  const std::size_t h = nu_element(g, nu);
  FMatrix gen = FMatrix::identity(m, g.order());
  for (std::size_t x = 0; x < g.order(); ++x) gen.set(g.fin()->mul(x, h), x, gen.get(g.fin()->mul(x, h), x) ^ 1u);
  return submodule(reg, column_space_basis(gen));
}

ModuleRep E_module(const GroupSpec& g, Nu nu, int m) {
  const auto ideal = left_ideal(g, nu, m);
  const auto soc = socle(regular_module(g, m)).inclusion;
  auto coords = solve(ideal.inclusion, soc);
  if (!coords) throw CertificateFailure("soc(kD) is not contained in kD(1+nu)");
  return quotient(ideal.module, *coords).module;
}

ModuleRep induced_trivial(const GroupSpec& g, Nu nu, int m) {
  const SubgroupKind h = cyclic_subgroup(nu);
  return induce(g, h, trivial_module(g.subgroup(h).abstract, m));
}

bool is_endotrivial(const ModuleRep& m) {
  if (m.dim() == 0) return false;
  const std::size_t f = phom_dim(m, m);
  return m.dim() * m.dim() == f * m.group()->order() + 1;
}

bool is_endotrivial_by_strip(const ModuleRep& m) {
  if (m.dim() == 0) return false;
  const auto core = strip_free(hom_module(m, m)).core;
  if (core.dim() != 1) return false;
  return is_isomorphic(core, trivial_module(m.group(), m.field_degree())).isomorphic;
}

ModuleRep klein_syzygy(int a, int m) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, ModuleRep> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({a, m}); it != cache.end()) return it->second;
  }
  ModuleRep x = a == 0 ? trivial_module(klein4_group(), m)
                       : syzygy(klein_syzygy(a > 0 ? a - 1 : a + 1, m), a > 0 ? 1 : -1).module;
  std::lock_guard lock(mu);
  return cache.emplace(std::pair{a, m}, x).first->second;
}

namespace {

std::int64_t klein_degree(const ModuleRep& m, SubgroupKind k) {
  const auto core = strip_free(restrict(m, k)).core;
  if (core.dim() % 2 == 0)
    throw CertificateFailure("restriction to " + to_string(k) + " has an even-dimensional core");
  const int a = static_cast<int>((core.dim() - 1) / 2);
  if (a == 0) {
    if (!is_isomorphic(core, klein_syzygy(0, m.field_degree())).isomorphic)
      throw CertificateFailure("one-dimensional core is not trivial");
    return 0;
  }
  const bool plus = is_isomorphic(core, klein_syzygy(a, m.field_degree())).isomorphic;
  const bool minus = is_isomorphic(core, klein_syzygy(-a, m.field_degree())).isomorphic;
  if (plus == minus)
    throw CertificateFailure("core over " + to_string(k) + " matches " +
                             std::string(plus ? "both" : "neither") + " of Omega^(+-" + std::to_string(a) + ")(k)");
  return plus ? a : -a;
}

}  // namespace

XiInvariant xi_invariant(const ModuleRep& m) {
  return {klein_degree(m, SubgroupKind::K1), klein_degree(m, SubgroupKind::K2)};
}

nlohmann::json ASeriesHandle::to_json() const {
  nlohmann::json j = module_to_json(module);
  j["certificate"] = {{"nu", to_string(nu)},
                      {"n", n},
                      {"dim", dim},
                      {"xi", {xi.a1, xi.a2}},
                      {"restriction_type",
                       {{"C_sigma", {{"trivial", res_sigma.trivial}, {"free", res_sigma.free}}},
                        {"C_tau", {{"trivial", res_tau.trivial}, {"free", res_tau.free}}}}}};
  return j;
}

namespace {

ModuleRep A_raw(const GroupSpec& g, Nu nu, int n) {
  static std::mutex mu;
  static std::map<std::tuple<int, Nu, int>, ModuleRep> cache;
  const auto key = std::tuple{g.d(), nu, n};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  ModuleRep m;
  if (n == 0) {
    m = trivial_module(g);
  } else if (n == 1) {
    m = syzygy(E_module(g, nu), 1).module;
  } else {
    m = strip_free(tensor(A_raw(g, nu, 1), A_raw(g, nu, n - 1))).core;
  }
  std::lock_guard lock(mu);
  return cache.emplace(key, m).first->second;
}

}  // namespace

ASeriesHandle A_module(const GroupSpec& g, Nu nu, int n) {
  if (n < 0) throw UsageError("A-series index must be >= 0");
  ASeriesHandle h;
  h.nu = nu;
  h.n = n;
  h.module = A_raw(g, nu, n);
  h.dim = h.module.dim();
  const std::size_t un = static_cast<std::size_t>(n);
  const std::size_t want_dim = un * (g.order() / 2) + 1;
  if (h.dim != want_dim)
    throw CertificateFailure("dim A_{" + to_string(nu) + "," + std::to_string(n) + "} = " +
                             std::to_string(h.dim) + ", expected " + std::to_string(want_dim));
  h.res_sigma = c2_type(restrict(h.module, SubgroupKind::CSigma));
  h.res_tau = c2_type(restrict(h.module, SubgroupKind::CTau));
  const C2Type want{1, un * (g.order() / 4)};
  if (!(h.res_sigma == want) || !(h.res_tau == want))
    throw CertificateFailure("restriction of A_{" + to_string(nu) + "," + std::to_string(n) +
                             "} to a reflection subgroup is not k + free of the expected rank");
  if (free_rank(h.module) != 0) throw CertificateFailure("A-series member has a free summand");
  h.xi = xi_invariant(h.module);
  return h;
}

namespace {

void surjection_check(const GroupSpec& g, Nu nu, int n, const SequenceOptions& opt, CheckResult& r) {
  const ModuleRep big = A_module(g, nu, n + 1).module;
  const ModuleRep small = A_module(g, nu, n).module;
  const ModuleRep ind = induced_trivial(g, nu);
  const auto h = hom_space(big, small);
  r.invariants["hom_dim"] = h.dim();

  std::vector<FMatrix> candidates = h.basis;
  std::mt19937_64 rng(opt.seed);
  for (std::size_t t = 0; t < opt.trials; ++t) {
    FMatrix x(1, small.dim(), big.dim());
    for (const auto& b : h.basis)
      if (rng() & 1u) x += b;
    candidates.push_back(std::move(x));
  }
  std::size_t tried = 0;
  for (const auto& f : candidates) {
    ++tried;
    if (rank(f) != small.dim()) continue;
    const FMatrix ker = kernel_basis(f);
    if (ker.cols() != ind.dim()) continue;
    const auto kmod = submodule(big, ker).module;
    const auto iso = is_isomorphic(kmod, ind, {opt.seed, opt.trials, 20});
    if (!iso.isomorphic) continue;
    ShortExactSeq seq{kmod, big, small, ker, f};
    seq.validate();
    r.invariants["kernel_dim"] = ker.cols();
    r.invariants["candidates_tried"] = tried;
    r.witnesses["surjection"] = matrix_to_json(f);
    return;
  }
  r.expect(false, "no surjection A_{n+1} -> A_n with kernel Ind_<nu> k among " + std::to_string(tried) +
                      " candidates");
}

void middle_term_check(const GroupSpec& g, Nu nu, int n, const SequenceOptions& opt, CheckResult& r) {
  ModuleRep v, expected;
  if (n == 0) {
    v = trivial_module(g);
    expected = direct_sum(A_module(g, Nu::Sigma, 1).module, A_module(g, Nu::Tau, 1).module);
  } else {
    v = A_module(g, nu, n).module;
    expected = direct_sum(A_module(g, nu, n + 1).module, omega(A_module(g, nu, n - 1).module, 2));
  }
  const ModuleRep w = omega(v, 2);
  const auto e = ext1(v, w);
  r.invariants["ext_dim"] = e.dim();
  r.expect(e.dim() == 1, "Ext^1(V, Omega^2 V) has dimension " + std::to_string(e.dim()) + ", expected 1");
  const auto want = strip_free(expected).core;
  const auto classes = e.enumerate();
  bool found = false;
  for (std::size_t i = 1; i < classes.size() && !found; ++i) {
    const auto x = extension_middle(classes[i]);
    const auto core = strip_free(x.seq.middle).core;
    if (core.dim() != want.dim()) continue;
    if (is_isomorphic(core, want, {opt.seed, opt.trials, 20}).isomorphic) {
      found = true;
      r.invariants["middle_dim"] = x.seq.middle.dim();
      r.invariants["middle_core_dim"] = core.dim();
      r.witnesses["cocycle"] = matrix_to_json(classes[i].cocycle);
    }
  }
  r.expect(found, "no nonzero extension class has the expected middle term");
}

}  // namespace

CheckResult verify_sequences(const GroupSpec& g, Nu nu, int n, const SequenceOptions& opt) {
  CheckResult r;
  r.id = "sequences";
  r.inputs = {{"d", g.d()}, {"nu", to_string(nu)}, {"n", n}};
  try {
    CheckResult a;
    surjection_check(g, nu, n, opt, a);
    r.merge(a, "surjection");
    if (opt.middle_terms) {
      CheckResult b;
      middle_term_check(g, nu, n, opt, b);
      r.merge(b, "almost_split");
    }
  } catch (const Error& e) {
    r.failures.push_back(e.what());
  }
  return r;
}

}  // namespace endolift
