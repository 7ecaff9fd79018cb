#include "endolift/deform.hpp"

#include <set>

#include "endolift/error.hpp"
#include "endolift/matrix_json.hpp"

namespace endolift {

Lambda Lambda::unit(GfElem v, int m) {
  if (v == 0) throw UsageError("lambda = 0 is not allowed");
  return {Kind::Unit, v, m};
}

Lambda Lambda::reflection(Nu nu, int m) { return {nu == Nu::Sigma ? Kind::Sigma : Kind::Tau, 1, m}; }

std::string Lambda::to_string() const {
  switch (kind) {
    case Kind::Sigma:
      return "sigma";
    case Kind::Tau:
      return "tau";
    default:
      return "unit:" + std::to_string(static_cast<unsigned>(value));
  }
}

ModuleRep N_lambda(const GroupSpec& g, const Lambda& l) {
  const int m = l.m;
  const FMatrix one = FMatrix::identity(m, 2);
  FMatrix uni = one;
  uni.set(0, 1, 1);
  switch (l.kind) {
    case Lambda::Kind::Sigma:
      return ModuleRep::from_action(g, uni, one);
    case Lambda::Kind::Tau:
      return ModuleRep::from_action(g, one, uni);
    default: {
      if (l.value == 0) throw UsageError("lambda = 0 is not allowed");
      FMatrix t = one;
      t.set(0, 1, l.value);
      return ModuleRep::from_action(g, uni, t);
    }
  }
}

BModule B_module(const GroupSpec& g, Nu nu, int n, const Lambda& l) {
  BModule b;
  b.lambda = l;
  b.check.id = "B_module";
  b.check.inputs = {{"d", g.d()}, {"nu", to_string(nu)}, {"n", n}, {"lambda", l.to_string()}, {"m", l.m}};
  ModuleRep a = A_module(g, nu, n).module;
  if (l.m != 1) a = extend_scalars(a, l.m);
  const ModuleRep nl = N_lambda(g, l);
  b.module = tensor(a, nl);
  auto s = strip_free(b.module);
  b.free_rank = s.free_rank;
  b.core = s.core;
  b.res_sigma = c2_type(restrict(b.module, SubgroupKind::CSigma));
  b.res_tau = c2_type(restrict(b.module, SubgroupKind::CTau));
  b.check.invariants = {{"dim", b.module.dim()},
                        {"free_rank", b.free_rank},
                        {"core_dim", b.core.dim()},
                        {"res_sigma", {b.res_sigma.trivial, b.res_sigma.free}},
                        {"res_tau", {b.res_tau.trivial, b.res_tau.free}}};
  const std::size_t un = static_cast<std::size_t>(n);
  const std::size_t half = g.order() / 2;
  const bool is_nu_prime = (l.kind == Lambda::Kind::Sigma && nu == Nu::Tau) ||
                           (l.kind == Lambda::Kind::Tau && nu == Nu::Sigma);
  try {
    if (!is_nu_prime) {
      b.check.expect(b.free_rank == un, "free rank " + std::to_string(b.free_rank) + ", expected " +
                                            std::to_string(n));
      b.check.expect(b.core.dim() == 2 && is_isomorphic(b.core, nl).isomorphic, "core is not N_lambda");
    } else {
      const C2Type on_prime{0, un * half + 1};
      const C2Type on_nu{2, un * half};
      const C2Type& rp = nu == Nu::Sigma ? b.res_tau : b.res_sigma;
      const C2Type& rn = nu == Nu::Sigma ? b.res_sigma : b.res_tau;
      b.check.expect(rp == on_prime, "restriction to <nu'> is not free of rank n 2^(d-1) + 1");
      b.check.expect(rn == on_nu, "restriction to <nu> is not k^2 + free of rank n 2^(d-1)");
      if (n == 0) b.check.expect(is_isomorphic(b.module, nl).isomorphic, "B_{nu,0,nu'} is not N_nu'");
    }
  } catch (const Error& e) {
    b.check.failures.push_back(e.what());
  }
  return b;
}

std::string Fingerprint::to_string() const {
  return std::string("(") + (sigma ? "nontrivial" : "trivial") + "," + (tau ? "nontrivial" : "trivial") + ")";
}

Fingerprint restriction_fingerprint(const ModuleRep& base, const ModuleRep& middle) {
  auto nonsplit = [&](SubgroupKind k) {
    const C2Type v = c2_type(restrict(base, k));
    const C2Type e = c2_type(restrict(middle, k));
    return !(e == C2Type{2 * v.trivial, 2 * v.free});
  };
  return {nonsplit(SubgroupKind::CSigma), nonsplit(SubgroupKind::CTau)};
}

Fingerprint expected_fingerprint(const Lambda& l) {
  switch (l.kind) {
    case Lambda::Kind::Sigma:
      return {true, false};
    case Lambda::Kind::Tau:
      return {false, true};
    default:
      return {true, true};
  }
}

std::vector<DualLift> tangent_space(const ModuleRep& v) {
  if (stable_hom_dim(v, v) != 1) throw UsageError("tangent space needs stable End(V) = k");
  const auto e = ext1(v, v);
  const auto classes = e.enumerate();
  const GfElem q = static_cast<GfElem>((1u << v.field_degree()) - 1);
  std::vector<DualLift> out;
  for (std::size_t idx = 0; idx < classes.size(); ++idx) {
    DualLift dl;
    dl.base = v;
    dl.ext_class = classes[idx];
    std::size_t r = idx;
    dl.coords.assign(e.dim(), 0);
    for (std::size_t i = e.dim(); i-- > 0;) {
      dl.coords[i] = static_cast<GfElem>(r % (q + 1u));
      r /= q + 1u;
    }
    dl.underlying = extension_middle(classes[idx]).seq.middle;
    dl.fingerprint = restriction_fingerprint(v, dl.underlying);
    out.push_back(std::move(dl));
  }
  return out;
}

namespace {

bool same_up_to_free(const StripResult& a, const StripResult& b) {
  return a.free_rank == b.free_rank && a.core.dim() == b.core.dim() && is_isomorphic(a.core, b.core).isomorphic;
}

}  // namespace

CheckResult tangent_check(const GroupSpec& g, Nu nu, int n) {
  CheckResult r;
  r.id = "tangent";
  r.inputs = {{"d", g.d()}, {"nu", to_string(nu)}, {"n", n}};
  try {
    const ModuleRep a = A_module(g, nu, n).module;
    const auto t = tangent_space(a);
    std::size_t dim = 0;
    while ((std::size_t{1} << dim) < t.size()) ++dim;
    r.invariants["tangent_dim"] = dim;
    r.expect(dim == 2, "dim Ext^1(A, A) = " + std::to_string(dim) + ", expected 2");

    const std::vector<Lambda> lambdas{Lambda::unit(1), Lambda::reflection(Nu::Sigma), Lambda::reflection(Nu::Tau)};
    std::vector<BModule> bs;
    std::vector<StripResult> bstrip;
    for (const auto& l : lambdas) {
      bs.push_back(B_module(g, nu, n, l));
      r.merge(bs.back().check, "B_" + l.to_string());
      bstrip.push_back({bs.back().core, bs.back().free_rank, {}});
    }
    std::set<std::pair<bool, bool>> covered;
    nlohmann::json fp = nlohmann::json::array();
    for (const auto& x : t) {
      nlohmann::json row = {{"coords", x.coords}, {"fingerprint", x.fingerprint.to_string()}};
      const bool zero = x.ext_class.is_zero();
      if (zero) {
        r.expect(!x.fingerprint.sigma && !x.fingerprint.tau, "zero class has a nontrivial fingerprint");
        row["lambda"] = "split";
        fp.push_back(row);
        continue;
      }
      covered.insert({x.fingerprint.sigma, x.fingerprint.tau});
      const auto s = strip_free(x.underlying);
      std::vector<std::string> hits;
      for (std::size_t i = 0; i < lambdas.size(); ++i)
        if (same_up_to_free(s, bstrip[i])) {
          hits.push_back(lambdas[i].to_string());
          r.expect(x.fingerprint == expected_fingerprint(lambdas[i]),
                   "fingerprint " + x.fingerprint.to_string() + " does not match lambda " + lambdas[i].to_string());
        }
      r.expect(hits.size() == 1, "middle term matches " + std::to_string(hits.size()) + " of the B modules");
      row["lambda"] = hits.empty() ? "none" : hits.front();
      fp.push_back(row);
    }
    r.witnesses["fingerprints"] = fp;
    r.expect(covered == std::set<std::pair<bool, bool>>{{true, true}, {true, false}, {false, true}},
             "nonzero fingerprints do not cover the three nonzero pairs");
    r.expect(t.size() == 4 && covered.size() == 3, "expected one nonzero class per nonzero pair");
  } catch (const Error& e) {
    r.failures.push_back(e.what());
  }
  return r;
}

LiftRep LiftRep::from_module(const ModuleRep& m) {
  if (m.dihedral_d() == 0 || m.field_degree() != 1) throw UsageError("lifts need a dihedral module over GF(2)");
  return {m.dihedral_d(), 1, ZMatrix::lift(m.S(), 1), ZMatrix::lift(m.T(), 1), m};
}

void LiftRep::validate() const {
  const auto g = GroupSpec::make(d);
  if (S.level() != level || T.level() != level) throw CertificateFailure("lift matrices at the wrong level");
  if (S.rows() != reduction.dim() || S.cols() != S.rows() || T.rows() != S.rows() || T.cols() != S.rows())
    throw DimensionMismatch("lift matrix shape");
  const ZMatrix id = ZMatrix::identity(level, dim());
  if (!(S * S == id)) throw RelationViolation("relation sigma^2 fails at level " + std::to_string(level));
  if (!(T * T == id)) throw RelationViolation("relation tau^2 fails at level " + std::to_string(level));
  if (!((S * T).pow(g.braid_exponent()) == (T * S).pow(g.braid_exponent())))
    throw RelationViolation("braid relation fails at level " + std::to_string(level));
  if (!(S.mod2() == reduction.S()) || !(T.mod2() == reduction.T()))
    throw CertificateFailure("lift does not reduce to the stored module");
}

LiftRep LiftRep::reduce(int lvl) const {
  if (lvl < 1 || lvl > level) throw UsageError("bad reduction level");
  return {d, lvl, S.reduce(lvl), T.reduce(lvl), reduction};
}

ZMatrix LiftRep::element_matrix(std::size_t x) const {
  const auto g = GroupSpec::make(d);
  ZMatrix m = ZMatrix::identity(level, dim());
  for (auto w : g.word(g.element(x))) m = m * (w == 0 ? S : T);
  return m;
}

std::vector<std::uint64_t> LiftRep::character() const {
  std::vector<std::uint64_t> out;
  for (const auto& c : conjugacy_classes(GroupSpec::make(d))) out.push_back(element_matrix(c.representative).trace());
  return out;
}

nlohmann::json LiftRep::to_json() const {
  return {{"level", level}, {"S", matrix_to_json(S)}, {"T", matrix_to_json(T)}, {"character", character()}};
}

LiftRep permutation_lift(const GroupSpec& g, SubgroupKind h, int level) {
  const auto& sub = g.subgroup(h);
  const auto& fin = *g.fin();
  const std::set<std::size_t> members(sub.elements.begin(), sub.elements.end());
  const auto& reps = sub.coset_reps;
  auto coset_of = [&](std::size_t x) {
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (members.count(fin.mul(fin.inverse(reps[i]), x))) return i;
    throw CertificateFailure("element lies in no coset");
  };
  auto perm = [&](std::size_t gen) {
    ZMatrix p(level, reps.size(), reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) p.set(coset_of(fin.mul(gen, reps[i])), i, 1);
    return p;
  };
  const ZMatrix s = perm(fin.generators()[0]);
  const ZMatrix t = perm(fin.generators()[1]);
  LiftRep l{g.d(), level, s, t, ModuleRep::from_action(g, s.mod2(), t.mod2())};
  l.validate();
  return l;
}

namespace {

FMatrix stack(const FMatrix& a, const FMatrix& b) { return vcat(vectorize(a), vectorize(b)); }

}  // namespace

LiftStep lift_step(const LiftRep& l) {
  l.validate();
  const auto g = GroupSpec::make(l.d);
  const int n = l.level;
  const int n1 = n + 1;
  const std::size_t D = l.dim();
  const std::size_t M = g.braid_exponent();
  const ZMatrix S = l.S.widen(n1), T = l.T.widen(n1);
  const ZMatrix id = ZMatrix::identity(n1, D);
  const FMatrix e1 = (S * S - id).divide_pow2_mod2(n);
  const FMatrix e2 = (T * T - id).divide_pow2_mod2(n);
  const FMatrix e3 = ((S * T).pow(M) - (T * S).pow(M)).divide_pow2_mod2(n);
  const FMatrix rhs = vcat(vcat(vectorize(e1), vectorize(e2)), vectorize(e3));

  const FMatrix& s0 = l.reduction.S();
  const FMatrix& t0 = l.reduction.T();
  const FMatrix p0 = s0 * t0, q0 = t0 * s0;
  std::vector<FMatrix> pp{FMatrix::identity(1, D)}, qq{FMatrix::identity(1, D)};
  for (std::size_t k = 1; k < M; ++k) {
    pp.push_back(pp.back() * p0);
    qq.push_back(qq.back() * q0);
  }
  auto linear = [&](const FMatrix& a, const FMatrix& b) {
    const FMatrix x = a * t0 + s0 * b;
    const FMatrix y = b * s0 + t0 * a;
    FMatrix braid(1, D, D);
    for (std::size_t k = 0; k < M; ++k) braid += pp[k] * x * pp[M - 1 - k] + qq[k] * y * qq[M - 1 - k];
    return vcat(stack(s0 * a + a * s0, t0 * b + b * t0), vectorize(braid));
  };

  const std::size_t nv = D * D;
  FMatrix sys(1, 3 * nv, 2 * nv);
  const FMatrix zero(1, D, D);
  for (std::size_t u = 0; u < 2 * nv; ++u) {
    FMatrix e(1, D, D);
    e.set((u % nv) % D, (u % nv) / D, 1);
    const FMatrix col = u < nv ? linear(e, zero) : linear(zero, e);
    sys.set_block(0, u, col);
  }
  FMatrix cob(1, 2 * nv, nv);
  for (std::size_t u = 0; u < nv; ++u) {
    FMatrix c(1, D, D);
    c.set(u % D, u / D, 1);
    cob.set_block(0, u, stack(c * s0 + s0 * c, c * t0 + t0 * c));
  }
  const FMatrix cob_basis = column_space_basis(cob);

  LiftStep st;
  st.from_level = n;
  st.coboundary_dim = cob_basis.cols();
  const auto sol = solve_linear(sys, rhs);
  if (!sol) {
    st.obstructed = true;
    st.obstruction = "level " + std::to_string(n) + " -> " + std::to_string(n1) + ": rank " +
                     std::to_string(rank(sys)) + " system, obstruction vector of weight " +
                     std::to_string(rank(hcat(sys, rhs)) - rank(sys)) + " outside the image";
    return st;
  }
  st.particular = sol->particular;
  st.cocycles = sol->kernel;
  st.cocycle_dim = sol->kernel.cols();
  if (rank(hcat(st.cocycles, cob_basis)) != st.cocycle_dim)
    throw CertificateFailure("coboundaries are not cocycles");
  const auto indep = independent_columns(hcat(cob_basis, st.cocycles));
  std::vector<FMatrix> reps;
  for (auto i : indep)
    if (i >= cob_basis.cols()) reps.push_back(st.cocycles.column(i - cob_basis.cols()));
  st.tangent_dim = reps.size();
  const std::uint64_t scale = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << reps.size()); ++mask) {
    FMatrix x = st.particular;
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (mask >> i & 1u) x += reps[i];
    const FMatrix a = unvectorize(x.block(0, 0, nv, 1), D, D);
    const FMatrix b = unvectorize(x.block(nv, 0, nv, 1), D, D);
    LiftRep child{l.d, n1, S + ZMatrix::lift(a, n1).scaled(scale), T + ZMatrix::lift(b, n1).scaled(scale),
                  l.reduction};
    child.validate();
    st.lifts.push_back(std::move(child));
  }
  return st;
}

bool LiftStep::contains(const LiftRep& parent, const LiftRep& child) const {
  if (obstructed || child.level != from_level + 1 || parent.level != from_level) return false;
  const int n1 = child.level;
  const ZMatrix da = child.S - parent.S.widen(n1);
  const ZMatrix db = child.T - parent.T.widen(n1);
  if (!(da.reduce(from_level).is_zero()) || !(db.reduce(from_level).is_zero())) return false;
  const FMatrix x = stack(da.divide_pow2_mod2(from_level), db.divide_pow2_mod2(from_level)) + particular;
  if (x.is_zero()) return true;
  return cocycles.cols() > 0 && solve(cocycles, x).has_value();
}

bool lift_is_endotrivial(const LiftRep& l, std::string* why) {
  const auto g = GroupSpec::make(l.d);
  const auto classes = conjugacy_classes(g);
  const std::uint64_t mask = level_mask(l.level);
  const std::uint64_t dim = l.dim();
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  // character of U* (x) U at g is tr(g^-1) tr(g)
  for (const auto& c : classes) {
    const std::uint64_t v = (l.element_matrix(g.fin()->inverse(c.representative)).trace() *
                             l.element_matrix(c.representative).trace()) & mask;
    if (c.representative == 0) {
      if ((dim * dim - 1) % g.order() != 0) return fail("dim^2 - 1 is not a multiple of |D|");
      if (v != ((dim * dim) & mask)) return fail("degree mismatch");
    } else if (v != 1) {
      return fail("End character on class " + c.label + " is " + std::to_string(v) + ", not 1 mod 2^level");
    }
  }
  if (!is_endotrivial_by_strip(l.reduction)) return fail("reduction mod 2 does not strip to k");
  return true;
}

nlohmann::json DeformationEvidence::to_json() const {
  nlohmann::json ls = nlohmann::json::array();
  nlohmann::json endo = nlohmann::json::array();
  for (const auto& x : lifts) {
    ls.push_back({{"case", x.ledger_case}, {"level", x.lift.level}, {"characters", x.character},
                  {"matrices", {{"S", matrix_to_json(x.lift.S)}, {"T", matrix_to_json(x.lift.T)}}}});
    endo.push_back(x.endotrivial);
  }
  return {{"target", {{"d", d}, {"nu", to_string(nu)}, {"n", n}, {"level", level}}},
          {"tangent_dim", tangent_dim},
          {"fingerprints", fingerprints},
          {"lifts_per_level", lifts_per_level},
          {"lifts", ls},
          {"pairwise_noniso", noniso},
          {"endotrivial_lift", endo},
          {"check", check.to_json()}};
}

DeformationEvidence four_lifts(const GroupSpec& g, Nu nu, int n, int level) {
  if (level < 2) throw UsageError("four_lifts needs level >= 2");
  DeformationEvidence ev;
  ev.d = g.d();
  ev.nu = nu;
  ev.n = n;
  ev.level = level;
  ev.check.id = "four_lifts";
  ev.check.inputs = {{"d", g.d()}, {"nu", to_string(nu)}, {"n", n}, {"level", level}};
  try {
    std::vector<LiftRep> frontier{LiftRep::from_module(A_module(g, nu, n).module)};
    ev.lifts_per_level.push_back(1);
    std::vector<std::string> obstructions;
    for (int lv = 1; lv < level; ++lv) {
      std::vector<LiftRep> next;
      for (const auto& l : frontier) {
        auto st = lift_step(l);
        if (st.obstructed) {
          obstructions.push_back(st.obstruction);
          continue;
        }
        ev.check.expect(st.tangent_dim == 2, "level " + std::to_string(lv) + " step has " +
                                                 std::to_string(st.tangent_dim) + " free directions");
        for (auto& c : st.lifts) next.push_back(std::move(c));
      }
      frontier = std::move(next);
      ev.lifts_per_level.push_back(frontier.size());
    }
    ev.check.witnesses["obstructions"] = obstructions;

    const std::uint64_t mask = level_mask(level);
    const auto L = ledger(g, nu, n);
    std::vector<std::vector<std::uint64_t>> chars;
    for (const auto& l : frontier) chars.push_back(l.character());
    for (const auto& e : L.entries) {
      std::vector<std::uint64_t> want;
      for (auto v : e.character.to_class_function(g).integer_values()) want.push_back(static_cast<std::uint64_t>(v) & mask);
      bool found = false;
      for (std::size_t i = 0; i < frontier.size() && !found; ++i)
        if (chars[i] == want) {
          LiftRecord rec{e.label, frontier[i], chars[i], false};
          std::string why;
          rec.endotrivial = lift_is_endotrivial(rec.lift, &why);
          ev.check.expect(rec.endotrivial, e.label + ": lift is not endotrivial: " + why);
          ev.lifts.push_back(std::move(rec));
          found = true;
        }
      ev.check.expect(found, "no lift at level " + std::to_string(level) + " has the character of " + e.label +
                                 " (" + e.character.to_string() + ")");
    }
    const auto classes = conjugacy_classes(g);
    for (std::size_t i = 0; i < ev.lifts.size(); ++i)
      for (std::size_t j = 0; j < i; ++j) {
        const auto& a = ev.lifts[i].character;
        const auto& b = ev.lifts[j].character;
        std::size_t c = 0;
        while (c < a.size() && a[c] == b[c]) ++c;
        ev.check.expect(c < a.size(), ev.lifts[i].ledger_case + " and " + ev.lifts[j].ledger_case +
                                          " have equal characters");
        if (c < a.size())
          ev.noniso.push_back({{"pair", {ev.lifts[j].ledger_case, ev.lifts[i].ledger_case}},
                               {"class", classes[c].label},
                               {"traces", {b[c], a[c]}}});
      }
  } catch (const Error& e) {
    ev.check.failures.push_back(e.what());
  }
  return ev;
}

DeformationEvidence verify_theorem(const GroupSpec& g, Nu nu, int n, int level) {
  DeformationEvidence ev = four_lifts(g, nu, n, level);
  CheckResult lifts = ev.check;
  ev.check = CheckResult{};
  ev.check.id = "theorem";
  ev.check.inputs = lifts.inputs;
  const CheckResult t = tangent_check(g, nu, n);
  if (t.invariants.contains("tangent_dim")) ev.tangent_dim = t.invariants["tangent_dim"].get<std::size_t>();
  if (t.witnesses.contains("fingerprints")) ev.fingerprints = t.witnesses["fingerprints"];
  ev.check.merge(t, "tangent");
  ev.check.merge(lifts, "lifts");
  ev.check.expect(ev.lifts.size() == 4, "found " + std::to_string(ev.lifts.size()) + " of four lifts");
  return ev;
}

}  // namespace endolift
