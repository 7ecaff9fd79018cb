#include "endolift/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "endolift/chars.hpp"
#include "endolift/deform.hpp"
#include "endolift/error.hpp"

namespace endolift {

void Config::validate() const {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw UsageError(what);
  };
  need(field_degree >= 1 && field_degree <= kMaxFieldDegree, "field degree must be in 1..8");
  need(d_min >= 3, "d must be >= 3");
  need(d_max <= 8, "d must be <= 8");
  need(d_min <= d_max, "empty d range");
  need(n_min >= 0 && n_min <= n_max, "n range must satisfy 0 <= n_min <= n_max");
  need(n_max <= 8, "n must be <= 8");
  need(level >= 2 && level <= 16, "level must be in 2..16");
  need(trials >= 1, "trial budget must be positive");
  need(exhaustive_log2 <= 30, "exhaustive threshold must be <= 30");
  need(!nus.empty(), "no reflection selected");
  need(jobs >= 1, "jobs must be >= 1");
}

nlohmann::json Config::to_json() const {
  std::vector<std::string> nu_names;
  for (Nu nu : nus) nu_names.push_back(endolift::to_string(nu));
  char seed_hex[32];
  std::snprintf(seed_hex, sizeof seed_hex, "0x%llX", static_cast<unsigned long long>(seed));
  return {{"field_degree", field_degree},
          {"seed", seed_hex},
          {"trials", trials},
          {"exhaustive_log2", exhaustive_log2},
          {"d", {d_min, d_max}},
          {"n", {n_min, n_max}},
          {"nu", nu_names},
          {"level", level}};
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t Config::hash() const { return fnv1a(to_json().dump()); }

std::string Config::hash_hex() const {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

namespace {

const std::vector<std::pair<CheckKind, std::string>> kNames{
    {CheckKind::KdStructure, "kd-structure"}, {CheckKind::Lattice, "lattice"},
    {CheckKind::ASeries, "a-series"},         {CheckKind::Sequences, "sequences"},
    {CheckKind::Xi, "xi"},                    {CheckKind::Endotrivial, "endotrivial"},
    {CheckKind::Extensions, "extensions"},    {CheckKind::Fingerprints, "fingerprints"},
    {CheckKind::Lifts, "lifts"},              {CheckKind::Theorem, "theorem"},
    {CheckKind::Ledger, "ledger"},
};

}  // namespace

std::string to_string(CheckKind k) {
  for (const auto& [kind, name] : kNames)
    if (kind == k) return name;
  return "?";
}

const std::vector<CheckKind>& all_checks() {
  static const std::vector<CheckKind> all = [] {
    std::vector<CheckKind> v;
    for (const auto& p : kNames) v.push_back(p.first);
    return v;
  }();
  return all;
}

std::vector<CheckKind> parse_checks(const std::string& s) {
  if (s == "all") return all_checks();
  std::vector<CheckKind> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto it = std::find_if(kNames.begin(), kNames.end(), [&](const auto& p) { return p.second == item; });
    if (it == kNames.end()) {
      std::string known;
      for (const auto& p : kNames) known += " " + p.second;
      throw UsageError("unknown check '" + item + "'; known:" + known + " all");
    }
    out.push_back(it->first);
  }
  if (out.empty()) throw UsageError("no check selected");
  return out;
}

bool per_group(CheckKind k) { return k == CheckKind::KdStructure || k == CheckKind::Lattice; }

namespace {

nlohmann::json xi_json(const XiInvariant& x) { return {x.a1, x.a2}; }

CheckResult kd_structure(const GroupSpec& g) {
  CheckResult r;
  const ModuleRep reg = regular_module(g);
  const auto soc = socle(reg);
  const auto rad = radical(reg);
  r.invariants["soc_dim"] = soc.inclusion.cols();
  r.invariants["rad_dim"] = rad.inclusion.cols();
  r.expect(soc.inclusion.cols() == 1, "dim soc(kD) != 1");
  r.expect(rad.inclusion.cols() == g.order() - 1, "dim rad(kD) != 2^d - 1");
  const auto coords = solve(rad.inclusion, soc.inclusion);
  r.expect(coords.has_value(), "soc(kD) not inside rad(kD)");
  if (!coords) return r;
  const ModuleRep heart = quotient(rad.module, *coords).module;
  const ModuleRep es = E_module(g, Nu::Sigma), et = E_module(g, Nu::Tau);
  r.invariants["E_dims"] = {es.dim(), et.dim()};
  r.expect(es.dim() == g.order() / 2 - 1 && et.dim() == g.order() / 2 - 1, "dim E_nu != 2^(d-1) - 1");
  r.expect(is_isomorphic(heart, direct_sum(es, et)).isomorphic, "rad/soc is not E_sigma + E_tau");
  for (Nu nu : {Nu::Sigma, Nu::Tau})
    r.expect(is_isomorphic(induced_trivial(g, nu), left_ideal(g, nu).module).isomorphic,
             "Ind_<" + to_string(nu) + "> k is not kD(1+" + to_string(nu) + ")");
  return r;
}

CheckResult lattice(const GroupSpec& g) {
  CheckResult r;
  const int d = g.d();
  const auto chi = [d](int a) { return RationalCharacter::chi(d, a); };
  const auto rho = RationalCharacter::rho_total(d);
  const auto reg = decompose(g, regular_class_function(g));
  r.invariants["regular"] = reg.to_string();
  r.expect(reg == chi(1) + chi(2) + chi(3) + chi(4) + rho.scaled(2), "regular character decomposition");
  for (Nu nu : {Nu::Sigma, Nu::Tau}) {
    const int c = nu == Nu::Sigma ? 3 : 4;
    const int dd = nu == Nu::Sigma ? 4 : 3;
    const auto perm = perm_character(g, cyclic_subgroup(nu));
    const auto aug = augmentation_ideal_character(g, nu);
    r.invariants["perm_" + to_string(nu)] = perm.to_string();
    r.invariants["aug_" + to_string(nu)] = aug.to_string();
    r.expect(perm == chi(1) + chi(c) + rho, "permutation character of X_" + to_string(nu));
    r.expect(aug == chi(2) + chi(dd) + rho, "character of FD(1-" + to_string(nu) + ")");
    const auto want = perm.to_class_function(g).integer_values();
    const ModuleRep ind = induced_trivial(g, nu);
    for (int level = 2; level <= 3; ++level) {
      const auto p = permutation_lift(g, cyclic_subgroup(nu), level);
      r.expect(is_isomorphic(p.reduction, ind).isomorphic,
               "permutation lattice mod 2 at level " + std::to_string(level) + " is not Ind k");
      const auto got = p.character();
      for (std::size_t i = 0; i < want.size(); ++i)
        r.expect(got[i] == (static_cast<std::uint64_t>(want[i]) & level_mask(level)),
                 "permutation lattice trace mismatch at level " + std::to_string(level));
    }
  }
  return r;
}

CheckResult a_series(const GroupSpec& g, Nu nu, int n, const Config& cfg) {
  CheckResult r;
  const auto h = A_module(g, nu, n);
  r.invariants["dim"] = h.dim;
  r.invariants["res_C_sigma"] = {{"trivial", h.res_sigma.trivial}, {"free", h.res_sigma.free}};
  r.invariants["res_C_tau"] = {{"trivial", h.res_tau.trivial}, {"free", h.res_tau.free}};
  SequenceOptions opt{cfg.seed, cfg.trials, false};
  r.merge(verify_sequences(g, nu, n, opt), "ses");
  return r;
}

CheckResult sequences(const GroupSpec& g, Nu nu, int n, const Config& cfg) {
  return verify_sequences(g, nu, n, {cfg.seed, cfg.trials, true});
}

CheckResult xi(const GroupSpec& g, Nu nu, int n) {
  CheckResult r;
  auto want = [&](const std::string& what, const ModuleRep& m, XiInvariant x) {
    const auto got = xi_invariant(m);
    r.invariants[what] = xi_json(got);
    r.expect(got == x, "Xi(" + what + ") = " + got.to_string() + ", expected " + x.to_string());
    return got;
  };
  want("k", trivial_module(g), {0, 0});
  want("E_sigma", E_module(g, Nu::Sigma), {1, -1});
  want("E_tau", E_module(g, Nu::Tau), {-1, 1});
  const std::int64_t two_n = 2 * n;
  const auto a = A_module(g, nu, n).module;
  const auto xa = want("A", a, nu == Nu::Sigma ? XiInvariant{two_n, 0} : XiInvariant{0, two_n});
  want("Omega A", omega(a, 1), {xa.a1 + 1, xa.a2 + 1});
  return r;
}

CheckResult endotrivial(const GroupSpec& g, Nu nu, int n) {
  CheckResult r;
  const auto a = A_module(g, nu, n).module;
  const auto oa = omega(a, 1);
  const bool ea = is_endotrivial(a), eoa = is_endotrivial(oa);
  r.invariants["A"] = ea;
  r.invariants["Omega A"] = eoa;
  r.expect(ea, "A is not endotrivial");
  r.expect(eoa, "Omega A is not endotrivial");
  if (a.dim() <= 17) r.expect(is_endotrivial_by_strip(a) == ea, "strip route disagrees on A");
  const auto reg = regular_module(g);
  const auto rad = radical(reg);
  const auto heart = quotient(rad.module, *solve(rad.inclusion, socle(reg).inclusion)).module;
  r.invariants["kD"] = is_endotrivial(reg);
  r.invariants["rad(kD)"] = is_endotrivial(rad.module);
  r.invariants["rad(kD)/soc(kD)"] = is_endotrivial(heart);
  r.expect(!is_endotrivial(reg), "kD reported endotrivial");
  r.expect(!is_endotrivial(heart), "rad/soc reported endotrivial");
  // rad(kD) is Omega(k)
  r.expect(is_endotrivial(rad.module), "rad(kD) = Omega(k) reported not endotrivial");
  return r;
}

CheckResult extensions(const GroupSpec& g, Nu nu, int n, const Config& cfg) {
  CheckResult r = tangent_check(g, nu, n);
  const int m = std::max(cfg.field_degree, 2);
  // a unit outside GF(2)
  const auto b = B_module(g, nu, n, Lambda::unit(2, m));
  r.merge(b.check, "unit_over_GF(2^" + std::to_string(m) + ")");
  return r;
}

CheckResult fingerprints(const GroupSpec& g, Nu nu, int n) {
  const CheckResult t = tangent_check(g, nu, n);
  CheckResult r;
  r.witnesses = t.witnesses;
  r.invariants = t.invariants;
  for (const auto& f : t.failures)
    if (f.find("fingerprint") != std::string::npos || f.find("dimension") != std::string::npos ||
        f.find("Ext^1") != std::string::npos || f.find("nonzero") != std::string::npos)
      r.failures.push_back(f);
  if (!t.witnesses.contains("fingerprints")) r.failures.insert(r.failures.end(), t.failures.begin(), t.failures.end());
  return r;
}

}  // namespace

CheckResult run_check(CheckKind k, const Config& cfg, int d, Nu nu, int n) {
  const auto g = GroupSpec::make(d);
  CheckResult r;
  try {
    switch (k) {
      case CheckKind::KdStructure:
        r = kd_structure(g);
        break;
      case CheckKind::Lattice:
        r = lattice(g);
        break;
      case CheckKind::ASeries:
        r = a_series(g, nu, n, cfg);
        break;
      case CheckKind::Sequences:
        r = sequences(g, nu, n, cfg);
        break;
      case CheckKind::Xi:
        r = xi(g, nu, n);
        break;
      case CheckKind::Endotrivial:
        r = endotrivial(g, nu, n);
        break;
      case CheckKind::Extensions:
        r = extensions(g, nu, n, cfg);
        break;
      case CheckKind::Fingerprints:
        r = fingerprints(g, nu, n);
        break;
      case CheckKind::Lifts: {
        auto ev = four_lifts(g, nu, n, cfg.level);
        r = ev.check;
        r.witnesses["evidence"] = ev.to_json();
        r.witnesses["evidence"].erase("check");
        break;
      }
      case CheckKind::Theorem: {
        auto ev = verify_theorem(g, nu, n, cfg.level);
        r = ev.check;
        r.invariants["tangent_dim"] = ev.tangent_dim;
        r.invariants["lifts_per_level"] = ev.lifts_per_level;
        break;
      }
      case CheckKind::Ledger:
        r = ledger_check(g, nu, n);
        break;
    }
  } catch (const Error& e) {
    r.failures.push_back(e.what());
  }
  r.id = to_string(k) + ".d" + std::to_string(d);
  r.inputs = {{"d", d}};
  if (!per_group(k)) {
    r.id += "." + to_string(nu) + ".n" + std::to_string(n);
    r.inputs["nu"] = to_string(nu);
    r.inputs["n"] = n;
  }
  if (k == CheckKind::Lifts || k == CheckKind::Theorem) r.inputs["level"] = cfg.level;
  return r;
}

std::vector<CheckResult> run_grid(const Config& cfg, const std::vector<CheckKind>& kinds) {
  cfg.validate();
  struct Cell {
    CheckKind k;
    int d;
    Nu nu;
    int n;
  };
  std::vector<Cell> cells;
  for (CheckKind k : kinds)
    for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
      if (per_group(k)) {
        cells.push_back({k, d, Nu::Sigma, 0});
        continue;
      }
      for (Nu nu : cfg.nus)
        for (int n = cfg.n_min; n <= cfg.n_max; ++n) cells.push_back({k, d, nu, n});
    }
  std::vector<CheckResult> out(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
      const auto t0 = std::chrono::steady_clock::now();
      out[i] = run_check(cells[i].k, cfg, cells[i].d, cells[i].nu, cells[i].n);
      if (cfg.timing)
        out[i].invariants["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  const unsigned threads = std::min<std::size_t>(cfg.jobs, std::max<std::size_t>(cells.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::sort(out.begin(), out.end(), [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  return out;
}

nlohmann::json make_report(const CheckResult& r, const Config& cfg, double seconds) {
  nlohmann::json j = r.to_json();
  j["schema_version"] = kReportSchemaVersion;
  j["config"] = cfg.to_json();
  j["config_hash"] = cfg.hash_hex();
  if (seconds >= 0) j["seconds"] = seconds;
  return j;
}

std::map<std::string, std::string> golden_files(const Config& cfg) {
  std::map<std::string, std::string> files;
  auto put = [&](const std::string& path, const nlohmann::json& j) { files[path] = j.dump(2) + "\n"; };
  for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
    const auto g = GroupSpec::make(d);
    const std::string dd = "d" + std::to_string(d);
    put("char_table_" + dd + ".json", char_table_json(g));
    for (Nu nu : cfg.nus) {
      put("modules/E_" + dd + "_" + to_string(nu) + ".json", module_to_json(E_module(g, nu)));
      for (int n = cfg.n_min; n <= cfg.n_max; ++n)
        put("modules/A_" + dd + "_" + to_string(nu) + "_n" + std::to_string(n) + ".json",
            A_module(g, nu, n).to_json());
    }
  }
  Config quiet = cfg;
  quiet.timing = false;
  for (const auto& r : run_grid(quiet, all_checks())) put("reports/" + r.id + ".json", make_report(r, quiet));
  return files;
}

void write_golden(const std::string& dir, const Config& cfg) {
  namespace fs = std::filesystem;
  for (const auto& [path, body] : golden_files(cfg)) {
    const fs::path p = fs::path(dir) / path;
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << body;
  }
}

std::vector<std::string> check_golden(const std::string& dir, const Config& cfg) {
  namespace fs = std::filesystem;
  std::vector<std::string> bad;
  for (const auto& [path, body] : golden_files(cfg)) {
    std::ifstream in(fs::path(dir) / path, std::ios::binary);
    if (!in) {
      bad.push_back(path + " (missing)");
      continue;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    if (ss.str() != body) bad.push_back(path);
  }
  return bad;
}

}  // namespace endolift
