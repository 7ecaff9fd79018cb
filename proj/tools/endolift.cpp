#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "endolift/chars.hpp"
#include "endolift/error.hpp"
#include "endolift/verify.hpp"
#include "json.hpp"

using namespace endolift;
using nlohmann::json;

namespace {

constexpr int kExitFail = 2;
constexpr int kExitUsage = 1;

// "4" or "3..5"
std::pair<int, int> parse_range(const std::string& s, const char* what) {
  try {
    const auto dots = s.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {v, v};
    }
    const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    std::size_t ua = 0, ub = 0;
    const int lo = std::stoi(a, &ua), hi = std::stoi(b, &ub);
    if (ua != a.size() || ub != b.size()) throw std::invalid_argument(s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError(std::string("bad ") + what + " '" + s + "'; expected N or A..B");
  }
}

std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used, 0);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("bad seed '" + s + "'");
  }
}

struct CommonFlags {
  std::string d, n, nu = "both", seed;
  int level = 3;
  int m = 1;
  std::size_t trials = 512;
  unsigned jobs = 1;
  bool json = false, timing = false;
  std::string out = "reports";
};

Config make_config(const CommonFlags& f) {
  Config cfg;
  if (const char* env = std::getenv("ENDOLIFT_SEED"); env && *env) cfg.seed = parse_seed(env);
  if (!f.seed.empty()) cfg.seed = parse_seed(f.seed);
  if (!f.d.empty()) std::tie(cfg.d_min, cfg.d_max) = parse_range(f.d, "d");
  if (!f.n.empty()) std::tie(cfg.n_min, cfg.n_max) = parse_range(f.n, "n");
  if (f.nu == "both")
    cfg.nus = {Nu::Sigma, Nu::Tau};
  else
    cfg.nus = {parse_nu(f.nu)};
  cfg.level = f.level;
  cfg.field_degree = f.m;
  cfg.trials = f.trials;
  cfg.jobs = f.jobs;
  cfg.timing = f.timing;
  cfg.out_dir = f.out;
  cfg.validate();
  return cfg;
}

void write_file(const std::filesystem::path& p, const std::string& body) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << body;
}

int cmd_verify(const CommonFlags& f, const std::string& checks) {
  const Config cfg = make_config(f);
  const auto kinds = parse_checks(checks);
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = run_grid(cfg, kinds);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = true;
  json all = json::array();
  for (const auto& r : results) {
    ok = ok && r.pass();
    const json rep = make_report(r, cfg);
    write_file(std::filesystem::path(cfg.out_dir) / (r.id + ".json"), rep.dump(2) + "\n");
    if (f.json) {
      all.push_back(rep);
    } else {
      std::cout << (r.pass() ? "PASS " : "FAIL ") << r.id << "\n";
      for (const auto& why : r.failures) std::cout << "  " << why << "\n";
    }
  }
  if (f.json) {
    json out{{"schema_version", kReportSchemaVersion}, {"pass", ok}, {"config", cfg.to_json()},
             {"config_hash", cfg.hash_hex()}, {"reports", all}};
    if (cfg.timing) out["seconds"] = secs;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << results.size() << " checks, " << (ok ? "all passed" : "failures present");
    if (cfg.timing) std::cout << ", " << secs << " s";
    std::cout << "\n";
  }
  return ok ? 0 : kExitFail;
}

std::string c2_text(const C2Type& t) {
  return "k^" + std::to_string(t.trivial) + " + (kC)^" + std::to_string(t.free);
}

ModuleRep load_module(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path + ": malformed JSON: " + e.what());
  }
  try {
    return module_from_json(j);
  } catch (const json::exception& e) {
    throw UsageError(path + ": not a module file: " + e.what());
  } catch (const RelationViolation&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(path + ": not a module file: " + e.what());
  }
}

int cmd_inspect(const std::string& what, const std::string& file, const CommonFlags& f) {
  ModuleRep m;
  std::string label;
  if (!file.empty()) {
    m = load_module(file);
    if (m.dihedral_d() < 3) throw UsageError(file + ": not a module over a dihedral 2-group");
    label = file;
  } else {
    const int d = f.d.empty() ? 3 : parse_range(f.d, "d").first;
    if (!f.d.empty() && parse_range(f.d, "d").second != d) throw UsageError("inspect takes a single d");
    if (d < 3 || d > 8) throw UsageError("d must be in 3..8");
    const auto g = GroupSpec::make(d);
    const Nu nu = f.nu == "both" ? Nu::Sigma : parse_nu(f.nu);
    const int n = f.n.empty() ? 1 : parse_range(f.n, "n").first;
    if (what == "A") {
      if (n < 0 || n > 8) throw UsageError("n must be in 0..8");
      m = A_module(g, nu, n).module;
      label = "A_{" + to_string(nu) + "," + std::to_string(n) + "}";
    } else if (what == "E") {
      m = E_module(g, nu, f.m);
      label = "E_" + to_string(nu);
    } else if (what == "k") {
      m = trivial_module(g, f.m);
      label = "k";
    } else if (what == "kD") {
      m = regular_module(g, f.m);
      label = "kD";
    } else if (what == "Ind") {
      m = induced_trivial(g, nu, f.m);
      label = "Ind_<" + to_string(nu) + "> k";
    } else {
      throw UsageError("unknown constructor '" + what + "'; expected A, E, k, kD, Ind or --file");
    }
  }
  const bool et = is_endotrivial(m);
  const auto rs = c2_type(restrict(m, SubgroupKind::CSigma));
  const auto rt = c2_type(restrict(m, SubgroupKind::CTau));
  const std::size_t fr = free_rank(m);
  const std::size_t stable_end = stable_hom_dim(m, m);
  std::optional<XiInvariant> xi;
  if (et) xi = xi_invariant(m);
  if (f.json) {
    json j{{"module", label},
           {"d", m.dihedral_d()},
           {"field_degree", m.field_degree()},
           {"dim", m.dim()},
           {"free_rank", fr},
           {"stable_end_dim", stable_end},
           {"res_C_sigma", {{"trivial", rs.trivial}, {"free", rs.free}}},
           {"res_C_tau", {{"trivial", rt.trivial}, {"free", rt.free}}},
           {"endotrivial", et}};
    if (xi) j["xi"] = {xi->a1, xi->a2};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << label << " over D_" << (std::size_t{1} << m.dihedral_d()) << "\n"
              << "dim: " << m.dim() << "\n"
              << "free_rank: " << fr << "\n"
              << "stable_end_dim: " << stable_end << "\n"
              << "res_C_sigma: " << c2_text(rs) << "\n"
              << "res_C_tau: " << c2_text(rt) << "\n"
              << "endotrivial: " << (et ? "true" : "false") << "\n";
    if (xi) std::cout << "xi: " << xi->to_string() << "\n";
  }
  return 0;
}

int cmd_char_table(const CommonFlags& f) {
  const auto [d, d2] = f.d.empty() ? std::pair{3, 3} : parse_range(f.d, "d");
  if (d != d2) throw UsageError("char-table takes a single d");
  if (d < 3 || d > 8) throw UsageError("d must be in 3..8");
  const auto g = GroupSpec::make(d);
  const json t = char_table_json(g);
  if (f.json) {
    std::cout << t.dump(2) << "\n";
    return 0;
  }
  std::cout << "classes:";
  for (const auto& c : t["classes"]) std::cout << "  " << c["label"].get<std::string>() << "(" << c["size"] << ")";
  std::cout << "\n";
  for (const auto& row : t["characters"]) {
    std::cout << row["name"].get<std::string>() << ":";
    for (const auto& v : row["values"]) std::cout << "  " << (v.is_string() ? v.get<std::string>() : v.dump());
    std::cout << "\n";
  }
  return 0;
}

int cmd_golden(const std::string& dir, bool check, const CommonFlags& f) {
  Config cfg;
  if (const char* env = std::getenv("ENDOLIFT_SEED"); env && *env) cfg.seed = parse_seed(env);
  if (!f.seed.empty()) cfg.seed = parse_seed(f.seed);
  cfg.jobs = f.jobs;
  cfg.validate();
  if (!check) {
    write_golden(dir, cfg);
    std::cout << "wrote " << golden_files(cfg).size() << " files to " << dir << "\n";
    return 0;
  }
  const auto bad = check_golden(dir, cfg);
  for (const auto& p : bad) std::cout << "MISMATCH " << p << "\n";
  if (bad.empty()) std::cout << "golden corpus clean\n";
  return bad.empty() ? 0 : kExitFail;
}

void add_grid_flags(CLI::App* c, CommonFlags& f) {
  c->add_option("--d", f.d, "group exponent: N or A..B (|D| = 2^d, d >= 3)");
  c->add_option("--n", f.n, "A-series index: N or A..B");
  c->add_option("--nu", f.nu, "sigma, tau or both");
  c->add_option("--level", f.level, "lift level: work over Z/2^level");
  c->add_option("--m", f.m, "field degree: GF(2^m)");
  c->add_option("--seed", f.seed, "RNG seed (decimal or 0x hex); ENDOLIFT_SEED also works");
  c->add_option("--trials", f.trials, "randomised iso-test budget");
  c->add_option("--jobs", f.jobs, "worker threads");
  c->add_flag("--json", f.json, "machine-readable output");
  c->add_flag("--timing", f.timing, "include wall-clock times in reports");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"endolift: endo-trivial modules of dihedral 2-groups in characteristic 2"};
  app.require_subcommand(1);

  CommonFlags vf, inf, cf, gf;
  std::string checks = "all";
  auto* verify = app.add_subcommand("verify", "run verification checks over a grid");
  add_grid_flags(verify, vf);
  verify->add_option("--check,--lemma", checks, "comma list of checks, or all");
  verify->add_option("--out", vf.out, "report directory");

  std::string what, file;
  auto* inspect = app.add_subcommand("inspect", "describe a module");
  inspect->add_option("what", what, "A, E, k, kD or Ind");
  inspect->add_option("--file", file, "module JSON file");
  add_grid_flags(inspect, inf);

  auto* table = app.add_subcommand("char-table", "character table of D_{2^d}");
  add_grid_flags(table, cf);

  std::string gdir = "golden";
  bool gcheck = false;
  auto* golden = app.add_subcommand("golden", "regenerate or diff the golden corpus");
  golden->add_option("--out,--dir", gdir, "corpus directory");
  golden->add_flag("--check", gcheck, "diff instead of writing");
  golden->add_option("--seed", gf.seed, "RNG seed");
  golden->add_option("--jobs", gf.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(vf, checks);
    if (*inspect) {
      if (what.empty() && file.empty()) throw UsageError("inspect needs a constructor or --file");
      return cmd_inspect(what, file, inf);
    }
    if (*table) return cmd_char_table(cf);
    if (*golden) return cmd_golden(gdir, gcheck, gf);
  } catch (const UsageError& e) {
    std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return kExitUsage;
  } catch (const RelationViolation& e) {
    std::cerr << json{{"error", "relation_violation"}, {"message", e.what()}}.dump() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << json{{"error", "failure"}, {"message", e.what()}}.dump() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
