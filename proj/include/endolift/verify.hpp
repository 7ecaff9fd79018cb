#pragma once

// Verification grid, report emission and the golden corpus, shared by the
// command-line tool and the acceptance runner.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "endolift/endotriv.hpp"
#include "endolift/report.hpp"
#include "json.hpp"

namespace endolift {

inline constexpr int kReportSchemaVersion = 1;

struct Config {
  int field_degree = 1;
  std::uint64_t seed = 0xD1ED2A1;
  std::size_t trials = 512;
  std::size_t exhaustive_log2 = 20;
  int d_min = 3, d_max = 4;
  int n_min = 0, n_max = 2;
  std::vector<Nu> nus{Nu::Sigma, Nu::Tau};
  int level = 3;
  std::string out_dir = "reports";
  unsigned jobs = 1;
  bool timing = false;

  /// Throws UsageError.
  void validate() const;
  /// Everything that can change a report; out_dir, jobs and timing are excluded.
  nlohmann::json to_json() const;
  std::uint64_t hash() const;
  std::string hash_hex() const;
};

enum class CheckKind {
  KdStructure,
  Lattice,
  ASeries,
  Sequences,
  Xi,
  Endotrivial,
  Extensions,
  Fingerprints,
  Lifts,
  Theorem,
  Ledger,
};

std::string to_string(CheckKind k);
/// Accepts the names printed by to_string, and "all".
std::vector<CheckKind> parse_checks(const std::string& s);
const std::vector<CheckKind>& all_checks();
/// Whether the check runs once per d rather than per (d, nu, n).
bool per_group(CheckKind k);

CheckResult run_check(CheckKind k, const Config& cfg, int d, Nu nu = Nu::Sigma, int n = 0);
/// Every cell of the grid for the given checks, sorted by id. Uses cfg.jobs threads.
std::vector<CheckResult> run_grid(const Config& cfg, const std::vector<CheckKind>& kinds);

nlohmann::json make_report(const CheckResult& r, const Config& cfg, double seconds = -1);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(const std::string& s);

/// Canonical corpus for the default grid: relative path -> file contents.
std::map<std::string, std::string> golden_files(const Config& cfg);
void write_golden(const std::string& dir, const Config& cfg);
/// Paths that differ from or are missing in `dir`; empty when clean.
std::vector<std::string> check_golden(const std::string& dir, const Config& cfg);

}  // namespace endolift
