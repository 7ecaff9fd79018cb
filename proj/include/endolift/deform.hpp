#pragma once

// Deformations of A_{nu,n}: the self-extensions N_lambda and B_{nu,n,lambda},
// first-order lifts with their restriction fingerprints, and lifts over
// Z/2^n built one level at a time.

#include <cstdint>
#include <string>
#include <vector>

#include "endolift/chars.hpp"
#include "endolift/endotriv.hpp"
#include "endolift/modrep.hpp"
#include "endolift/report.hpp"
#include "endolift/zmod.hpp"
#include "json.hpp"

namespace endolift {

struct Lambda {
  enum class Kind { Unit, Sigma, Tau };
  Kind kind = Kind::Unit;
  GfElem value = 1;  // used for Unit
  int m = 1;         // field GF(2^m)

  static Lambda unit(GfElem v, int m = 1);
  static Lambda reflection(Nu nu, int m = 1);
  std::string to_string() const;
};

/// The 2-dimensional non-split self-extension of k attached to lambda.
ModuleRep N_lambda(const GroupSpec& g, const Lambda& l);

struct BModule {
  Lambda lambda;
  ModuleRep module;  // A_{nu,n} (x) N_lambda
  std::size_t free_rank = 0;
  ModuleRep core;
  C2Type res_sigma, res_tau;
  CheckResult check;  // against the trichotomy for this lambda
};
BModule B_module(const GroupSpec& g, Nu nu, int n, const Lambda& l);

/// Whether the restriction of 0 -> V -> E -> V -> 0 to C_sigma, C_tau is non-split.
struct Fingerprint {
  bool sigma = false;
  bool tau = false;
  bool operator==(const Fingerprint&) const = default;
  std::string to_string() const;
};
Fingerprint restriction_fingerprint(const ModuleRep& base, const ModuleRep& middle);
/// The fingerprint the trichotomy predicts for B_{nu,n,lambda}.
Fingerprint expected_fingerprint(const Lambda& l);

struct DualLift {
  ModuleRep base;
  ModuleRep underlying;  // middle term, dimension 2 dim V
  ExtClass ext_class;
  std::vector<GfElem> coords;
  Fingerprint fingerprint;
};
/// Every GF(2^m)-point of Ext^1(V, V) with its middle term; requires stable End(V) = k.
std::vector<DualLift> tangent_space(const ModuleRep& v);

/// Tangent dimension 2, fingerprint coverage, and each nonzero middle term
/// iso to B_{nu,n,lambda} for exactly one lambda in {1, sigma, tau}.
CheckResult tangent_check(const GroupSpec& g, Nu nu, int n);

/// Representation over Z/2^level with S^2 = T^2 = 1 and (ST)^M = (TS)^M.
struct LiftRep {
  int d = 3;
  int level = 1;
  ZMatrix S, T;
  ModuleRep reduction;

  static LiftRep from_module(const ModuleRep& m);
  std::size_t dim() const { return S.rows(); }
  /// Throws RelationViolation or CertificateFailure.
  void validate() const;
  LiftRep reduce(int lvl) const;
  ZMatrix element_matrix(std::size_t g) const;
  /// Traces on the class representatives, in [0, 2^level).
  std::vector<std::uint64_t> character() const;
  nlohmann::json to_json() const;
};

/// Coset-permutation lattice of D / H over Z/2^level.
LiftRep permutation_lift(const GroupSpec& g, SubgroupKind h, int level);

struct LiftStep {
  int from_level = 1;
  bool obstructed = false;
  std::string obstruction;
  std::size_t cocycle_dim = 0;
  std::size_t coboundary_dim = 0;
  std::size_t tangent_dim = 0;
  FMatrix particular;  // (vec A; vec B)
  FMatrix cocycles;    // homogeneous solutions, columns
  std::vector<LiftRep> lifts;  // one per class modulo I + 2^n C
  /// Whether `child` is S + 2^n A, T + 2^n B for a solution (A, B).
  bool contains(const LiftRep& parent, const LiftRep& child) const;
};
LiftStep lift_step(const LiftRep& l);

struct LiftRecord {
  std::string ledger_case;
  LiftRep lift;
  std::vector<std::uint64_t> character;
  bool endotrivial = false;
};

struct DeformationEvidence {
  int d = 3;
  Nu nu = Nu::Sigma;
  int n = 0;
  int level = 2;
  std::size_t tangent_dim = 0;
  nlohmann::json fingerprints = nlohmann::json::array();
  std::vector<std::size_t> lifts_per_level;
  std::vector<LiftRecord> lifts;
  nlohmann::json noniso = nlohmann::json::array();
  CheckResult check;
  nlohmann::json to_json() const;
};

/// Character and mod-2 structure of Hom(U, U) for a lift U.
bool lift_is_endotrivial(const LiftRep& l, std::string* why = nullptr);

DeformationEvidence four_lifts(const GroupSpec& g, Nu nu, int n, int level);
DeformationEvidence verify_theorem(const GroupSpec& g, Nu nu, int n, int level);

}  // namespace endolift
