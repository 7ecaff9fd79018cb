#pragma once

// Endo-trivial modules of dihedral 2-groups: E_nu, the A-series, the Xi
// invariant on the two Klein four subgroups.

#include <cstdint>
#include <string>

#include "endolift/modrep.hpp"
#include "endolift/report.hpp"

namespace endolift {

enum class Nu { Sigma, Tau };

std::string to_string(Nu nu);
Nu parse_nu(const std::string& s);
Nu other(Nu nu);
SubgroupKind cyclic_subgroup(Nu nu);
std::size_t nu_element(const GroupSpec& g, Nu nu);

struct XiInvariant {
  std::int64_t a1 = 0;
  std::int64_t a2 = 0;
  bool operator==(const XiInvariant&) const = default;
  std::string to_string() const;
};

/// The left ideal kD(1 + nu) of the regular module, with its inclusion.
Submodule left_ideal(const GroupSpec& g, Nu nu, int m = 1);
/// kD(1 + nu) / soc(kD).
ModuleRep E_module(const GroupSpec& g, Nu nu, int m = 1);
/// Ind_<nu>^D k.
ModuleRep induced_trivial(const GroupSpec& g, Nu nu, int m = 1);

/// M* (x) M = k + free, decided by the free rank of End_k(M) and dimension.
bool is_endotrivial(const ModuleRep& m);
/// Same predicate by stripping End_k(M) literally and iso-testing the core
/// against k. Quadratic in dim M; used to cross-check at small scale.
bool is_endotrivial_by_strip(const ModuleRep& m);

/// Omega^a(k) over the Klein four group, memoised process-wide.
ModuleRep klein_syzygy(int a, int m = 1);
XiInvariant xi_invariant(const ModuleRep& m);

struct ASeriesHandle {
  Nu nu = Nu::Sigma;
  int n = 0;
  ModuleRep module;
  std::size_t dim = 0;
  C2Type res_sigma, res_tau;
  XiInvariant xi;
  nlohmann::json to_json() const;
};

/// A_{nu,0} = k, A_{nu,1} = Omega(E_nu), A_{nu,n} = core of A_{nu,1} (x) A_{nu,n-1}.
/// Certificates are checked on construction; a failure throws CertificateFailure.
ASeriesHandle A_module(const GroupSpec& g, Nu nu, int n);

struct SequenceOptions {
  std::uint64_t seed = 0xD1ED2A1;
  std::size_t trials = 512;
  /// Also run the almost-split middle-term check (ext enumeration).
  bool middle_terms = true;
};

/// (a) a surjection A_{nu,n+1} -> A_{nu,n} with kernel Ind_<nu> k;
/// (b) a nonzero class in Ext^1(A_{nu,n}, Omega^2 A_{nu,n}) (for n = 0, in
///     Ext^1(k, Omega^2 k)) whose middle term matches, up to free summands.
CheckResult verify_sequences(const GroupSpec& g, Nu nu, int n, const SequenceOptions& opt = {});

}  // namespace endolift
