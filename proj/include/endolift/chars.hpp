#pragma once

// Ordinary characters of D over the 2-adic fraction field: the irreducible
// table, the Galois-orbit sums rho_l, permutation characters, and the four
// target characters for lifts of A_{nu,n}.

#include <cstdint>
#include <string>
#include <vector>

#include "endolift/cycint.hpp"
#include "endolift/endotriv.hpp"
#include "endolift/group.hpp"
#include "endolift/report.hpp"
#include "json.hpp"

namespace endolift {

/// Values on the classes of conjugacy_classes(g), in that order.
struct ClassFunction {
  int d = 3;
  std::string name;
  std::vector<CycInt> values;

  ClassFunction operator+(const ClassFunction& o) const;
  ClassFunction operator-(const ClassFunction& o) const;
  ClassFunction scaled(std::int64_t s) const;
  bool operator==(const ClassFunction& o) const { return d == o.d && values == o.values; }

  bool is_rational() const;
  /// Integer values; throws CertificateFailure if some value is irrational.
  std::vector<std::int64_t> integer_values() const;
};

/// chi_1..chi_4, then chi_{5,i} for 1 <= i < 2^(d-2).
std::vector<ClassFunction> char_table(const GroupSpec& g);
std::vector<std::size_t> class_sizes(const GroupSpec& g);
/// sum_u chi_{5, 2^(d-3-l)(2u-1)}, 1 <= u <= 2^l.
ClassFunction rho(const GroupSpec& g, int l);

/// <a, b> = |G|^-1 sum_g a(g) conj(b(g)); throws if the result is not an integer.
std::int64_t inner_product(const GroupSpec& g, const ClassFunction& a, const ClassFunction& b);

/// Multiplicities of chi_1, chi_2, chi_3, chi_4, rho_0, ..., rho_{d-3}.
struct RationalCharacter {
  int d = 3;
  std::vector<std::int64_t> mult;

  static RationalCharacter zero(int d);
  static RationalCharacter chi(int d, int a);  // a in 1..4
  static RationalCharacter rho(int d, int l);
  static RationalCharacter rho_total(int d);

  RationalCharacter operator+(const RationalCharacter& o) const;
  RationalCharacter scaled(std::int64_t s) const;
  bool operator==(const RationalCharacter& o) const = default;

  std::int64_t degree() const;
  ClassFunction to_class_function(const GroupSpec& g) const;
  std::string to_string() const;
  nlohmann::json to_json() const;
};

/// Rational decomposition; throws CertificateFailure on a non-integral or
/// Galois-incompatible multiplicity.
RationalCharacter decompose(const GroupSpec& g, const ClassFunction& f);

/// sum mult_x * mult_y * w, w = 1 on chi_a and 2^l on rho_l.
std::int64_t hom_dim_F(const RationalCharacter& x, const RationalCharacter& y);

/// Fixed points of g on the left cosets of H.
ClassFunction permutation_class_function(const GroupSpec& g, SubgroupKind h);
RationalCharacter perm_character(const GroupSpec& g, SubgroupKind h);
ClassFunction regular_class_function(const GroupSpec& g);
/// Character of FD(1 - nu) = regular - permutation on cosets of <nu>.
RationalCharacter augmentation_ideal_character(const GroupSpec& g, Nu nu);

struct LedgerEntry {
  std::string label;  // "i", "ii", "i'", "ii'" plus the leading constituent
  RationalCharacter character;
  /// The lift of Ind_<nu> k paired with this entry in the induction step.
  RationalCharacter ind_partner;
};

struct CharacterLedger {
  Nu nu = Nu::Sigma;
  int n = 0;
  std::vector<LedgerEntry> entries;
  nlohmann::json to_json() const;
};

CharacterLedger ledger(const GroupSpec& g, Nu nu, int n);

/// Degrees, distinctness, the F-dimension count n 2^(d-2) against
/// dim_k Hom_kD(A_{nu,n}, Ind_<nu> k) - 1, and dim Ext^1(A_{nu,n}, Ind) = 1.
CheckResult ledger_check(const GroupSpec& g, Nu nu, int n);

nlohmann::json char_table_json(const GroupSpec& g);

}  // namespace endolift
