#pragma once

// Finite 2-groups given by multiplication tables, and the dihedral group
// D = <sigma, tau | sigma^2 = tau^2 = 1, (sigma tau)^(2^(d-2)) = (tau sigma)^(2^(d-2))>
// of order 2^d with its distinguished subgroups.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace endolift {

/// A word in the generators, read left to right as a product.
using Word = std::vector<std::size_t>;

/// word_lhs^pow_lhs == word_rhs^pow_rhs (an empty word is the identity).
struct Relation {
  std::string name;
  Word lhs;
  std::uint64_t lhs_pow = 1;
  Word rhs;
  std::uint64_t rhs_pow = 1;
};

/// One factor (1 + g^(2^log2_pow)) of the norm element, g given as a word.
struct NormFactor {
  Word word;
  unsigned log2_pow = 0;
};

/// Immutable description of a finite 2-group. Element 0 is the identity.
/// Every generator is an involution; modules are given by one matrix per
/// generator.
class FinGroup {
 public:
  struct Step {
    std::size_t element;
    std::size_t generator;  // position in generators()
    std::size_t from;       // element = generators()[generator] * from
  };

  FinGroup(std::string name, std::vector<std::vector<std::size_t>> table,
           std::vector<std::size_t> generators, std::vector<Relation> relations,
           std::vector<NormFactor> norm_factors);

  const std::string& name() const { return name_; }
  std::size_t order() const { return table_.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const std::vector<std::size_t>& generators() const { return generators_; }
  const std::vector<Relation>& relations() const { return relations_; }
  const std::vector<NormFactor>& norm_factors() const { return norm_factors_; }
  /// Breadth-first construction of every non-identity element from the
  /// identity by left multiplication with generators.
  const std::vector<Step>& spanning_steps() const { return steps_; }
  std::size_t evaluate(const Word& w) const;

 private:
  std::string name_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> generators_;
  std::vector<Relation> relations_;
  std::vector<NormFactor> norm_factors_;
  std::vector<Step> steps_;
};

using GroupPtr = std::shared_ptr<const FinGroup>;

/// Cyclic group of order 2 on one generator.
GroupPtr cyclic2_group();
/// Klein four group on generators a, b; element index x + 2y for a^x b^y.
GroupPtr klein4_group();

/// r^j sigma^s with r = sigma tau.
struct GroupElem {
  std::uint64_t j = 0;
  unsigned s = 0;
  bool operator==(const GroupElem&) const = default;
};

enum class SubgroupKind { CSigma, CTau, Center, K1, K2, Whole };

std::string to_string(SubgroupKind k);
SubgroupKind parse_subgroup(const std::string& s);

class GroupSpec;

struct SubgroupSpec {
  SubgroupKind kind;
  /// Abstract group the subgroup is isomorphic to, with generator images below.
  GroupPtr abstract;
  /// D-element index of each abstract generator.
  std::vector<std::size_t> generator_images;
  /// D-element index for every abstract element index.
  std::vector<std::size_t> embedding;
  /// Sorted D-element indices of the subgroup.
  std::vector<std::size_t> elements;
  /// One representative per left coset gH: the least element index, sorted.
  std::vector<std::size_t> coset_reps;
};

/// Dihedral group of order 2^d. Element index is 2j + s for r^j sigma^s.
class GroupSpec {
 public:
  static GroupSpec make(int d);

  int d() const { return d_; }
  std::size_t order() const { return std::size_t{1} << d_; }
  std::uint64_t rotation_order() const { return std::uint64_t{1} << (d_ - 1); }
  /// 2^(d-2): the exponent in the braid relation.
  std::uint64_t braid_exponent() const { return std::uint64_t{1} << (d_ - 2); }
  const GroupPtr& fin() const { return fin_; }

  std::size_t index(const GroupElem& g) const;
  GroupElem element(std::size_t idx) const;
  GroupElem multiply(const GroupElem& g, const GroupElem& h) const;
  GroupElem inverse(const GroupElem& g) const;

  GroupElem identity() const { return {0, 0}; }
  GroupElem sigma() const { return {0, 1}; }
  GroupElem tau() const { return {rotation_order() - 1, 1}; }
  GroupElem rotation() const { return {1, 0}; }
  GroupElem central() const { return {braid_exponent(), 0}; }
  /// Word in (sigma, tau) representing g, used to evaluate representations.
  Word word(const GroupElem& g) const;

  const SubgroupSpec& subgroup(SubgroupKind k) const;

  bool operator==(const GroupSpec& o) const { return d_ == o.d_; }

 private:
  int d_ = 3;
  GroupPtr fin_;
  std::shared_ptr<const std::vector<SubgroupSpec>> subgroups_;
};

struct ConjugacyClass {
  std::string label;
  std::size_t representative;  // element index
  std::vector<std::size_t> members;
};

/// Canonical order: {1}, {z}, {r^j, r^-j} for 0 < j < 2^(d-2), the class of
/// sigma (r^even sigma), the class of tau (r^odd sigma). Computed by brute
/// force conjugation and checked against that shape.
std::vector<ConjugacyClass> conjugacy_classes(const GroupSpec& g);

/// Left coset representatives of an arbitrary subgroup given by its element indices.
std::vector<std::size_t> left_coset_reps(const FinGroup& g, const std::vector<std::size_t>& h);

}  // namespace endolift
