#pragma once

// Finite-dimensional modules over group algebras of finite 2-groups in
// characteristic 2, stored as one action matrix per generator.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "endolift/fmatrix.hpp"
#include "endolift/group.hpp"
#include "json.hpp"

namespace endolift {

class ModuleRep {
 public:
  ModuleRep() = default;

  /// Validates every defining relation of the group; throws RelationViolation
  /// naming the first one that fails.
  static ModuleRep from_action(GroupPtr g, std::vector<FMatrix> gens, int dihedral_d = 0);
  static ModuleRep from_action(const GroupSpec& g, FMatrix s, FMatrix t);
  /// No validation; for constructions that preserve the relations by design.
  static ModuleRep trusted(GroupPtr g, std::vector<FMatrix> gens, int dihedral_d, int field_degree);

  const GroupPtr& group() const { return group_; }
  /// d when the group is the dihedral group of order 2^d, else 0.
  int dihedral_d() const { return d_; }
  GroupSpec spec() const;
  int field_degree() const { return m_; }
  std::size_t dim() const { return dim_; }
  const std::vector<FMatrix>& gens() const { return gens_; }
  const FMatrix& S() const { return gens_.at(0); }
  const FMatrix& T() const { return gens_.at(1); }

  /// Matrices of every group element, indexed like the group's table.
  const std::vector<FMatrix>& element_matrices() const;
  const FMatrix& element_matrix(std::size_t g) const { return element_matrices()[g]; }

  bool operator==(const ModuleRep& o) const;

 private:
  struct Cache;
  GroupPtr group_;
  int d_ = 0;
  int m_ = 1;
  std::size_t dim_ = 0;
  std::vector<FMatrix> gens_;
  std::shared_ptr<Cache> cache_;
};

void check_compatible(const ModuleRep& a, const ModuleRep& b);

ModuleRep trivial_module(const GroupSpec& g, int m = 1);
ModuleRep trivial_module(const GroupPtr& g, int m = 1);
ModuleRep regular_module(const GroupSpec& g, int m = 1);
ModuleRep regular_module(const GroupPtr& g, int m = 1);
ModuleRep free_module(const GroupPtr& g, std::size_t rank, int m = 1);

ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b);
ModuleRep tensor(const ModuleRep& a, const ModuleRep& b);
ModuleRep dual(const ModuleRep& a);
ModuleRep hom_module(const ModuleRep& a, const ModuleRep& b);
ModuleRep extend_scalars(const ModuleRep& a, int m);

ModuleRep restrict(const ModuleRep& m, SubgroupKind h);
ModuleRep induce(const GroupSpec& g, SubgroupKind h, const ModuleRep& mh);

struct Submodule {
  ModuleRep module;
  FMatrix inclusion;  // dim(M) x dim(sub), columns are a basis
};

struct Quotient {
  ModuleRep module;
  FMatrix projection;  // dim(Q) x dim(M)
  FMatrix lift;        // dim(M) x dim(Q), projection * lift = I
};

/// Submodule spanned by the columns of `basis` (must be independent and stable).
Submodule submodule(const ModuleRep& m, const FMatrix& basis);
/// Smallest submodule containing the given columns.
Submodule spin(const ModuleRep& m, const FMatrix& vectors);
/// Quotient by the span of `basis`; the complement is chosen greedily from
/// the standard basis in index order.
Quotient quotient(const ModuleRep& m, const FMatrix& basis);

Submodule radical(const ModuleRep& m);
Submodule socle(const ModuleRep& m);

/// Action of the norm element (sum of all group elements).
FMatrix norm_matrix(const ModuleRep& m);
std::size_t free_rank(const ModuleRep& m);

struct StripResult {
  ModuleRep core;
  std::size_t free_rank = 0;
  FMatrix core_inclusion;
};
StripResult strip_free(const ModuleRep& m);

struct ShortExactSeq {
  ModuleRep left, middle, right;
  FMatrix inj;   // dim(middle) x dim(left)
  FMatrix surj;  // dim(right) x dim(middle)
  /// Throws CertificateFailure on the first violated condition.
  void validate() const;
};

/// Projective cover data: kG^t -> M with t = dim(M / rad M).
struct Presentation {
  ModuleRep module;
  std::size_t t = 0;
  std::vector<std::size_t> top;  // indices of standard basis vectors generating M
  FMatrix cover;                 // dim(M) x t|G|, column i|G|+g = g * m_i
  FMatrix section;               // t|G| x dim(M), cover * section = I
  FMatrix kernel;                // t|G| x dim(Omega M), basis of the syzygy
  ModuleRep omega;
  FMatrix omega_top;             // t|G| x t', generators of Omega M as a module
};
Presentation presentation(const ModuleRep& m);

struct Syzygy {
  ModuleRep module;
  ShortExactSeq seq;  // 0 -> Omega M -> P -> M -> 0, or 0 -> M -> I -> Omega^-1 M -> 0
};
Syzygy syzygy(const ModuleRep& m, int direction = 1);
/// Omega^k(M) for any integer k, without sequence data.
ModuleRep omega(const ModuleRep& m, int k = 1);

struct HomSpace {
  ModuleRep source, target;
  std::vector<FMatrix> basis;  // dim(target) x dim(source)
  std::size_t dim() const { return basis.size(); }
};
/// Through a presentation of the source: solutions of the syzygy relations.
HomSpace hom_space(const ModuleRep& m, const ModuleRep& n);
/// Direct Kronecker system X S_m = S_n X, X T_m = T_n X. Test oracle.
HomSpace hom_space_naive(const ModuleRep& m, const ModuleRep& n);
bool is_module_map(const ModuleRep& m, const ModuleRep& n, const FMatrix& x);

/// Dimension of the maps M -> N that factor through a projective.
std::size_t phom_dim(const ModuleRep& m, const ModuleRep& n);
/// Same quantity as the span of traces Tr(n_i e_a^T). Test oracle.
std::size_t phom_dim_trace(const ModuleRep& m, const ModuleRep& n);
std::size_t stable_hom_dim(const ModuleRep& m, const ModuleRep& n);

struct ExtClass {
  ModuleRep v, w;
  std::shared_ptr<const Presentation> pres;  // presentation of V
  FMatrix cocycle;                           // dim(W) x dim(Omega V)
  FMatrix coboundaries;                      // as in ExtSpace
  bool is_zero() const;
};

struct ExtSpace {
  ModuleRep v, w;
  std::shared_ptr<const Presentation> pres;
  std::vector<FMatrix> basis;  // cocycles independent modulo coboundaries
  FMatrix coboundaries;        // vectorized restrictions of maps P(V) -> W, as columns
  std::size_t dim() const { return basis.size(); }
  ExtClass combination(const std::vector<GfElem>& coeffs) const;
  /// Every element of Ext^1 over the base field, in lexicographic order of
  /// coefficient vectors (the zero class first).
  std::vector<ExtClass> enumerate() const;
};
ExtSpace ext1(const ModuleRep& v, const ModuleRep& w);
/// Whether a cocycle Omega V -> W extends to the projective cover of V.
bool is_coboundary(const ExtSpace& e, const FMatrix& cocycle);

struct Extension {
  ShortExactSeq seq;  // 0 -> W -> E -> V -> 0
  bool split = false;
};
Extension extension_middle(const ExtClass& c);

struct IsoOptions {
  std::uint64_t seed = 0xD1ED2A1;
  std::size_t trials = 512;
  std::size_t exhaustive_log2 = 20;
};

struct IsoResult {
  bool isomorphic = false;
  std::optional<FMatrix> witness;
  std::string method;
};
/// Throws Inconclusive if no verdict could be certified within budget.
IsoResult is_isomorphic(const ModuleRep& m, const ModuleRep& n, const IsoOptions& opt = {});

/// Type of a module over a cyclic group of order 2: M = k^a + (kC)^b.
struct C2Type {
  std::size_t trivial = 0;
  std::size_t free = 0;
  bool operator==(const C2Type&) const = default;
};
C2Type c2_type(const ModuleRep& m);

nlohmann::json module_to_json(const ModuleRep& m);
ModuleRep module_from_json(const nlohmann::json& j);

}  // namespace endolift
