#include "endolift/modrep.hpp"

#include <algorithm>
#include <mutex>
#include <random>

#include "endolift/error.hpp"
#include "endolift/matrix_json.hpp"

namespace endolift {

struct ModuleRep::Cache {
  std::once_flag once;
  std::vector<FMatrix> mats;
};

namespace {

FMatrix word_matrix(const std::vector<FMatrix>& gens, const Word& w, std::size_t n, int m) {
  FMatrix x = FMatrix::identity(m, n);
  for (std::size_t g : w) x = x * gens.at(g);
  return x;
}

FMatrix identity_like(const ModuleRep& m) { return FMatrix::identity(m.field_degree(), m.dim()); }

}  // namespace

ModuleRep ModuleRep::trusted(GroupPtr g, std::vector<FMatrix> gens, int dihedral_d, int field_degree) {
  ModuleRep r;
  r.group_ = std::move(g);
  r.d_ = dihedral_d;
  r.m_ = field_degree;
  r.dim_ = gens.empty() ? 0 : gens[0].rows();
  r.gens_ = std::move(gens);
  r.cache_ = std::make_shared<Cache>();
  return r;
}

ModuleRep ModuleRep::from_action(GroupPtr g, std::vector<FMatrix> gens, int dihedral_d) {
  if (!g) throw Error("module needs a group");
  if (gens.size() != g->generators().size())
    throw DimensionMismatch("expected one matrix per group generator");
  const std::size_t n = gens[0].rows();
  const int m = gens[0].degree();
  for (const auto& a : gens) {
    if (a.rows() != n || a.cols() != n) throw DimensionMismatch("action matrices must be square of equal size");
    if (a.degree() != m) throw RingMismatch("action matrices over different fields");
  }
  for (const auto& rel : g->relations()) {
    const FMatrix l = word_matrix(gens, rel.lhs, n, m).pow(rel.lhs_pow);
    const FMatrix r = word_matrix(gens, rel.rhs, n, m).pow(rel.rhs_pow);
    if (!(l == r)) throw RelationViolation("relation " + rel.name + " fails");
  }
  return trusted(std::move(g), std::move(gens), dihedral_d, m);
}

ModuleRep ModuleRep::from_action(const GroupSpec& g, FMatrix s, FMatrix t) {
  return from_action(g.fin(), {std::move(s), std::move(t)}, g.d());
}

GroupSpec ModuleRep::spec() const {
  if (!d_) throw Error("module is not over a dihedral group");
  return GroupSpec::make(d_);
}

const std::vector<FMatrix>& ModuleRep::element_matrices() const {
  std::call_once(cache_->once, [this] {
    std::vector<FMatrix> mats(group_->order());
    mats[0] = FMatrix::identity(m_, dim_);
    for (const auto& st : group_->spanning_steps()) mats[st.element] = gens_[st.generator] * mats[st.from];
    cache_->mats = std::move(mats);
  });
  return cache_->mats;
}

bool ModuleRep::operator==(const ModuleRep& o) const {
  return group_ == o.group_ && m_ == o.m_ && gens_.size() == o.gens_.size() &&
         std::equal(gens_.begin(), gens_.end(), o.gens_.begin());
}

void check_compatible(const ModuleRep& a, const ModuleRep& b) {
  if (a.group() != b.group()) throw Error("modules over different groups");
  if (a.field_degree() != b.field_degree()) throw RingMismatch("modules over different fields");
}

ModuleRep trivial_module(const GroupPtr& g, int m) {
  std::vector<FMatrix> gens(g->generators().size(), FMatrix::identity(m, 1));
  return ModuleRep::trusted(g, std::move(gens), 0, m);
}

ModuleRep trivial_module(const GroupSpec& g, int m) {
  return ModuleRep::trusted(g.fin(), {FMatrix::identity(m, 1), FMatrix::identity(m, 1)}, g.d(), m);
}

ModuleRep free_module(const GroupPtr& g, std::size_t rank, int m) {
  const std::size_t n = g->order();
  std::vector<FMatrix> gens;
  for (std::size_t gen : g->generators()) {
    FMatrix a(m, n * rank, n * rank);
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t x = 0; x < n; ++x) a.set(i * n + g->mul(gen, x), i * n + x, 1);
    gens.push_back(std::move(a));
  }
  return ModuleRep::trusted(g, std::move(gens), 0, m);
}

ModuleRep regular_module(const GroupPtr& g, int m) { return free_module(g, 1, m); }

ModuleRep regular_module(const GroupSpec& g, int m) {
  auto r = free_module(g.fin(), 1, m);
  return ModuleRep::trusted(g.fin(), r.gens(), g.d(), m);
}

namespace {

ModuleRep free_like(const ModuleRep& ref, std::size_t rank) {
  auto f = free_module(ref.group(), rank, ref.field_degree());
  return ModuleRep::trusted(ref.group(), f.gens(), ref.dihedral_d(), ref.field_degree());
}

ModuleRep with_gens(const ModuleRep& ref, std::vector<FMatrix> gens) {
  const int m = gens.empty() ? ref.field_degree() : gens[0].degree();
  return ModuleRep::trusted(ref.group(), std::move(gens), ref.dihedral_d(), m);
}

}  // namespace

ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b) {
  check_compatible(a, b);
  std::vector<FMatrix> gens;
  for (std::size_t i = 0; i < a.gens().size(); ++i) gens.push_back(block_diag(a.gens()[i], b.gens()[i]));
  return with_gens(a, std::move(gens));
}

ModuleRep tensor(const ModuleRep& a, const ModuleRep& b) {
  check_compatible(a, b);
  std::vector<FMatrix> gens;
  for (std::size_t i = 0; i < a.gens().size(); ++i) gens.push_back(kron(a.gens()[i], b.gens()[i]));
  return with_gens(a, std::move(gens));
}

ModuleRep dual(const ModuleRep& a) {
  // Generators are involutions, so the contragredient action is the transpose.
  std::vector<FMatrix> gens;
  for (const auto& g : a.gens()) gens.push_back(g.transpose());
  return with_gens(a, std::move(gens));
}

ModuleRep hom_module(const ModuleRep& a, const ModuleRep& b) { return tensor(dual(a), b); }

ModuleRep extend_scalars(const ModuleRep& a, int m) {
  if (a.field_degree() == m) return a;
  std::vector<FMatrix> gens;
  for (const auto& g : a.gens()) gens.push_back(g.extend_scalars(m));
  return ModuleRep::trusted(a.group(), std::move(gens), a.dihedral_d(), m);
}

ModuleRep restrict(const ModuleRep& m, SubgroupKind h) {
  const auto& sub = m.spec().subgroup(h);
  if (h == SubgroupKind::Whole) return m;
  std::vector<FMatrix> gens;
  for (std::size_t img : sub.generator_images) gens.push_back(m.element_matrix(img));
  return ModuleRep::trusted(sub.abstract, std::move(gens), 0, m.field_degree());
}

ModuleRep induce(const GroupSpec& g, SubgroupKind h, const ModuleRep& mh) {
  const auto& sub = g.subgroup(h);
  if (mh.group() != sub.abstract) throw Error("induce: module is not over the requested subgroup");
  const FinGroup& f = *g.fin();
  const auto& reps = sub.coset_reps;
  const std::size_t n = mh.dim();
  std::vector<std::size_t> back(g.order(), SIZE_MAX);
  for (std::size_t a = 0; a < sub.embedding.size(); ++a) back[sub.embedding[a]] = a;
  std::vector<std::size_t> coset_of(g.order());
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t y : sub.elements) coset_of[f.mul(reps[i], y)] = i;

  const auto& hm = mh.element_matrices();
  std::vector<FMatrix> gens;
  for (std::size_t gen : f.generators()) {
    FMatrix a(mh.field_degree(), reps.size() * n, reps.size() * n);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const std::size_t gx = f.mul(gen, reps[i]);
      const std::size_t j = coset_of[gx];
      const std::size_t hh = back[f.mul(f.inverse(reps[j]), gx)];
      a.set_block(j * n, i * n, hm[hh]);
    }
    gens.push_back(std::move(a));
  }
  return ModuleRep::trusted(g.fin(), std::move(gens), g.d(), mh.field_degree());
}

Submodule submodule(const ModuleRep& m, const FMatrix& basis) {
  if (basis.rows() != m.dim()) throw DimensionMismatch("submodule basis has the wrong length");
  std::vector<FMatrix> gens;
  for (const auto& g : m.gens()) {
    auto x = solve(basis, g * basis);
    if (!x) throw Error("span is not a submodule");
    gens.push_back(std::move(*x));
  }
  if (basis.cols() == 0) gens.assign(m.gens().size(), FMatrix(m.field_degree(), 0, 0));
  return {with_gens(m, std::move(gens)), basis};
}

Submodule spin(const ModuleRep& m, const FMatrix& vectors) {
  FMatrix span = column_space_basis(vectors);
  while (true) {
    FMatrix all = span;
    for (const auto& g : m.gens()) all = hcat(all, g * span);
    FMatrix next = column_space_basis(all);
    if (next.cols() == span.cols()) break;
    span = std::move(next);
  }
  return submodule(m, span);
}

Quotient quotient(const ModuleRep& m, const FMatrix& basis) {
  const std::size_t k = basis.cols();
  const auto piv = independent_columns(hcat(basis, identity_like(m)));
  std::vector<std::size_t> comp;
  for (std::size_t p : piv) {
    if (p < k) continue;
    comp.push_back(p - k);
  }
  if (piv.size() - comp.size() != k) throw Error("quotient: basis columns are dependent");
  const FMatrix c = identity_like(m).select_cols(comp);
  auto inv = inverse(hcat(basis, c));
  if (!inv) throw Error("quotient: complement construction failed");
  const FMatrix proj = inv->block(k, 0, comp.size(), m.dim());
  std::vector<FMatrix> gens;
  for (const auto& g : m.gens()) gens.push_back(proj * g * c);
  if (comp.empty()) gens.assign(m.gens().size(), FMatrix(m.field_degree(), 0, 0));
  return {with_gens(m, std::move(gens)), proj, c};
}

Submodule radical(const ModuleRep& m) {
  FMatrix all(m.field_degree(), m.dim(), 0);
  for (const auto& g : m.gens()) all = hcat(all, g + identity_like(m));
  return submodule(m, column_space_basis(all));
}

Submodule socle(const ModuleRep& m) {
  FMatrix all(m.field_degree(), 0, m.dim());
  for (const auto& g : m.gens()) all = vcat(all, g + identity_like(m));
  return submodule(m, kernel_basis(all));
}

FMatrix norm_matrix(const ModuleRep& m) {
  const FMatrix id = identity_like(m);
  FMatrix n = id;
  for (const auto& f : m.group()->norm_factors()) {
    FMatrix w = word_matrix(m.gens(), f.word, m.dim(), m.field_degree());
    for (unsigned i = 0; i < f.log2_pow; ++i) w = w * w;
    n = n * (id + w);
  }
  return n;
}

std::size_t free_rank(const ModuleRep& m) { return rank(norm_matrix(m)); }

StripResult strip_free(const ModuleRep& m) {
  const FMatrix nm = norm_matrix(m);
  const auto piv = independent_columns(nm);
  const std::size_t r = piv.size();
  if (r == 0) return {m, 0, identity_like(m)};
  const auto& el = m.element_matrices();
  const FinGroup& g = *m.group();
  const std::size_t order = g.order();
  const int fd = m.field_degree();

  // Columns g * e_p span the free submodule generated by the pivot vectors.
  FMatrix b(fd, m.dim(), r * order);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t x = 0; x < order; ++x) b.set_block(0, j * order + x, el[x].column(piv[j]));
  FMatrix target(fd, r, r * order);
  for (std::size_t i = 0; i < r; ++i) target.set(i, i * order, 1);
  auto lam_t = solve(b.transpose(), target.transpose());
  if (!lam_t) throw CertificateFailure("strip_free: no retraction onto the free summand");
  const FMatrix lam = lam_t->transpose();

  // Equivariant retraction: row (i, x) is lambda_i * rho(x^-1).
  FMatrix p(fd, r * order, m.dim());
  for (std::size_t i = 0; i < r; ++i) {
    const FMatrix li = lam.block(i, 0, 1, m.dim());
    for (std::size_t x = 0; x < order; ++x) p.set_block(i * order + x, 0, li * el[g.inverse(x)]);
  }
  if (!(p * b).is_identity()) throw CertificateFailure("strip_free: retraction is not a left inverse");
  const FMatrix core_basis = kernel_basis(p);
  auto sub = submodule(m, core_basis);
  return {sub.module, r, core_basis};
}

void ShortExactSeq::validate() const {
  if (middle.dim() != left.dim() + right.dim()) throw CertificateFailure("sequence: dimensions do not add");
  if (inj.rows() != middle.dim() || inj.cols() != left.dim()) throw CertificateFailure("sequence: inj shape");
  if (surj.rows() != right.dim() || surj.cols() != middle.dim()) throw CertificateFailure("sequence: surj shape");
  if (rank(inj) != left.dim()) throw CertificateFailure("sequence: inj not injective");
  if (rank(surj) != right.dim()) throw CertificateFailure("sequence: surj not surjective");
  if (!(surj * inj).is_zero()) throw CertificateFailure("sequence: image(inj) not in kernel(surj)");
  if (!is_module_map(left, middle, inj)) throw CertificateFailure("sequence: inj is not a module map");
  if (!is_module_map(middle, right, surj)) throw CertificateFailure("sequence: surj is not a module map");
}

Presentation presentation(const ModuleRep& m) {
  Presentation p;
  p.module = m;
  const auto rad = radical(m).inclusion;
  const std::size_t r = rad.cols();
  for (std::size_t c : independent_columns(hcat(rad, identity_like(m))))
    if (c >= r) p.top.push_back(c - r);
  p.t = p.top.size();
  const std::size_t order = m.group()->order();
  const auto& el = m.element_matrices();
  const int fd = m.field_degree();
  p.cover = FMatrix(fd, m.dim(), p.t * order);
  for (std::size_t i = 0; i < p.t; ++i)
    for (std::size_t x = 0; x < order; ++x) p.cover.set_block(0, i * order + x, el[x].column(p.top[i]));
  auto sec = solve(p.cover, identity_like(m));
  if (!sec) throw CertificateFailure("presentation: cover is not surjective");
  p.section = std::move(*sec);
  p.kernel = kernel_basis(p.cover);
  const ModuleRep pm = free_like(m, p.t);
  p.omega = submodule(pm, p.kernel).module;

  const auto orad = radical(p.omega).inclusion;
  const std::size_t orr = orad.cols();
  std::vector<std::size_t> otop;
  for (std::size_t c : independent_columns(hcat(orad, FMatrix::identity(fd, p.omega.dim()))))
    if (c >= orr) otop.push_back(c - orr);
  p.omega_top = p.kernel.select_cols(otop);
  return p;
}

Syzygy syzygy(const ModuleRep& m, int direction) {
  if (direction == 1) {
    const auto p = presentation(m);
    ShortExactSeq seq{p.omega, free_like(m, p.t), m, p.kernel, p.cover};
    seq.validate();
    return {p.omega, seq};
  }
  if (direction == -1) {
    // Dualize 0 -> Omega(M*) -> P -> M* -> 0.
    const auto s = syzygy(dual(m), 1);
    const ModuleRep inv = dual(s.module);
    ShortExactSeq seq{m, dual(s.seq.middle), inv, s.seq.surj.transpose(), s.seq.inj.transpose()};
    seq.validate();
    return {inv, seq};
  }
  throw UsageError("syzygy direction must be +1 or -1");
}

ModuleRep omega(const ModuleRep& m, int k) {
  ModuleRep x = m;
  for (int i = 0; i < std::abs(k); ++i) x = syzygy(x, k > 0 ? 1 : -1).module;
  return x;
}

bool is_module_map(const ModuleRep& m, const ModuleRep& n, const FMatrix& x) {
  if (x.rows() != n.dim() || x.cols() != m.dim()) return false;
  for (std::size_t i = 0; i < m.gens().size(); ++i)
    if (!(x * m.gens()[i] == n.gens()[i] * x)) return false;
  return true;
}

namespace {

HomSpace hom_from_presentation(const Presentation& p, const ModuleRep& n) {
  const ModuleRep& m = p.module;
  check_compatible(m, n);
  const std::size_t order = m.group()->order();
  const std::size_t dn = n.dim();
  const int fd = m.field_degree();
  const auto& en = n.element_matrices();
  const std::size_t tp = p.omega_top.cols();

  FMatrix a(fd, tp * dn, p.t * dn);
  for (std::size_t j = 0; j < tp; ++j)
    for (std::size_t i = 0; i < p.t; ++i) {
      FMatrix blk(fd, dn, dn);
      for (std::size_t x = 0; x < order; ++x) {
        const GfElem c = p.omega_top.get(i * order + x, j);
        if (c == 1) blk += en[x];
        else if (c) blk += en[x].scaled(c);
      }
      a.set_block(j * dn, i * dn, blk);
    }
  const FMatrix sols = kernel_basis(a);
  HomSpace h{m, n, {}};
  for (std::size_t s = 0; s < sols.cols(); ++s) {
    FMatrix f(fd, dn, p.t * order);
    for (std::size_t i = 0; i < p.t; ++i) {
      const FMatrix ni = sols.block(i * dn, s, dn, 1);
      for (std::size_t x = 0; x < order; ++x) f.set_block(0, i * order + x, en[x] * ni);
    }
    h.basis.push_back(f * p.section);
  }
  return h;
}

}  // namespace

HomSpace hom_space(const ModuleRep& m, const ModuleRep& n) {
  check_compatible(m, n);
  return hom_from_presentation(presentation(m), n);
}

HomSpace hom_space_naive(const ModuleRep& m, const ModuleRep& n) {
  check_compatible(m, n);
  const int fd = m.field_degree();
  const FMatrix im = FMatrix::identity(fd, m.dim());
  const FMatrix in = FMatrix::identity(fd, n.dim());
  FMatrix sys(fd, 0, m.dim() * n.dim());
  for (std::size_t i = 0; i < m.gens().size(); ++i)
    sys = vcat(sys, kron(m.gens()[i].transpose(), in) + kron(im, n.gens()[i]));
  const FMatrix k = kernel_basis(sys);
  HomSpace h{m, n, {}};
  for (std::size_t s = 0; s < k.cols(); ++s) h.basis.push_back(unvectorize(k.column(s), n.dim(), m.dim()));
  return h;
}

std::size_t phom_dim(const ModuleRep& m, const ModuleRep& n) {
  check_compatible(m, n);
  const auto pn = presentation(n);
  return pn.t * m.dim() - hom_space(m, pn.omega).dim();
}

std::size_t phom_dim_trace(const ModuleRep& m, const ModuleRep& n) {
  check_compatible(m, n);
  const auto pn = presentation(n);
  const FinGroup& g = *m.group();
  const auto& em = m.element_matrices();
  const auto& en = n.element_matrices();
  FMatrix span(m.field_degree(), m.dim() * n.dim(), 0);
  for (std::size_t i : pn.top)
    for (std::size_t a = 0; a < m.dim(); ++a) {
      FMatrix x(m.field_degree(), n.dim(), m.dim());
      for (std::size_t h = 0; h < g.order(); ++h)
        x += en[h].column(i) * em[g.inverse(h)].block(a, 0, 1, m.dim());
      span = hcat(span, vectorize(x));
    }
  return rank(span);
}

std::size_t stable_hom_dim(const ModuleRep& m, const ModuleRep& n) {
  return hom_space(m, n).dim() - phom_dim(m, n);
}

bool ExtClass::is_zero() const {
  return rank(hcat(coboundaries, vectorize(cocycle))) == coboundaries.cols();
}

ExtClass ExtSpace::combination(const std::vector<GfElem>& coeffs) const {
  if (coeffs.size() != basis.size()) throw DimensionMismatch("ext combination: coefficient count");
  FMatrix c(v.field_degree(), w.dim(), pres->omega.dim());
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i]) c += basis[i].scaled(coeffs[i]);
  return {v, w, pres, c, coboundaries};
}

std::vector<ExtClass> ExtSpace::enumerate() const {
  const unsigned q = 1u << v.field_degree();
  std::size_t total = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) total *= q;
  std::vector<ExtClass> out;
  std::vector<GfElem> c(basis.size(), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t r = idx;
    for (std::size_t k = c.size(); k-- > 0;) {
      c[k] = static_cast<GfElem>(r % q);
      r /= q;
    }
    out.push_back(combination(c));
  }
  return out;
}

ExtSpace ext1(const ModuleRep& v, const ModuleRep& w) {
  check_compatible(v, w);
  auto pres = std::make_shared<const Presentation>(presentation(v));
  const auto h = hom_space(pres->omega, w);
  const std::size_t order = v.group()->order();
  const std::size_t k = pres->omega.dim();
  const auto& ew = w.element_matrices();
  const int fd = v.field_degree();

  FMatrix q(fd, w.dim() * k, 0);
  for (std::size_t i = 0; i < pres->t; ++i) {
    const FMatrix ki = pres->kernel.block(i * order, 0, order, k);
    for (std::size_t b = 0; b < w.dim(); ++b) {
      FMatrix wb(fd, w.dim(), order);
      for (std::size_t x = 0; x < order; ++x) wb.set_block(0, x, ew[x].column(b));
      q = hcat(q, vectorize(wb * ki));
    }
  }
  q = column_space_basis(q);
  FMatrix hv(fd, w.dim() * k, 0);
  for (const auto& x : h.basis) hv = hcat(hv, vectorize(x));
  ExtSpace e{v, w, pres, {}, q};
  for (std::size_t c : independent_columns(hcat(q, hv)))
    if (c >= q.cols()) e.basis.push_back(h.basis[c - q.cols()]);
  return e;
}

bool is_coboundary(const ExtSpace& e, const FMatrix& cocycle) {
  return ExtClass{e.v, e.w, e.pres, cocycle, e.coboundaries}.is_zero();
}

Extension extension_middle(const ExtClass& c) {
  const Presentation& p = *c.pres;
  const ModuleRep& w = c.w;
  const std::size_t dw = w.dim();
  const std::size_t dp = p.kernel.rows();
  const ModuleRep ambient = direct_sum(w, free_like(c.v, p.t));
  const auto q = quotient(ambient, vcat(c.cocycle, p.kernel));
  const int fd = w.field_degree();
  FMatrix wincl(fd, dw + dp, dw);
  for (std::size_t i = 0; i < dw; ++i) wincl.set(i, i, 1);
  FMatrix pr(fd, c.v.dim(), dw + dp);
  pr.set_block(0, dw, p.cover);
  Extension e;
  e.seq = {w, q.module, c.v, q.projection * wincl, pr * q.lift};
  e.seq.validate();
  e.split = c.is_zero();
  return e;
}

namespace {

std::vector<std::size_t> invariants(const ModuleRep& m) {
  std::vector<std::size_t> inv;
  const FMatrix id = identity_like(m);
  const auto& el = m.element_matrices();
  if (m.dim() <= 160) {
    for (const auto& x : el) inv.push_back(rank(x + id));
  } else {
    for (const auto& x : m.gens()) inv.push_back(rank(x + id));
  }
  inv.push_back(radical(m).inclusion.cols());
  inv.push_back(socle(m).inclusion.cols());
  inv.push_back(free_rank(m));
  return inv;
}

FMatrix combine(const std::vector<FMatrix>& basis, const std::vector<GfElem>& c, std::size_t rows,
                std::size_t cols, int fd) {
  FMatrix x(fd, rows, cols);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (c[i]) x += c[i] == 1 ? basis[i] : basis[i].scaled(c[i]);
  return x;
}

}  // namespace

IsoResult is_isomorphic(const ModuleRep& m, const ModuleRep& n, const IsoOptions& opt) {
  check_compatible(m, n);
  if (m.dim() != n.dim()) return {false, std::nullopt, "dimension"};
  if (m.dim() == 0) return {true, FMatrix(m.field_degree(), 0, 0), "zero"};
  if (m == n) return {true, identity_like(m), "identical"};
  if (invariants(m) != invariants(n)) return {false, std::nullopt, "invariants"};

  const auto h = hom_space(m, n);
  if (h.dim() != hom_space(m, m).dim()) return {false, std::nullopt, "hom-dimension"};
  for (const auto& x : h.basis)
    if (is_invertible(x)) return {true, x, "basis"};

  const int fd = m.field_degree();
  const unsigned q = 1u << fd;
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<unsigned> coef(0, q - 1);
  std::vector<GfElem> c(h.dim());
  for (std::size_t trial = 0; trial < opt.trials; ++trial) {
    for (auto& v : c) v = static_cast<GfElem>(coef(rng));
    FMatrix x = combine(h.basis, c, n.dim(), m.dim(), fd);
    if (is_invertible(x)) return {true, x, "random"};
  }

  // With a local endomorphism ring the non-invertible maps form a proper
  // subspace, so an isomorphic pair would have shown an invertible basis map.
  if (free_rank(m) == 0 && stable_hom_dim(m, m) == 1) return {false, std::nullopt, "local-endomorphism-ring"};

  if (static_cast<std::size_t>(fd) * h.dim() <= opt.exhaustive_log2) {
    std::fill(c.begin(), c.end(), 0);
    while (true) {
      std::size_t k = 0;
      while (k < c.size() && ++c[k] == q) c[k++] = 0;
      if (k == c.size()) break;
      FMatrix x = combine(h.basis, c, n.dim(), m.dim(), fd);
      if (is_invertible(x)) return {true, x, "exhaustive"};
    }
    return {false, std::nullopt, "exhaustive"};
  }
  throw Inconclusive("isomorphism test exhausted its budget (dim Hom = " + std::to_string(h.dim()) + ")");
}

C2Type c2_type(const ModuleRep& m) {
  if (m.group()->order() != 2) throw Error("c2_type needs a module over a group of order 2");
  const std::size_t b = rank(m.gens()[0] + identity_like(m));
  return {m.dim() - 2 * b, b};
}

nlohmann::json module_to_json(const ModuleRep& m) {
  nlohmann::json j;
  if (m.dihedral_d()) {
    j["group"] = {{"d", m.dihedral_d()}};
    j["ring"] = ring_json_gf(m.field_degree());
    j["S"] = matrix_to_json(m.S());
    j["T"] = matrix_to_json(m.T());
  } else {
    j["group"] = {{"name", m.group()->name()}};
    j["ring"] = ring_json_gf(m.field_degree());
    j["gens"] = nlohmann::json::array();
    for (const auto& g : m.gens()) j["gens"].push_back(matrix_to_json(g));
  }
  return j;
}

ModuleRep module_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("group") || !j.contains("S") || !j.contains("T"))
    throw Error("module JSON needs group, S and T");
  const int d = j.at("group").at("d").get<int>();
  const auto g = GroupSpec::make(d);
  FMatrix s = fmatrix_from_json(j.at("S"));
  FMatrix t = fmatrix_from_json(j.at("T"));
  if (j.contains("ring") && j.at("ring").at("m").get<int>() != s.degree())
    throw RingMismatch("module JSON: ring does not match the matrices");
  return ModuleRep::from_action(g, std::move(s), std::move(t));
}

}  // namespace endolift
