#include "endolift/group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <queue>

#include "endolift/error.hpp"

namespace endolift {

FinGroup::FinGroup(std::string name, std::vector<std::vector<std::size_t>> table,
                   std::vector<std::size_t> generators, std::vector<Relation> relations,
                   std::vector<NormFactor> norm_factors)
    : name_(std::move(name)),
      table_(std::move(table)),
      generators_(std::move(generators)),
      relations_(std::move(relations)),
      norm_factors_(std::move(norm_factors)) {
  const std::size_t n = table_.size();
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (table_[a].size() != n) throw DimensionMismatch("ragged multiplication table");
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] == 0) inverse_[a] = b;
  }
  for (std::size_t a = 0; a < n; ++a)
    if (inverse_[a] == n) throw Error("multiplication table has no inverse for an element");

  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::queue<std::size_t> q;
  q.push(0);
  while (!q.empty()) {
    const std::size_t x = q.front();
    q.pop();
    for (std::size_t gi = 0; gi < generators_.size(); ++gi) {
      const std::size_t y = table_[generators_[gi]][x];
      if (seen[y]) continue;
      seen[y] = true;
      steps_.push_back({y, gi, x});
      q.push(y);
    }
  }
  if (steps_.size() + 1 != n) throw Error("generators do not generate the group");
}

std::size_t FinGroup::evaluate(const Word& w) const {
  std::size_t x = 0;
  for (std::size_t g : w) x = table_[x][generators_.at(g)];
  return x;
}

GroupPtr cyclic2_group() {
  static const GroupPtr g = std::make_shared<const FinGroup>(
      "C2", std::vector<std::vector<std::size_t>>{{0, 1}, {1, 0}}, std::vector<std::size_t>{1},
      std::vector<Relation>{{"a^2 = 1", {0}, 2, {}, 1}}, std::vector<NormFactor>{{{0}, 0}});
  return g;
}

GroupPtr klein4_group() {
  static const GroupPtr g = [] {
    std::vector<std::vector<std::size_t>> t(4, std::vector<std::size_t>(4));
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) t[a][b] = a ^ b;
    return std::make_shared<const FinGroup>(
        "K4", std::move(t), std::vector<std::size_t>{1, 2},
        std::vector<Relation>{{"a^2 = 1", {0}, 2, {}, 1},
                              {"b^2 = 1", {1}, 2, {}, 1},
                              {"ab = ba", {0, 1}, 1, {1, 0}, 1}},
        std::vector<NormFactor>{{{0}, 0}, {{1}, 0}});
  }();
  return g;
}

std::string to_string(SubgroupKind k) {
  switch (k) {
    case SubgroupKind::CSigma: return "C_sigma";
    case SubgroupKind::CTau: return "C_tau";
    case SubgroupKind::Center: return "Z";
    case SubgroupKind::K1: return "K1";
    case SubgroupKind::K2: return "K2";
    case SubgroupKind::Whole: return "D";
  }
  return "?";
}

SubgroupKind parse_subgroup(const std::string& s) {
  for (auto k : {SubgroupKind::CSigma, SubgroupKind::CTau, SubgroupKind::Center, SubgroupKind::K1,
                 SubgroupKind::K2, SubgroupKind::Whole})
    if (to_string(k) == s) return k;
  throw UsageError("unknown subgroup '" + s + "'");
}

std::vector<std::size_t> left_coset_reps(const FinGroup& g, const std::vector<std::size_t>& h) {
  std::vector<bool> covered(g.order(), false);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (covered[x]) continue;
    reps.push_back(x);
    for (std::size_t y : h) covered[g.mul(x, y)] = true;
  }
  return reps;
}

namespace {

GroupElem mul_elem(const GroupSpec& g, const GroupElem& a, const GroupElem& b) {
  const std::uint64_t n = g.rotation_order();
  const std::uint64_t k = a.s ? (n - b.j) % n : b.j;
  return {(a.j + k) % n, (a.s + b.s) & 1u};
}

}  // namespace

GroupSpec GroupSpec::make(int d) {
  if (d < 3) throw UsageError("dihedral group needs d >= 3");
  if (d > 12) throw UsageError("dihedral group order too large (d <= 12)");
  static std::mutex mu;
  static std::map<int, GroupSpec> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(d); it != cache.end()) return it->second;

  GroupSpec g;
  g.d_ = d;
  const std::size_t n = g.order();
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      t[a][b] = g.index(mul_elem(g, g.element(a), g.element(b)));

  const std::uint64_t m = g.braid_exponent();
  std::vector<Relation> rels{{"sigma^2 = 1", {0}, 2, {}, 1},
                             {"tau^2 = 1", {1}, 2, {}, 1},
                             {"(sigma tau)^(2^(d-2)) = (tau sigma)^(2^(d-2))", {0, 1}, m, {1, 0}, m}};
  std::vector<NormFactor> norm{{{0}, 0}};
  for (int i = 0; i <= d - 2; ++i) norm.push_back({{0, 1}, static_cast<unsigned>(i)});
  g.fin_ = std::make_shared<const FinGroup>("D" + std::to_string(n), std::move(t),
                                            std::vector<std::size_t>{g.index(g.sigma()), g.index(g.tau())},
                                            std::move(rels), std::move(norm));

  // Relations, checked on the table itself.
  const FinGroup& f = *g.fin_;
  auto power = [&](std::size_t x, std::uint64_t e) {
    std::size_t y = 0;
    for (std::uint64_t i = 0; i < e; ++i) y = f.mul(y, x);
    return y;
  };
  for (const auto& r : f.relations())
    if (power(f.evaluate(r.lhs), r.lhs_pow) != power(f.evaluate(r.rhs), r.rhs_pow))
      throw RelationViolation("dihedral table violates " + r.name);
  const std::size_t z = g.index(g.central());
  for (std::size_t x = 0; x < n; ++x)
    if (f.mul(z, x) != f.mul(x, z)) throw Error("z is not central");

  auto subs = std::make_shared<std::vector<SubgroupSpec>>();
  auto add = [&](SubgroupKind kind, GroupPtr abs, std::vector<std::size_t> images) {
    SubgroupSpec s;
    s.kind = kind;
    s.abstract = abs;
    s.generator_images = images;
    s.embedding.assign(abs->order(), 0);
    for (const auto& st : abs->spanning_steps())
      s.embedding[st.element] = f.mul(images[st.generator], s.embedding[st.from]);
    s.elements = s.embedding;
    std::sort(s.elements.begin(), s.elements.end());
    if (std::adjacent_find(s.elements.begin(), s.elements.end()) != s.elements.end())
      throw Error("subgroup embedding is not injective");
    for (std::size_t a = 0; a < abs->order(); ++a)
      for (std::size_t b = 0; b < abs->order(); ++b)
        if (s.embedding[abs->mul(a, b)] != f.mul(s.embedding[a], s.embedding[b]))
          throw Error("subgroup embedding is not a homomorphism");
    s.coset_reps = left_coset_reps(f, s.elements);
    subs->push_back(std::move(s));
  };
  const std::size_t sig = g.index(g.sigma());
  const std::size_t ta = g.index(g.tau());
  add(SubgroupKind::CSigma, cyclic2_group(), {sig});
  add(SubgroupKind::CTau, cyclic2_group(), {ta});
  add(SubgroupKind::Center, cyclic2_group(), {z});
  add(SubgroupKind::K1, klein4_group(), {sig, z});
  add(SubgroupKind::K2, klein4_group(), {ta, z});
  add(SubgroupKind::Whole, g.fin_, {sig, ta});
  g.subgroups_ = subs;
  cache.emplace(d, g);
  return g;
}

std::size_t GroupSpec::index(const GroupElem& g) const {
  if (g.j >= rotation_order() || g.s > 1) throw Error("group element not in normal form");
  return static_cast<std::size_t>(2 * g.j + g.s);
}

GroupElem GroupSpec::element(std::size_t idx) const {
  if (idx >= order()) throw Error("element index out of range");
  return {idx / 2, static_cast<unsigned>(idx % 2)};
}

GroupElem GroupSpec::multiply(const GroupElem& g, const GroupElem& h) const {
  index(g);
  index(h);
  return mul_elem(*this, g, h);
}

GroupElem GroupSpec::inverse(const GroupElem& g) const {
  if (g.s) return g;
  return {(rotation_order() - g.j) % rotation_order(), 0};
}

Word GroupSpec::word(const GroupElem& g) const {
  Word w;
  for (std::uint64_t i = 0; i < g.j; ++i) {
    w.push_back(0);
    w.push_back(1);
  }
  if (g.s) w.push_back(0);
  return w;
}

const SubgroupSpec& GroupSpec::subgroup(SubgroupKind k) const {
  for (const auto& s : *subgroups_)
    if (s.kind == k) return s;
  throw UsageError("subgroup not in the stored list");
}

std::vector<ConjugacyClass> conjugacy_classes(const GroupSpec& g) {
  const FinGroup& f = *g.fin();
  const std::size_t n = f.order();
  std::vector<std::size_t> cls(n, n);
  std::vector<std::vector<std::size_t>> raw;
  for (std::size_t x = 0; x < n; ++x) {
    if (cls[x] != n) continue;
    std::vector<std::size_t> members;
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t c = f.mul(f.mul(y, x), f.inverse(y));
      if (cls[c] == n) {
        cls[c] = raw.size();
        members.push_back(c);
      }
    }
    std::sort(members.begin(), members.end());
    raw.push_back(std::move(members));
  }

  const std::uint64_t m = g.braid_exponent();
  std::vector<ConjugacyClass> out;
  auto take = [&](const std::string& label, std::size_t rep, std::vector<std::size_t> expect) {
    std::sort(expect.begin(), expect.end());
    const auto& found = raw[cls[rep]];
    if (found != expect) throw Error("conjugacy class of " + label + " has unexpected shape");
    out.push_back({label, rep, found});
  };
  take("1", 0, {0});
  take("z", g.index(g.central()), {g.index(g.central())});
  for (std::uint64_t j = 1; j < m; ++j)
    take("r^" + std::to_string(j), g.index({j, 0}),
         {g.index({j, 0}), g.index(g.inverse({j, 0}))});
  std::vector<std::size_t> even, odd;
  for (std::uint64_t j = 0; j < g.rotation_order(); ++j) (j % 2 ? odd : even).push_back(g.index({j, 1}));
  take("sigma", g.index(g.sigma()), even);
  take("tau", g.index(g.tau()), odd);
  if (out.size() != raw.size()) throw Error("conjugacy class count mismatch");
  return out;
}

}  // namespace endolift
