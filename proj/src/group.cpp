#include "arbor/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

#include "arbor/error.hpp"

namespace arbor {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Keeps the smaller root so class representatives are deterministic.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

Partition classes(UnionFind& uf, std::size_t n) {
  std::vector<std::vector<std::size_t>> by_root(n);
  for (std::size_t x = 0; x < n; ++x) by_root[uf.find(x)].push_back(x + 1);
  Partition out;
  for (auto& block : by_root) {
    if (!block.empty()) out.push_back(std::move(block));
  }
  return out;
}

std::vector<Perm> sorted_unique(std::vector<Perm> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

FiniteGroup FiniteGroup::generate(std::size_t degree, std::vector<Perm> generators,
                                  std::size_t cap) {
  if (cap == 0) throw Error(ErrorCode::kInvalidArgument, "cap must be positive");
  for (const Perm& g : generators) {
    if (g.degree() != degree) {
      throw Error(ErrorCode::kDegreeMismatch, "generator " + g.to_string() + " has degree " +
                                                  std::to_string(g.degree()) + ", expected " +
                                                  std::to_string(degree));
    }
  }
  std::unordered_set<Perm, PermHash> seen;
  std::vector<Perm> found;
  const Perm id = Perm::identity(degree);
  seen.insert(id);
  found.push_back(id);
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const Perm& g : generators) {
      Perm next = compose(g, found[i]);
      if (seen.insert(next).second) {
        if (found.size() >= cap) {
          throw Error(ErrorCode::kCapExceeded,
                      "group closure exceeds cap of " + std::to_string(cap) + " elements");
        }
        found.push_back(next);
      }
    }
  }
  FiniteGroup group;
  group.degree_ = degree;
  group.generators_ = std::move(generators);
  std::sort(found.begin(), found.end());
  group.elements_ = std::move(found);
  return group;
}

FiniteGroup FiniteGroup::from_elements(std::size_t degree, std::vector<Perm> elements) {
  elements = sorted_unique(std::move(elements));
  const Perm id = Perm::identity(degree);
  if (!std::binary_search(elements.begin(), elements.end(), id)) {
    throw Error(ErrorCode::kNotASubgroup, "element set lacks the identity");
  }
  // Greedy generating set: each new generator at least doubles the span, so
  // there are at most log2 |G| closures.
  std::vector<Perm> gens;
  FiniteGroup span = trivial(degree);
  for (const Perm& x : elements) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    span = generate(degree, gens, elements.size());
  }
  if (span.elements_ != elements) {
    throw Error(ErrorCode::kNotASubgroup, "element set is not closed under composition");
  }
  span.generators_ = std::move(gens);
  return span;
}

FiniteGroup FiniteGroup::trivial(std::size_t degree) { return generate(degree, {}); }

bool FiniteGroup::contains(const Perm& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

std::optional<std::size_t> FiniteGroup::index_of(const Perm& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

bool FiniteGroup::is_subgroup_of(const FiniteGroup& other) const {
  if (degree_ != other.degree_) return false;
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end());
}

Partition orbits_of(std::size_t degree, const std::vector<Perm>& perms) {
  UnionFind uf(degree);
  for (const Perm& g : perms) {
    for (std::size_t x = 0; x < degree; ++x) uf.unite(x, g(x));
  }
  return classes(uf, degree);
}

Partition orbits(const FiniteGroup& group) { return orbits_of(group.degree(), group.generators()); }

bool is_transitive(const FiniteGroup& group) { return orbits(group).size() == 1; }

bool is_normal(const FiniteGroup& group, const FiniteGroup& sub) {
  if (!sub.is_subgroup_of(group)) {
    throw Error(ErrorCode::kNotASubgroup, "is_normal: not contained in the ambient group");
  }
  for (const Perm& g : group.generators()) {
    for (const Perm& h : sub.generators()) {
      if (!sub.contains(conjugate(g, h))) return false;
    }
  }
  return true;
}

std::vector<Coset> cosets(const FiniteGroup& group, const FiniteGroup& sub) {
  if (!sub.is_subgroup_of(group)) {
    throw Error(ErrorCode::kNotASubgroup, "cosets: not contained in the ambient group");
  }
  std::vector<bool> assigned(group.order(), false);
  std::vector<Coset> out;
  for (std::size_t i = 0; i < group.order(); ++i) {
    if (assigned[i]) continue;
    const Perm& g = group.elements()[i];
    Coset coset{g, {}};
    coset.elements.reserve(sub.order());
    for (const Perm& h : sub.elements()) {
      Perm gh = compose(g, h);
      assigned[*group.index_of(gh)] = true;
      coset.elements.push_back(gh);
    }
    std::sort(coset.elements.begin(), coset.elements.end());
    out.push_back(std::move(coset));
  }
  return out;
}

std::optional<std::vector<std::size_t>> nontrivial_block(const FiniteGroup& group) {
  if (!is_transitive(group)) {
    throw Error(ErrorCode::kNotTransitive, "primitivity is only defined for transitive groups");
  }
  const std::size_t d = group.degree();
  for (std::size_t x = 1; x < d; ++x) {
    // Minimal block containing {0, x}: merge and propagate images of merged
    // pairs until the partition is invariant.
    UnionFind uf(d);
    uf.unite(0, x);
    std::vector<std::pair<std::size_t, std::size_t>> pending{{0, x}};
    while (!pending.empty()) {
      auto [a, b] = pending.back();
      pending.pop_back();
      for (const Perm& g : group.generators()) {
        std::size_t ra = uf.find(g(a));
        std::size_t rb = uf.find(g(b));
        if (ra != rb) {
          uf.unite(ra, rb);
          pending.emplace_back(ra, rb);
        }
      }
    }
    std::vector<std::size_t> block;
    const std::size_t root = uf.find(0);
    for (std::size_t y = 0; y < d; ++y) {
      if (uf.find(y) == root) block.push_back(y + 1);
    }
    if (block.size() < d) return block;
  }
  return std::nullopt;
}

bool is_primitive(const FiniteGroup& group) { return !nontrivial_block(group).has_value(); }

FiniteGroup normal_closure(const FiniteGroup& group, const std::vector<Perm>& seeds) {
  std::vector<Perm> gens;
  for (const Perm& s : seeds) {
    if (!s.is_identity()) gens.push_back(s);
  }
  FiniteGroup closure = FiniteGroup::generate(group.degree(), gens, group.order());
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < gens.size() && !grew; ++i) {
      for (const Perm& g : group.generators()) {
        Perm c = conjugate(g, gens[i]);
        if (!closure.contains(c)) {
          gens.push_back(c);
          closure = FiniteGroup::generate(group.degree(), gens, group.order());
          grew = true;
          break;
        }
      }
    }
  }
  return closure;
}

std::vector<FiniteGroup> normal_subgroups(const FiniteGroup& group) {
  auto key_less = [](const FiniteGroup& a, const FiniteGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  };
  std::set<std::vector<Perm>> seen;
  std::vector<FiniteGroup> found;
  auto add = [&](FiniteGroup g) {
    if (seen.insert(g.elements()).second) {
      found.push_back(std::move(g));
      return true;
    }
    return false;
  };

  add(FiniteGroup::trivial(group.degree()));
  std::vector<FiniteGroup> principal;
  for (const Perm& x : group.elements()) {
    if (x.is_identity()) continue;
    FiniteGroup nc = normal_closure(group, {x});
    if (add(nc)) principal.push_back(std::move(nc));
  }
  // Every normal subgroup is a join of principal ones.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const FiniteGroup& p : principal) {
      if (p.is_subgroup_of(found[i])) continue;
      std::vector<Perm> gens = found[i].generators();
      gens.insert(gens.end(), p.generators().begin(), p.generators().end());
      add(FiniteGroup::generate(group.degree(), gens, group.order()));
    }
  }
  std::sort(found.begin(), found.end(), key_less);
  return found;
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

int SubgroupPair::n1_exponent(const Perm& g) const {
  Perm shifted = g;
  const Perm step = inverse(n1_generator);
  for (int j = 0; j < p; ++j) {
    if (n1.contains(shifted)) return j;
    shifted = compose(step, shifted);
  }
  throw Error(ErrorCode::kInvalidPair, g.to_string() + " lies in no coset of n1 generated by " +
                                           n1_generator.to_string());
}

int SubgroupPair::n2_exponent(const Perm& g) const {
  Perm shifted = g;
  const Perm step = inverse(n2_generator);
  for (int j = 0; j < p; ++j) {
    if (n2.contains(shifted)) return j;
    shifted = compose(step, shifted);
  }
  throw Error(ErrorCode::kInvalidPair, g.to_string() + " lies in no coset of n2 generated by " +
                                           n2_generator.to_string());
}

Perm SubgroupPair::sigma_representative(const Perm& g) const {
  return power(n2_generator, n1_exponent(g));
}

std::vector<Perm> SubgroupPair::sigma_coset(const Perm& g) const {
  const Perm rep = sigma_representative(g);
  std::vector<Perm> out;
  out.reserve(n2.order());
  for (const Perm& n : n2.elements()) out.push_back(compose(rep, n));
  std::sort(out.begin(), out.end());
  return out;
}

SubgroupPair make_subgroup_pair(const FiniteGroup& group, FiniteGroup n1, FiniteGroup n2, int p) {
  auto first_outside = [&](const FiniteGroup& n) -> Perm {
    for (const Perm& g : group.generators()) {
      if (!n.contains(g)) return g;
    }
    throw Error(ErrorCode::kInvalidPair, "every generator lies in the subgroup; index is 1");
  };
  SubgroupPair pair;
  pair.n1_generator = first_outside(n1);
  pair.n2_generator = first_outside(n2);
  pair.n1 = std::move(n1);
  pair.n2 = std::move(n2);
  pair.p = p;
  return pair;
}

SubgroupPair with_sigma(const SubgroupPair& pair, const Perm& a, const Perm& b) {
  if (pair.n1.contains(a)) {
    throw Error(ErrorCode::kInvalidPair, "sigma source " + a.to_string() + " lies in n1");
  }
  if (pair.n2.contains(b)) {
    throw Error(ErrorCode::kInvalidPair, "sigma target " + b.to_string() + " lies in n2");
  }
  SubgroupPair out = pair;
  out.n1_generator = a;
  out.n2_generator = b;
  return out;
}

std::vector<std::string> validate_pair(const FiniteGroup& group, const SubgroupPair& pair) {
  std::vector<std::string> problems;
  if (!is_prime(pair.p)) problems.push_back("p = " + std::to_string(pair.p) + " is not prime");
  for (const auto* n : {&pair.n1, &pair.n2}) {
    const char* name = n == &pair.n1 ? "n1" : "n2";
    if (!n->is_subgroup_of(group)) {
      problems.push_back(std::string(name) + " is not a subgroup");
      continue;
    }
    if (!is_normal(group, *n)) problems.push_back(std::string(name) + " is not normal");
    if (n->order() * static_cast<std::size_t>(std::max(pair.p, 1)) != group.order()) {
      problems.push_back(std::string(name) + " does not have index p");
    }
  }
  if (!problems.empty()) return problems;
  if (!is_transitive(pair.n1)) problems.push_back("n1 is not transitive");
  if (is_transitive(pair.n2)) problems.push_back("n2 is transitive");
  if (!group.contains(pair.n1_generator) || pair.n1.contains(pair.n1_generator)) {
    problems.push_back("n1_generator does not generate G/n1");
  }
  if (!group.contains(pair.n2_generator) || pair.n2.contains(pair.n2_generator)) {
    problems.push_back("n2_generator does not generate G/n2");
  }
  if (!problems.empty()) return problems;
  // sigma(j) = j on Z/p is an isomorphism provided both exponent maps are
  // homomorphisms; checking s*g for generators s and all g suffices.
  for (const Perm& s : group.generators()) {
    const int e1 = pair.n1_exponent(s);
    const int e2 = pair.n2_exponent(s);
    for (const Perm& g : group.elements()) {
      Perm sg = compose(s, g);
      if (pair.n1_exponent(sg) != (e1 + pair.n1_exponent(g)) % pair.p ||
          pair.n2_exponent(sg) != (e2 + pair.n2_exponent(g)) % pair.p) {
        problems.push_back("coset map is not a homomorphism");
        return problems;
      }
    }
  }
  return problems;
}

std::vector<FiniteGroup> index_p_normal_subgroups(const FiniteGroup& group, int p) {
  if (!is_prime(p)) throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  const std::size_t degree = group.degree();

  std::vector<Perm> seeds;
  const auto& gens = group.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    seeds.push_back(power(gens[i], p));
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      seeds.push_back(compose(compose(gens[i], gens[j]), compose(inverse(gens[i]), inverse(gens[j]))));
    }
  }
  const FiniteGroup kernel = normal_closure(group, seeds);

  // Basis of the elementary abelian quotient G/K.
  std::vector<Perm> basis;
  FiniteGroup span = kernel;
  for (const Perm& x : group.elements()) {
    if (span.order() == group.order()) break;
    if (span.contains(x)) continue;
    basis.push_back(x);
    std::vector<Perm> span_gens = kernel.generators();
    span_gens.insert(span_gens.end(), basis.begin(), basis.end());
    span = FiniteGroup::generate(degree, span_gens, group.order());
  }
  const std::size_t rank = basis.size();
  if (rank == 0) return {};

  // Coordinates of every element: walk all exponent vectors a and tag the coset
  // b1^a1 ... bk^ak K.
  std::vector<std::vector<int>> coords(group.order());
  std::vector<int> a(rank, 0);
  while (true) {
    Perm rep = Perm::identity(degree);
    for (std::size_t i = 0; i < rank; ++i) rep = compose(rep, power(basis[i], a[i]));
    for (const Perm& k : kernel.elements()) coords[*group.index_of(compose(rep, k))] = a;
    std::size_t pos = 0;
    while (pos < rank && ++a[pos] == p) a[pos++] = 0;
    if (pos == rank) break;
  }

  // One hyperplane per nonzero functional whose leading nonzero entry is 1.
  std::vector<FiniteGroup> out;
  std::vector<int> c(rank, 0);
  while (true) {
    std::size_t pos = 0;
    while (pos < rank && ++c[pos] == p) c[pos++] = 0;
    if (pos == rank) break;
    auto lead = std::find_if(c.rbegin(), c.rend(), [](int v) { return v != 0; });
    if (*lead != 1) continue;
    std::vector<Perm> members;
    for (std::size_t e = 0; e < group.order(); ++e) {
      long long dot = 0;
      for (std::size_t i = 0; i < rank; ++i) dot += static_cast<long long>(c[i]) * coords[e][i];
      if (dot % p == 0) members.push_back(group.elements()[e]);
    }
    out.push_back(FiniteGroup::from_elements(degree, std::move(members)));
  }
  return out;
}

std::vector<SubgroupPair> find_index_p_normal_pairs(const FiniteGroup& group, int p) {
  if (!is_prime(p)) throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  if (!is_transitive(group)) {
    throw Error(ErrorCode::kNotTransitive, "pair search requires a transitive group");
  }
  std::vector<FiniteGroup> transitive;
  std::vector<FiniteGroup> intransitive;
  for (FiniteGroup& n : index_p_normal_subgroups(group, p)) {
    (is_transitive(n) ? transitive : intransitive).push_back(std::move(n));
  }
  std::vector<SubgroupPair> pairs;
  for (const FiniteGroup& n1 : transitive) {
    for (const FiniteGroup& n2 : intransitive) pairs.push_back(make_subgroup_pair(group, n1, n2, p));
  }
  std::sort(pairs.begin(), pairs.end(), [](const SubgroupPair& a, const SubgroupPair& b) {
    if (a.n1.elements() != b.n1.elements()) return a.n1.elements() < b.n1.elements();
    return a.n2.elements() < b.n2.elements();
  });
  return pairs;
}

}  // namespace arbor
