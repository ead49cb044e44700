#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "arbor/perm.hpp"

namespace arbor {

inline constexpr std::size_t kDefaultElementCap = 2'000'000;

/// A permutation group given by generators, with all elements enumerated.
///
/// Elements are kept sorted, so membership is a binary search and iteration
/// order is deterministic.
class FiniteGroup {
 public:
  /// Breadth-first closure. Throws kCapExceeded instead of growing past `cap`,
  /// kDegreeMismatch if a generator has the wrong degree.
  static FiniteGroup generate(std::size_t degree, std::vector<Perm> generators,
                              std::size_t cap = kDefaultElementCap);

  /// Wraps an already-closed element set; picks a small generating set.
  /// Throws kNotASubgroup if `elements` is not closed or lacks the identity.
  static FiniteGroup from_elements(std::size_t degree, std::vector<Perm> elements);

  static FiniteGroup trivial(std::size_t degree);

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return generators_; }
  const std::vector<Perm>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(const Perm& p) const;
  /// Position of `p` in `elements()`, or nullopt.
  std::optional<std::size_t> index_of(const Perm& p) const;
  bool is_subgroup_of(const FiniteGroup& other) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.degree_ == b.degree_ && a.elements_ == b.elements_;
  }

 private:
  std::size_t degree_ = 1;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
};

/// Blocks are 1-based and ascending; blocks ordered by their least point.
using Partition = std::vector<std::vector<std::size_t>>;

Partition orbits(const FiniteGroup& group);
/// Orbits of the group generated by an arbitrary set of permutations.
Partition orbits_of(std::size_t degree, const std::vector<Perm>& perms);
bool is_transitive(const FiniteGroup& group);

/// True iff g H g^-1 = H for every generator g of `group`.
/// Throws kNotASubgroup unless `sub` is contained in `group`.
bool is_normal(const FiniteGroup& group, const FiniteGroup& sub);

struct Coset {
  Perm representative;
  std::vector<Perm> elements;  // sorted
};

/// Left cosets gH, each represented by its least element; ordered by
/// representative.
std::vector<Coset> cosets(const FiniteGroup& group, const FiniteGroup& sub);

/// Block-refinement test over all minimal blocks containing {1, x}.
/// Throws kNotTransitive for intransitive groups.
bool is_primitive(const FiniteGroup& group);
/// A nontrivial block containing point 1 if one exists (1-based).
std::optional<std::vector<std::size_t>> nontrivial_block(const FiniteGroup& group);

/// Smallest normal subgroup of `group` containing `seeds`.
FiniteGroup normal_closure(const FiniteGroup& group, const std::vector<Perm>& seeds);
/// Every normal subgroup, ordered by (order, elements). Intended for small groups.
std::vector<FiniteGroup> normal_subgroups(const FiniteGroup& group);

bool is_prime(long long n);

/// Normal subgroups n1 (transitive) and n2 (intransitive), both of prime index
/// p, with an isomorphism sigma: G/n1 -> G/n2.
///
/// Both quotients are cyclic of order p, so sigma is pinned down by one pair of
/// generating cosets: sigma(n1_generator^j n1) = n2_generator^j n2.
struct SubgroupPair {
  FiniteGroup n1;
  FiniteGroup n2;
  int p = 0;
  Perm n1_generator;
  Perm n2_generator;

  /// j in [0, p) with g in n1_generator^j n1.
  int n1_exponent(const Perm& g) const;
  /// j in [0, p) with g in n2_generator^j n2.
  int n2_exponent(const Perm& g) const;
  /// A representative of sigma(g n1).
  Perm sigma_representative(const Perm& g) const;
  /// The coset sigma(g n1), sorted.
  std::vector<Perm> sigma_coset(const Perm& g) const;
};

/// Builds the pair with the canonical sigma: the first generator of `group`
/// outside n1 is sent to the first generator outside n2.
SubgroupPair make_subgroup_pair(const FiniteGroup& group, FiniteGroup n1, FiniteGroup n2, int p);

/// Overrides sigma so that sigma(a n1) = b n2. Throws kInvalidPair unless a is
/// outside n1 and b outside n2.
SubgroupPair with_sigma(const SubgroupPair& pair, const Perm& a, const Perm& b);

/// Human-readable violations of the SubgroupPair invariants; empty when valid.
std::vector<std::string> validate_pair(const FiniteGroup& group, const SubgroupPair& pair);

/// All (transitive n1, intransitive n2) pairs of normal subgroups of index p.
///
/// The index-p normal subgroups are the preimages of hyperplanes of the
/// elementary abelian quotient G / <[G,G], G^p>. Pairs are ordered by
/// (n1 elements, n2 elements). Throws kNotTransitive or kNotPrime.
std::vector<SubgroupPair> find_index_p_normal_pairs(const FiniteGroup& group, int p);

/// Index-p normal subgroups in hyperplane order (exposed for testing).
std::vector<FiniteGroup> index_p_normal_subgroups(const FiniteGroup& group, int p);

}  // namespace arbor
