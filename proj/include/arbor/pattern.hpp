#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arbor/exact.hpp"
#include "arbor/group.hpp"
#include "arbor/perm.hpp"
#include "arbor/tree.hpp"

namespace arbor {

/// All pattern elements sharing one root permutation.
///
/// For depth-2 patterns the fiber is the full product of `child_labels`: an
/// element is (root; l_1, ..., l_d) with l_i drawn independently from
/// child_labels[i]. Depth-1 patterns leave `child_labels` empty.
struct Fiber {
  Perm root;
  std::vector<std::vector<Perm>> child_labels;  // each sorted, duplicate-free

  BigInt size() const;
};

/// A pattern group of depth 1 or 2, defining the recurrent group of finite
/// type G_P: every section of an element of G_P, truncated to the pattern
/// depth, lies in the pattern.
///
/// Depth-2 patterns are held in fibered product form and enumerated only on
/// demand, because the interesting ones (for example the dihedral
/// constructions of degree 8 and up) have far more elements than any cap.
class PatternGroup {
 public:
  /// Depth-1 pattern of a permutation group: G_P is the iterated wreath power.
  static PatternGroup wreath(const FiniteGroup& top);
  /// Depth-2 pattern from explicit fibers. Throws kShapeMismatch on malformed
  /// input (wrong degrees, wrong number of child sets, repeated roots).
  static PatternGroup from_fibers(std::size_t arity, std::vector<Fiber> fibers);
  /// Depth-2 pattern G[G]: every root of `g` with every child label in `g`.
  static PatternGroup full_wreath_depth2(const FiniteGroup& g);

  std::size_t arity() const { return arity_; }
  std::size_t depth() const { return depth_; }
  /// Sorted by root.
  const std::vector<Fiber>& fibers() const { return fibers_; }
  std::vector<Perm> roots() const;
  const Fiber* fiber_of(const Perm& root) const;
  std::optional<std::size_t> root_index(const Perm& root) const;

  BigInt order() const;
  std::map<Perm, BigInt> fiber_sizes() const;
  /// Group generated by the roots (equal to the root set when verified).
  FiniteGroup root_group(std::size_t cap = kDefaultElementCap) const;

  /// Depth-k portraits; throws kCapExceeded when order() > cap.
  std::vector<TreePortrait> elements(std::size_t cap = kDefaultElementCap) const;

  /// Fibers of the depth-2 windows of G_P: the fibers themselves at depth 2;
  /// at depth 1 every root paired with the whole pattern at each child.
  std::vector<Fiber> window_fibers() const;

 private:
  std::size_t arity_ = 1;
  std::size_t depth_ = 1;
  std::vector<Fiber> fibers_;
};

PatternGroup wreath_pattern(const FiniteGroup& top);

/// Depth-2 set {(a; h_1, ..., h_d) : a in top, h_i in labels}, the level-2
/// group of the wreath product top[labels]. Not self-replicating unless
/// labels is contained in top. Throws kShapeMismatch on a degree mismatch.
PatternGroup product_pattern(const FiniteGroup& top, const FiniteGroup& labels);

/// P = union over a in G of {(a; l_1, ..., l_d) : l_i in sigma(a N1)}, with
/// |P| = |G| |N2|^d. Throws kInvalidPair if `pair` fails validation, or if
/// the result is not closed under composition.
PatternGroup build_theorem12_pattern(const FiniteGroup& group, const SubgroupPair& pair);

struct PatternReport {
  bool closure = false;
  bool inverses = false;
  bool identity = false;
  bool root_is_group = false;
  bool root_transitive = false;
  bool self_replicating = false;
  bool uniform_fibers = false;
  /// For every level-1 vertex i, the depth-1 sections at i of the elements
  /// fixing i make up the whole root group.
  bool recurrent = false;
  std::vector<std::string> notes;  // first counterexample of each failed check

  bool all() const {
    return closure && inverses && identity && root_is_group && root_transitive &&
           self_replicating && uniform_fibers && recurrent;
  }
};

PatternReport verify_pattern_group(const PatternGroup& pattern);

/// H_2 for a depth-2 pattern: the elements with identity root.
struct KernelReport {
  std::size_t arity = 1;
  BigInt order;
  /// Labels occurring at each level-1 vertex among kernel elements.
  std::vector<std::vector<Perm>> vertex_labels;
  /// Orbits on the children of each level-1 vertex under those labels.
  std::vector<Partition> per_child_orbits;

  /// Depth-2 kernel portraits; throws kCapExceeded when order > cap.
  std::vector<TreePortrait> elements(std::size_t cap = kDefaultElementCap) const;
};

/// Throws kWrongDepth unless depth 2; kUnverifiedPattern without an identity.
KernelReport restriction_kernel(const PatternGroup& pattern);

/// Permutations through which H_level acts on the children of `vertex`
/// (|vertex| = level - 1). Supported for level <= 3.
std::vector<Perm> kernel_action(const PatternGroup& pattern, std::size_t level, const Word& vertex);

struct MartingaleVerdict {
  bool martingale = true;
  std::size_t failing_level = 0;  // 0 when martingale
  Word witness;                   // least vertex v with H_level intransitive on v*
  std::vector<std::size_t> levels_checked;
};

std::string describe(const MartingaleVerdict& verdict);

/// Kernel-transitivity criterion at levels 1-3. Throws kUnverifiedPattern
/// unless closure, inverses, identity and self-replication hold.
MartingaleVerdict martingale_check(const PatternGroup& pattern);

/// Order of the level-n group of G_P (window-valid depth-n portraits).
BigInt level_group_order(const PatternGroup& pattern, std::size_t level);
/// Visits every element of the level-n group in a fixed order. The portrait
/// passed to `visit` is reused between calls.
void for_each_level_element(const PatternGroup& pattern, std::size_t level,
                            const std::function<void(const TreePortrait&)>& visit);
/// Throws kCapExceeded when the level-n group is larger than `cap`.
std::vector<TreePortrait> level_group_elements(const PatternGroup& pattern, std::size_t level,
                                               std::size_t cap = kDefaultElementCap);

/// A depth-2 pattern of the shape {(a; l_1..l_d) : l_i in psi(a)} for a normal
/// subgroup N and a homomorphism psi: G -> G/N.
struct CosetPattern {
  FiniteGroup kernel;
  /// psi of each generator of G, as the least element of its coset.
  std::vector<Perm> generator_images;
  PatternGroup pattern;
};

/// Every coset pattern over `group`: all normal subgroups N and all
/// homomorphisms G -> G/N. Intended for small groups.
std::vector<CosetPattern> coset_patterns(const FiniteGroup& group);

}  // namespace arbor
