#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "arbor/perm.hpp"

namespace arbor {

/// A word over {0, ..., d-1}; textual forms are 1-based and space separated.
using Word = std::vector<std::size_t>;

/// "1 1" -> {0, 0}; "" or "ε" -> empty word.
Word parse_word(std::string_view text);
/// {0, 0} -> "1 1"; the empty word prints as "ε".
std::string format_word(const Word& w);

/// Number of vertices of length < depth, i.e. (d^depth - 1) / (d - 1).
std::size_t internal_vertex_count(std::size_t arity, std::size_t depth);
/// Breadth-first index of a vertex: shorter words first, then lexicographic.
std::size_t vertex_index(std::size_t arity, const Word& w);
Word vertex_word(std::size_t arity, std::size_t index);

/// An automorphism of the depth-n truncated d-ary tree, stored densely as one
/// permutation per internal vertex. The label at v is the section g_v
/// restricted to the first letter: g(vx) = g(v) g_v(x).
class TreePortrait {
 public:
  static TreePortrait identity(std::size_t arity, std::size_t depth);
  /// `labels` in breadth-first vertex order; throws kShapeMismatch.
  static TreePortrait from_labels(std::size_t arity, std::size_t depth, std::vector<Perm> labels);
  /// The depth-1 portrait of a single permutation.
  static TreePortrait from_perm(const Perm& p);

  std::size_t arity() const { return arity_; }
  std::size_t depth() const { return depth_; }
  const std::vector<Perm>& labels() const { return labels_; }
  const Perm& label(std::size_t vertex) const { return labels_[vertex]; }
  const Perm& label(const Word& v) const;
  void set_label(std::size_t vertex, const Perm& p);

  /// Root label: the action on level 1.
  const Perm& root() const { return labels_.front(); }
  bool is_identity() const;

  friend bool operator==(const TreePortrait&, const TreePortrait&) = default;
  friend auto operator<=>(const TreePortrait& a, const TreePortrait& b) {
    return a.labels_ <=> b.labels_;
  }

 private:
  std::size_t arity_ = 1;
  std::size_t depth_ = 0;
  std::vector<Perm> labels_;
};

/// Image of a word of length <= depth. Throws kWordTooLong, kLetterOutOfRange.
Word act(const TreePortrait& g, const Word& w);

/// act(compose_tree(g, h), w) == act(g, act(h, w)). Throws kShapeMismatch.
TreePortrait compose_tree(const TreePortrait& g, const TreePortrait& h);
TreePortrait inverse_tree(const TreePortrait& g);

/// Portrait of the subtree at v, of depth depth - |v|. Throws kWordTooLong
/// unless |v| < depth.
TreePortrait section(const TreePortrait& g, const Word& v);

/// Number of level-k words fixed by g; 1 <= k <= depth.
std::uint64_t fixed_words(const TreePortrait& g, std::size_t level);
/// fixed_words for every level 1..depth in one pass.
std::vector<std::uint64_t> fixed_word_profile(const TreePortrait& g);

/// Truncation to depth m, 1 <= m <= depth.
TreePortrait restrict_to(const TreePortrait& g, std::size_t depth);

/// One line per vertex, "<word or ε>: <cycle notation>", breadth-first.
std::string format_portrait(const TreePortrait& g);
/// Inverse of format_portrait; every vertex must be listed exactly once.
TreePortrait parse_portrait(std::string_view text, std::size_t arity, std::size_t depth);

}  // namespace arbor
