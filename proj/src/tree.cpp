#include "arbor/tree.hpp"

#include <sstream>

#include "arbor/error.hpp"

namespace arbor {

namespace {

constexpr std::string_view kEpsilon = "ε";

std::size_t child_index(std::size_t arity, std::size_t vertex, std::size_t letter) {
  return vertex * arity + 1 + letter;
}

void require_same_shape(const TreePortrait& g, const TreePortrait& h) {
  if (g.arity() != h.arity() || g.depth() != h.depth()) {
    throw Error(ErrorCode::kShapeMismatch,
                "portraits of shape (" + std::to_string(g.arity()) + ", " +
                    std::to_string(g.depth()) + ") and (" + std::to_string(h.arity()) + ", " +
                    std::to_string(h.depth()) + ")");
  }
}

// image[v] = index of h(v) for every internal vertex v.
std::vector<std::size_t> vertex_images(const TreePortrait& h) {
  const std::size_t d = h.arity();
  const std::size_t n = h.labels().size();
  std::vector<std::size_t> image(n, 0);
  const std::size_t parents = internal_vertex_count(d, h.depth() - 1);
  for (std::size_t v = 0; v < parents; ++v) {
    for (std::size_t x = 0; x < d; ++x) {
      image[child_index(d, v, x)] = child_index(d, image[v], h.label(v)(x));
    }
  }
  return image;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Word parse_word(std::string_view text) {
  std::string t = trim(text);
  if (t.empty() || t == kEpsilon) return {};
  Word w;
  std::istringstream in(t);
  std::string token;
  while (in >> token) {
    std::size_t value = 0;
    for (char c : token) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw Error(ErrorCode::kParse, "bad letter '" + token + "' in word '" + t + "'");
      }
      value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    if (value == 0) throw Error(ErrorCode::kLetterOutOfRange, "letters are 1-based");
    w.push_back(value - 1);
  }
  return w;
}

std::string format_word(const Word& w) {
  if (w.empty()) return std::string(kEpsilon);
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w[i] + 1);
  }
  return out;
}

std::size_t internal_vertex_count(std::size_t arity, std::size_t depth) {
  std::size_t count = 0;
  std::size_t level = 1;
  for (std::size_t k = 0; k < depth; ++k) {
    count += level;
    level *= arity;
  }
  return count;
}

std::size_t vertex_index(std::size_t arity, const Word& w) {
  std::size_t index = 0;
  for (std::size_t x : w) index = child_index(arity, index, x);
  return index;
}

Word vertex_word(std::size_t arity, std::size_t index) {
  Word w;
  while (index > 0) {
    w.push_back((index - 1) % arity);
    index = (index - 1) / arity;
  }
  return Word(w.rbegin(), w.rend());
}

TreePortrait TreePortrait::identity(std::size_t arity, std::size_t depth) {
  return from_labels(arity, depth,
                     std::vector<Perm>(internal_vertex_count(arity, depth), Perm::identity(arity)));
}

TreePortrait TreePortrait::from_labels(std::size_t arity, std::size_t depth,
                                       std::vector<Perm> labels) {
  if (depth == 0) throw Error(ErrorCode::kShapeMismatch, "portrait depth must be at least 1");
  if (labels.size() != internal_vertex_count(arity, depth)) {
    throw Error(ErrorCode::kShapeMismatch,
                "expected " + std::to_string(internal_vertex_count(arity, depth)) +
                    " labels, got " + std::to_string(labels.size()));
  }
  for (const Perm& p : labels) {
    if (p.degree() != arity) {
      throw Error(ErrorCode::kDegreeMismatch,
                  "label " + p.to_string() + " has degree " + std::to_string(p.degree()));
    }
  }
  TreePortrait g;
  g.arity_ = arity;
  g.depth_ = depth;
  g.labels_ = std::move(labels);
  return g;
}

TreePortrait TreePortrait::from_perm(const Perm& p) { return from_labels(p.degree(), 1, {p}); }

const Perm& TreePortrait::label(const Word& v) const {
  if (v.size() >= depth_) {
    throw Error(ErrorCode::kWordTooLong, "vertex " + format_word(v) + " is not internal");
  }
  for (std::size_t x : v) {
    if (x >= arity_) throw Error(ErrorCode::kLetterOutOfRange, format_word(v));
  }
  return labels_[vertex_index(arity_, v)];
}

void TreePortrait::set_label(std::size_t vertex, const Perm& p) {
  if (p.degree() != arity_) throw Error(ErrorCode::kDegreeMismatch, "label degree");
  labels_.at(vertex) = p;
}

bool TreePortrait::is_identity() const {
  for (const Perm& p : labels_) {
    if (!p.is_identity()) return false;
  }
  return true;
}

Word act(const TreePortrait& g, const Word& w) {
  if (w.size() > g.depth()) {
    throw Error(ErrorCode::kWordTooLong, "word of length " + std::to_string(w.size()) +
                                             " on a portrait of depth " +
                                             std::to_string(g.depth()));
  }
  Word out;
  out.reserve(w.size());
  std::size_t v = 0;
  for (std::size_t x : w) {
    if (x >= g.arity()) throw Error(ErrorCode::kLetterOutOfRange, format_word(w));
    out.push_back(g.label(v)(x));
    v = child_index(g.arity(), v, x);  // descend along the pre-image path
  }
  return out;
}

TreePortrait compose_tree(const TreePortrait& g, const TreePortrait& h) {
  require_same_shape(g, h);
  const std::vector<std::size_t> h_image = vertex_images(h);
  std::vector<Perm> labels(h.labels().size());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    labels[v] = compose(g.label(h_image[v]), h.label(v));
  }
  return TreePortrait::from_labels(g.arity(), g.depth(), std::move(labels));
}

TreePortrait inverse_tree(const TreePortrait& g) {
  const std::vector<std::size_t> image = vertex_images(g);
  std::vector<Perm> labels(g.labels().size());
  for (std::size_t v = 0; v < labels.size(); ++v) labels[image[v]] = inverse(g.label(v));
  return TreePortrait::from_labels(g.arity(), g.depth(), std::move(labels));
}

TreePortrait section(const TreePortrait& g, const Word& v) {
  if (v.size() >= g.depth()) {
    throw Error(ErrorCode::kWordTooLong, "section at " + format_word(v) + " of a depth-" +
                                             std::to_string(g.depth()) + " portrait");
  }
  for (std::size_t x : v) {
    if (x >= g.arity()) throw Error(ErrorCode::kLetterOutOfRange, format_word(v));
  }
  const std::size_t d = g.arity();
  const std::size_t depth = g.depth() - v.size();
  const std::size_t n = internal_vertex_count(d, depth);
  std::vector<std::size_t> source(n);
  source[0] = vertex_index(d, v);
  const std::size_t parents = internal_vertex_count(d, depth - 1);
  for (std::size_t u = 0; u < parents; ++u) {
    for (std::size_t x = 0; x < d; ++x) source[child_index(d, u, x)] = child_index(d, source[u], x);
  }
  std::vector<Perm> labels(n);
  for (std::size_t u = 0; u < n; ++u) labels[u] = g.label(source[u]);
  return TreePortrait::from_labels(d, depth, std::move(labels));
}

namespace {

void count_fixed(const TreePortrait& g, std::size_t vertex, std::size_t level,
                 std::vector<std::uint64_t>& counts) {
  const Perm& s = g.label(vertex);
  for (std::size_t x = 0; x < g.arity(); ++x) {
    if (s(x) != x) continue;
    ++counts[level];
    if (level + 1 < g.depth()) count_fixed(g, child_index(g.arity(), vertex, x), level + 1, counts);
  }
}

}  // namespace

std::vector<std::uint64_t> fixed_word_profile(const TreePortrait& g) {
  std::vector<std::uint64_t> counts(g.depth(), 0);
  count_fixed(g, 0, 0, counts);
  return counts;
}

std::uint64_t fixed_words(const TreePortrait& g, std::size_t level) {
  if (level < 1 || level > g.depth()) {
    throw Error(ErrorCode::kInvalidArgument, "level " + std::to_string(level) +
                                                 " outside 1.." + std::to_string(g.depth()));
  }
  return fixed_word_profile(restrict_to(g, level))[level - 1];
}

TreePortrait restrict_to(const TreePortrait& g, std::size_t depth) {
  if (depth < 1 || depth > g.depth()) {
    throw Error(ErrorCode::kInvalidArgument, "restriction depth " + std::to_string(depth) +
                                                 " outside 1.." + std::to_string(g.depth()));
  }
  std::vector<Perm> labels(g.labels().begin(),
                           g.labels().begin() +
                               static_cast<std::ptrdiff_t>(internal_vertex_count(g.arity(), depth)));
  return TreePortrait::from_labels(g.arity(), depth, std::move(labels));
}

std::string format_portrait(const TreePortrait& g) {
  std::string out;
  for (std::size_t v = 0; v < g.labels().size(); ++v) {
    out += format_word(vertex_word(g.arity(), v));
    out += ": ";
    out += g.label(v).to_string();
    out += '\n';
  }
  return out;
}

TreePortrait parse_portrait(std::string_view text, std::size_t arity, std::size_t depth) {
  const std::size_t n = internal_vertex_count(arity, depth);
  std::vector<Perm> labels(n, Perm::identity(arity));
  std::vector<bool> seen(n, false);
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto colon = t.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::kParse, "missing ':' in '" + t + "'");
    Word w = parse_word(t.substr(0, colon));
    if (w.size() >= depth) throw Error(ErrorCode::kWordTooLong, format_word(w));
    for (std::size_t x : w) {
      if (x >= arity) throw Error(ErrorCode::kLetterOutOfRange, format_word(w));
    }
    std::size_t v = vertex_index(arity, w);
    if (seen[v]) throw Error(ErrorCode::kParse, "vertex " + format_word(w) + " listed twice");
    seen[v] = true;
    labels[v] = Perm::parse(t.substr(colon + 1), arity);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v]) {
      throw Error(ErrorCode::kParse, "vertex " + format_word(vertex_word(arity, v)) + " missing");
    }
  }
  return TreePortrait::from_labels(arity, depth, std::move(labels));
}

}  // namespace arbor
