#include "arbor/pattern.hpp"

#include <algorithm>

#include "arbor/error.hpp"

namespace arbor {

namespace {

std::vector<Perm> sorted_unique(std::vector<Perm> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool sorted_contains(const std::vector<Perm>& v, const Perm& p) {
  return std::binary_search(v.begin(), v.end(), p);
}

const Fiber* find_fiber(const std::vector<Fiber>& fibers, const Perm& root) {
  auto it = std::lower_bound(fibers.begin(), fibers.end(), root,
                             [](const Fiber& f, const Perm& r) { return f.root < r; });
  if (it == fibers.end() || it->root != root) return nullptr;
  return &*it;
}

// Calls visit(choice) for every tuple in the product of `sets`.
template <typename Visit>
void for_each_tuple(const std::vector<std::vector<Perm>>& sets, Visit&& visit) {
  for (const auto& s : sets) {
    if (s.empty()) return;
  }
  std::vector<std::size_t> at(sets.size(), 0);
  while (true) {
    visit(at);
    std::size_t k = sets.size();
    while (k > 0) {
      --k;
      if (++at[k] < sets[k].size()) break;
      at[k] = 0;
      if (k == 0) return;
    }
    if (sets.empty()) return;
  }
}

void append_fiber_portraits(std::size_t d, const Perm& root,
                            const std::vector<std::vector<Perm>>& sets,
                            std::vector<TreePortrait>& out) {
  std::vector<Perm> labels(d + 1);
  labels[0] = root;
  for_each_tuple(sets, [&](const std::vector<std::size_t>& at) {
    for (std::size_t i = 0; i < d; ++i) labels[i + 1] = sets[i][at[i]];
    out.push_back(TreePortrait::from_labels(d, 2, labels));
  });
}

}  // namespace

BigInt Fiber::size() const {
  BigInt n = 1;
  for (const auto& s : child_labels) n *= static_cast<unsigned long>(s.size());
  return n;
}

PatternGroup PatternGroup::wreath(const FiniteGroup& top) {
  PatternGroup p;
  p.arity_ = top.degree();
  p.depth_ = 1;
  for (const Perm& g : top.elements()) p.fibers_.push_back(Fiber{g, {}});
  return p;
}

PatternGroup PatternGroup::from_fibers(std::size_t arity, std::vector<Fiber> fibers) {
  if (arity == 0 || arity > Perm::kMaxDegree) {
    throw Error(ErrorCode::kShapeMismatch, "arity " + std::to_string(arity));
  }
  for (Fiber& f : fibers) {
    if (f.root.degree() != arity) {
      throw Error(ErrorCode::kShapeMismatch, "root " + f.root.to_string() + " has wrong degree");
    }
    if (f.child_labels.size() != arity) {
      throw Error(ErrorCode::kShapeMismatch, "fiber over " + f.root.to_string() + " has " +
                                                 std::to_string(f.child_labels.size()) +
                                                 " child sets, expected " + std::to_string(arity));
    }
    for (auto& s : f.child_labels) {
      for (const Perm& l : s) {
        if (l.degree() != arity) {
          throw Error(ErrorCode::kShapeMismatch, "label " + l.to_string() + " has wrong degree");
        }
      }
      s = sorted_unique(std::move(s));
      if (s.empty()) {
        throw Error(ErrorCode::kShapeMismatch, "empty label set over " + f.root.to_string());
      }
    }
  }
  std::sort(fibers.begin(), fibers.end(),
            [](const Fiber& a, const Fiber& b) { return a.root < b.root; });
  for (std::size_t i = 1; i < fibers.size(); ++i) {
    if (fibers[i].root == fibers[i - 1].root) {
      throw Error(ErrorCode::kShapeMismatch, "root " + fibers[i].root.to_string() + " repeated");
    }
  }
  PatternGroup p;
  p.arity_ = arity;
  p.depth_ = 2;
  p.fibers_ = std::move(fibers);
  return p;
}

PatternGroup PatternGroup::full_wreath_depth2(const FiniteGroup& g) { return product_pattern(g, g); }

std::vector<Perm> PatternGroup::roots() const {
  std::vector<Perm> out;
  out.reserve(fibers_.size());
  for (const Fiber& f : fibers_) out.push_back(f.root);
  return out;
}

const Fiber* PatternGroup::fiber_of(const Perm& root) const { return find_fiber(fibers_, root); }

std::optional<std::size_t> PatternGroup::root_index(const Perm& root) const {
  const Fiber* f = fiber_of(root);
  if (!f) return std::nullopt;
  return static_cast<std::size_t>(f - fibers_.data());
}

BigInt PatternGroup::order() const {
  BigInt n = 0;
  for (const Fiber& f : fibers_) n += f.size();
  return n;
}

std::map<Perm, BigInt> PatternGroup::fiber_sizes() const {
  std::map<Perm, BigInt> out;
  for (const Fiber& f : fibers_) out.emplace(f.root, f.size());
  return out;
}

FiniteGroup PatternGroup::root_group(std::size_t cap) const {
  return FiniteGroup::generate(arity_, roots(), cap);
}

std::vector<TreePortrait> PatternGroup::elements(std::size_t cap) const {
  if (order() > static_cast<unsigned long>(cap)) {
    throw Error(ErrorCode::kCapExceeded, "pattern has " + order().get_str() +
                                             " elements, cap is " + std::to_string(cap));
  }
  std::vector<TreePortrait> out;
  for (const Fiber& f : fibers_) {
    if (depth_ == 1) {
      out.push_back(TreePortrait::from_perm(f.root));
    } else {
      append_fiber_portraits(arity_, f.root, f.child_labels, out);
    }
  }
  return out;
}

std::vector<Fiber> PatternGroup::window_fibers() const {
  if (depth_ == 2) return fibers_;
  const std::vector<Perm> all = roots();
  std::vector<Fiber> out;
  for (const Fiber& f : fibers_) {
    out.push_back(Fiber{f.root, std::vector<std::vector<Perm>>(arity_, all)});
  }
  return out;
}

PatternGroup wreath_pattern(const FiniteGroup& top) { return PatternGroup::wreath(top); }

PatternGroup product_pattern(const FiniteGroup& top, const FiniteGroup& labels) {
  if (top.degree() != labels.degree()) {
    throw Error(ErrorCode::kShapeMismatch, "top and label groups differ in degree");
  }
  std::vector<Fiber> fibers;
  for (const Perm& a : top.elements()) {
    fibers.push_back(Fiber{a, std::vector<std::vector<Perm>>(top.degree(), labels.elements())});
  }
  return PatternGroup::from_fibers(top.degree(), std::move(fibers));
}

PatternGroup build_theorem12_pattern(const FiniteGroup& group, const SubgroupPair& pair) {
  const std::vector<std::string> problems = validate_pair(group, pair);
  if (!problems.empty()) {
    std::string msg = problems.front();
    for (std::size_t i = 1; i < problems.size(); ++i) msg += "; " + problems[i];
    throw Error(ErrorCode::kInvalidPair, msg);
  }
  const std::size_t d = group.degree();
  std::vector<Fiber> fibers;
  fibers.reserve(group.order());
  for (const Perm& a : group.elements()) {
    fibers.push_back(Fiber{a, std::vector<std::vector<Perm>>(d, pair.sigma_coset(a))});
  }
  PatternGroup p = PatternGroup::from_fibers(d, std::move(fibers));
  const PatternReport report = verify_pattern_group(p);
  if (!report.closure || !report.inverses || !report.identity) {
    throw Error(ErrorCode::kInvalidPair,
                "constructed set is not a group: " +
                    (report.notes.empty() ? std::string("unknown") : report.notes.front()));
  }
  return p;
}

PatternReport verify_pattern_group(const PatternGroup& pattern) {
  PatternReport r;
  const std::size_t d = pattern.arity();
  const std::vector<Perm> roots = pattern.roots();
  const Perm e = Perm::identity(d);
  const auto& fibers = pattern.fibers();

  r.root_is_group = !roots.empty() && sorted_contains(roots, e);
  for (const Perm& a : roots) {
    if (!r.root_is_group) break;
    if (!sorted_contains(roots, inverse(a))) {
      r.root_is_group = false;
      r.notes.push_back("root set lacks the inverse of " + a.to_string());
    }
    for (const Perm& b : roots) {
      if (!sorted_contains(roots, compose(a, b))) {
        r.root_is_group = false;
        r.notes.push_back("root set not closed: " + a.to_string() + " * " + b.to_string());
        break;
      }
    }
  }
  r.root_transitive = !roots.empty() && orbits_of(d, roots).size() == 1;
  if (!r.root_transitive) r.notes.push_back("root group is not transitive");

  if (pattern.depth() == 1) {
    r.closure = r.inverses = r.identity = r.root_is_group;
    r.self_replicating = true;
    r.uniform_fibers = true;
    r.recurrent = r.root_transitive && r.root_is_group;
    return r;
  }

  const Fiber* id_fiber = pattern.fiber_of(e);
  r.identity = id_fiber != nullptr;
  if (id_fiber) {
    for (std::size_t i = 0; i < d; ++i) {
      if (!sorted_contains(id_fiber->child_labels[i], e)) r.identity = false;
    }
  }
  if (!r.identity) r.notes.push_back("identity portrait missing");

  // (a; A_v) * (b; B_v) = (ab; A_{b(v)} B_v), so closure is a check on label sets.
  r.closure = true;
  for (const Fiber& fa : fibers) {
    for (const Fiber& fb : fibers) {
      const Perm ab = compose(fa.root, fb.root);
      const Fiber* fab = pattern.fiber_of(ab);
      if (!fab) {
        r.closure = false;
        r.notes.push_back("no element with root " + ab.to_string() + " = " +
                          fa.root.to_string() + " * " + fb.root.to_string());
        break;
      }
      for (std::size_t v = 0; v < d && r.closure; ++v) {
        for (const Perm& x : fa.child_labels[fb.root(v)]) {
          for (const Perm& y : fb.child_labels[v]) {
            if (!sorted_contains(fab->child_labels[v], compose(x, y))) {
              r.closure = false;
              r.notes.push_back("product of " + fa.root.to_string() + " and " +
                                fb.root.to_string() + " leaves the pattern at vertex " +
                                std::to_string(v + 1));
              break;
            }
          }
          if (!r.closure) break;
        }
      }
      if (!r.closure) break;
    }
    if (!r.closure) break;
  }

  r.inverses = true;
  for (const Fiber& fa : fibers) {
    const Fiber* finv = pattern.fiber_of(inverse(fa.root));
    if (!finv) {
      r.inverses = false;
      r.notes.push_back("no element with root " + inverse(fa.root).to_string());
      break;
    }
    for (std::size_t v = 0; v < d && r.inverses; ++v) {
      for (const Perm& x : fa.child_labels[v]) {
        if (!sorted_contains(finv->child_labels[fa.root(v)], inverse(x))) {
          r.inverses = false;
          r.notes.push_back("inverse of an element over " + fa.root.to_string() +
                            " leaves the pattern");
          break;
        }
      }
    }
    if (!r.inverses) break;
  }

  r.self_replicating = true;
  for (const Fiber& f : fibers) {
    for (const auto& s : f.child_labels) {
      for (const Perm& l : s) {
        if (!sorted_contains(roots, l)) {
          r.self_replicating = false;
          r.notes.push_back("section " + l.to_string() + " has an empty fiber");
          break;
        }
      }
      if (!r.self_replicating) break;
    }
    if (!r.self_replicating) break;
  }

  r.uniform_fibers = true;
  for (const Fiber& f : fibers) {
    if (f.size() != fibers.front().size()) {
      r.uniform_fibers = false;
      r.notes.push_back("fiber over " + f.root.to_string() + " has size " + f.size().get_str() +
                        ", fiber over " + fibers.front().root.to_string() + " has size " +
                        fibers.front().size().get_str());
      break;
    }
  }

  r.recurrent = r.root_transitive;
  for (std::size_t i = 0; i < d && r.recurrent; ++i) {
    std::vector<Perm> reached;
    for (const Fiber& f : fibers) {
      if (f.root(i) != i) continue;
      reached.insert(reached.end(), f.child_labels[i].begin(), f.child_labels[i].end());
    }
    reached = sorted_unique(std::move(reached));
    if (reached != roots) {
      r.recurrent = false;
      r.notes.push_back("stabilizer sections at vertex " + std::to_string(i + 1) +
                        " give " + std::to_string(reached.size()) + " of " +
                        std::to_string(roots.size()) + " roots");
    }
  }
  return r;
}

std::vector<TreePortrait> KernelReport::elements(std::size_t cap) const {
  if (order > static_cast<unsigned long>(cap)) {
    throw Error(ErrorCode::kCapExceeded,
                "kernel has " + order.get_str() + " elements, cap is " + std::to_string(cap));
  }
  std::vector<TreePortrait> out;
  append_fiber_portraits(arity, Perm::identity(arity), vertex_labels, out);
  return out;
}

KernelReport restriction_kernel(const PatternGroup& pattern) {
  if (pattern.depth() != 2) {
    throw Error(ErrorCode::kWrongDepth, "restriction kernel needs a depth-2 pattern");
  }
  const std::size_t d = pattern.arity();
  const Fiber* id_fiber = pattern.fiber_of(Perm::identity(d));
  if (!id_fiber) throw Error(ErrorCode::kUnverifiedPattern, "pattern lacks the identity");
  KernelReport k;
  k.arity = d;
  k.order = id_fiber->size();
  k.vertex_labels = id_fiber->child_labels;
  for (const auto& labels : k.vertex_labels) k.per_child_orbits.push_back(orbits_of(d, labels));
  return k;
}

std::vector<Perm> kernel_action(const PatternGroup& pattern, std::size_t level, const Word& vertex) {
  const std::size_t d = pattern.arity();
  if (level < 1 || level > 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "kernel action supported at levels 1-3, got " + std::to_string(level));
  }
  if (vertex.size() != level - 1) {
    throw Error(ErrorCode::kInvalidArgument, "vertex " + format_word(vertex) +
                                                 " is not on level " + std::to_string(level - 1));
  }
  for (std::size_t x : vertex) {
    if (x >= d) throw Error(ErrorCode::kLetterOutOfRange, format_word(vertex));
  }
  // H_1 is the level-1 group itself; for depth 1 every deeper kernel is a full
  // product of copies of the pattern.
  if (level == 1 || pattern.depth() == 1) return pattern.roots();
  const Fiber* id_fiber = pattern.fiber_of(Perm::identity(d));
  if (!id_fiber) throw Error(ErrorCode::kUnverifiedPattern, "pattern lacks the identity");
  // Level 2: labels at i over the identity root. Level 3: an element trivial on
  // level 2 has identity labels at the root and at i, so the window at i is an
  // identity-root element and the label at (i, j) ranges over its j-th set.
  return id_fiber->child_labels[vertex.back()];
}

std::string describe(const MartingaleVerdict& verdict) {
  std::string levels;
  for (std::size_t i = 0; i < verdict.levels_checked.size(); ++i) {
    if (i) levels += ", ";
    levels += std::to_string(verdict.levels_checked[i]);
  }
  if (verdict.martingale) return "Martingale (levels " + levels + " checked)";
  return "NonMartingale(level " + std::to_string(verdict.failing_level) + ", vertex " +
         format_word(verdict.witness) + ")";
}

MartingaleVerdict martingale_check(const PatternGroup& pattern) {
  const PatternReport report = verify_pattern_group(pattern);
  if (!report.closure || !report.inverses || !report.identity || !report.self_replicating) {
    throw Error(ErrorCode::kUnverifiedPattern,
                report.notes.empty() ? std::string("pattern failed verification")
                                     : report.notes.front());
  }
  const std::size_t d = pattern.arity();
  MartingaleVerdict verdict;
  for (std::size_t level = 1; level <= 3; ++level) {
    verdict.levels_checked.push_back(level);
    const std::size_t first = internal_vertex_count(d, level - 1);
    const std::size_t last = internal_vertex_count(d, level);
    for (std::size_t idx = first; idx < last; ++idx) {
      const Word v = vertex_word(d, idx);
      if (orbits_of(d, kernel_action(pattern, level, v)).size() != 1) {
        verdict.martingale = false;
        verdict.failing_level = level;
        verdict.witness = v;
        return verdict;
      }
    }
  }
  return verdict;
}

namespace {

class LevelWalker {
 public:
  LevelWalker(const PatternGroup& pattern, std::size_t level)
      : d_(pattern.arity()), windows_(pattern.window_fibers()), roots_(pattern.roots()) {
    if (level == 0) throw Error(ErrorCode::kInvalidArgument, "level must be at least 1");
    portrait_ = TreePortrait::identity(d_, level);
    slots_ = internal_vertex_count(d_, level);
  }

  void run(const std::function<void(const TreePortrait&)>& visit) {
    visit_ = &visit;
    for (const Perm& s : roots_) {
      portrait_.set_label(0, s);
      fill(1);
    }
  }

 private:
  void fill(std::size_t u) {
    if (u == slots_) {
      (*visit_)(portrait_);
      return;
    }
    const std::size_t parent = (u - 1) / d_;
    const std::size_t letter = (u - 1) % d_;
    const Fiber* window = find_fiber(windows_, portrait_.label(parent));
    if (!window) return;
    for (const Perm& l : window->child_labels[letter]) {
      portrait_.set_label(u, l);
      fill(u + 1);
    }
  }

  std::size_t d_;
  std::vector<Fiber> windows_;
  std::vector<Perm> roots_;
  TreePortrait portrait_;
  std::size_t slots_ = 1;
  const std::function<void(const TreePortrait&)>* visit_ = nullptr;
};

}  // namespace

BigInt level_group_order(const PatternGroup& pattern, std::size_t level) {
  if (level == 0) throw Error(ErrorCode::kInvalidArgument, "level must be at least 1");
  const std::vector<Fiber> windows = pattern.window_fibers();
  const std::vector<Perm> roots = pattern.roots();
  // completions[m][s]: ways to fill an m-level subtree whose top label is roots[s].
  std::vector<BigInt> below(roots.size(), 1);
  for (std::size_t m = 2; m <= level; ++m) {
    std::vector<BigInt> next(roots.size(), 0);
    for (std::size_t s = 0; s < roots.size(); ++s) {
      const Fiber* w = find_fiber(windows, roots[s]);
      if (!w) continue;
      BigInt product = 1;
      for (const auto& labels : w->child_labels) {
        BigInt sum = 0;
        for (const Perm& l : labels) {
          auto it = std::lower_bound(roots.begin(), roots.end(), l);
          if (it != roots.end() && *it == l) {
            sum += below[static_cast<std::size_t>(it - roots.begin())];
          } else if (m == 2) {
            sum += 1;
          }
        }
        product *= sum;
      }
      next[s] = product;
    }
    below = std::move(next);
  }
  BigInt total = 0;
  for (const BigInt& c : below) total += c;
  return total;
}

void for_each_level_element(const PatternGroup& pattern, std::size_t level,
                            const std::function<void(const TreePortrait&)>& visit) {
  LevelWalker(pattern, level).run(visit);
}

std::vector<TreePortrait> level_group_elements(const PatternGroup& pattern, std::size_t level,
                                               std::size_t cap) {
  const BigInt order = level_group_order(pattern, level);
  if (order > static_cast<unsigned long>(cap)) {
    throw Error(ErrorCode::kCapExceeded, "level-" + std::to_string(level) + " group has " +
                                             order.get_str() + " elements, cap is " +
                                             std::to_string(cap));
  }
  std::vector<TreePortrait> out;
  out.reserve(order.get_ui());
  for_each_level_element(pattern, level, [&](const TreePortrait& g) { out.push_back(g); });
  return out;
}

std::vector<CosetPattern> coset_patterns(const FiniteGroup& group) {
  const std::size_t d = group.degree();
  const auto& elements = group.elements();
  const auto& gens = group.generators();
  std::vector<CosetPattern> out;
  for (const FiniteGroup& n : normal_subgroups(group)) {
    const std::vector<Coset> cs = cosets(group, n);
    std::vector<std::size_t> coset_of(elements.size());
    for (std::size_t c = 0; c < cs.size(); ++c) {
      for (const Perm& x : cs[c].elements) coset_of[*group.index_of(x)] = c;
    }
    auto coset_index = [&](const Perm& x) { return coset_of[*group.index_of(x)]; };

    std::vector<std::size_t> img(gens.size(), 0);
    while (true) {
      // Propagate psi along the Cayley graph; reject on any inconsistency.
      std::vector<long> psi(elements.size(), -1);
      const std::size_t e_idx = *group.index_of(Perm::identity(d));
      psi[e_idx] = static_cast<long>(coset_of[e_idx]);
      std::vector<std::size_t> queue{e_idx};
      bool ok = true;
      for (std::size_t q = 0; q < queue.size() && ok; ++q) {
        const Perm& x = elements[queue[q]];
        const Perm& rx = cs[static_cast<std::size_t>(psi[queue[q]])].representative;
        for (std::size_t k = 0; k < gens.size(); ++k) {
          const std::size_t y = *group.index_of(compose(gens[k], x));
          const long c = static_cast<long>(coset_index(compose(cs[img[k]].representative, rx)));
          if (psi[y] == -1) {
            psi[y] = c;
            queue.push_back(y);
          } else if (psi[y] != c) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        std::vector<Fiber> fibers;
        for (std::size_t a = 0; a < elements.size(); ++a) {
          fibers.push_back(Fiber{
              elements[a],
              std::vector<std::vector<Perm>>(d, cs[static_cast<std::size_t>(psi[a])].elements)});
        }
        std::vector<Perm> images;
        for (std::size_t k = 0; k < gens.size(); ++k) images.push_back(cs[img[k]].representative);
        out.push_back(CosetPattern{n, std::move(images), PatternGroup::from_fibers(d, fibers)});
      }
      std::size_t k = 0;
      while (k < img.size()) {
        if (++img[k] < cs.size()) break;
        img[k++] = 0;
      }
      if (k == img.size()) break;
    }
  }
  return out;
}

}  // namespace arbor
