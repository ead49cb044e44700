#include "arbor/process.hpp"

#include <algorithm>

#include "arbor/error.hpp"

namespace arbor {

namespace {

using Vector = std::vector<std::uint64_t>;
using Counts = std::map<Vector, BigInt>;

void require_dp_ready(const PatternGroup& pattern) {
  const PatternReport r = verify_pattern_group(pattern);
  if (!r.closure || !r.inverses || !r.identity || !r.self_replicating) {
    throw Error(ErrorCode::kUnverifiedPattern,
                r.notes.empty() ? std::string("pattern failed verification") : r.notes.front());
  }
  if (!r.uniform_fibers) {
    throw Error(ErrorCode::kNonUniformFibers,
                r.notes.empty() ? std::string("fiber sizes differ") : r.notes.back());
  }
}

void add_into(Counts& acc, const Counts& x) {
  for (const auto& [v, c] : x) acc[v] += c;
}

BigInt total_of(const Counts& x) {
  BigInt t = 0;
  for (const auto& [v, c] : x) t += c;
  return t;
}

Counts convolve(const Counts& a, const Counts& b, std::size_t cap) {
  Counts out;
  Vector v;
  BigInt product;
  for (const auto& [va, ca] : a) {
    for (const auto& [vb, cb] : b) {
      v.resize(va.size());
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = va[k] + vb[k];
      product = ca * cb;
      auto it = out.find(v);
      if (it == out.end()) {
        out.emplace(v, product);
      } else {
        it->second += product;
      }
    }
    if (out.size() > cap) {
      throw Error(ErrorCode::kCapExceeded,
                  "distribution support exceeds " + std::to_string(cap) + " vectors");
    }
  }
  return out;
}

void check_level(const JointFixDistribution& dist, std::size_t k) {
  if (k < 1 || k > dist.levels) {
    throw Error(ErrorCode::kInvalidArgument,
                "level " + std::to_string(k) + " outside 1.." + std::to_string(dist.levels));
  }
}

}  // namespace

Rational JointFixDistribution::total() const {
  Rational t = 0;
  for (const auto& [v, w] : weights) t += w;
  return t;
}

Rational JointFixDistribution::expectation(std::size_t k) const {
  check_level(*this, k);
  Rational e = 0;
  for (const auto& [v, w] : weights) e += w * Rational(static_cast<unsigned long>(v[k - 1]));
  return e;
}

JointFixDistribution JointFixDistribution::marginal(std::size_t k) const {
  check_level(*this, k);
  JointFixDistribution m;
  m.arity = arity;
  m.levels = k;
  for (const auto& [v, w] : weights) m.weights[Vector(v.begin(), v.begin() + k)] += w;
  return m;
}

std::string format_distribution(const JointFixDistribution& dist) {
  std::string out;
  for (const auto& [v, w] : dist.weights) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(v[k]);
    }
    out += " : " + fraction_string(w) + "\n";
  }
  return out;
}

JointFixDistribution exact_joint_distribution(const PatternGroup& pattern, std::size_t levels,
                                              std::size_t max_levels, std::size_t support_cap) {
  if (levels < 1 || levels > max_levels) {
    throw Error(ErrorCode::kInvalidArgument, "levels must lie in 1.." + std::to_string(max_levels) +
                                                 ", got " + std::to_string(levels));
  }
  require_dp_ready(pattern);
  const std::size_t d = pattern.arity();
  const std::vector<Fiber> windows = pattern.window_fibers();
  const std::vector<Perm> roots = pattern.roots();

  auto root_slot = [&](const Perm& l) -> std::size_t {
    return static_cast<std::size_t>(std::lower_bound(roots.begin(), roots.end(), l) -
                                    roots.begin());
  };

  // below[s]: counts of fixed-point vectors over all completions of an
  // m-level subtree topped by roots[s] (windows are sorted like roots).
  std::vector<Counts> below(roots.size());
  for (std::size_t s = 0; s < roots.size(); ++s) {
    below[s][Vector{fixed_point_count(roots[s])}] = 1;
  }
  // Children with equal label sets contribute identical mixtures, and the
  // convolution only depends on the multiset of mixtures at fixed children.
  std::map<std::vector<Perm>, std::size_t> set_id;
  std::vector<std::vector<std::size_t>> child_set(roots.size(), std::vector<std::size_t>(d));
  std::vector<const std::vector<Perm>*> sets;
  for (std::size_t s = 0; s < roots.size(); ++s) {
    for (std::size_t i = 0; i < d; ++i) {
      const auto& labels = windows[s].child_labels[i];
      auto [it, fresh] = set_id.emplace(labels, sets.size());
      if (fresh) sets.push_back(&labels);
      child_set[s][i] = it->second;
    }
  }

  for (std::size_t m = 2; m <= levels; ++m) {
    std::vector<Counts> mix(sets.size());
    std::vector<BigInt> mix_total(sets.size());
    for (std::size_t k = 0; k < sets.size(); ++k) {
      for (const Perm& l : *sets[k]) add_into(mix[k], below[root_slot(l)]);
      mix_total[k] = total_of(mix[k]);
    }
    std::map<std::vector<std::size_t>, Counts> convolutions;
    convolutions[{}] = Counts{{Vector(m - 1, 0), BigInt(1)}};
    std::vector<Counts> next(roots.size());
    for (std::size_t s = 0; s < roots.size(); ++s) {
      const Perm& label = roots[s];
      std::vector<std::size_t> key;
      BigInt free_factor = 1;
      for (std::size_t i = 0; i < d; ++i) {
        if (label(i) == i) {
          key.push_back(child_set[s][i]);
        } else {
          free_factor *= mix_total[child_set[s][i]];
        }
      }
      std::sort(key.begin(), key.end());
      std::vector<std::size_t> prefix;
      const Counts* acc = &convolutions.at(prefix);
      for (std::size_t k : key) {
        prefix.push_back(k);
        auto it = convolutions.find(prefix);
        if (it == convolutions.end()) {
          it = convolutions.emplace(prefix, convolve(*acc, mix[k], support_cap)).first;
        }
        acc = &it->second;
      }
      const std::uint64_t fix = fixed_point_count(label);
      for (const auto& [v, c] : *acc) {
        Vector full;
        full.reserve(m);
        full.push_back(fix);
        full.insert(full.end(), v.begin(), v.end());
        next[s].emplace(std::move(full), c * free_factor);
      }
    }
    below = std::move(next);
  }

  Counts joint;
  for (const Counts& c : below) add_into(joint, c);
  const BigInt total = total_of(joint);
  JointFixDistribution dist;
  dist.arity = d;
  dist.levels = levels;
  for (const auto& [v, c] : joint) {
    if (c != 0) dist.weights.emplace(v, make_rational(c, total));
  }
  return dist;
}

Rational conditional_expectation(const JointFixDistribution& dist,
                                 const std::vector<std::uint64_t>& history) {
  const std::size_t n = history.size() + 1;
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "history must be nonempty");
  check_level(dist, n);
  Rational mass = 0;
  Rational moment = 0;
  for (const auto& [v, w] : dist.weights) {
    if (!std::equal(history.begin(), history.end(), v.begin())) continue;
    mass += w;
    moment += w * Rational(static_cast<unsigned long>(v[n - 1]));
  }
  if (mass == 0) {
    std::string h;
    for (std::size_t k = 0; k < history.size(); ++k) {
      if (k) h += ' ';
      h += std::to_string(history[k]);
    }
    throw Error(ErrorCode::kZeroProbabilityHistory, "history (" + h + ") has probability 0");
  }
  Rational q = moment / mass;
  q.canonicalize();
  return q;
}

std::map<std::vector<std::uint64_t>, Rational> conditional_expectations(
    const JointFixDistribution& dist, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "conditioning needs n >= 2");
  check_level(dist, n);
  std::map<Vector, std::pair<Rational, Rational>> by_history;  // mass, moment
  for (const auto& [v, w] : dist.weights) {
    auto& [mass, moment] = by_history[Vector(v.begin(), v.begin() + (n - 1))];
    mass += w;
    moment += w * Rational(static_cast<unsigned long>(v[n - 1]));
  }
  std::map<Vector, Rational> out;
  for (const auto& [h, mm] : by_history) {
    if (mm.first == 0) continue;
    Rational q = mm.second / mm.first;
    q.canonicalize();
    out.emplace(h, q);
  }
  return out;
}

Rational martingale_deviation(const JointFixDistribution& dist) {
  Rational worst = 0;
  for (std::size_t n = 2; n <= dist.levels; ++n) {
    for (const auto& [h, e] : conditional_expectations(dist, n)) {
      Rational gap = abs(e - Rational(static_cast<unsigned long>(h.back())));
      if (gap > worst) worst = gap;
    }
  }
  worst.canonicalize();
  return worst;
}

Rational fpp(const JointFixDistribution& dist, std::size_t k) {
  check_level(dist, k);
  Rational p = 0;
  for (const auto& [v, w] : dist.weights) {
    if (v[k - 1] >= 1) p += w;
  }
  p.canonicalize();
  return p;
}

AfplpReport afplp_check(const PatternGroup& pattern, std::size_t level, std::size_t cap) {
  if (level < 1) throw Error(ErrorCode::kInvalidArgument, "level must be at least 1");
  const BigInt order = level_group_order(pattern, level);
  if (order > static_cast<unsigned long>(cap)) {
    throw Error(ErrorCode::kCapExceeded, "level-" + std::to_string(level) + " group has " +
                                             order.get_str() + " elements, cap is " +
                                             std::to_string(cap));
  }
  AfplpReport report;
  report.level = level;
  report.max_deviation = 0;

  if (level == 1) {
    std::uint64_t sum = 0;
    std::uint64_t count = 0;
    for_each_level_element(pattern, 1, [&](const TreePortrait& g) {
      sum += fixed_point_count(g.root());
      ++count;
    });
    report.elements_checked = count;
    report.witness_fix = 1;
    report.witness_average = make_rational(sum, count);
    report.max_deviation = abs(report.witness_average - 1);
    report.holds = report.max_deviation == 0;
    return report;
  }

  struct Lifts {
    std::uint64_t count = 0;
    std::uint64_t fixed = 0;
  };
  std::map<TreePortrait, Lifts> classes;
  for_each_level_element(pattern, level, [&](const TreePortrait& g) {
    Lifts& l = classes[restrict_to(g, level - 1)];
    ++l.count;
    l.fixed += fixed_words(g, level);
    ++report.elements_checked;
  });
  for (const auto& [below, lifts] : classes) {
    const std::uint64_t fix = fixed_words(below, level - 1);
    const Rational average = make_rational(lifts.fixed, lifts.count);
    Rational gap = abs(average - Rational(static_cast<unsigned long>(fix)));
    if (!report.witness || gap > report.max_deviation) {
      report.witness = below;
      report.witness_fix = fix;
      report.witness_average = average;
      report.max_deviation = gap;
    }
  }
  report.holds = report.max_deviation == 0;
  return report;
}

}  // namespace arbor
