#include "arbor/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "arbor/error.hpp"

namespace arbor {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

const Fiber& window_for(const std::vector<Fiber>& windows, const Perm& label) {
  auto it = std::lower_bound(windows.begin(), windows.end(), label,
                             [](const Fiber& f, const Perm& r) { return f.root < r; });
  return *it;  // self-replication guarantees a window for every label
}

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

CounterRng CounterRng::for_vertex(std::uint64_t seed, std::uint64_t trial, std::uint64_t vertex) {
  std::uint64_t k = mix64(seed + kGolden);
  k = mix64(k ^ (trial + 0x632BE59BD9B4E019ULL));
  k = mix64(k ^ (vertex + 0x85157AF5ULL));
  return CounterRng(k);
}

std::uint64_t CounterRng::next() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

std::uint64_t CounterRng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  while (true) {
    const std::uint64_t x = next();
    if (x < limit) return x % bound;
  }
}

LevelSampler::LevelSampler(const PatternGroup& pattern, std::size_t level)
    : arity_(pattern.arity()), level_(level) {
  if (level == 0) throw Error(ErrorCode::kInvalidArgument, "level must be at least 1");
  const PatternReport r = verify_pattern_group(pattern);
  if (!r.closure || !r.inverses || !r.identity || !r.self_replicating) {
    throw Error(ErrorCode::kUnverifiedPattern,
                r.notes.empty() ? std::string("pattern failed verification") : r.notes.front());
  }
  if (!r.uniform_fibers) throw Error(ErrorCode::kNonUniformFibers, "fiber sizes differ");
  windows_ = pattern.window_fibers();
  roots_ = pattern.roots();
  portrait_ = TreePortrait::identity(arity_, level_);
}

const TreePortrait& LevelSampler::draw(std::uint64_t seed, std::uint64_t trial) {
  const std::size_t n = portrait_.labels().size();
  {
    CounterRng rng = CounterRng::for_vertex(seed, trial, 0);
    portrait_.set_label(0, roots_[rng.below(roots_.size())]);
  }
  for (std::size_t u = 1; u < n; ++u) {
    const std::size_t parent = (u - 1) / arity_;
    const std::size_t letter = (u - 1) % arity_;
    const auto& choices = window_for(windows_, portrait_.label(parent)).child_labels[letter];
    CounterRng rng = CounterRng::for_vertex(seed, trial, u);
    portrait_.set_label(u, choices[rng.below(choices.size())]);
  }
  return portrait_;
}

TreePortrait sample_element(const PatternGroup& pattern, std::size_t level, std::uint64_t seed,
                            std::uint64_t trial) {
  LevelSampler sampler(pattern, level);
  return sampler.draw(seed, trial);
}

double SampleReport::level_mean(std::size_t k) const {
  return static_cast<double>(level_sums.at(k - 1)) / static_cast<double>(trials);
}

SampleReport monte_carlo_fpp(const PatternGroup& pattern, std::size_t level,
                             std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
  LevelSampler sampler(pattern, level);
  SampleReport report;
  report.level = level;
  report.trials = trials;
  report.seed = seed;
  report.level_sums.assign(level, 0);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::vector<std::uint64_t> profile = fixed_word_profile(sampler.draw(seed, t));
    for (std::size_t k = 0; k < level; ++k) report.level_sums[k] += profile[k];
    if (profile[level - 1] >= 1) ++report.hits;
  }
  const double p = static_cast<double>(report.hits) / static_cast<double>(trials);
  report.estimate = p;
  report.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return report;
}

std::string format_report(const SampleReport& report) {
  std::string out;
  out += "level: " + std::to_string(report.level) + "\n";
  out += "trials: " + std::to_string(report.trials) + "\n";
  out += "seed: " + std::to_string(report.seed) + "\n";
  out += "hits: " + std::to_string(report.hits) + "\n";
  out += "estimate: " + decimal(report.estimate) + "\n";
  out += "standard_error: " + decimal(report.standard_error) + "\n";
  for (std::size_t k = 1; k <= report.level; ++k) {
    out += "mean_Y" + std::to_string(k) + ": " + decimal(report.level_mean(k)) + "\n";
  }
  return out;
}

}  // namespace arbor
