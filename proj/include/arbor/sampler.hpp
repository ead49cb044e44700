#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "arbor/pattern.hpp"
#include "arbor/tree.hpp"

namespace arbor {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based generator: the i-th output of a stream is mix64(key + (i+1)
/// * golden), so any (seed, trial, vertex) stream can be replayed without
/// touching any other stream.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}
  static CounterRng for_vertex(std::uint64_t seed, std::uint64_t trial, std::uint64_t vertex);

  std::uint64_t next();
  /// Uniform on [0, bound) by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Draws uniform elements of the level-n group of a pattern: the root label
/// uniformly among the roots, then every further label uniformly from the
/// window over its parent. Exact for self-replicating patterns with uniform
/// fibers, which are the only ones accepted.
class LevelSampler {
 public:
  /// Throws kNonUniformFibers or kUnverifiedPattern.
  LevelSampler(const PatternGroup& pattern, std::size_t level);

  std::size_t level() const { return level_; }
  /// Deterministic in (seed, trial).
  const TreePortrait& draw(std::uint64_t seed, std::uint64_t trial);

 private:
  std::size_t arity_;
  std::size_t level_;
  std::vector<Fiber> windows_;
  std::vector<Perm> roots_;
  TreePortrait portrait_;
};

TreePortrait sample_element(const PatternGroup& pattern, std::size_t level, std::uint64_t seed,
                            std::uint64_t trial = 0);

struct SampleReport {
  std::size_t level = 0;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;  // samples with Y_level >= 1
  double estimate = 0.0;
  double standard_error = 0.0;  // sqrt(p (1 - p) / trials)
  std::uint64_t seed = 0;
  /// Sum over samples of Y_k, k = 1..level; means are these over trials.
  std::vector<std::uint64_t> level_sums;

  double level_mean(std::size_t k) const;
};

/// Throws kInvalidArgument when trials == 0.
SampleReport monte_carlo_fpp(const PatternGroup& pattern, std::size_t level,
                             std::uint64_t trials, std::uint64_t seed);

/// Key/value lines; floating values printed with 17 significant digits.
std::string format_report(const SampleReport& report);

}  // namespace arbor
