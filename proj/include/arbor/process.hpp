#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arbor/exact.hpp"
#include "arbor/pattern.hpp"
#include "arbor/tree.hpp"

namespace arbor {

inline constexpr std::size_t kDefaultMaxLevels = 4;
inline constexpr std::size_t kDefaultSupportCap = 2'000'000;

/// Exact law of (Y_1, ..., Y_n) under the uniform measure on the level-n group.
struct JointFixDistribution {
  std::size_t arity = 1;
  std::size_t levels = 0;
  /// Support vectors (y_1, ..., y_n) only; weights sum to 1.
  std::map<std::vector<std::uint64_t>, Rational> weights;

  Rational total() const;
  /// E(Y_k), 1 <= k <= levels.
  Rational expectation(std::size_t k) const;
  /// Law of (Y_1, ..., Y_k).
  JointFixDistribution marginal(std::size_t k) const;
};

/// One line per support vector: "y1 y2 ... : p/q".
std::string format_distribution(const JointFixDistribution& dist);

/// Dynamic program over the label at a vertex. Requires closure, inverses,
/// identity, self-replication and uniform fibers. Throws kNonUniformFibers,
/// kUnverifiedPattern, kInvalidArgument (levels outside 1..max_levels) or
/// kCapExceeded when an intermediate support outgrows `support_cap`.
JointFixDistribution exact_joint_distribution(const PatternGroup& pattern, std::size_t levels,
                                              std::size_t max_levels = kDefaultMaxLevels,
                                              std::size_t support_cap = kDefaultSupportCap);

/// E(Y_n | Y_1 = t_1, ..., Y_{n-1} = t_{n-1}) with n = |history| + 1.
/// Throws kZeroProbabilityHistory, kInvalidArgument when n > levels.
Rational conditional_expectation(const JointFixDistribution& dist,
                                 const std::vector<std::uint64_t>& history);

/// E(Y_n | history) for every positive-probability history of length n - 1,
/// 2 <= n <= levels, in one pass over the support.
std::map<std::vector<std::uint64_t>, Rational> conditional_expectations(
    const JointFixDistribution& dist, std::size_t n);

/// Largest |E(Y_n | history) - t_{n-1}| over 2 <= n <= levels and all
/// positive-probability histories. Zero when levels < 2.
Rational martingale_deviation(const JointFixDistribution& dist);

/// P(Y_k >= 1).
Rational fpp(const JointFixDistribution& dist, std::size_t k);

struct AfplpReport {
  std::size_t level = 0;
  bool holds = true;
  /// Level-(n-1) element whose lifts deviate most; absent at level 1, where
  /// the only element below is the root of the tree.
  std::optional<TreePortrait> witness;
  std::uint64_t witness_fix = 0;
  Rational witness_average;
  Rational max_deviation;
  std::size_t elements_checked = 0;
};

/// Checks the average fixed-point lifting property at `level` by enumerating
/// the level-n group and grouping lifts by restriction. Throws kCapExceeded.
AfplpReport afplp_check(const PatternGroup& pattern, std::size_t level,
                        std::size_t cap = kDefaultElementCap);

}  // namespace arbor
