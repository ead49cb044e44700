#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arbor/group.hpp"
#include "arbor/pattern.hpp"

namespace arbor {

/// Group text:
///
///     degree: 4
///     generators: (1 2 3 4), (1 3)
///
/// '#' starts a comment. Throws kParse.
FiniteGroup parse_group_text(std::string_view text, std::size_t cap = kDefaultElementCap);
FiniteGroup read_group_file(const std::filesystem::path& path, std::size_t cap = kDefaultElementCap);

/// Splits "a, b, c" on commas that sit outside parentheses.
std::vector<std::string> split_top_level(std::string_view text);

/// Pattern text:
///
///     group: d4.group          # relative to the pattern file
///     family: theorem12        # or wreath
///     p: 2
///     pair: 1                  # optional, 1-based index into the pair search
///     sigma: (1 3) -> (1 2 3 4)   # optional override of sigma
///
/// The group may also be given inline with degree:/generators: lines.
struct PatternSpec {
  FiniteGroup group;
  std::string family;  // wreath | theorem12
  int p = 0;
  std::size_t pair_index = 1;
  std::optional<std::pair<Perm, Perm>> sigma;
};

PatternSpec parse_pattern_text(std::string_view text, const std::filesystem::path& base_dir,
                               std::size_t cap = kDefaultElementCap);
PatternSpec read_pattern_file(const std::filesystem::path& path, std::size_t cap = kDefaultElementCap);

/// Builds the pattern a spec describes. For theorem12 the pair is taken from
/// find_index_p_normal_pairs unless `pair` is supplied. Throws kInvalidPair
/// when no pair exists or the index is out of range.
PatternGroup build_pattern(const PatternSpec& spec, const std::optional<SubgroupPair>& pair = {});

}  // namespace arbor
