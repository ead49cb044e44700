#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arbor/group.hpp"
#include "arbor/pattern.hpp"

namespace arbor {

/// "name:params[:variant]", e.g. "dihedral:4", "dihedral:6:mixed",
/// "symmetric:4", "klein:A5", "klein:D6".
struct FamilySpec {
  std::string name;  // cyclic, dihedral, symmetric, alternating, klein
  std::vector<int> params;
  std::string variant;

  std::string to_string() const;
};

/// Throws kParse on malformed text, kInvalidParams on unknown names.
FamilySpec parse_family(std::string_view text);

struct FamilyGroup {
  std::string label;
  FiniteGroup group;
  /// Dihedral groups of even degree: N1 = <r> ("rotation", default) or
  /// <r^2, rs> ("mixed"), N2 = <r^2, s>, with sigma(s N1) = r N2.
  std::optional<SubgroupPair> pair;
};

/// Natural actions: the m-gon for dihedral, {1..n} otherwise. Klein entries
/// map to C_n, D_n, A4, S4 and A5. Throws kInvalidParams.
FamilyGroup build_family(const FamilySpec& spec, std::size_t cap = kDefaultElementCap);

/// r = (1 2 ... m).
Perm dihedral_rotation(std::size_t m);
/// s(i) = 2 - i mod m: fixes 1, and for even m also m/2 + 1.
Perm dihedral_reflection(std::size_t m);

/// The Klein list of finite rotation groups, one representative per type
/// with cyclic and dihedral entries up to degree `max_degree`.
std::vector<FamilySpec> klein_catalog(int max_degree = 6);

struct BuiltinPattern {
  std::string name;
  PatternGroup pattern;
};

/// Patterns used by the reference checks: wreath powers of small transitive
/// groups, the dihedral constructions of degree 4 and 6, D4[D4] at depth 2.
std::vector<BuiltinPattern> builtin_patterns();

}  // namespace arbor
