#include "arbor/checks.hpp"

#include <functional>

#include "arbor/error.hpp"
#include "arbor/families.hpp"
#include "arbor/process.hpp"

namespace arbor {

namespace {

std::string partition_string(const Partition& p) {
  std::string out = "{";
  for (std::size_t b = 0; b < p.size(); ++b) {
    if (b) out += ",";
    out += "{";
    for (std::size_t i = 0; i < p[b].size(); ++i) {
      if (i) out += ",";
      out += std::to_string(p[b][i]);
    }
    out += "}";
  }
  return out + "}";
}

void run(std::vector<CheckResult>& out, const std::string& name,
         const std::function<CheckResult()>& body) {
  try {
    CheckResult r = body();
    r.name = name;
    out.push_back(std::move(r));
  } catch (const std::exception& e) {
    out.push_back({name, false, std::string("error: ") + e.what()});
  }
}

CheckResult equal(const Rational& got, const Rational& want) {
  return {"", got == want, "got " + fraction_string(got) + ", want " + fraction_string(want)};
}

PatternGroup d4_construction() {
  const FamilyGroup d4 = build_family(parse_family("dihedral:4"));
  return build_theorem12_pattern(d4.group, *d4.pair);
}

}  // namespace

std::vector<CheckResult> reference_checks() {
  std::vector<CheckResult> out;
  const PatternGroup p = d4_construction();
  const JointFixDistribution dist = exact_joint_distribution(p, 2);

  run(out, "d4 construction order", [&] {
    return CheckResult{"", p.order() == 2048, "order " + p.order().get_str()};
  });
  run(out, "d4 E(Y2 | Y1 = 4) = 8",
      [&] { return equal(conditional_expectation(dist, {4}), Rational(8)); });
  run(out, "d4 E(Y2 | Y1 = 2) = 0",
      [&] { return equal(conditional_expectation(dist, {2}), Rational(0)); });
  run(out, "d4 martingale deviation = 4",
      [&] { return equal(martingale_deviation(dist), Rational(4)); });
  run(out, "d4 FPP level 2 = 255/2048",
      [&] { return equal(fpp(dist, 2), make_rational(255, 2048)); });
  run(out, "d4 kernel orbits {{1,3},{2,4}}", [&] {
    const KernelReport k = restriction_kernel(p);
    const Partition want{{1, 3}, {2, 4}};
    bool ok = k.order == 256;
    std::string detail = "kernel order " + k.order.get_str();
    for (std::size_t v = 0; v < k.per_child_orbits.size(); ++v) {
      ok = ok && k.per_child_orbits[v] == want;
      detail += "; vertex " + std::to_string(v + 1) + " " + partition_string(k.per_child_orbits[v]);
    }
    return CheckResult{"", ok, detail};
  });
  run(out, "d4 martingale check", [&] {
    const MartingaleVerdict v = martingale_check(p);
    return CheckResult{"", !v.martingale && v.failing_level == 2 && v.witness == Word{0},
                       describe(v)};
  });
  run(out, "d4 lifting property fails at the identity", [&] {
    const AfplpReport a = afplp_check(p, 2);
    const bool ok = !a.holds && a.witness && a.witness->is_identity() && a.witness_fix == 4 &&
                    a.witness_average == 8;
    return CheckResult{"", ok, "average " + fraction_string(a.witness_average) + " over lifts of " +
                                   (a.witness ? a.witness->root().to_string() : "?")};
  });

  run(out, "wreath d4 level-1 law", [&] {
    const JointFixDistribution w = exact_joint_distribution(
        wreath_pattern(build_family(parse_family("dihedral:4")).group), 1);
    const bool ok = w.weights.size() == 3 && w.weights.at({4}) == make_rational(1, 8) &&
                    w.weights.at({2}) == make_rational(2, 8) &&
                    w.weights.at({0}) == make_rational(5, 8) && fpp(w, 1) == make_rational(3, 8);
    return CheckResult{"", ok, format_distribution(w)};
  });

  for (const char* name : {"cyclic:4", "dihedral:4", "symmetric:4", "alternating:4"}) {
    run(out, std::string("wreath ") + name + " martingale to level 3", [&] {
      const PatternGroup w = wreath_pattern(build_family(parse_family(name)).group);
      const JointFixDistribution d3 = exact_joint_distribution(w, 3);
      const MartingaleVerdict v = martingale_check(w);
      return CheckResult{"", martingale_deviation(d3) == 0 && v.martingale,
                         "deviation " + fraction_string(martingale_deviation(d3)) + "; " +
                             describe(v)};
    });
  }

  run(out, "C2[C3] lifting property", [&] {
    const PatternGroup c2c3 = product_pattern(
        FiniteGroup::generate(3, {Perm::parse("(1 2)", 3)}),
        build_family(parse_family("cyclic:3")).group);
    const AfplpReport a = afplp_check(c2c3, 2);
    return CheckResult{"", a.holds && a.elements_checked == 54,
                       std::to_string(a.elements_checked) + " elements"};
  });
  run(out, "intransitive kernel breaks the lifting property", [&] {
    const PatternGroup bad = product_pattern(build_family(parse_family("cyclic:3")).group,
                                             FiniteGroup::generate(3, {Perm::parse("(1 2)", 3)}));
    const AfplpReport a = afplp_check(bad, 2);
    return CheckResult{"", !a.holds, "worst average " + fraction_string(a.witness_average) +
                                         " against " + std::to_string(a.witness_fix)};
  });

  for (int m = 3; m <= 12; ++m) {
    run(out, "dihedral:" + std::to_string(m) + " pair search", [&] {
      const FamilyGroup fam = build_family(parse_family("dihedral:" + std::to_string(m)));
      const std::vector<SubgroupPair> pairs = find_index_p_normal_pairs(fam.group, 2);
      if (m % 2 == 1) {
        return CheckResult{"", pairs.empty(), std::to_string(pairs.size()) + " pairs"};
      }
      const MartingaleVerdict v = martingale_check(build_theorem12_pattern(fam.group, pairs.front()));
      return CheckResult{"", !pairs.empty() && !v.martingale && v.failing_level == 2,
                         std::to_string(pairs.size()) + " pairs; " + describe(v)};
    });
  }
  return out;
}

}  // namespace arbor
