#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "arbor/error.hpp"
#include "arbor/families.hpp"
#include "arbor/process.hpp"
#include "arbor/sampler.hpp"
#include "support.hpp"

using namespace arbor;
using testing_support::P;

namespace {

FiniteGroup family(const char* name) { return build_family(parse_family(name)).group; }

PatternGroup d4_construction() {
  const FamilyGroup f = build_family(parse_family("dihedral:4"));
  return build_theorem12_pattern(f.group, *f.pair);
}

}  // namespace

TEST(Sampler, Mix64KnownValues) {
  // splitmix64 from state 0: first output is mix64(0x9E3779B97F4A7C15).
  EXPECT_EQ(mix64(0x9E3779B97F4A7C15ULL), 0xE220A8397B1DCDAFULL);
  CounterRng a(5), b(5);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next(), b.next());
}

TEST(Sampler, BelowStaysInRange) {
  CounterRng rng(99);
  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) ++hist[rng.below(7)];
  for (int c : hist) EXPECT_NEAR(c, 10000, 500);
  EXPECT_THROW(rng.below(0), Error);
}

TEST(Sampler, SampleIsWellFormed) {
  const PatternGroup p = d4_construction();
  const TreePortrait g = sample_element(p, 2, 42);
  EXPECT_EQ(g.depth(), 2u);
  const auto elements = p.elements();
  EXPECT_NE(std::find(elements.begin(), elements.end(), g), elements.end());
  EXPECT_EQ(sample_element(p, 2, 42), g);
  EXPECT_EQ(sample_element(p, 3, 42).depth(), 3u);
}

TEST(Sampler, GoldenPortrait) {
  const TreePortrait g = sample_element(d4_construction(), 2, 2024);
  EXPECT_EQ(format_portrait(g),
            "ε: (1 4 3 2)\n1: id\n2: (2 4)\n3: (1 3)\n4: (2 4)\n");
}

TEST(Sampler, TrivialPatternIsIdentity) {
  const PatternGroup p = wreath_pattern(FiniteGroup::trivial(3));
  for (std::uint64_t t = 0; t < 20; ++t) EXPECT_TRUE(sample_element(p, 3, 1, t).is_identity());
  const SampleReport r = monte_carlo_fpp(p, 3, 100, 1);
  EXPECT_EQ(r.estimate, 1.0);
  EXPECT_EQ(r.standard_error, 0.0);
}

TEST(Sampler, LevelOneUniformity) {
  const PatternGroup p = wreath_pattern(family("dihedral:4"));
  LevelSampler s(p, 1);
  std::map<Perm, int> counts;
  const int trials = 100000;
  for (int t = 0; t < trials; ++t) ++counts[s.draw(3, t).root()];
  ASSERT_EQ(counts.size(), 8u);
  double chi2 = 0;
  for (const auto& [perm, c] : counts) chi2 += std::pow(c - trials / 8.0, 2) / (trials / 8.0);
  EXPECT_LT(chi2, 24.32);  // 7 degrees of freedom, p = 0.001
}

TEST(Sampler, ReportsAreReproducible) {
  const PatternGroup p = d4_construction();
  const SampleReport a = monte_carlo_fpp(p, 2, 5000, 77);
  const SampleReport b = monte_carlo_fpp(p, 2, 5000, 77);
  EXPECT_EQ(format_report(a), format_report(b));
  EXPECT_NE(format_report(a), format_report(monte_carlo_fpp(p, 2, 5000, 78)));
  EXPECT_NEAR(a.standard_error, std::sqrt(a.estimate * (1 - a.estimate) / 5000), 1e-15);
  EXPECT_THROW(monte_carlo_fpp(p, 2, 0, 1), Error);
}

TEST(Sampler, EstimatesAgreeWithExactValues) {
  const SampleReport a = monte_carlo_fpp(d4_construction(), 2, 100000, 5);
  EXPECT_LE(std::abs(a.estimate - 255.0 / 2048.0), 3 * a.standard_error);
  const SampleReport b = monte_carlo_fpp(wreath_pattern(family("dihedral:4")), 1, 100000, 5);
  EXPECT_LE(std::abs(b.estimate - 3.0 / 8.0), 3 * b.standard_error);
}

TEST(SamplerProperty, ConsistencyAcrossSeeds) {
  const PatternGroup p = wreath_pattern(family("symmetric:3"));
  const JointFixDistribution d = exact_joint_distribution(p, 3);
  const double exact = fpp(d, 3).get_d();
  int inside = 0;
  const int runs = 100;
  for (int seed = 0; seed < runs; ++seed) {
    const SampleReport r = monte_carlo_fpp(p, 3, 4000, 1000 + seed);
    inside += std::abs(r.estimate - exact) <= 4 * r.standard_error;
  }
  EXPECT_GE(inside, 99);
}

TEST(Sampler, RefusesNonUniformFibers) {
  const Perm e = Perm::identity(2), t = P("(1 2)", 2);
  const PatternGroup uneven =
      PatternGroup::from_fibers(2, {Fiber{e, {{e, t}, {e, t}}}, Fiber{t, {{e}, {e}}}});
  EXPECT_THROW(sample_element(uneven, 2, 1), Error);
}
