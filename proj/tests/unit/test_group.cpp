#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "coslab/error.hpp"
#include "coslab/group.hpp"
#include "coslab/subgroup.hpp"

using namespace coslab;

namespace {

// Ordered factorizations of n into factors >= 2.
std::size_t ordered_factorizations(std::size_t n) {
  if (n == 1) return 1;
  std::size_t total = 0;
  for (std::size_t d = 2; d <= n; ++d) {
    if (n % d == 0) total += ordered_factorizations(n / d);
  }
  return total;
}

// Every subset containing 0 and closed under addition, by brute force.
std::set<ElementSet> brute_force_subgroups(const Group& g) {
  std::set<ElementSet> out;
  const std::size_t n = g.order();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); mask += 2) {
    ElementSet s;
    for (Index x = 0; x < n; ++x) {
      if (mask >> x & 1) s.push_back(x);
    }
    bool closed = true;
    for (Index a : s) {
      for (Index b : s) closed = closed && (mask >> g.add(a, b) & 1);
    }
    if (closed) out.insert(s);
  }
  return out;
}

std::complex<double> direct_pairing(const std::vector<std::int64_t>& n, const std::vector<std::int64_t>& x,
                                    const std::vector<std::int64_t>& gamma) {
  double phase = 0.0;
  for (std::size_t j = 0; j < n.size(); ++j) phase += static_cast<double>(gamma[j] * x[j]) / static_cast<double>(n[j]);
  return std::polar(1.0, 2.0 * std::numbers::pi * phase);
}

}  // namespace

TEST(Group, ParsesSpecsCaseInsensitively) {
  const Group g = parse_group(" z4 X Z2 ");
  EXPECT_EQ(g.moduli(), (std::vector<std::int64_t>{4, 2}));
  EXPECT_EQ(g.order(), 8u);
  EXPECT_EQ(g.spec(), "Z4xZ2");
  EXPECT_EQ(parse_group(g.spec()), g);
}

TEST(Group, RejectsMalformedSpecsWithPosition) {
  EXPECT_THROW(parse_group(""), Error);
  try {
    parse_group("Z4xY2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_EQ(e.position(), 3u);
  }
  EXPECT_THROW(parse_group("Z0"), Error);
  EXPECT_THROW(parse_group("Z4x"), Error);
}

TEST(Group, RowMajorIndexingWithLastFactorFastest) {
  const Group g = make_group({4, 2});
  EXPECT_EQ(g.index_of(std::vector<std::int64_t>{1, 0}), 2u);
  EXPECT_EQ(g.index_of(std::vector<std::int64_t>{0, 1}), 1u);
  EXPECT_EQ(g.index_of(std::vector<std::int64_t>{-1, 3}), 7u);
  EXPECT_EQ(g.coords_of(5), (std::vector<std::int64_t>{2, 1}));
  EXPECT_EQ(g.add(g.index_of(std::vector<std::int64_t>{3, 1}), g.index_of(std::vector<std::int64_t>{2, 1})),
            g.index_of(std::vector<std::int64_t>{1, 0}));
  EXPECT_EQ(g.negate(g.index_of(std::vector<std::int64_t>{1, 1})), g.index_of(std::vector<std::int64_t>{3, 1}));
  EXPECT_EQ(g.exponent(), 4);
}

TEST(Group, ElementAndSetLiterals) {
  const Group z5 = make_group({5});
  EXPECT_EQ(parse_set(z5, "{0,1,4}"), (ElementSet{0, 1, 4}));
  EXPECT_EQ(parse_set(z5, "{4, 1; 0 1}"), (ElementSet{0, 1, 4}));
  EXPECT_EQ(parse_set(z5, "{}"), ElementSet{});
  EXPECT_EQ(parse_element(z5, "(3)"), 3u);
  const Group g = make_group({2, 3});
  EXPECT_EQ(parse_set(g, "{(0,1),(1,0)}"), (ElementSet{1, 3}));
  EXPECT_EQ(format_set(g, ElementSet{1, 3}), "{(0,1),(1,0)}");
  EXPECT_EQ(format_set(z5, ElementSet{0, 1, 4}), "{0,1,4}");
  EXPECT_THROW(parse_set(g, "{(0,1,2)}"), Error);
  EXPECT_THROW(parse_set(g, "{1}"), Error);
  EXPECT_THROW(parse_set(z5, "{0,1"), ParseError);
}

TEST(Group, PairingExamples) {
  const Group z5 = make_group({5});
  EXPECT_NEAR(std::abs(pairing(z5, z5.element(1), z5.character(0)) - 1.0), 0.0, 1e-15);
  const Group z4 = make_group({4});
  EXPECT_NEAR(std::abs(pairing(z4, z4.element(1), z4.character(1)) - std::complex<double>(0, 1)), 0.0, 1e-15);
  const auto expected = std::polar(1.0, 8.0 * std::numbers::pi / 5.0);
  EXPECT_NEAR(std::abs(pairing(z5, z5.element(2), z5.character(2)) - expected), 0.0, 1e-12);
  EXPECT_THROW(pairing(z5, GroupElement({1, 1}), z5.character(0)), Error);
}

TEST(Group, PairingMatchesDirectExponentialAndIsBilinear) {
  std::mt19937_64 rng(3);
  for (const auto& moduli : std::vector<std::vector<std::int64_t>>{{12}, {4, 6}, {2, 3, 5}, {8, 8}}) {
    const Group g = make_group(moduli);
    std::uniform_int_distribution<Index> pick(0, g.order() - 1);
    for (int t = 0; t < 200; ++t) {
      const Index x = pick(rng), y = pick(rng), c = pick(rng), d = pick(rng);
      const auto gx = pairing(g, g.element(x), g.character(c));
      EXPECT_NEAR(std::abs(gx - direct_pairing(moduli, g.coords_of(x), g.coords_of(c))), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(gx) - 1.0, 0.0, 1e-12);
      const auto gy = pairing(g, g.element(y), g.character(c));
      EXPECT_NEAR(std::abs(pairing(g, g.element(g.add(x, y)), g.character(c)) - gx * gy), 0.0, 1e-12);
      const auto dx = pairing(g, g.element(x), g.character(d));
      EXPECT_NEAR(std::abs(pairing(g, g.element(x), g.character(g.add(c, d))) - gx * dx), 0.0, 1e-12);
    }
  }
}

TEST(Group, Symmetry) {
  const Group z5 = make_group({5});
  EXPECT_TRUE(is_symmetric(z5, {0, 1, 4}));
  EXPECT_FALSE(is_symmetric(z5, {1}));
  EXPECT_EQ(first_asymmetric(z5, {0, 1}), 1u);
  EXPECT_TRUE(is_symmetric(make_group({4}), {1, 3}));
}

TEST(Group, NegationOrbitsCountSymmetricSubsets) {
  // Z/8: 0 and 4 are fixed, {1,7}, {2,6}, {3,5} are pairs.
  const auto orbits = negation_orbits(make_group({8}));
  ASSERT_EQ(orbits.size(), 5u);
  std::size_t singles = 0;
  for (const auto& o : orbits) singles += o.size() == 1;
  EXPECT_EQ(singles, 2u);
  std::set<ElementSet> sets;
  for (std::uint64_t mask = 0; mask < 32; ++mask) sets.insert(symmetric_set_from_mask(orbits, mask));
  EXPECT_EQ(sets.size(), 32u);
  for (const auto& s : sets) EXPECT_TRUE(is_symmetric(make_group({8}), s));
}

TEST(Group, PresentationsUpToCountsOrderedFactorizations) {
  const auto groups = presentations_up_to(12);
  std::size_t expected = 1;
  for (std::size_t n = 2; n <= 12; ++n) expected += ordered_factorizations(n);
  EXPECT_EQ(groups.size(), expected);
  std::set<std::string> specs;
  for (const auto& g : groups) {
    EXPECT_LE(g.order(), 12u);
    specs.insert(g.spec());
  }
  EXPECT_EQ(specs.size(), groups.size());
  EXPECT_TRUE(specs.count("Z2xZ6") && specs.count("Z6xZ2") && specs.count("Z1"));
}

TEST(Group, SetOperations) {
  EXPECT_EQ(symmetric_difference({0, 1, 4}, {0, 2}), (ElementSet{1, 2, 4}));
  EXPECT_EQ(symmetric_difference_size({0, 1, 4}, {0, 2}), 3u);
  const Group z5 = make_group({5});
  EXPECT_EQ(negate_set(z5, {1, 2}), (ElementSet{3, 4}));
  EXPECT_EQ(make_set(z5, {4, 1, 1}), (ElementSet{1, 4}));
  EXPECT_THROW(make_set(z5, {5}), Error);
  EXPECT_TRUE(is_subgroup(make_group({6}), {0, 2, 4}));
  EXPECT_FALSE(is_subgroup(make_group({6}), {0, 1, 5}));
  EXPECT_FALSE(is_subgroup(make_group({6}), {}));
}

TEST(Subgroup, GeneratedSubgroups) {
  const Group z6 = make_group({6});
  EXPECT_EQ(subgroup_from_generators(z6, std::vector<Index>{2}).elements(), (ElementSet{0, 2, 4}));
  const Group g = make_group({4, 2});
  EXPECT_EQ(subgroup_from_generators(g, std::vector<Index>{}).elements(), ElementSet{0});
  const Index a = g.index_of(std::vector<std::int64_t>{2, 0});
  const Index b = g.index_of(std::vector<std::int64_t>{0, 1});
  const ElementSet expected = make_set(g, {0, a, b, g.add(a, b)});
  EXPECT_EQ(subgroup_from_generators(g, std::vector<Index>{a, b}).elements(), expected);
  EXPECT_THROW(Subgroup::from_elements(z6, {0, 1}), Error);
}

TEST(Subgroup, EnumerationExamples) {
  EXPECT_EQ(enumerate_subgroups(make_group({5})).size(), 2u);
  EXPECT_EQ(enumerate_subgroups(make_group({2, 2})).size(), 5u);
  EXPECT_EQ(enumerate_subgroups(make_group({12})).size(), 6u);
}

TEST(Subgroup, EnumerationMatchesBruteForceUpToTwelve) {
  for (const Group& g : presentations_up_to(12)) {
    const auto subs = enumerate_subgroups(g);
    std::set<ElementSet> found;
    for (std::size_t i = 0; i < subs.size(); ++i) {
      found.insert(subs[i].elements());
      if (i) {
        EXPECT_TRUE(canonical_less(subs[i - 1], subs[i])) << g.spec();
      }
    }
    EXPECT_EQ(found.size(), subs.size()) << g.spec();
    EXPECT_EQ(found, brute_force_subgroups(g)) << g.spec();
  }
}

TEST(Subgroup, CapsAreEnforced) {
  SubgroupLimits tight;
  tight.max_subgroups = 3;
  try {
    enumerate_subgroups(make_group({2, 2}), tight);
    FAIL();
  } catch (const CapExceededError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapExceeded);
    EXPECT_GE(e.partial_count(), 3u);
  }
  SubgroupLimits small;
  small.max_group_order = 10;
  EXPECT_THROW(enumerate_subgroups(make_group({12}), small), CapExceededError);
}

TEST(Subgroup, AnnihilatorExamples) {
  const Group z6 = make_group({6});
  EXPECT_EQ(annihilator(Subgroup::whole(z6)).elements(), ElementSet{0});
  EXPECT_EQ(annihilator(Subgroup::trivial(z6)).order(), 6u);
  EXPECT_EQ(annihilator(Subgroup::from_elements(z6, {0, 3})).elements(), (ElementSet{0, 2, 4}));
}

// Closure, symmetry, |H||H^perp| = |G| and double annihilation, on every subgroup of every
// presentation up to order 100 (closure only up to 36 to keep the quadratic check cheap).
TEST(Subgroup, StructuralInvariants) {
  for (const Group& g : presentations_up_to(100)) {
    for (const Subgroup& h : enumerate_subgroups(g)) {
      const ElementSet& e = h.elements();
      ASSERT_TRUE(contains(e, 0));
      EXPECT_TRUE(is_symmetric(g, e));
      if (g.order() <= 36) {
        for (Index a : e) {
          for (Index b : e) ASSERT_TRUE(h.contains(g.add(a, b)));
        }
      }
      const Subgroup perp = annihilator(h);
      EXPECT_EQ(h.order() * perp.order(), g.order()) << g.spec();
      EXPECT_EQ(annihilator(perp), h) << g.spec();
    }
  }
}
