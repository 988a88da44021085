#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "coslab/chowla.hpp"
#include "coslab/error.hpp"
#include "oracle.hpp"

using namespace coslab;

namespace {

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

Group z2z3() { return make_group({2, 3}); }

// ({0} x Z/3) u (Z/2 x {0}).
ElementSet two_subgroups() {
  const Group g = z2z3();
  return parse_set(g, "{(0,0),(0,1),(0,2),(1,0)}");
}

struct Input {
  Group g;
  ElementSet a;
};

std::vector<Input> symmetric_inputs(std::size_t max_order) {
  std::vector<Input> out;
  for (const Group& g : presentations_up_to(max_order)) {
    const auto orbits = negation_orbits(g);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << orbits.size()); ++mask) {
      out.push_back({g, symmetric_set_from_mask(orbits, mask)});
    }
  }
  return out;
}

}  // namespace

TEST(Mg, NamedInstances) {
  const Group z5 = make_group({5});
  const MgResult m = mg(z5, {0, 1, 4});
  EXPECT_NEAR(m.value, kGolden - 1.0, 1e-12);
  EXPECT_NEAR(m.value, 0.6180, 1e-4);
  EXPECT_EQ(m.witness, 2u);
  EXPECT_DOUBLE_EQ(m.full_min, -m.value);
  EXPECT_LE(m.max_imag, 1e-12);

  const MgResult u = mg(z2z3(), two_subgroups());
  EXPECT_NEAR(u.value, 1.0, 1e-9);
  EXPECT_EQ(u.witness, z2z3().index_of(std::vector<std::int64_t>{1, 1}));
}

TEST(Mg, NontrivialSubgroupsHaveZeroValue) {
  for (const Group& g : presentations_up_to(12)) {
    for (const Subgroup& h : enumerate_subgroups(g)) {
      if (h.order() == 1) continue;
      EXPECT_NEAR(mg(g, h.elements()).value, 0.0, 1e-9) << g.spec() << " " << format_set(g, h.elements());
    }
  }
}

// The transform of 1_{0} is identically 1, so its largest negative part is -1.
TEST(Mg, TrivialSubgroupHasValueMinusOne) {
  for (const Group& g : presentations_up_to(12)) EXPECT_NEAR(mg(g, {0}).value, -1.0, 1e-12) << g.spec();
}

TEST(Mg, Errors) {
  const Group z5 = make_group({5});
  EXPECT_THROW(mg(z5, {}), Error);
  try {
    mg(z5, {0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotSymmetric);
    EXPECT_NE(std::string(e.what()).find('1'), std::string::npos);
  }
}

TEST(Mg, MatchesDirectCosineSums) {
  for (const auto& [g, a] : symmetric_inputs(10)) {
    const auto t = oracle::real_transform(g, a);
    const MgResult m = mg(g, a);
    EXPECT_NEAR(m.value, oracle::max_neg(t), 1e-9) << g.spec() << " " << format_set(g, a);
    EXPECT_NEAR(-t[m.witness], m.value, 1e-9);
    for (Index gamma = 0; gamma < m.witness; ++gamma) EXPECT_LT(-t[gamma], m.value - 1e-9);
  }
}

TEST(Mg, NonSubgroupsAreBoundedBelowExhaustively) {
  for (const auto& [g, a] : symmetric_inputs(12)) {
    if (is_subgroup(g, a)) continue;
    const double m = mg(g, a).value;
    EXPECT_GE(m, 0.5 - 1e-9) << g.spec() << " " << format_set(g, a);
    EXPECT_GE(m, algebra_norm(indicator(g, a)) / 4.0 - 1e-9) << g.spec() << " " << format_set(g, a);
  }
}

// Coordinate swaps among equal moduli and unit scalings permute the transform.
TEST(Mg, InvariantUnderPresentationAutomorphisms) {
  const Group g = make_group({5, 5});
  const Group z12 = make_group({12});
  const auto orbits = negation_orbits(g);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << orbits.size()); mask += 37) {
    const ElementSet a = symmetric_set_from_mask(orbits, mask);
    std::vector<Index> swapped, scaled;
    for (Index x : a) {
      const auto c = g.coords_of(x);
      swapped.push_back(g.index_of(std::vector<std::int64_t>{c[1], c[0]}));
      scaled.push_back(g.index_of(std::vector<std::int64_t>{2 * c[0], 3 * c[1]}));
    }
    const double m = mg(g, a).value;
    EXPECT_NEAR(mg(g, make_set(g, swapped)).value, m, 1e-12);
    EXPECT_NEAR(mg(g, make_set(g, scaled)).value, m, 1e-12);
  }
  const auto zorbits = negation_orbits(z12);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << zorbits.size()); ++mask) {
    const ElementSet a = symmetric_set_from_mask(zorbits, mask);
    for (std::int64_t unit : {5, 7, 11}) {
      std::vector<Index> image;
      for (Index x : a) image.push_back(z12.multiply(unit, x));
      EXPECT_NEAR(mg(z12, make_set(z12, image)).value, mg(z12, a).value, 1e-12);
    }
  }
}

TEST(Spectrum, Examples) {
  const Group z5 = make_group({5});
  EXPECT_EQ(spectrum(z5, {0, 1, 4}, 0.5).characters, (ElementSet{0, 1, 4}));
  EXPECT_EQ(spectrum(z5, {0, 1, 4}, 1.0 / 15.0).characters, (ElementSet{0, 1, 2, 3, 4}));
  const Group z12 = make_group({12});
  for (const Subgroup& h : enumerate_subgroups(z12)) {
    for (double eps : {0.1, 0.5, 0.9}) {
      EXPECT_EQ(spectrum(z12, h.elements(), eps).characters, annihilator(h).elements());
    }
  }
  EXPECT_EQ(spectrum(z12, Subgroup::whole(z12).elements(), 0.5).characters, ElementSet{0});
  EXPECT_THROW(spectrum(z5, {0}, 0.0), Error);
  EXPECT_THROW(spectrum(z5, {0}, 1.0), Error);
  EXPECT_THROW(spectrum(z5, {}, 0.5), Error);
}

TEST(Spectrum, SymmetricNeighbourhoodAndNesting) {
  for (const auto& [g, a] : symmetric_inputs(9)) {
    const auto t = oracle::real_transform(g, a);
    ElementSet previous;
    for (double eps : {0.9, 0.75, 0.5, 0.25, 0.1}) {
      const Spectrum s = spectrum(g, a, eps);
      EXPECT_TRUE(contains(s.characters, 0));
      EXPECT_TRUE(is_symmetric(g, s.characters));
      EXPECT_TRUE(std::includes(s.characters.begin(), s.characters.end(), previous.begin(), previous.end()));
      for (Index gamma = 0; gamma < g.order(); ++gamma) {
        const double v = std::abs(t[gamma]), thr = eps * static_cast<double>(a.size());
        if (std::abs(v - thr) > 1e-7) {
          EXPECT_EQ(contains(s.characters, gamma), v >= thr);
        }
      }
      previous = s.characters;
    }
  }
}

TEST(NearestSubgroup, Examples) {
  const Group z6 = make_group({6});
  const auto h = nearest_subgroup(z6, {0, 2, 4});
  EXPECT_EQ(h.distance, 0u);
  EXPECT_EQ(h.subgroups.front().elements(), (ElementSet{0, 2, 4}));

  const Group z5 = make_group({5});
  const auto n = nearest_subgroup(z5, {0, 1, 4});
  EXPECT_EQ(n.distance, 2u);
  EXPECT_EQ(n.subgroups.front().elements(), ElementSet{0});
  EXPECT_EQ(n.searched, 2u);
  EXPECT_FALSE(n.heuristic);

  const Group z4 = make_group({4});
  const auto q = nearest_subgroup(z4, {1, 3});
  EXPECT_EQ(q.distance, 2u);
  EXPECT_EQ(q.subgroups.front().order(), 4u);
}

TEST(NearestSubgroup, MatchesBruteForceWithTieBreak) {
  for (const auto& [g, a] : symmetric_inputs(10)) {
    auto subs = oracle::subgroups(g);
    std::sort(subs.begin(), subs.end(), [](const ElementSet& x, const ElementSet& y) {
      return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    std::size_t best = SIZE_MAX;
    ElementSet arg;
    for (const auto& s : subs) {
      const std::size_t d = oracle::sym_diff(a, std::set<Index>(s.begin(), s.end()));
      if (d < best) {
        best = d;
        arg = s;
      }
    }
    const auto r = nearest_subgroup(g, a);
    EXPECT_EQ(r.distance, best);
    EXPECT_EQ(r.subgroups.front().elements(), arg);
    EXPECT_LE(r.distance, a.size() + r.subgroups.front().order());
  }
}

TEST(NearestSubgroupUnion, Examples) {
  const Group z5 = make_group({5});
  EXPECT_EQ(nearest_subgroup_union(z5, {0, 1, 4}, 2).distance, 2u);
  const auto u = nearest_subgroup_union(z2z3(), two_subgroups(), 2);
  EXPECT_EQ(u.distance, 0u);
  EXPECT_EQ(u.subgroups.size(), 2u);
  EXPECT_THROW(nearest_subgroup_union(z5, {0}, 0), Error);
}

TEST(NearestSubgroupUnion, SingleSubgroupAgreesWithNearest) {
  for (const auto& [g, a] : symmetric_inputs(8)) {
    const auto one = nearest_subgroup(g, a);
    const auto u = nearest_subgroup_union(g, a, 1);
    EXPECT_EQ(u.distance, one.distance);
    EXPECT_EQ(u.subgroups, one.subgroups);
  }
}

TEST(NearestSubgroupUnion, PairsMatchBruteForce) {
  for (const auto& [g, a] : symmetric_inputs(8)) {
    const auto subs = oracle::subgroups(g);
    std::size_t best = SIZE_MAX;
    for (std::size_t i = 0; i < subs.size(); ++i) {
      for (std::size_t j = i; j < subs.size(); ++j) {
        std::set<Index> u(subs[i].begin(), subs[i].end());
        u.insert(subs[j].begin(), subs[j].end());
        best = std::min(best, oracle::sym_diff(a, u));
      }
    }
    const auto r = nearest_subgroup_union(g, a, 2);
    EXPECT_EQ(r.distance, best) << g.spec() << " " << format_set(g, a);
    std::set<Index> u;
    for (const auto& h : r.subgroups) u.insert(h.elements().begin(), h.elements().end());
    EXPECT_EQ(oracle::sym_diff(a, u), r.distance);
  }
}

TEST(NearestSubgroupUnion, BudgetFallback) {
  const Group g = make_group({2, 2, 2});
  const ElementSet a = parse_set(g, "{(0,0,0),(1,0,0),(0,1,0),(0,0,1)}");
  UnionSearchOptions greedy;
  greedy.exhaustive_budget = 10;
  const auto r = nearest_subgroup_union(g, a, 3, greedy);
  EXPECT_TRUE(r.heuristic);
  std::set<Index> u;
  for (const auto& h : r.subgroups) u.insert(h.elements().begin(), h.elements().end());
  EXPECT_EQ(oracle::sym_diff(a, u), r.distance);
  EXPECT_GE(r.distance, nearest_subgroup_union(g, a, 3).distance);

  UnionSearchOptions strict = greedy;
  strict.allow_greedy = false;
  try {
    nearest_subgroup_union(g, a, 3, strict);
    FAIL();
  } catch (const CapExceededError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBudgetExceeded);
  }
}

TEST(Spencer, Examples) {
  const Group z5 = make_group({5});
  EXPECT_NEAR(spencer_statistic(z5, {0, 1, 2, 3, 4}), 0.0, 1e-12);
  const Group z12 = make_group({12});
  EXPECT_NEAR(spencer_statistic(z12, {0, 4, 8}), 3.0, 1e-12);
  EXPECT_NEAR(spencer_statistic(z5, {0, 1, 4}), kGolden, 1e-12);
  EXPECT_THROW(spencer_statistic(make_group({1}), {0}), Error);
  EXPECT_THROW(spencer_statistic(z5, {}), Error);
}
