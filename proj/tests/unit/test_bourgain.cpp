#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <thread>

#include "coslab/bourgain.hpp"
#include "coslab/error.hpp"
#include "coslab/lab/suites.hpp"
#include "coslab/serialize.hpp"
#include "oracle.hpp"

using namespace coslab;

namespace {

CosetProgressionParams z12_example() {
  const Group g = make_group({12});
  return {Subgroup::from_elements(g, {0, 6}), {1}, {2}};
}

CosetProgressionParams z101_example() {
  const Group g = make_group({101});
  return {Subgroup::trivial(g), {1}, {30}};
}

// Brute force over every coefficient vector, independent of the library's
// breadth-first enumeration.
ElementSet enumerate_prog(const CosetProgressionParams& p, double rho) {
  const Group& g = p.h.parent();
  std::set<Index> out;
  std::vector<std::int64_t> bound(p.l.size());
  for (std::size_t j = 0; j < bound.size(); ++j) {
    bound[j] = static_cast<std::int64_t>(std::floor(rho * static_cast<double>(p.l[j])));
  }
  std::vector<std::int64_t> l(bound.size());
  for (std::size_t j = 0; j < l.size(); ++j) l[j] = -bound[j];
  while (true) {
    Index s = 0;
    for (std::size_t j = 0; j < l.size(); ++j) s = g.add(s, g.multiply(l[j], p.x[j]));
    for (Index h : p.h.elements()) out.insert(g.add(s, h));
    std::size_t j = 0;
    while (j < l.size() && l[j] == bound[j]) {
      l[j] = -bound[j];
      ++j;
    }
    if (j == l.size()) break;
    ++l[j];
  }
  return {out.begin(), out.end()};
}

std::vector<double> beta_by_counting(const Group& g, const ElementSet& b) {
  std::vector<double> out(g.order(), 0.0);
  const double w = 1.0 / static_cast<double>(b.size() * b.size());
  for (Index u : b) {
    for (Index v : b) out[g.add(u, v)] += w;
  }
  return out;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST(CosetProgression, CyclicTwelveExample) {
  const auto s = coset_progression(z12_example());
  EXPECT_EQ(*s.dilate(1.0), (ElementSet{0, 1, 2, 4, 5, 6, 7, 8, 10, 11}));
  EXPECT_EQ(s.size(1.0), 10u);
  EXPECT_EQ(*s.dilate(0.5), (ElementSet{0, 1, 5, 6, 7, 11}));
  EXPECT_EQ(s.kind(), SystemKind::kCosetProgression);
  EXPECT_DOUBLE_EQ(s.nominal_dimension(), 2.0);
}

TEST(CosetProgression, FloorConvention) {
  // rho L = 1.98 rounds down to 1, not to the nearer 2.
  const auto s = coset_progression(z12_example());
  EXPECT_EQ(*s.dilate(0.99), *s.dilate(0.5));
  EXPECT_EQ(s.size(0.49), 2u);
}

TEST(CosetProgression, SmallRhoAndZeroLengthGiveH) {
  const auto p = z12_example();
  const auto s = coset_progression(p);
  EXPECT_EQ(*s.dilate(1e-6), p.h.elements());
  CosetProgressionParams flat = p;
  flat.l = {0};
  const auto t = coset_progression(flat);
  for (double rho : default_grid()) EXPECT_EQ(*t.dilate(rho), p.h.elements());
}

TEST(CosetProgression, MatchesBruteForce) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = lab::random_progression(rng);
    const auto s = coset_progression(p);
    for (double rho : {0.25, 0.5, 1.0, 2.0}) {
      EXPECT_EQ(*s.dilate(rho), enumerate_prog(p, rho)) << p.h.parent().spec() << " rho=" << rho;
    }
  }
}

TEST(CosetProgression, Errors) {
  auto p = z12_example();
  p.l = {1, 2};
  EXPECT_EQ(code_of([&] { coset_progression(p); }), ErrorCode::kInvalidArgument);
  p = z12_example();
  p.l = {-1};
  EXPECT_EQ(code_of([&] { coset_progression(p); }), ErrorCode::kInvalidArgument);
  p = z12_example();
  p.x = {12};
  EXPECT_EQ(code_of([&] { coset_progression(p); }), ErrorCode::kInvalidArgument);
  const auto s = coset_progression(z12_example());
  EXPECT_EQ(code_of([&] { s.dilate(0.0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { s.dilate(2.5); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { s.dilate(-1.0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { s.dilated(1.5); }), ErrorCode::kInvalidArgument);
}

TEST(CosetProgression, DimensionBookkeeping) {
  const Group g = make_group({4, 5, 7});
  for (std::size_t d = 0; d <= 3; ++d) {
    CosetProgressionParams p{Subgroup::trivial(g), std::vector<Index>(d, 1), std::vector<std::int64_t>(d, 1)};
    const double expected = std::max(1.0, std::ceil(static_cast<double>(d) * std::log2(3.0)));
    EXPECT_DOUBLE_EQ(coset_progression(p).nominal_dimension(), expected);
  }
}

TEST(Axioms, SmallGridPasses) {
  const auto report = verify_axioms(coset_progression(z12_example()), {0.25, 0.5, 1.0, 2.0});
  ASSERT_EQ(report.axioms.size(), 5u);
  const std::vector<std::string> names{"Nesting", "Zero", "Symmetry", "Addition", "Doubling"};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(report.axioms[i].name, names[i]);
    EXPECT_TRUE(report.axioms[i].passed) << report.axioms[i].witness;
  }
}

TEST(Axioms, RandomProgressionsPassWithinDimensionBound) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = lab::random_progression(rng);
    const auto report = verify_axioms(coset_progression(p));
    EXPECT_TRUE(report.all_passed()) << progression_to_json(p).dump();
    EXPECT_LE(report.empirical_dimension, 2.0 * static_cast<double>(p.x.size()) + 1.0 + 1e-12);
  }
}

TEST(Axioms, HOnlySystemHasZeroDimension) {
  const Group g = make_group({2, 8});
  CosetProgressionParams p{Subgroup::generated_by(g, std::vector<Index>{2}), {3, 5}, {0, 0}};
  const auto report = verify_axioms(coset_progression(p));
  EXPECT_TRUE(report.all_passed());
  EXPECT_EQ(report.empirical_dimension, 0.0);
}

TEST(Axioms, BrokenExplicitSystemsAreReported) {
  const Group g = make_group({10});
  // Grows too fast and loses symmetry at rho = 2.
  BourgainSystem bad(
      g,
      [](double rho) {
        if (rho > 1.0) return std::make_shared<const ElementSet>(ElementSet{0, 1, 2, 3, 4, 7, 8, 9});
        if (rho >= 0.5) return std::make_shared<const ElementSet>(ElementSet{0, 1, 9});
        return std::make_shared<const ElementSet>(ElementSet{1, 9});
      },
      1.0, SystemKind::kExplicit);
  const auto report = verify_axioms(bad, {0.25, 0.5, 1.0, 2.0});
  EXPECT_FALSE(report.all_passed());
  std::map<std::string, bool> passed;
  for (const auto& a : report.axioms) {
    passed[a.name] = a.passed;
    if (!a.passed) {
      EXPECT_FALSE(a.witness.empty()) << a.name;
    }
  }
  EXPECT_FALSE(passed["Zero"]);
  EXPECT_FALSE(passed["Symmetry"]);
  EXPECT_FALSE(passed["Doubling"]);
  EXPECT_FALSE(passed["Addition"]);
  EXPECT_TRUE(passed["Nesting"]);
}

TEST(Regularity, HOnlySystemPassesEverywhere) {
  const Group g = make_group({6});
  const auto s = coset_progression({Subgroup::from_elements(g, {0, 2, 4}), {1}, {0}});
  for (int i = 0; i < 256; i += 17) {
    const auto r = regularity_at(s, 0.5 + i / 512.0);
    EXPECT_TRUE(r.passes);
    for (double ratio : r.ratios) EXPECT_EQ(ratio, 1.0);
  }
  EXPECT_EQ(find_regular_dilate(s).lambda, 0.5);
}

TEST(Regularity, CyclicHundredOne) {
  const auto p = z101_example();
  const auto s = coset_progression(p);
  const auto r = find_regular_dilate(s);
  ASSERT_TRUE(r.passes);
  EXPECT_GE(r.lambda, 0.5);
  EXPECT_LT(r.lambda, 1.0);
  ASSERT_EQ(r.etas.size(), 33u);
  // |B_rho| = 2 floor(30 rho) + 1 drives every ratio.
  for (std::size_t i = 0; i < r.etas.size(); ++i) {
    const double top = 2.0 * std::floor(30.0 * r.lambda) + 1.0;
    const double bottom = 2.0 * std::floor(30.0 * r.lambda * (1.0 + r.etas[i])) + 1.0;
    EXPECT_DOUBLE_EQ(r.ratios[i], top / bottom);
    EXPECT_LE(std::abs(r.ratios[i] - 1.0), 10.0 * r.dimension * std::abs(r.etas[i]) + 1e-12);
    EXPECT_LE(r.dimension * std::abs(r.etas[i]), 0.1 + 1e-12);
  }
}

TEST(Regularity, GridExhaustionIsReported) {
  // An interval system declared with dimension 0.06 grows too fast for the
  // regularity window at every lambda.
  const Group g = make_group({4096});
  BourgainSystem jumpy(
      g,
      [g](double rho) {
        const auto r = static_cast<std::int64_t>(std::floor(rho * 1000.0));
        ElementSet out;
        for (std::int64_t k = -r; k <= r; ++k) out.push_back(g.multiply(k, 1));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return std::make_shared<const ElementSet>(out);
      },
      0.06, SystemKind::kExplicit);
  EXPECT_EQ(code_of([&] { find_regular_dilate(jumpy); }), ErrorCode::kRegularityNotFound);
}

TEST(Regularity, DilatedSystemReadsScaledDilates) {
  const auto s = coset_progression(z101_example());
  for (double lambda : {0.5, 0.7, 0.93}) {
    const auto t = s.dilated(lambda);
    EXPECT_DOUBLE_EQ(t.scale(), lambda);
    for (double rho : {0.25, 1.0, 1.5, 2.0}) EXPECT_EQ(*t.dilate(rho), *s.dilate(lambda * rho));
    EXPECT_EQ(*t.dilated(0.5).dilate(1.0), *s.dilate(lambda * 0.5));
  }
}

TEST(SizeLemma, Examples) {
  const auto s = coset_progression(z12_example());
  const auto half = size_lemma_check(s, 0.5);
  EXPECT_EQ(half.lhs, 6u);
  EXPECT_DOUBLE_EQ(half.rhs, 10.0 * std::pow(0.25, 2.0));
  EXPECT_TRUE(half.holds);
  const auto one = size_lemma_check(s, 1.0);
  EXPECT_EQ(one.lhs, 10u);
  EXPECT_DOUBLE_EQ(one.rhs, 10.0 * 0.25);
  EXPECT_TRUE(one.holds);

  const Group g = make_group({9});
  const auto h = coset_progression({Subgroup::from_elements(g, {0, 3, 6}), {1}, {0}});
  for (double lambda : {0.01, 0.3, 1.0}) {
    const auto r = size_lemma_check(h, lambda);
    EXPECT_EQ(r.lhs, 3u);
    EXPECT_TRUE(r.holds);
  }
  EXPECT_EQ(code_of([&] { size_lemma_check(s, 0.0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { size_lemma_check(s, 1.2); }), ErrorCode::kInvalidArgument);
}

TEST(SizeLemma, HoldsOnRandomProgressions) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = coset_progression(lab::random_progression(rng));
    for (double lambda : {0.1, 0.25, 0.5, 0.77, 1.0}) EXPECT_TRUE(size_lemma_check(s, lambda).holds);
  }
}

TEST(Beta, MatchesPairCounting) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = lab::random_progression(rng);
    const auto s = coset_progression(p);
    const Group& g = s.group();
    const Measure b = beta(s, 1.0);
    const auto expected = beta_by_counting(g, *s.dilate(1.0));
    double mass = 0.0;
    for (Index x = 0; x < g.order(); ++x) {
      EXPECT_NEAR(b[x], expected[x], 1e-12);
      EXPECT_NEAR(b[x], b[g.negate(x)], 1e-12);
      mass += b[x];
    }
    EXPECT_NEAR(mass, 1.0, 1e-12);
    if (g.order() <= 256) {
      const auto t = oracle::transform(g, b.density().real_part());
      for (const auto& z : t) EXPECT_GE(z.real(), -1e-12);
    }
  }
}

TEST(Beta, SubgroupDilateIsIdempotent) {
  const Group g = make_group({2, 6});
  const Subgroup h = Subgroup::generated_by(g, std::vector<Index>{g.index_of(std::vector<std::int64_t>{1, 3})});
  const auto s = coset_progression({h, {1}, {0}});
  const Measure b = beta(s, 1.0);
  const Measure mu = uniform_measure(g, h.elements());
  EXPECT_NEAR(total_variation(b, mu), 0.0, 1e-12);
}

TEST(Continuity, TranslationExamples) {
  const Group g = make_group({12});
  // Dilates are the subgroup {0,3,6,9}; translating mu_H by its own elements changes nothing.
  const auto h = coset_progression({Subgroup::from_elements(g, {0, 3, 6, 9}), {1}, {0}});
  const auto r = translation_continuity_check(h, 0.05);
  EXPECT_EQ(r.checked, 4u);
  EXPECT_NEAR(r.max_observed, 0.0, 1e-12);
  EXPECT_TRUE(r.holds);

  const auto s = coset_progression(z101_example());
  const auto tiny = translation_continuity_check(s, 1e-3);
  EXPECT_EQ(tiny.checked, 1u);
  EXPECT_EQ(tiny.max_observed, 0.0);
}

namespace {

// Z/1009 with L = 400: long enough that B_eta moves at d eta = 1/10.
CosetProgressionParams z1009_example() { return {Subgroup::trivial(make_group({1009})), {1}, {400}}; }

void check_translation(const CosetProgressionParams& p, bool expect_motion) {
  const auto base = coset_progression(p);
  const auto regular = base.dilated(find_regular_dilate(base).lambda);
  const double d = regular.nominal_dimension();
  const Group& g = regular.group();
  const auto b = beta_by_counting(g, *regular.dilate(1.0));
  for (double eta : {1.0 / (40.0 * d), 1.0 / (10.0 * d)}) {
    const auto r = translation_continuity_check(regular, eta);
    EXPECT_DOUBLE_EQ(r.bound, 20.0 * d * eta);
    EXPECT_TRUE(r.holds) << r.max_observed;
    double worst = 0.0;
    for (Index y : *regular.dilate(eta)) {
      double tv = 0.0;
      for (Index x = 0; x < g.order(); ++x) tv += std::abs(b[g.add(x, g.negate(y))] - b[x]);
      worst = std::max(worst, tv);
    }
    EXPECT_NEAR(r.max_observed, worst, 1e-12);
    if (expect_motion) {
      EXPECT_GT(r.max_observed, 0.0) << eta;
    }
  }
}

void check_smoothing(const CosetProgressionParams& p, bool expect_motion) {
  const auto base = coset_progression(p);
  const auto regular = base.dilated(find_regular_dilate(base).lambda);
  const Group& g = regular.group();
  const double d = regular.nominal_dimension();
  std::mt19937_64 rng(99);
  std::vector<double> sign(g.order());
  for (double& v : sign) v = rng() & 1 ? 1.0 : -1.0;
  const auto f = DensityFunction::from_real(g, Side::kPrimal, sign);
  const auto b = beta_by_counting(g, *regular.dilate(1.0));
  std::vector<double> smooth(g.order(), 0.0);
  for (Index x = 0; x < g.order(); ++x) {
    for (Index y = 0; y < g.order(); ++y) smooth[x] += sign[y] * b[g.add(x, g.negate(y))];
  }
  for (double eta : {1.0 / (40.0 * d), 1.0 / (10.0 * d)}) {
    const auto r = smoothing_continuity_check(regular, f, eta);
    EXPECT_DOUBLE_EQ(r.bound, 20.0 * d * eta);
    EXPECT_TRUE(r.holds);
    double worst = 0.0;
    for (Index x = 0; x < g.order(); ++x) {
      for (Index t : *regular.dilate(eta)) worst = std::max(worst, std::abs(smooth[g.add(x, t)] - smooth[x]));
    }
    EXPECT_NEAR(r.max_observed, worst, 1e-12);
    if (expect_motion) {
      EXPECT_GT(r.max_observed, 0.0) << eta;
    }
  }
}

}  // namespace

TEST(Continuity, TranslationCyclicHundredOne) { check_translation(z101_example(), false); }

TEST(Continuity, TranslationLongProgression) { check_translation(z1009_example(), true); }

TEST(Continuity, SamplingChecksFewerShifts) {
  const auto s = coset_progression(z101_example());
  const auto full = translation_continuity_check(s, 0.1);
  const auto sampled = translation_continuity_check(s, 0.1, 2);
  EXPECT_EQ(full.checked, 7u);
  EXPECT_EQ(sampled.checked, 2u);
  EXPECT_LE(sampled.max_observed, full.max_observed);
}

TEST(Continuity, SmoothingTrivialCases) {
  const auto base = coset_progression(z101_example());
  const auto regular = base.dilated(find_regular_dilate(base).lambda);
  const Group& g = regular.group();
  const std::vector<double> flat_values(g.order(), -0.7);
  const auto flat =
      smoothing_continuity_check(regular, DensityFunction::from_real(g, Side::kPrimal, flat_values), 0.05);
  EXPECT_NEAR(flat.max_observed, 0.0, 1e-12);
  EXPECT_TRUE(flat.holds);
  const auto zero = smoothing_continuity_check(regular, indicator(g, {0, 1, 100}), 1e-4);
  EXPECT_EQ(zero.checked, g.order());
  EXPECT_NEAR(zero.max_observed, 0.0, 1e-15);
}

TEST(Continuity, SmoothingRandomSignsCyclicHundredOne) { check_smoothing(z101_example(), false); }

TEST(Continuity, SmoothingRandomSignsLongProgression) { check_smoothing(z1009_example(), true); }

TEST(LevelSet, SubgroupIndicator) {
  const Group g = make_group({4, 6});
  const Subgroup h = Subgroup::generated_by(g, std::vector<Index>{g.index_of(std::vector<std::int64_t>{0, 1})});
  const auto s = coset_progression({h, {}, {}});
  const auto r = level_set_constancy(s, indicator(g, h.elements()), 0.25);
  EXPECT_TRUE(r.hypothesis_holds);
  EXPECT_EQ(r.level_set, h.elements());
  ASSERT_TRUE(r.v.has_value());
  EXPECT_EQ(r.v->elements(), h.elements());
  EXPECT_TRUE(r.constant_on_cosets);
  EXPECT_TRUE(r.holds);
}

TEST(LevelSet, FailedHypothesisIsReportOnly) {
  const auto s = coset_progression(z101_example());
  const Group& g = s.group();
  std::vector<double> v(g.order(), 0.0);
  for (Index x = 0; x < g.order(); ++x) v[x] = x % 2 ? 0.6 : 0.4;
  const auto r = level_set_constancy(s, DensityFunction::from_real(g, Side::kPrimal, v), 0.25);
  EXPECT_FALSE(r.almost_boolean);
  EXPECT_FALSE(r.hypothesis_holds);
  EXPECT_TRUE(r.holds);
  const auto wide = level_set_constancy(s, indicator(g, {0}), 0.5);
  EXPECT_FALSE(wide.epsilon_in_range);
  EXPECT_FALSE(wide.hypothesis_holds);
  std::vector<double> big(g.order(), 2.0);
  EXPECT_FALSE(level_set_constancy(s, DensityFunction::from_real(g, Side::kPrimal, big), 0.25).values_in_range);
}

TEST(LevelSet, WidenedIntervalInCyclicHundredOne) {
  const auto base = coset_progression({Subgroup::trivial(make_group({101})), {1}, {2}});
  const Group& g = base.group();
  ElementSet wide;
  for (Index x = 0; x < g.order(); ++x) {
    if (x <= 20 || x >= 81) wide.push_back(x);
  }
  const double eps = 0.3;
  const auto r = level_set_constancy(base, indicator(g, wide), eps);
  ASSERT_TRUE(r.v.has_value());
  if (r.hypothesis_holds) {
    EXPECT_TRUE(r.constant_on_cosets);
  }
  EXPECT_TRUE(r.holds);
  // Direct check: V = <B_(eps/20d)>, and S is a union of its cosets when the hypothesis holds.
  const auto gens = *base.dilate(eps / (20.0 * base.nominal_dimension()));
  EXPECT_EQ(gens, ElementSet{0});
  EXPECT_EQ(r.v->elements(), ElementSet{0});
}

TEST(LevelSet, NoisyCosetUnion) {
  // <B_2> is the even residues; the noise keeps f * beta close to 0.9 on them.
  const Group g = make_group({120});
  const Subgroup h = Subgroup::from_elements(g, {0, 30, 60, 90});
  const auto s = coset_progression({h, {4}, {2}});
  std::mt19937_64 rng(17);
  std::vector<double> v(g.order());
  for (Index x = 0; x < g.order(); ++x) v[x] = (x % 2 == 0 ? 0.9 : 0.0) + (rng() & 1 ? 0.05 : -0.05);
  const auto r = level_set_constancy(s, DensityFunction::from_real(g, Side::kPrimal, v), 0.3);
  EXPECT_TRUE(r.values_in_range);
  EXPECT_TRUE(r.almost_boolean);
  ASSERT_TRUE(r.hypothesis_holds);
  ElementSet evens;
  for (Index x = 0; x < g.order(); x += 2) evens.push_back(x);
  EXPECT_EQ(r.level_set, evens);
  ASSERT_TRUE(r.v.has_value());
  EXPECT_EQ(r.v->elements(), h.elements());
  EXPECT_TRUE(r.constant_on_cosets);
  EXPECT_TRUE(r.holds);
}

TEST(Cache, ConcurrentFillsAgree) {
  const auto s = coset_progression(z101_example());
  std::vector<std::thread> threads;
  std::vector<std::vector<std::size_t>> sizes(4);
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 1; i <= 200; ++i) sizes[t].push_back(s.size(i / 100.0));
    });
  }
  for (auto& th : threads) th.join();
  for (int t = 1; t < 4; ++t) EXPECT_EQ(sizes[t], sizes[0]);
  EXPECT_EQ(s.dilate(0.5).get(), s.dilate(0.5).get());
  const auto copy = s;
  EXPECT_EQ(copy.dilate(0.5).get(), s.dilate(0.5).get());
}

TEST(ProgressionJson, RoundTrip) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = lab::random_progression(rng);
    const auto q = progression_from_json(Json::parse(progression_to_json(p).dump()));
    EXPECT_TRUE(q.h.parent() == p.h.parent());
    EXPECT_EQ(q.h.elements(), p.h.elements());
    EXPECT_EQ(q.x, p.x);
    EXPECT_EQ(q.l, p.l);
  }
  const Json j = Json::parse(R"({"group": "Z12", "H": [[6]], "x": [[1]], "L": [2]})");
  const auto p = progression_from_json(j);
  EXPECT_EQ(p.h.elements(), (ElementSet{0, 6}));
  EXPECT_EQ(*coset_progression(p).dilate(1.0), *coset_progression(z12_example()).dilate(1.0));
}
