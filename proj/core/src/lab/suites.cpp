#include "coslab/lab/suites.hpp"

#include <chrono>
#include <cmath>
#include <map>

#include "coslab/chowla.hpp"
#include "coslab/dichotomy.hpp"
#include "coslab/error.hpp"
#include "coslab/lab/random.hpp"

namespace coslab::lab {

namespace {

using Body = std::function<ExperimentRecord(std::size_t)>;

struct SymmetricInput {
  std::size_t group_id;
  ElementSet set;
};

// Every nonempty symmetric subset of every presentation of order <= n.
struct ExhaustiveInputs {
  std::vector<Group> groups;
  std::vector<SymmetricInput> inputs;
};

ExhaustiveInputs exhaustive_inputs(std::size_t max_order) {
  ExhaustiveInputs out;
  out.groups = presentations_up_to(max_order);
  for (std::size_t gi = 0; gi < out.groups.size(); ++gi) {
    const auto orbits = negation_orbits(out.groups[gi]);
    if (orbits.size() > 24) {
      throw Error(ErrorCode::kInfeasible, "exhaustive suites are limited to 24 negation orbits");
    }
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << orbits.size()); ++mask) {
      out.inputs.push_back({gi, symmetric_set_from_mask(orbits, mask)});
    }
  }
  return out;
}

ExperimentRecord base_record(const std::string& suite, const Group& g) {
  ExperimentRecord r;
  r.suite = suite;
  r.instance.group = g.spec();
  return r;
}

// Wraps a body with the timing opt-in.
std::vector<ExperimentRecord> run_jobs(std::size_t n, const SuiteOptions& o, const Body& body) {
  Body timed = [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentRecord r = body(i);
    if (o.timing) {
      r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return r;
  };
  return parallel_map<ExperimentRecord>(n, o.jobs, timed);
}

std::vector<std::complex<double>> random_values(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::complex<double>> v(n);
  for (auto& z : v) z = {2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0};
  return v;
}

double max_abs_diff(const DensityFunction& a, const DensityFunction& b) { return sup_distance(a, b); }

// ---------------------------------------------------------------------------

std::vector<ExperimentRecord> suite_prop21(const SuiteOptions& o) {
  const auto ex = exhaustive_inputs(o.max_order);
  return run_jobs(ex.inputs.size(), o, [&](std::size_t i) {
    const auto& in = ex.inputs[i];
    const Group& g = ex.groups[in.group_id];
    ExperimentRecord r = base_record("prop21", g);
    r.instance.set = format_set(g, in.set);
    const MgResult m = mg(g, in.set);
    const bool sub = is_subgroup(g, in.set);
    r.outputs = {{"m_g", m.value}, {"subgroup", sub}};
    r.pass = sub ? std::abs(m.value) <= 1e-9 : m.value >= 0.5 - 1e-9;
    return r;
  });
}

std::vector<ExperimentRecord> suite_parseval(const SuiteOptions& o) {
  const auto groups = fourier_suite_groups();
  const std::size_t trials = o.trials ? o.trials : 100;
  return run_jobs(groups.size() * trials, o, [&](std::size_t i) {
    const Group& g = groups[i / trials];
    const std::size_t trial = i % trials;
    ExperimentRecord r = base_record("parseval", g);
    r.instance.seed = o.seed;
    r.instance.index = i;
    auto rng = instance_rng(o.seed, i);
    const DensityFunction f(g, Side::kPrimal, random_values(rng, g.order()));
    const DensityFunction h(g, Side::kPrimal, random_values(rng, g.order()));
    const DensityFunction ft = dft(f);
    const DensityFunction ht = dft(h);

    const double lhs = std::pow(l2_norm(f), 2);
    const double rhs = std::pow(l2_norm(ft), 2);
    const double parseval = std::abs(lhs - rhs) / lhs;
    const auto pl = inner_product(f, h);
    const auto pr = inner_product(ft, ht);
    const double plancherel = std::abs(pl - pr) / (l2_norm(f) * l2_norm(h));
    const double inversion = max_abs_diff(idft(ft), f) / f.max_abs();
    const double dual_inversion = max_abs_diff(dft(idft(ft)), ft) / ft.max_abs();
    r.outputs = {{"parseval", parseval},
                 {"plancherel", plancherel},
                 {"inversion", inversion},
                 {"dual_inversion", dual_inversion}};
    bool ok = parseval <= 1e-10 && plancherel <= 1e-10 && inversion <= 1e-10 && dual_inversion <= 1e-10;
    // The quadratic route is cheap below 512; above that a few trials suffice.
    if (g.order() <= 512 || trial < 3) {
      const DensityFunction naive = dft(f, TransformMethod::kNaive);
      const double agree = max_abs_diff(naive, ft) / naive.max_abs();
      const double agree_inv = max_abs_diff(idft(ft, TransformMethod::kNaive), f) / f.max_abs();
      r.outputs["fast_vs_naive"] = agree;
      r.outputs["fast_vs_naive_inverse"] = agree_inv;
      ok = ok && agree <= 1e-9 && agree_inv <= 1e-9;
    }
    r.pass = ok;
    return r;
  });
}

std::vector<ExperimentRecord> suite_eq31(const SuiteOptions& o) {
  const auto groups = convolution_suite_groups();
  const std::size_t trials = o.trials ? o.trials : 50;
  return run_jobs(groups.size() * trials, o, [&](std::size_t i) {
    const Group& g = groups[i / trials];
    ExperimentRecord r = base_record("eq31", g);
    r.instance.seed = o.seed;
    r.instance.index = i;
    auto rng = instance_rng(o.seed, i);
    const ElementSet a = random_symmetric_set(rng, g, 0.05 + 0.9 * uniform01(rng));
    r.instance.set = format_set(g, a);
    const DensityFunction t = dft(indicator(g, a));
    DensityFunction power = t;
    Json errors = Json::object();
    bool ok = true;
    for (int k = 2; k <= 4; ++k) {
      power = dual_convolve(t, power);
      const double err = sup_distance(power, t);
      errors[std::to_string(k)] = err;
      ok = ok && err <= 1e-8 * static_cast<double>(a.size());
    }
    r.outputs = {{"size", a.size()}, {"sup_error", std::move(errors)}};
    r.pass = ok;
    return r;
  });
}

Json outcome_summary(const DichotomyOutcome& out) {
  Json j = {{"tag", std::string(to_string(out.tag))}, {"verified", out.verified}};
  if (out.witness) {
    j["certified"] = out.witness->certified;
    j["achieved"] = out.witness->achieved;
  }
  if (out.structure && out.structure->distance) j["distance"] = *out.structure->distance;
  return j;
}

std::vector<ExperimentRecord> suite_lemma22(const SuiteOptions& o) {
  const auto ex = exhaustive_inputs(o.max_order);
  return run_jobs(ex.inputs.size(), o, [&](std::size_t i) {
    const auto& in = ex.inputs[i];
    const Group& g = ex.groups[in.group_id];
    ExperimentRecord r = base_record("lemma22", g);
    r.instance.set = format_set(g, in.set);
    const DensityFunction f = indicator(g, in.set);
    const Subgroup zero = Subgroup::trivial(g);
    const DichotomyOutcome l1 = trivial_witness_l1(f, zero, 0.0);
    const DichotomyOutcome linf = trivial_witness_linf(f, zero, 0.0);
    const bool sub = is_subgroup(g, in.set);
    bool ok = l1.verified && linf.verified;
    if (sub) {
      ok = ok && l1.tag == OutcomeTag::kStructure && linf.tag == OutcomeTag::kStructure &&
           l1.structure->distance && *l1.structure->distance == 0.0;
    } else {
      ok = ok && l1.tag == OutcomeTag::kWitness && linf.tag == OutcomeTag::kWitness &&
           l1.witness->achieved <= -0.125 + 1e-9;
    }
    r.outputs = {{"subgroup", sub}, {"l1", outcome_summary(l1)}, {"linf", outcome_summary(linf)}};
    r.pass = ok;
    return r;
  });
}

std::vector<ExperimentRecord> suite_lemma42(const SuiteOptions& o) {
  const std::vector<Group> groups = presentations_up_to(64);
  const std::size_t trials = o.trials ? o.trials : 100;
  std::vector<ExperimentRecord> out = run_jobs(trials, o, [&](std::size_t i) {
    auto rng = instance_rng(o.seed, i);
    const Group& g = groups[uniform_below(rng, groups.size())];
    const auto subgroups = enumerate_subgroups(g);
    const Subgroup& v = subgroups[uniform_below(rng, subgroups.size())];
    ElementSet a;
    for (Index x = 0; x < g.order(); ++x) {
      if (uniform01(rng) < 0.5) a.push_back(x);
    }
    ExperimentRecord r = base_record("lemma42", g);
    r.instance.seed = o.seed;
    r.instance.index = i;
    r.instance.set = format_set(g, a);
    const CalculationReport c = calculation_identity_check(g, a, v);
    r.outputs = {{"v", format_set(g, v.elements())}, {"lhs", c.lhs}, {"rhs", c.rhs}};
    r.pass = c.holds;
    return r;
  });
  // The hand-computed instance: lhs = rhs = 3.
  const Group z6 = make_group({6});
  const ElementSet a = parse_set(z6, "{0,1,5}");
  const Subgroup v = Subgroup::from_elements(z6, {0, 3});
  const CalculationReport c = calculation_identity_check(z6, a, v);
  ExperimentRecord r = base_record("lemma42", z6);
  r.instance.set = format_set(z6, a);
  r.outputs = {{"v", format_set(z6, v.elements())}, {"lhs", c.lhs}, {"rhs", c.rhs}};
  r.pass = c.holds && std::abs(c.lhs - 3.0) <= 1e-9 && std::abs(c.rhs - 3.0) <= 1e-9;
  out.push_back(std::move(r));
  return out;
}

std::vector<ExperimentRecord> suite_trichotomy(const SuiteOptions& o) {
  const auto ex = exhaustive_inputs(o.max_order);
  return run_jobs(ex.inputs.size(), o, [&](std::size_t i) {
    const auto& in = ex.inputs[i];
    const Group& g = ex.groups[in.group_id];
    ExperimentRecord r = base_record("trichotomy", g);
    r.instance.set = format_set(g, in.set);
    bool ok = true;
    for (double eps : {0.25, 0.5, 0.75}) {
      const DichotomyOutcome out = spec_trichotomy(g, in.set, eps);
      r.outputs[std::to_string(eps).substr(0, 4)] = outcome_summary(out);
      ok = ok && out.verified;
    }
    r.pass = ok;
    return r;
  });
}

std::vector<ExperimentRecord> suite_theorem41(const SuiteOptions& o) {
  const auto ex = exhaustive_inputs(o.max_order);
  std::vector<std::vector<Subgroup>> subgroups;
  for (const Group& g : ex.groups) subgroups.push_back(enumerate_subgroups(g));
  return run_jobs(ex.inputs.size(), o, [&](std::size_t i) {
    const auto& in = ex.inputs[i];
    const Group& g = ex.groups[in.group_id];
    ExperimentRecord r = base_record("theorem41-skeleton", g);
    r.instance.set = format_set(g, in.set);
    const std::size_t optimum = nearest_subgroup(in.set, subgroups[in.group_id]).distance;
    bool ok = true;
    for (double k : {1.0, 2.0, static_cast<double>(in.set.size())}) {
      const DichotomyOutcome out = structure_or_witness(g, in.set, k);
      Json s = outcome_summary(out);
      s["branch"] = out.branch_trace.back();
      r.outputs["K=" + std::to_string(static_cast<long long>(k))] = s;
      ok = ok && out.verified;
      if (out.tag == OutcomeTag::kStructure) {
        ok = ok && *out.structure->distance >= static_cast<double>(optimum);
      }
    }
    r.outputs["nearest_distance"] = optimum;
    r.pass = ok;
    return r;
  });
}

// ---------------------------------------------------------------------------
// Bourgain suites share one stream of random progressions.

struct ProgInstance {
  CosetProgressionParams params;
  BourgainSystem system;
};

ProgInstance make_prog(std::uint64_t seed, std::size_t i) {
  auto rng = instance_rng(seed, i);
  CosetProgressionParams p = random_progression(rng);
  BourgainSystem s = coset_progression(p);
  return {std::move(p), std::move(s)};
}

ExperimentRecord prog_record(const std::string& suite, const ProgInstance& inst, std::uint64_t seed, std::size_t i) {
  ExperimentRecord r = base_record(suite, inst.params.h.parent());
  r.instance.seed = seed;
  r.instance.index = i;
  r.instance.set = progression_to_json(inst.params).dump();
  return r;
}

std::vector<ExperimentRecord> suite_bourgain_axioms(const SuiteOptions& o) {
  const std::size_t trials = o.trials ? o.trials : 200;
  std::vector<ExperimentRecord> out = run_jobs(trials, o, [&](std::size_t i) {
    const ProgInstance inst = make_prog(o.seed, i);
    ExperimentRecord r = prog_record("bourgain-axioms", inst, o.seed, i);
    const AxiomReport axioms = verify_axioms(inst.system);
    const double d = static_cast<double>(inst.params.x.size());
    Json j = axioms_to_json(axioms);
    j["dimension_bound"] = 2.0 * d + 1.0;
    try {
      const RegularityReport reg = find_regular_dilate(inst.system);
      j["regular"] = true;
      j["lambda"] = reg.lambda;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kRegularityNotFound) throw;
      j["regular"] = false;
      j["regularity_error"] = e.what();
    }
    r.outputs = std::move(j);
    r.pass = axioms.all_passed() && axioms.empirical_dimension <= 2.0 * d + 1.0;
    return r;
  });
  std::size_t regular = 0;
  for (const auto& r : out) regular += r.outputs.at("regular").get<bool>() ? 1 : 0;
  const double rate = trials ? static_cast<double>(regular) / static_cast<double>(trials) : 1.0;
  ExperimentRecord summary;
  summary.suite = "bourgain-axioms";
  summary.instance.group = "summary";
  summary.instance.seed = o.seed;
  summary.outputs = {{"instances", trials}, {"regular", regular}, {"regular_rate", rate}};
  summary.pass = rate >= 0.95;
  out.push_back(std::move(summary));
  return out;
}

// The first `count` instances of the stream with d >= 1 admitting a regular
// dilate on the grid, together with that dilate.
struct RegularInstance {
  std::size_t index;
  ProgInstance inst;
  double lambda;
};

std::vector<RegularInstance> regular_instances(std::uint64_t seed, std::size_t count) {
  std::vector<RegularInstance> out;
  for (std::size_t i = 0; out.size() < count && i < 100 * count; ++i) {
    ProgInstance inst = make_prog(seed, i);
    if (inst.params.x.empty()) continue;
    try {
      const double lambda = find_regular_dilate(inst.system).lambda;
      out.push_back({i, std::move(inst), lambda});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kRegularityNotFound) throw;
    }
  }
  return out;
}

template <class F>
std::vector<ExperimentRecord> regular_suite(const std::string& name, const SuiteOptions& o, F check) {
  const std::size_t trials = o.trials ? o.trials : 20;
  const auto instances = regular_instances(o.seed, trials);
  return run_jobs(instances.size(), o, [&](std::size_t i) {
    const RegularInstance& ri = instances[i];
    ExperimentRecord r = prog_record(name, ri.inst, o.seed, ri.index);
    const BourgainSystem scaled = ri.inst.system.dilated(ri.lambda);
    r.outputs = {{"lambda", ri.lambda}};
    r.pass = check(ri, scaled, r.outputs);
    return r;
  });
}

std::vector<ExperimentRecord> suite_lemma53(const SuiteOptions& o) {
  return regular_suite("lemma53", o, [](const RegularInstance&, const BourgainSystem& s, Json& out) {
    const double eta = regularity_eta(8, s.nominal_dimension());
    const ContinuityReport c = translation_continuity_check(s, eta);
    out["check"] = continuity_to_json(s.group(), c);
    return c.holds;
  });
}

std::vector<ExperimentRecord> suite_lemma54(const SuiteOptions& o) {
  return regular_suite("lemma54", o, [&](const RegularInstance& ri, const BourgainSystem& s, Json& out) {
    auto rng = instance_rng(o.seed ^ 0x5a5a5a5aULL, ri.index);
    std::vector<double> values(s.group().order());
    for (double& v : values) v = uniform_below(rng, 2) ? 1.0 : -1.0;
    const DensityFunction f = DensityFunction::from_real(s.group(), Side::kPrimal, values);
    const double eta = regularity_eta(8, s.nominal_dimension());
    const ContinuityReport c = smoothing_continuity_check(s, f, eta);
    out["check"] = continuity_to_json(s.group(), c);
    return c.holds;
  });
}

std::vector<ExperimentRecord> suite_lemma55(const SuiteOptions& o) {
  return regular_suite("lemma55", o, [&](const RegularInstance& ri, const BourgainSystem& s, Json& out) {
    const Group& g = s.group();
    auto rng = instance_rng(o.seed ^ 0xa5a5a5a5ULL, ri.index);
    // epsilon = 1/4 puts epsilon / 20d on the regularity grid.
    const double eps = 0.25;
    std::vector<std::pair<std::string, std::vector<double>>> inputs;

    // Union of cosets of the group generated by B_2: f * beta = f exactly.
    const Subgroup w = subgroup_from_generators(g, *s.dilate(2.0));
    std::vector<double> cosets(g.order(), -1.0);
    for (Index x = 0; x < g.order(); ++x) {
      if (cosets[x] >= 0.0) continue;
      const double v = static_cast<double>(uniform_below(rng, 2));
      for (Index u : w.elements()) cosets[g.add(x, u)] = v;
    }
    inputs.emplace_back("coset_union", cosets);

    // A widened translate y + B_2 + B_2.
    const Index y = static_cast<Index>(uniform_below(rng, g.order()));
    std::vector<double> widened(g.order(), 0.0);
    const auto b2 = s.dilate(2.0);
    for (Index u : *b2) {
      for (Index v : *b2) widened[g.add(y, g.add(u, v))] = 1.0;
    }
    inputs.emplace_back("widened", widened);

    std::vector<double> noise(g.order());
    for (double& v : noise) v = uniform_below(rng, 2) ? 1.0 : -1.0;
    inputs.emplace_back("noise", noise);

    bool ok = true;
    for (const auto& [name, values] : inputs) {
      const LevelSetReport rep = level_set_constancy(s, DensityFunction::from_real(g, Side::kPrimal, values), eps);
      out[name] = level_set_to_json(rep);
      ok = ok && rep.holds;
    }
    return ok;
  });
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"prop21",      "parseval",           "eq31",
                                                 "lemma22",     "lemma42",            "trichotomy",
                                                 "theorem41-skeleton",                "bourgain-axioms",
                                                 "lemma53",     "lemma54",            "lemma55"};
  return names;
}

std::vector<ExperimentRecord> run_suite(const std::string& name, const SuiteOptions& options) {
  using Runner = std::vector<ExperimentRecord> (*)(const SuiteOptions&);
  static const std::map<std::string, Runner> runners = {
      {"prop21", suite_prop21},       {"parseval", suite_parseval},
      {"eq31", suite_eq31},           {"lemma22", suite_lemma22},
      {"lemma42", suite_lemma42},     {"trichotomy", suite_trichotomy},
      {"theorem41-skeleton", suite_theorem41}, {"bourgain-axioms", suite_bourgain_axioms},
      {"lemma53", suite_lemma53},     {"lemma54", suite_lemma54},
      {"lemma55", suite_lemma55}};
  auto it = runners.find(name);
  if (it == runners.end()) {
    std::string known;
    for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::kUnknownSuite, "unknown suite '" + name + "' (known: " + known + ")");
  }
  return it->second(options);
}

bool all_passed(const std::vector<ExperimentRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const ExperimentRecord& r) { return r.pass.value_or(true); });
}

CosetProgressionParams random_progression(std::mt19937_64& rng) {
  std::vector<std::int64_t> moduli;
  if (uniform_below(rng, 2) == 0) {
    moduli = {static_cast<std::int64_t>(2 + uniform_below(rng, 1008))};
  } else {
    const auto a = static_cast<std::int64_t>(2 + uniform_below(rng, 30));
    const auto b = static_cast<std::int64_t>(2 + uniform_below(rng, static_cast<std::uint64_t>(1009 / a - 1)));
    moduli = {a, b};
  }
  const Group g = make_group(moduli);
  std::vector<Index> hgens;
  if (uniform_below(rng, 3) == 0) hgens.push_back(static_cast<Index>(uniform_below(rng, g.order())));
  const std::size_t d = uniform_below(rng, 4);
  std::vector<Index> x(d);
  std::vector<std::int64_t> l(d);
  // Boxes of side about |G|^(1/d), so dilates mostly stay below the ambient group.
  const auto l_max = d ? static_cast<std::uint64_t>(std::pow(static_cast<double>(g.order()), 1.0 / d) / 2.0) : 0;
  for (std::size_t j = 0; j < d; ++j) {
    x[j] = static_cast<Index>(uniform_below(rng, g.order()));
    l[j] = static_cast<std::int64_t>(uniform_below(rng, l_max + 1));
  }
  return {Subgroup::generated_by(g, hgens), std::move(x), std::move(l)};
}

std::vector<Group> fourier_suite_groups() {
  std::vector<Group> out;
  for (const char* spec : {"Z1", "Z2", "Z5", "Z12", "Z2xZ6", "Z2xZ2xZ2", "Z97", "Z128", "Z210", "Z4xZ8xZ8", "Z1009",
                           "Z3xZ1361", "Z64xZ64", "Z4096", "Z2xZ2xZ2xZ2xZ2xZ2xZ2xZ2xZ2xZ2xZ2xZ2"}) {
    out.push_back(parse_group(spec));
  }
  return out;
}

std::vector<Group> convolution_suite_groups() {
  std::vector<Group> out = presentations_up_to(12);
  for (const char* spec : {"Z16", "Z2xZ8", "Z4xZ4", "Z2xZ2xZ2xZ2", "Z31", "Z64", "Z8xZ8", "Z105", "Z128", "Z2xZ64",
                           "Z210", "Z251", "Z256", "Z16xZ16"}) {
    out.push_back(parse_group(spec));
  }
  return out;
}

}  // namespace coslab::lab
