#include "coslab/dichotomy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "coslab/chowla.hpp"
#include "coslab/error.hpp"

namespace coslab {

std::string_view to_string(BooleanNorm p) { return p == BooleanNorm::kL1 ? "l1" : "linf"; }

std::string_view to_string(OutcomeTag tag) {
  switch (tag) {
    case OutcomeTag::kStructure:
      return "Structure";
    case OutcomeTag::kWitness:
      return "Witness";
    case OutcomeTag::kTrichotomy2:
      return "Trichotomy2";
    case OutcomeTag::kTrichotomy3:
      return "Trichotomy3";
  }
  return "?";
}

namespace {

constexpr double kStructureEpsilon = 1.0 / 32.0;

double l1_distance_to_indicator(std::span<const double> f, const ElementSet& h) {
  double total = 0.0;
  std::size_t next = 0;
  for (Index x = 0; x < f.size(); ++x) {
    const bool in = next < h.size() && h[next] == x;
    if (in) ++next;
    total += std::abs(f[x] - (in ? 1.0 : 0.0));
  }
  return total;
}

void require_nonempty_symmetric(const Group& g, const ElementSet& a, const char* op) {
  if (a.empty()) throw Error(ErrorCode::kEmptySet, std::string(op) + " needs a nonempty set");
  const Index bad = first_asymmetric(g, a);
  if (bad != g.order()) {
    throw Error(ErrorCode::kNotSymmetric, std::string(op) + ": set is not symmetric, " +
                                              format_element(g, bad) + " is in A but " +
                                              format_element(g, g.negate(bad)) + " is not");
  }
}

Index argmin(std::span<const double> values) {
  return static_cast<Index>(std::min_element(values.begin(), values.end()) - values.begin());
}

// The l1 and linf variants share everything except the norm and the bound.
DichotomyOutcome trivial_witness(const DensityFunction& f, const Subgroup& v, double epsilon, BooleanNorm p,
                                 const Tolerances& tol) {
  const Group& g = f.group();
  if (!(v.parent() == g)) {
    throw Error(ErrorCode::kGroupMismatch, "subgroup lives in " + v.parent().spec() + ", function in " + g.spec());
  }
  if (f.side() != Side::kPrimal) throw Error(ErrorCode::kSideMismatch, "trivial witness expects a primal function");
  if (!f.is_real(tol.structural)) {
    throw Error(ErrorCode::kNotReal, "function has imaginary part " + std::to_string(f.max_abs_imag()));
  }
  const std::vector<double> values = f.real_part();
  const double slack = tol.structural * (1.0 + f.max_abs());
  for (Index x = 0; x < g.order(); ++x) {
    if (std::abs(values[x] - values[g.negate(x)]) > slack) {
      throw Error(ErrorCode::kNotSymmetric, "f is not symmetric at " + format_element(g, x));
    }
  }
  for (Index x = 0; x < g.order(); ++x) {
    for (Index w : v.elements()) {
      if (std::abs(values[g.add(x, w)] - values[x]) > slack) {
        throw Error(ErrorCode::kNotCosetConstant, "f differs on the coset of " + format_element(g, x) + " at " +
                                                      format_element(g, g.add(x, w)));
      }
    }
  }
  if (!(*std::max_element(values.begin(), values.end()) > 0.5)) {
    throw Error(ErrorCode::kNoLargeValue, "f never exceeds 1/2");
  }
  const AlmostBooleanCertificate cert = almost_boolean_check(f, p, tol);
  if (!cert.holds_for(epsilon, tol.structural * (1.0 + cert.norm))) {
    throw Error(ErrorCode::kNotAlmostBoolean, "f is not (" + std::to_string(epsilon) + "," +
                                                  std::string(to_string(p)) + ")-almost boolean: deviation " +
                                                  std::to_string(cert.deviation) + " against norm " +
                                                  std::to_string(cert.norm));
  }

  DichotomyOutcome out;
  out.hypothesis_flags["symmetric"] = true;
  out.hypothesis_flags["coset_constant"] = true;
  out.hypothesis_flags["large_value"] = true;
  out.hypothesis_flags["almost_boolean"] = true;
  const double linf = linf_norm(f);
  if (p == BooleanNorm::kLinf) {
    out.hypothesis_flags["epsilon_below_third"] = epsilon < 1.0 / 3.0;
    out.hypothesis_flags["values_at_most_one"] = linf <= 1.0 + slack;
  }
  out.quantities["epsilon"] = epsilon;
  out.quantities["norm"] = cert.norm;
  out.quantities["deviation"] = cert.deviation;
  out.quantities["v_order"] = static_cast<double>(v.order());

  const ElementSet& h = cert.best_boolean;
  if (is_subgroup(g, h)) {
    out.tag = OutcomeTag::kStructure;
    out.branch_trace.push_back("level set {f > 1/2} is a subgroup");
    StructureCertificate s{Subgroup::from_elements(g, h), std::nullopt, std::nullopt, false};
    if (p == BooleanNorm::kL1) {
      s.distance = l1_distance_to_indicator(values, h);
      s.certified_bound = epsilon * cert.norm;
    } else {
      out.branch_trace.push_back("linf case carries no distance bound");
    }
    out.structure = std::move(s);
  } else {
    out.tag = OutcomeTag::kWitness;
    out.branch_trace.push_back("level set {f > 1/2} is not closed under addition");
    bool found = false;
    for (Index x : h) {
      for (Index y : h) {
        if (!contains(h, g.add(x, y))) {
          out.provenance = {x, y};
          found = true;
          break;
        }
      }
      if (found) break;
    }
    const auto transform = dft(f).real_part();
    const Index gamma = argmin(transform);
    const double vsize = static_cast<double>(v.order());
    const double certified = p == BooleanNorm::kL1 ? -vsize / 8.0 + epsilon * cert.norm
                                                   : -vsize * (1.0 / 8.0 - 5.0 * epsilon * linf / 8.0);
    out.witness = WitnessCertificate{gamma, certified, transform[gamma]};
  }
  verify_outcome(f, out, tol);
  return out;
}

// 1_A * mu_W by direct counting, so every coset gets bit-identical values.
std::vector<double> coset_average(const Group& g, const ElementSet& a, const Subgroup& w) {
  std::vector<char> in(g.order(), 0);
  for (Index x : a) in[x] = 1;
  std::vector<double> out(g.order());
  const double size = static_cast<double>(w.order());
  for (Index x = 0; x < g.order(); ++x) {
    std::size_t count = 0;
    for (Index v : w.elements()) count += in[g.add(x, v)];
    out[x] = static_cast<double>(count) / size;
  }
  return out;
}

}  // namespace

AlmostBooleanCertificate almost_boolean_check(const DensityFunction& f, BooleanNorm p, const Tolerances& tol) {
  if (!f.is_real(tol.structural)) {
    throw Error(ErrorCode::kNotReal, "function has imaginary part " + std::to_string(f.max_abs_imag()));
  }
  AlmostBooleanCertificate cert;
  cert.p = p;
  const auto values = f.real_part();
  for (Index x = 0; x < values.size(); ++x) {
    const bool one = values[x] > 0.5;
    if (one) cert.best_boolean.push_back(x);
    const double d = std::abs(values[x] - (one ? 1.0 : 0.0));
    const double m = std::abs(values[x]);
    if (p == BooleanNorm::kL1) {
      cert.deviation += d;
      cert.norm += m;
    } else {
      cert.deviation = std::max(cert.deviation, d);
      cert.norm = std::max(cert.norm, m);
    }
  }
  cert.epsilon = cert.norm > 0.0 ? cert.deviation / cert.norm : 0.0;
  return cert;
}

double naive_coefficient(const DensityFunction& f, Index gamma) {
  const Group& g = f.group();
  const double e = static_cast<double>(g.exponent());
  std::complex<double> total = 0.0;
  for (Index x = 0; x < g.order(); ++x) {
    const double turns = static_cast<double>(g.pairing_turns(x, gamma));
    total += f[x] * std::polar(1.0, -2.0 * std::numbers::pi * turns / e);
  }
  return total.real();
}

bool verify_outcome(const DensityFunction& f, DichotomyOutcome& outcome, const Tolerances& tol) {
  const Group& g = f.group();
  const double slack = tol.structural * (1.0 + l1_norm(f));
  bool ok = true;
  auto quantity = [&](const char* key) {
    auto it = outcome.quantities.find(key);
    return it == outcome.quantities.end() ? std::nan("") : it->second;
  };

  switch (outcome.tag) {
    case OutcomeTag::kWitness: {
      ok = outcome.witness.has_value();
      if (!ok) break;
      const auto& w = *outcome.witness;
      const double c = naive_coefficient(f, w.character);
      ok = std::abs(c - w.achieved) <= slack && w.achieved <= w.certified + slack;
      break;
    }
    case OutcomeTag::kStructure: {
      ok = outcome.structure.has_value();
      if (!ok) break;
      const auto& s = *outcome.structure;
      if (s.dual) {
        // Spectrum claimed to be a subgroup: recompute it from the naive transform.
        const double eps = quantity("epsilon");
        const double size = quantity("set_size");
        const auto transform = dft(f, TransformMethod::kNaive);
        ElementSet spec;
        for (Index gamma = 0; gamma < g.order(); ++gamma) {
          if (std::abs(transform[gamma]) >= eps * size - tol.structural) spec.push_back(gamma);
        }
        ok = spec == s.subgroup.elements() && is_subgroup(g, spec);
      } else if (s.distance) {
        const auto values = f.real_part();
        const double d = l1_distance_to_indicator(values, s.subgroup.elements());
        ok = std::abs(d - *s.distance) <= slack;
        if (s.certified_bound) ok = ok && d <= *s.certified_bound + slack;
      }
      break;
    }
    case OutcomeTag::kTrichotomy2: {
      const auto transform = dft(f, TransformMethod::kNaive).real_part();
      const double m = -*std::min_element(transform.begin(), transform.end());
      ok = m >= quantity("claim") - slack;
      break;
    }
    case OutcomeTag::kTrichotomy3: {
      ok = outcome.character.has_value() && outcome.provenance.size() == 2;
      if (!ok) break;
      const double eps = quantity("epsilon");
      const double size = quantity("set_size");
      const double c = naive_coefficient(f, *outcome.character);
      const Index g1 = outcome.provenance[0];
      const Index g2 = outcome.provenance[1];
      ok = c < eps * size && c >= quantity("lower") - slack && g.add(g1, g2) == *outcome.character &&
           std::abs(naive_coefficient(f, g1)) >= eps * size - slack &&
           std::abs(naive_coefficient(f, g2)) >= eps * size - slack;
      break;
    }
  }
  outcome.verified = ok;
  return ok;
}

DichotomyOutcome trivial_witness_l1(const DensityFunction& f, const Subgroup& v, double epsilon,
                                    const Tolerances& tol) {
  return trivial_witness(f, v, epsilon, BooleanNorm::kL1, tol);
}

DichotomyOutcome trivial_witness_linf(const DensityFunction& f, const Subgroup& v, double epsilon,
                                      const Tolerances& tol) {
  return trivial_witness(f, v, epsilon, BooleanNorm::kLinf, tol);
}

DichotomyOutcome spec_trichotomy(const Group& g, const ElementSet& a, double epsilon, const Tolerances& tol) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "trichotomy parameter must lie in (0,1), got " + std::to_string(epsilon));
  }
  require_nonempty_symmetric(g, a, "spec_trichotomy");
  const auto transform = real_indicator_transform(g, a, tol);
  const double size = static_cast<double>(a.size());
  const double alpha = size / static_cast<double>(g.order());
  const double norm = algebra_norm(indicator(g, a));
  const MgResult m = mg_from_transform(transform, tol);
  const Spectrum spec = spectrum_from_transform(transform, a.size(), epsilon, tol);

  DichotomyOutcome out;
  out.hypothesis_flags["symmetric"] = true;
  out.quantities["epsilon"] = epsilon;
  out.quantities["alpha"] = alpha;
  out.quantities["algebra_norm"] = norm;
  out.quantities["m_g"] = m.value;
  out.quantities["set_size"] = size;
  out.quantities["spectrum_size"] = static_cast<double>(spec.characters.size());

  std::vector<char> in(g.order(), 0);
  for (Index gamma : spec.characters) in[gamma] = 1;
  bool violated = false;
  Index g1 = 0, g2 = 0;
  for (std::size_t i = 0; i < spec.characters.size() && !violated; ++i) {
    for (std::size_t j = i; j < spec.characters.size(); ++j) {
      if (!in[g.add(spec.characters[i], spec.characters[j])]) {
        g1 = spec.characters[i];
        g2 = spec.characters[j];
        violated = true;
        break;
      }
    }
  }

  const DensityFunction f = indicator(g, a);
  if (!violated) {
    out.tag = OutcomeTag::kStructure;
    out.branch_trace.push_back("spectrum closed under addition");
    out.structure = StructureCertificate{Subgroup::from_elements(g, spec.characters), std::nullopt, std::nullopt, true};
    verify_outcome(f, out, tol);
    return out;
  }

  const Index gamma = g.add(g1, g2);
  const double c = transform[gamma];
  const double claim = epsilon * epsilon * alpha * size / (2.0 * norm);
  const double lower = epsilon * epsilon * alpha * size / 2.0;
  const bool case3 = c < epsilon * size && c >= lower;
  const bool case2 = m.value >= claim;
  out.provenance = {g1, g2};
  out.quantities["claim"] = claim;
  out.quantities["coefficient"] = c;
  out.quantities["lower"] = lower;
  out.quantities["upper"] = epsilon * size;
  out.branch_trace.push_back("spectrum not closed: " + format_element(g, g1) + " + " + format_element(g, g2));
  if (case3) {
    out.tag = OutcomeTag::kTrichotomy3;
    out.character = gamma;
    out.hypothesis_flags["case2_also_holds"] = case2;
    out.branch_trace.push_back(case2 ? "moderate coefficient at the sum (large M also holds)"
                                     : "moderate coefficient at the sum");
  } else {
    out.tag = OutcomeTag::kTrichotomy2;
    out.branch_trace.push_back(case2 ? "coefficient at the sum is small, M is large"
                                     : "neither inequality holds");
  }
  verify_outcome(f, out, tol);
  return out;
}

HeartReport heart_check(const Group& g, const ElementSet& a, Index gamma, const HeartOptions& options,
                        const Tolerances& tol) {
  require_nonempty_symmetric(g, a, "heart_check");
  if (gamma >= g.order()) throw Error(ErrorCode::kInvalidArgument, "character index out of range");
  const auto transform = real_indicator_transform(g, a, tol);
  const double size = static_cast<double>(a.size());
  const double alpha = size / static_cast<double>(g.order());
  const double norm = algebra_norm(indicator(g, a));
  const MgResult m = mg_from_transform(transform, tol);
  const double slack = tol.structural * (1.0 + size);

  HeartReport report;
  report.character = gamma;
  report.coefficient = transform[gamma];
  report.hypothesis_holds = report.coefficient >= -slack && report.coefficient <= size / 32.0 + slack;
  report.lhs = m.value;
  report.rhs = alpha * report.coefficient / (16.0 * std::pow(norm, 2.0 / alpha + 1.0));
  report.verified = !report.hypothesis_holds || report.lhs >= report.rhs - slack;

  if (!options.check_claim) return report;
  int r_max = 2 * static_cast<int>(std::ceil(1.0 / alpha));
  if (options.claim_r_limit > 0) r_max = std::min(r_max, options.claim_r_limit);
  report.claim_r = r_max;

  std::vector<double> positive(transform.size());
  for (Index i = 0; i < transform.size(); ++i) positive[i] = std::max(transform[i], 0.0);
  const DensityFunction f = DensityFunction::from_real(g, Side::kDual, positive);
  const DensityFunction t = DensityFunction::from_real(g, Side::kDual, transform);
  DensityFunction fr = f;
  DensityFunction tr = t;
  for (int r = 1; r <= r_max; ++r) {
    if (r > 1) {
      fr = dual_convolve(f, fr);
      tr = dual_convolve(t, tr);
    }
    const double power = std::pow(norm, r - 1);
    const double observed = sup_distance(fr, tr);
    const double bound = r * m.value * power;
    report.claim_observed.push_back(observed);
    report.claim_bound.push_back(bound);
    const double numeric = tol.spectral * r * size * std::max(1.0, power);
    if (!(observed <= bound + numeric)) report.claim_holds = false;
  }
  return report;
}

CalculationReport calculation_identity_check(const Group& g, const ElementSet& a, const Subgroup& v,
                                             const Tolerances& tol) {
  if (!(v.parent() == g)) {
    throw Error(ErrorCode::kGroupMismatch, "subgroup lives in " + v.parent().spec() + ", set in " + g.spec());
  }
  const std::vector<double> smooth = coset_average(g, a, v);
  std::vector<char> in(g.order(), 0);
  for (Index x : a) in[x] = 1;
  CalculationReport report;
  for (Index x = 0; x < g.order(); ++x) {
    const double diff = (in[x] ? 1.0 : 0.0) - smooth[x];
    report.lhs += std::abs(diff);
    if (in[x]) report.rhs += 2.0 * diff;
  }
  report.holds = std::abs(report.lhs - report.rhs) <= tol.structural;
  return report;
}

DichotomyOutcome structure_or_witness(const Group& g, const ElementSet& a, double k, const Tolerances& tol) {
  require_nonempty_symmetric(g, a, "structure_or_witness");
  if (!(k > 0.0)) throw Error(ErrorCode::kInvalidArgument, "K must be positive");
  const DensityFunction f = indicator(g, a);
  const auto transform = real_indicator_transform(g, a, tol);
  const double size = static_cast<double>(a.size());
  const double alpha = size / static_cast<double>(g.order());
  const double norm = algebra_norm(f);
  const MgResult m = mg_from_transform(transform, tol);
  const double eps = kStructureEpsilon;
  const double nu = alpha * k / (4.0 * norm * size);

  DichotomyOutcome out;
  out.hypothesis_flags["symmetric"] = true;
  out.hypothesis_flags["neighborhood"] = contains(a, 0);
  out.hypothesis_flags["k_small"] = k <= size / 8192.0;
  out.quantities["epsilon"] = eps;
  out.quantities["nu"] = nu;
  out.quantities["alpha"] = alpha;
  out.quantities["K"] = k;
  out.quantities["algebra_norm"] = norm;
  out.quantities["m_g"] = m.value;
  out.quantities["set_size"] = size;
  out.quantities["asymptotic_bound"] = -std::pow(k, alpha / 5.0) / 64.0;

  auto finish_witness = [&](double certified) {
    out.tag = OutcomeTag::kWitness;
    out.witness = WitnessCertificate{m.witness, certified, transform[m.witness]};
    out.hypothesis_flags["asymptotic_bound_met"] = transform[m.witness] <= out.quantities["asymptotic_bound"];
    verify_outcome(f, out, tol);
    return out;
  };

  if (is_subgroup(g, a)) {
    out.tag = OutcomeTag::kStructure;
    out.branch_trace.push_back("(a) A is a subgroup");
    out.structure = StructureCertificate{Subgroup::from_elements(g, a), 0.0, 0.0, false};
    verify_outcome(f, out, tol);
    return out;
  }
  out.branch_trace.push_back("(a) A is not a subgroup");

  const DichotomyOutcome tri = spec_trichotomy(g, a, eps, tol);
  if (tri.tag == OutcomeTag::kTrichotomy2) {
    out.branch_trace.push_back("(b) spectrum not a subgroup; large M");
    return finish_witness(-tri.quantities.at("claim"));
  }
  if (tri.tag == OutcomeTag::kTrichotomy3) {
    const HeartReport heart = heart_check(g, a, *tri.character, HeartOptions{false, 0}, tol);
    out.branch_trace.push_back("(b) spectrum not a subgroup; heart inequality at " +
                               format_element(g, *tri.character));
    out.provenance = tri.provenance;
    out.quantities["heart_rhs"] = heart.rhs;
    return finish_witness(-heart.rhs);
  }
  out.branch_trace.push_back("(b) spectrum is a subgroup V");

  // Spec_nu may use nu >= 1, so the threshold is applied directly.
  const ElementSet& v_elems = tri.structure->subgroup.elements();
  for (Index gamma = 0; gamma < g.order(); ++gamma) {
    if (std::abs(transform[gamma]) >= nu * size - tol.structural && !contains(v_elems, gamma)) {
      const double c = transform[gamma];
      out.quantities["offending_coefficient"] = c;
      out.provenance = {gamma};
      if (c >= 0.0) {
        const HeartReport heart = heart_check(g, a, gamma, HeartOptions{false, 0}, tol);
        out.branch_trace.push_back("(c) Spec_nu exceeds V at " + format_element(g, gamma) + "; heart inequality");
        out.quantities["heart_rhs"] = heart.rhs;
        return finish_witness(-heart.rhs);
      }
      out.branch_trace.push_back("(c) Spec_nu exceeds V at " + format_element(g, gamma) + "; negative coefficient");
      return finish_witness(-nu * size);
    }
  }
  out.branch_trace.push_back("(c) Spec_nu equals V");

  const Subgroup v_perp = annihilator(tri.structure->subgroup);
  const std::vector<double> smooth = coset_average(g, a, v_perp);
  const bool x0 = *std::max_element(smooth.begin(), smooth.end()) > 0.5;
  out.hypothesis_flags["x0_exists"] = x0;
  out.quantities["v_perp_order"] = static_cast<double>(v_perp.order());
  if (!x0) {
    if (k >= 2.0 * static_cast<double>(g.order())) {
      // Every subgroup is within K; report the trivial one.
      out.tag = OutcomeTag::kStructure;
      out.branch_trace.push_back("(d) K >= 2|G|: trivial subgroup is within K");
      const Subgroup trivial = Subgroup::trivial(g);
      out.structure = StructureCertificate{trivial, static_cast<double>(symmetric_difference_size(a, trivial.elements())),
                                           k, false};
      verify_outcome(f, out, tol);
      return out;
    }
    throw Error(ErrorCode::kInfeasible, "smoothed indicator never exceeds 1/2 although K < 2|G|");
  }

  const double eps_l1 = 2.0 * nu * norm;
  out.quantities["smoothing_epsilon"] = eps_l1;
  const DensityFunction smooth_f = DensityFunction::from_real(g, Side::kPrimal, smooth);
  const DichotomyOutcome sub = trivial_witness_l1(smooth_f, v_perp, eps_l1, tol);
  out.hypothesis_flags["almost_boolean"] = true;
  if (sub.tag == OutcomeTag::kStructure) {
    out.tag = OutcomeTag::kStructure;
    out.branch_trace.push_back("(d) smoothed level set is a subgroup H");
    const Subgroup& h = sub.structure->subgroup;
    out.quantities["smoothed_distance"] = *sub.structure->distance;
    out.structure = StructureCertificate{h, static_cast<double>(symmetric_difference_size(a, h.elements())),
                                         4.0 * nu * size * norm, false};
    verify_outcome(f, out, tol);
    return out;
  }
  out.branch_trace.push_back("(d) smoothed level set not closed: " + format_element(g, sub.provenance[0]) + " + " +
                             format_element(g, sub.provenance[1]));
  out.provenance = sub.provenance;
  out.quantities["smoothed_achieved"] = sub.witness->achieved;
  return finish_witness(sub.witness->certified);
}

}  // namespace coslab
