#include "coslab/bourgain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

#include "coslab/dichotomy.hpp"
#include "coslab/error.hpp"

namespace coslab {

std::string_view to_string(SystemKind kind) {
  return kind == SystemKind::kCosetProgression ? "CosetProgression" : "Explicit";
}

struct BourgainSystem::State {
  explicit State(Group g) : group(std::move(g)) {}

  Group group;
  DilateFn fn;
  double dimension = 1.0;
  SystemKind kind = SystemKind::kExplicit;
  std::mutex mu;
  std::map<double, Dilate> cache;
};

BourgainSystem::BourgainSystem(Group group, DilateFn fn, double dimension, SystemKind kind)
    : state_(std::make_shared<State>(std::move(group))) {
  state_->fn = std::move(fn);
  state_->dimension = dimension;
  state_->kind = kind;
  if (!(dimension > 0.0)) throw Error(ErrorCode::kInvalidArgument, "Bourgain system dimension must be positive");
}

BourgainSystem::BourgainSystem(std::shared_ptr<State> state, double scale) : state_(std::move(state)), scale_(scale) {}

const Group& BourgainSystem::group() const { return state_->group; }
double BourgainSystem::nominal_dimension() const { return state_->dimension; }
SystemKind BourgainSystem::kind() const { return state_->kind; }
double BourgainSystem::scale() const { return scale_; }

BourgainSystem::Dilate BourgainSystem::dilate(double rho) const {
  if (!(rho > 0.0 && rho <= 2.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dilation parameter must lie in (0,2], got " + std::to_string(rho));
  }
  const double effective = scale_ * rho;
  {
    std::lock_guard lock(state_->mu);
    auto it = state_->cache.find(effective);
    if (it != state_->cache.end()) return it->second;
  }
  // Filled outside the lock; a concurrent fill computes the same set.
  Dilate set = state_->fn(effective);
  std::lock_guard lock(state_->mu);
  return state_->cache.emplace(effective, std::move(set)).first->second;
}

BourgainSystem BourgainSystem::dilated(double lambda) const {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dilation factor must lie in (0,1], got " + std::to_string(lambda));
  }
  return BourgainSystem(state_, scale_ * lambda);
}

ElementSet progression_elements(const Subgroup& h, const std::vector<Index>& x,
                                const std::vector<std::int64_t>& bounds) {
  const Group& g = h.parent();
  std::vector<char> mask(g.order(), 0);
  std::vector<Index> members = h.elements();
  for (Index e : members) mask[e] = 1;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (bounds[j] == 0) continue;
    const std::vector<Index> base = members;
    // Once the multiples of x_j cycle, larger bounds add nothing.
    const std::int64_t limit = std::min<std::int64_t>(bounds[j], static_cast<std::int64_t>(g.order()));
    for (std::int64_t l = 1; l <= limit; ++l) {
      const Index plus = g.multiply(l, x[j]);
      const Index minus = g.negate(plus);
      for (Index b : base) {
        for (Index t : {g.add(b, plus), g.add(b, minus)}) {
          if (!mask[t]) {
            mask[t] = 1;
            members.push_back(t);
          }
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

BourgainSystem coset_progression(const CosetProgressionParams& params) {
  if (params.x.size() != params.l.size()) {
    throw Error(ErrorCode::kInvalidArgument, "progression has " + std::to_string(params.x.size()) +
                                                 " generators but " + std::to_string(params.l.size()) + " lengths");
  }
  const Group& g = params.h.parent();
  for (Index xi : params.x) {
    if (xi >= g.order()) throw Error(ErrorCode::kInvalidArgument, "progression generator out of range");
  }
  for (auto li : params.l) {
    if (li < 0) throw Error(ErrorCode::kInvalidArgument, "progression lengths must be nonnegative");
  }
  const double d = static_cast<double>(params.x.size());
  const double dimension = std::max(1.0, std::ceil(d * std::log2(3.0)));

  struct Memo {
    std::mutex mu;
    std::map<std::vector<std::int64_t>, BourgainSystem::Dilate> sets;
  };
  auto memo = std::make_shared<Memo>();
  auto fn = [params, memo](double rho) -> BourgainSystem::Dilate {
    std::vector<std::int64_t> bounds(params.l.size());
    for (std::size_t j = 0; j < bounds.size(); ++j) {
      bounds[j] = static_cast<std::int64_t>(std::floor(rho * static_cast<double>(params.l[j])));
    }
    {
      std::lock_guard lock(memo->mu);
      auto it = memo->sets.find(bounds);
      if (it != memo->sets.end()) return it->second;
    }
    auto set = std::make_shared<const ElementSet>(progression_elements(params.h, params.x, bounds));
    std::lock_guard lock(memo->mu);
    return memo->sets.emplace(bounds, std::move(set)).first->second;
  };
  return BourgainSystem(g, fn, dimension, SystemKind::kCosetProgression);
}

std::vector<double> default_grid() {
  std::vector<double> grid;
  for (int k = 6; k >= 0; --k) grid.push_back(std::ldexp(1.0, -k));
  grid.push_back(0.75);
  grid.push_back(1.5);
  grid.push_back(2.0);
  std::sort(grid.begin(), grid.end());
  return grid;
}

bool AxiomReport::all_passed() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& r) { return r.passed; });
}

AxiomReport verify_axioms(const BourgainSystem& s, const std::vector<double>& grid) {
  const Group& g = s.group();
  AxiomReport report;
  report.nominal_dimension = s.nominal_dimension();
  AxiomResult nesting{"Nesting", true, ""}, zero{"Zero", true, ""}, symmetry{"Symmetry", true, ""},
      addition{"Addition", true, ""}, doubling{"Doubling", true, ""};
  auto fail = [](AxiomResult& r, std::string why) {
    if (r.passed) r.witness = std::move(why);
    r.passed = false;
  };
  auto rho_str = [](double rho) { return std::to_string(rho); };

  for (double rho : grid) {
    const auto b = s.dilate(rho);
    if (!contains(*b, 0)) fail(zero, "0 missing from B_" + rho_str(rho));
    const Index bad = first_asymmetric(g, *b);
    if (bad != g.order()) fail(symmetry, format_element(g, bad) + " in B_" + rho_str(rho) + " without its negative");
  }
  for (double r1 : grid) {
    for (double r2 : grid) {
      if (!(r1 <= r2)) continue;
      const auto small = s.dilate(r1);
      const auto big = s.dilate(r2);
      if (!std::includes(big->begin(), big->end(), small->begin(), small->end())) {
        fail(nesting, "B_" + rho_str(r1) + " not inside B_" + rho_str(r2));
      }
    }
  }

  // Distinct rho often share a dilate; check each (set, set, sum) triple once.
  std::set<std::tuple<const ElementSet*, const ElementSet*, const ElementSet*>> done;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i; j < grid.size(); ++j) {
      const double total = grid[i] + grid[j];
      if (total > 1.0) continue;
      const auto a = s.dilate(grid[i]);
      const auto b = s.dilate(grid[j]);
      const auto sum = s.dilate(total);
      if (!done.insert({a.get(), b.get(), sum.get()}).second) continue;
      std::vector<char> in(g.order(), 0);
      for (Index z : *sum) in[z] = 1;
      bool ok = true;
      for (Index u : *a) {
        for (Index w : *b) {
          if (!in[g.add(u, w)]) {
            fail(addition, format_element(g, u) + " + " + format_element(g, w) + " escapes B_" + rho_str(total));
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
    }
  }

  const double d = s.nominal_dimension();
  for (double rho : grid) {
    if (rho > 1.0) continue;
    const double lo = static_cast<double>(s.size(rho));
    const double hi = static_cast<double>(s.size(2.0 * rho));
    report.empirical_dimension = std::max(report.empirical_dimension, std::log2(hi / lo));
    if (hi > std::exp2(d) * lo) {
      fail(doubling, "|B_" + rho_str(2.0 * rho) + "| = " + std::to_string(static_cast<std::size_t>(hi)) +
                         " exceeds 2^d |B_" + rho_str(rho) + "|");
    }
  }
  report.axioms = {nesting, zero, symmetry, addition, doubling};
  return report;
}

double regularity_eta(int k, double d) { return static_cast<double>(k) / (320.0 * d); }

RegularityReport regularity_at(const BourgainSystem& s, double lambda) {
  const BourgainSystem scaled = s.dilated(lambda);
  const double d = s.nominal_dimension();
  RegularityReport report;
  report.lambda = lambda;
  report.dimension = d;
  report.worst_excess = -std::numeric_limits<double>::infinity();
  const double base = static_cast<double>(scaled.size(1.0));
  for (int k = -16; k <= 16; ++k) {
    const double eta = regularity_eta(k, d);
    const double ratio = base / static_cast<double>(scaled.size(1.0 + eta));
    const double allowed = 10.0 * d * std::abs(eta);
    report.etas.push_back(eta);
    report.ratios.push_back(ratio);
    report.worst_excess = std::max(report.worst_excess, std::abs(ratio - 1.0) - allowed);
  }
  report.passes = report.worst_excess <= 0.0;
  return report;
}

RegularityReport find_regular_dilate(const BourgainSystem& s) {
  RegularityReport best;
  best.worst_excess = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 256; ++i) {
    const double lambda = 0.5 + static_cast<double>(i) / 512.0;
    RegularityReport report = regularity_at(s, lambda);
    if (report.passes) return report;
    if (report.worst_excess < best.worst_excess) best = std::move(report);
  }
  throw Error(ErrorCode::kRegularityNotFound, "regularity not found on grid; best near-miss lambda = " +
                                                  std::to_string(best.lambda) + " exceeds the bound by " +
                                                  std::to_string(best.worst_excess));
}

SizeLemmaReport size_lemma_check(const BourgainSystem& s, double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must lie in (0,1], got " + std::to_string(lambda));
  }
  SizeLemmaReport report;
  report.lambda = lambda;
  report.dimension = s.nominal_dimension();
  report.lhs = s.size(lambda);
  report.rhs = std::pow(lambda / 2.0, report.dimension) * static_cast<double>(s.size(1.0));
  report.holds = static_cast<double>(report.lhs) >= report.rhs;
  return report;
}

Measure beta(const BourgainSystem& s, double rho) {
  const Measure mu = uniform_measure(s.group(), *s.dilate(rho));
  return convolve(mu, mu);
}

ContinuityReport translation_continuity_check(const BourgainSystem& s, double eta, std::size_t trials) {
  const double d = s.nominal_dimension();
  const Measure b = beta(s, 1.0);
  const auto shifts = s.dilate(eta);
  ContinuityReport report;
  report.eta = eta;
  report.dimension = d;
  report.bound = 20.0 * d * eta;
  const std::size_t n = shifts->size();
  const std::size_t count = trials == 0 || trials >= n ? n : trials;
  for (std::size_t i = 0; i < count; ++i) {
    const Index y = (*shifts)[count == n ? i : i * n / count];
    const double tv = total_variation(translate(b, y), b);
    if (tv > report.max_observed) {
      report.max_observed = tv;
      report.argmax = y;
    }
  }
  report.checked = count;
  report.holds = report.max_observed <= report.bound + 1e-9;
  return report;
}

ContinuityReport smoothing_continuity_check(const BourgainSystem& s, const DensityFunction& f, double eta) {
  const Group& g = s.group();
  const double d = s.nominal_dimension();
  const DensityFunction smooth = convolve(f, beta(s, 1.0).density());
  const auto shifts = s.dilate(eta);
  ContinuityReport report;
  report.eta = eta;
  report.dimension = d;
  report.bound = 20.0 * linf_norm(f) * d * eta;
  for (Index x = 0; x < g.order(); ++x) {
    for (Index t : *shifts) {
      const double osc = std::abs(smooth[g.add(x, t)] - smooth[x]);
      if (osc > report.max_observed) {
        report.max_observed = osc;
        report.argmax = x;
      }
    }
  }
  report.checked = g.order() * shifts->size();
  report.holds = report.max_observed <= report.bound + 1e-9;
  return report;
}

LevelSetReport level_set_constancy(const BourgainSystem& s, const DensityFunction& f, double epsilon) {
  const Group& g = s.group();
  const double d = s.nominal_dimension();
  LevelSetReport report;
  report.epsilon = epsilon;
  report.dimension = d;
  const auto values = f.real_part();
  report.values_in_range = f.is_real() && std::all_of(values.begin(), values.end(), [](double v) {
                             return v >= -1.0 - 1e-12 && v <= 1.0 + 1e-12;
                           });
  report.epsilon_in_range = epsilon > 0.0 && epsilon < 1.0 / 3.0;

  const DensityFunction smooth = convolve(f, beta(s, 1.0).density());
  const AlmostBooleanCertificate cert = almost_boolean_check(smooth, BooleanNorm::kLinf);
  report.almost_boolean = cert.holds_for(epsilon);
  report.hypothesis_holds = report.values_in_range && report.epsilon_in_range && report.almost_boolean;
  report.level_set = cert.best_boolean;

  const double eta = epsilon / (20.0 * d);
  const auto gens = s.dilate(eta);
  const Subgroup v = subgroup_from_generators(g, *gens);
  std::vector<char> in(g.order(), 0);
  for (Index x : report.level_set) in[x] = 1;
  report.constant_on_cosets = true;
  for (Index x = 0; x < g.order() && report.constant_on_cosets; ++x) {
    for (Index w : v.elements()) {
      if (in[g.add(x, w)] != in[x]) {
        report.constant_on_cosets = false;
        break;
      }
    }
  }
  report.v = v;
  report.holds = !report.hypothesis_holds || report.constant_on_cosets;
  return report;
}

}  // namespace coslab
