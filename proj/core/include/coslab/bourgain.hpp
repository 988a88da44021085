#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coslab/group.hpp"
#include "coslab/harmonic.hpp"
#include "coslab/subgroup.hpp"

namespace coslab {

enum class SystemKind { kCosetProgression, kExplicit };

std::string_view to_string(SystemKind kind);

struct CosetProgressionParams {
  Subgroup h;
  std::vector<Index> x;
  std::vector<std::int64_t> l;
};

// A family (B_rho), rho in (0,2]. Dilates are computed on demand and cached;
// copies share the cache, which is safe to fill from several threads.
class BourgainSystem {
 public:
  using Dilate = std::shared_ptr<const ElementSet>;
  using DilateFn = std::function<Dilate(double rho)>;

  BourgainSystem(Group group, DilateFn fn, double dimension, SystemKind kind);

  const Group& group() const;
  double nominal_dimension() const;
  SystemKind kind() const;

  // Throws for rho outside (0, 2].
  Dilate dilate(double rho) const;
  std::size_t size(double rho) const { return dilate(rho)->size(); }

  // (lambda B)_rho = B_{lambda rho}; shares this system's cache.
  BourgainSystem dilated(double lambda) const;
  double scale() const;

 private:
  struct State;
  BourgainSystem(std::shared_ptr<State> state, double scale);

  std::shared_ptr<State> state_;
  double scale_ = 1.0;
};

// Prog(H, x, floor(rho L)). Dimension is ceil(d log2 3), at least 1.
BourgainSystem coset_progression(const CosetProgressionParams& params);

// {h + sum l_j x_j : h in H, |l_j| <= bounds_j}.
ElementSet progression_elements(const Subgroup& h, const std::vector<Index>& x,
                                const std::vector<std::int64_t>& bounds);

std::vector<double> default_grid();

struct AxiomResult {
  std::string name;
  bool passed = true;
  std::string witness;  // first failure, empty when passed
};

struct AxiomReport {
  std::vector<AxiomResult> axioms;  // Nesting, Zero, Symmetry, Addition, Doubling
  double nominal_dimension = 0.0;
  double empirical_dimension = 0.0;  // max log2 |B_2rho| / |B_rho| on the grid
  bool all_passed() const;
};

AxiomReport verify_axioms(const BourgainSystem& s, const std::vector<double>& grid = default_grid());

// eta_k = k / (320 d), the regularity grid.
double regularity_eta(int k, double d);

struct RegularityReport {
  double lambda = 0.0;
  double dimension = 0.0;
  std::vector<double> etas;
  std::vector<double> ratios;  // |B_lambda| / |B_lambda(1 + eta)|
  bool passes = false;
  double worst_excess = 0.0;   // max over eta of the violation, <= 0 when passing
};

RegularityReport regularity_at(const BourgainSystem& s, double lambda);
// First passing lambda = 1/2 + i/512, i < 256. Throws kRegularityNotFound.
RegularityReport find_regular_dilate(const BourgainSystem& s);

struct SizeLemmaReport {
  double lambda = 0.0;
  double dimension = 0.0;
  std::size_t lhs = 0;  // |B_lambda|
  double rhs = 0.0;     // (lambda/2)^d |B_1|
  bool holds = false;
};

SizeLemmaReport size_lemma_check(const BourgainSystem& s, double lambda);

// mu_{B_rho} * mu_{B_rho}.
Measure beta(const BourgainSystem& s, double rho);

struct ContinuityReport {
  double eta = 0.0;
  double dimension = 0.0;
  double bound = 0.0;
  double max_observed = 0.0;
  Index argmax = 0;
  std::size_t checked = 0;
  bool holds = false;
};

// Translates of beta_1 by y in B_eta. trials = 0 checks every y; otherwise an
// evenly spaced sample is used.
ContinuityReport translation_continuity_check(const BourgainSystem& s, double eta, std::size_t trials = 0);
ContinuityReport smoothing_continuity_check(const BourgainSystem& s, const DensityFunction& f, double eta);

struct LevelSetReport {
  double epsilon = 0.0;
  double dimension = 0.0;
  bool values_in_range = false;      // f maps into [-1, 1]
  bool epsilon_in_range = false;     // epsilon in (0, 1/3)
  bool almost_boolean = false;       // f * beta is (epsilon, inf)-almost boolean
  bool hypothesis_holds = false;
  ElementSet level_set;
  std::optional<Subgroup> v;
  bool constant_on_cosets = false;
  bool holds = false;                // hypothesis => constancy
};

LevelSetReport level_set_constancy(const BourgainSystem& s, const DensityFunction& f, double epsilon);

}  // namespace coslab
