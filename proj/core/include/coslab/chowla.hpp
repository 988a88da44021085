#pragma once

#include <cstddef>
#include <vector>

#include "coslab/group.hpp"
#include "coslab/harmonic.hpp"
#include "coslab/subgroup.hpp"
#include "coslab/tolerance.hpp"

namespace coslab {

// Spec_eps(A) = {gamma : |hat 1_A(gamma)| >= eps |A|}.
struct Spectrum {
  ElementSet characters;
  double epsilon = 0.0;
  std::size_t source_size = 0;
};

struct MgResult {
  double value = 0.0;     // max_gamma -Re hat 1_A(gamma)
  Index witness = 0;      // first character (canonical order) attaining it
  double full_min = 0.0;  // min_gamma Re hat 1_A(gamma) = -value
  double max_imag = 0.0;  // largest |Im hat 1_A| seen; ~0 for symmetric A
};

struct StructureDistance {
  std::vector<Subgroup> subgroups;  // one entry for nearest_subgroup
  std::size_t distance = 0;         // |A symmetric-difference union(subgroups)|
  std::size_t searched = 0;         // candidates examined
  bool heuristic = false;           // true when the greedy fallback ran
};

struct UnionSearchOptions {
  // Exhaustive search iff (#subgroups)^m stays within this budget.
  double exhaustive_budget = 1e7;
  bool allow_greedy = true;
  SubgroupLimits limits;
};

// Transform of 1_A, checked to be real to the spectral tolerance (scaled by
// |A|); the imaginary residue is returned through `max_imag` if non-null.
std::vector<double> real_indicator_transform(const Group& g, const ElementSet& a, const Tolerances& tol = {},
                                             double* max_imag = nullptr);

// M_G(A) from an already computed real transform.
MgResult mg_from_transform(std::span<const double> transform, const Tolerances& tol = {});

// Requires A nonempty and symmetric.
MgResult mg(const Group& g, const ElementSet& a, const Tolerances& tol = {});

Spectrum spectrum(const Group& g, const ElementSet& a, double epsilon, const Tolerances& tol = {});
Spectrum spectrum_from_transform(std::span<const double> transform, std::size_t set_size, double epsilon,
                                 const Tolerances& tol = {});

// Ties: smaller |H|, then canonical element order.
StructureDistance nearest_subgroup(const Group& g, const ElementSet& a, const SubgroupLimits& limits = {});
StructureDistance nearest_subgroup(const ElementSet& a, const std::vector<Subgroup>& candidates);

// Best collection of at most m subgroups.
StructureDistance nearest_subgroup_union(const Group& g, const ElementSet& a, std::size_t m,
                                         const UnionSearchOptions& options = {});
StructureDistance nearest_subgroup_union(const Group& g, const ElementSet& a, std::size_t m,
                                         const std::vector<Subgroup>& candidates,
                                         const UnionSearchOptions& options = {});

// max over gamma != 0 of |hat 1_A(gamma)|.
double spencer_statistic(const Group& g, const ElementSet& a);

}  // namespace coslab
