#include "coslab/chowla.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "coslab/error.hpp"

namespace coslab {

namespace {

void require_nonempty(const ElementSet& a, const char* op) {
  if (a.empty()) throw Error(ErrorCode::kEmptySet, std::string(op) + " needs a nonempty set");
}

void require_symmetric(const Group& g, const ElementSet& a, const char* op) {
  const Index bad = first_asymmetric(g, a);
  if (bad != g.order()) {
    throw Error(ErrorCode::kNotSymmetric, std::string(op) + ": set is not symmetric, " +
                                              format_element(g, bad) + " is in A but " +
                                              format_element(g, g.negate(bad)) + " is not");
  }
}

using Bits = std::vector<std::uint64_t>;

Bits to_bits(std::size_t universe, const ElementSet& set) {
  Bits bits((universe + 63) / 64, 0);
  for (Index x : set) bits[x / 64] |= std::uint64_t{1} << (x % 64);
  return bits;
}

std::size_t popcount(const Bits& bits) {
  std::size_t n = 0;
  for (auto w : bits) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t and_popcount(const Bits& a, const Bits& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return n;
}

struct UnionSearch {
  const std::vector<Bits>& candidates;
  const Bits& target;
  std::size_t target_size;
  std::size_t m;

  std::size_t best_distance = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best{};
  std::size_t searched = 0;

  void consider(const Bits& u, const std::vector<std::size_t>& chosen) {
    ++searched;
    const std::size_t d = target_size + popcount(u) - 2 * and_popcount(u, target);
    if (d < best_distance) {
      best_distance = d;
      best = chosen;
    }
  }

  // Combinations of exactly `k` candidates, lexicographic.
  void combos(std::size_t k, std::size_t start, const Bits& u, std::vector<std::size_t>& chosen) {
    if (chosen.size() == k) {
      consider(u, chosen);
      return;
    }
    for (std::size_t i = start; i + (k - chosen.size()) <= candidates.size(); ++i) {
      Bits next = u;
      for (std::size_t w = 0; w < next.size(); ++w) next[w] |= candidates[i][w];
      chosen.push_back(i);
      combos(k, i + 1, next, chosen);
      chosen.pop_back();
    }
  }
};

}  // namespace

std::vector<double> real_indicator_transform(const Group& g, const ElementSet& a, const Tolerances& tol,
                                             double* max_imag) {
  const DensityFunction transform = dft(indicator(g, a));
  const double imag = transform.max_abs_imag();
  if (max_imag != nullptr) *max_imag = imag;
  if (imag > tol.spectral * (1.0 + static_cast<double>(a.size()))) {
    throw Error(ErrorCode::kNotReal, "transform of the indicator has imaginary part " + std::to_string(imag));
  }
  return transform.real_part();
}

MgResult mg_from_transform(std::span<const double> transform, const Tolerances& tol) {
  MgResult out;
  out.full_min = *std::min_element(transform.begin(), transform.end());
  out.value = -out.full_min;
  for (Index gamma = 0; gamma < transform.size(); ++gamma) {
    if (-transform[gamma] >= out.value - tol.structural) {
      out.witness = gamma;
      break;
    }
  }
  return out;
}

MgResult mg(const Group& g, const ElementSet& a, const Tolerances& tol) {
  require_nonempty(a, "mg");
  require_symmetric(g, a, "mg");
  double imag = 0.0;
  const auto transform = real_indicator_transform(g, a, tol, &imag);
  MgResult out = mg_from_transform(transform, tol);
  out.max_imag = imag;
  return out;
}

Spectrum spectrum_from_transform(std::span<const double> transform, std::size_t set_size, double epsilon,
                                 const Tolerances& tol) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "spectrum parameter must lie in (0,1), got " + std::to_string(epsilon));
  }
  if (set_size == 0) throw Error(ErrorCode::kEmptySet, "spectrum needs a nonempty set");
  Spectrum out;
  out.epsilon = epsilon;
  out.source_size = set_size;
  const double threshold = epsilon * static_cast<double>(set_size) - tol.structural;
  for (Index gamma = 0; gamma < transform.size(); ++gamma) {
    if (std::abs(transform[gamma]) >= threshold) out.characters.push_back(gamma);
  }
  return out;
}

Spectrum spectrum(const Group& g, const ElementSet& a, double epsilon, const Tolerances& tol) {
  require_nonempty(a, "spectrum");
  // Spectrum is defined through |hat 1_A|, so asymmetric sets are allowed.
  const DensityFunction transform = dft(indicator(g, a));
  std::vector<double> moduli(transform.size());
  for (Index i = 0; i < moduli.size(); ++i) moduli[i] = std::abs(transform[i]);
  return spectrum_from_transform(moduli, a.size(), epsilon, tol);
}

StructureDistance nearest_subgroup(const ElementSet& a, const std::vector<Subgroup>& candidates) {
  if (candidates.empty()) throw Error(ErrorCode::kInvalidArgument, "no candidate subgroups");
  StructureDistance out;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::size_t best_id = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const std::size_t d = symmetric_difference_size(a, candidates[i].elements());
    // Candidates arrive in canonical order, so strict improvement implements
    // the tie-break.
    if (d < best) {
      best = d;
      best_id = i;
    }
  }
  out.subgroups.push_back(candidates[best_id]);
  out.distance = best;
  out.searched = candidates.size();
  return out;
}

StructureDistance nearest_subgroup(const Group& g, const ElementSet& a, const SubgroupLimits& limits) {
  return nearest_subgroup(a, enumerate_subgroups(g, limits));
}

StructureDistance nearest_subgroup_union(const Group& g, const ElementSet& a, std::size_t m,
                                         const std::vector<Subgroup>& candidates,
                                         const UnionSearchOptions& options) {
  if (m < 1) throw Error(ErrorCode::kInvalidArgument, "union size m must be >= 1");
  if (candidates.empty()) throw Error(ErrorCode::kInvalidArgument, "no candidate subgroups");
  std::vector<Bits> bits;
  bits.reserve(candidates.size());
  for (const auto& h : candidates) bits.push_back(to_bits(g.order(), h.elements()));
  const Bits target = to_bits(g.order(), a);
  const std::size_t k_max = std::min(m, candidates.size());

  UnionSearch search{bits, target, a.size(), k_max};
  StructureDistance out;
  const double combos = std::pow(static_cast<double>(candidates.size()), static_cast<double>(k_max));
  if (combos <= options.exhaustive_budget) {
    std::vector<std::size_t> chosen;
    for (std::size_t k = 1; k <= k_max; ++k) search.combos(k, 0, Bits(target.size(), 0), chosen);
  } else {
    if (!options.allow_greedy) {
      throw CapExceededError(ErrorCode::kBudgetExceeded, candidates.size(),
                             "exhaustive union search over " + std::to_string(candidates.size()) +
                                 " subgroups with m = " + std::to_string(m) + " exceeds the budget");
    }
    out.heuristic = true;
    Bits u(target.size(), 0);
    std::vector<std::size_t> chosen;
    for (std::size_t step = 0; step < k_max; ++step) {
      std::size_t pick = candidates.size();
      std::size_t pick_distance = std::numeric_limits<std::size_t>::max();
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        Bits next = u;
        for (std::size_t w = 0; w < next.size(); ++w) next[w] |= bits[i][w];
        ++search.searched;
        const std::size_t d = a.size() + popcount(next) - 2 * and_popcount(next, target);
        if (d < pick_distance) {
          pick_distance = d;
          pick = i;
        }
      }
      if (!chosen.empty() && pick_distance >= search.best_distance) break;
      for (std::size_t w = 0; w < u.size(); ++w) u[w] |= bits[pick][w];
      chosen.push_back(pick);
      search.best_distance = pick_distance;
      search.best = chosen;
    }
  }
  for (std::size_t i : search.best) out.subgroups.push_back(candidates[i]);
  out.distance = search.best_distance;
  out.searched = search.searched;
  return out;
}

StructureDistance nearest_subgroup_union(const Group& g, const ElementSet& a, std::size_t m,
                                         const UnionSearchOptions& options) {
  return nearest_subgroup_union(g, a, m, enumerate_subgroups(g, options.limits), options);
}

double spencer_statistic(const Group& g, const ElementSet& a) {
  require_nonempty(a, "spencer_statistic");
  if (g.order() == 1) throw Error(ErrorCode::kInvalidArgument, "spencer statistic needs a nontrivial group");
  const DensityFunction transform = dft(indicator(g, a));
  double best = 0.0;
  for (Index gamma = 1; gamma < transform.size(); ++gamma) best = std::max(best, std::abs(transform[gamma]));
  return best;
}

}  // namespace coslab
