#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coslab/lab/experiment.hpp"

namespace coslab::lab {

enum class SetSource { kExhaustiveSymmetric, kRandomSymmetric, kSpencer };

std::string_view to_string(SetSource source);
SetSource parse_source(std::string_view name);

struct ScanConfig {
  // Explicit presentations; when empty, every presentation with order in
  // [min_order, max_order] is used. Ignored by the spencer source.
  std::vector<std::string> groups;
  std::size_t min_order = 1;
  std::size_t max_order = 0;

  SetSource source = SetSource::kExhaustiveSymmetric;
  std::size_t count = 0;          // random and spencer sources: sets per group
  std::optional<double> density;  // random: keep each orbit with this probability
  std::optional<std::size_t> size;  // random: exact size (takes precedence)
  std::int64_t p = 101;           // spencer: Z/p with sets of size (p+1)/2
  std::uint64_t seed = 0;
  int jobs = 1;
  bool timing = false;
};

// Records carry {size, m_g, witness, nearest_distance, algebra_norm, spencer,
// spencer_normalized}; the empty set is included by the exhaustive source.
std::vector<ExperimentRecord> run_scan(const ScanConfig& config);

// One scan record for a given set (also used by the tests).
Json scan_outputs(const Group& g, const ElementSet& a, const std::vector<Subgroup>& subgroups);

struct Distribution {
  std::size_t count = 0;
  double min = 0.0, mean = 0.0, median = 0.0, max = 0.0;
};

Distribution summarize(std::vector<double> values);

}  // namespace coslab::lab
