#include "coslab/lab/scan.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "coslab/chowla.hpp"
#include "coslab/error.hpp"
#include "coslab/lab/random.hpp"

namespace coslab::lab {

std::string_view to_string(SetSource source) {
  switch (source) {
    case SetSource::kExhaustiveSymmetric:
      return "exhaustive-symmetric";
    case SetSource::kRandomSymmetric:
      return "random-symmetric";
    case SetSource::kSpencer:
      return "spencer";
  }
  return "?";
}

SetSource parse_source(std::string_view name) {
  for (auto s : {SetSource::kExhaustiveSymmetric, SetSource::kRandomSymmetric, SetSource::kSpencer}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown set source '" + std::string(name) + "'");
}

Json scan_outputs(const Group& g, const ElementSet& a, const std::vector<Subgroup>& subgroups) {
  // The empty set has the zero transform; M and the statistics are then 0.
  const auto transform = real_indicator_transform(g, a);
  const MgResult m = mg_from_transform(transform);
  double l1 = 0.0;
  for (double v : transform) l1 += std::abs(v);
  double spencer = 0.0;
  for (Index gamma = 1; gamma < transform.size(); ++gamma) spencer = std::max(spencer, std::abs(transform[gamma]));
  return {{"size", a.size()},
          {"m_g", m.value + 0.0},
          {"witness", element_to_json(g, m.witness)},
          {"nearest_distance", nearest_subgroup(a, subgroups).distance},
          {"algebra_norm", l1 / static_cast<double>(g.order())},
          {"spencer", spencer},
          {"spencer_normalized", spencer / std::sqrt(static_cast<double>(g.order()))}};
}

namespace {

struct Job {
  std::size_t group_id;
  std::uint64_t index;  // global instance number, keys the RNG
  std::uint64_t mask;   // exhaustive source only
};

std::vector<Group> scan_groups(const ScanConfig& c) {
  std::vector<Group> out;
  if (c.source == SetSource::kSpencer) {
    if (c.p < 2) throw Error(ErrorCode::kInvalidArgument, "spencer source needs p >= 2");
    out.push_back(make_group({c.p}));
    return out;
  }
  for (const auto& spec : c.groups) out.push_back(parse_group(spec));
  if (c.groups.empty()) {
    for (Group& g : presentations_up_to(c.max_order)) {
      if (g.order() >= c.min_order) out.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace

std::vector<ExperimentRecord> run_scan(const ScanConfig& c) {
  const std::vector<Group> groups = scan_groups(c);
  std::vector<std::vector<Subgroup>> subgroups;
  std::vector<std::vector<std::vector<Index>>> orbits;
  for (const Group& g : groups) {
    subgroups.push_back(enumerate_subgroups(g));
    orbits.push_back(negation_orbits(g));
  }

  std::vector<Job> jobs;
  std::uint64_t index = 0;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    if (c.source == SetSource::kExhaustiveSymmetric) {
      if (orbits[gi].size() > 24) {
        throw Error(ErrorCode::kInfeasible, groups[gi].spec() + " has " + std::to_string(orbits[gi].size()) +
                                                " negation orbits; exhaustive scan limited to 24");
      }
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << orbits[gi].size()); ++mask) {
        jobs.push_back({gi, index++, mask});
      }
    } else {
      if (c.source == SetSource::kRandomSymmetric && !c.size && !c.density) {
        throw Error(ErrorCode::kInvalidArgument, "random-symmetric source needs a density or a size");
      }
      const std::size_t want = c.source == SetSource::kSpencer ? static_cast<std::size_t>(c.p + 1) / 2
                                                               : c.size.value_or(0);
      if ((c.source == SetSource::kSpencer || c.size) && want > groups[gi].order()) {
        throw Error(ErrorCode::kInfeasible, "set size " + std::to_string(want) + " exceeds |G| = " +
                                                std::to_string(groups[gi].order()));
      }
      for (std::size_t i = 0; i < c.count; ++i) jobs.push_back({gi, index++, 0});
    }
  }

  const std::string suite = std::string(to_string(c.source));
  std::function<ExperimentRecord(std::size_t)> body = [&](std::size_t i) {
    const Job& job = jobs[i];
    const Group& g = groups[job.group_id];
    const auto start = std::chrono::steady_clock::now();
    ElementSet a;
    ExperimentRecord r;
    r.suite = suite;
    r.instance.group = g.spec();
    if (c.source == SetSource::kExhaustiveSymmetric) {
      a = symmetric_set_from_mask(orbits[job.group_id], job.mask);
    } else {
      auto rng = instance_rng(c.seed, job.index);
      if (c.source == SetSource::kSpencer) {
        a = random_symmetric_set_of_size(rng, g, static_cast<std::size_t>(c.p + 1) / 2);
      } else if (c.size) {
        a = random_symmetric_set_of_size(rng, g, *c.size);
      } else {
        a = random_symmetric_set(rng, g, *c.density);
      }
      r.instance.seed = c.seed;
    }
    r.instance.index = job.index;
    r.instance.set = format_set(g, a);
    r.outputs = scan_outputs(g, a, subgroups[job.group_id]);
    if (c.timing) {
      r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return r;
  };
  return parallel_map<ExperimentRecord>(jobs.size(), c.jobs, body);
}

Distribution summarize(std::vector<double> values) {
  Distribution d;
  d.count = values.size();
  if (values.empty()) return d;
  std::sort(values.begin(), values.end());
  d.min = values.front();
  d.max = values.back();
  d.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  const std::size_t n = values.size();
  d.median = n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
  return d;
}

}  // namespace coslab::lab
