#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "coslab/bourgain.hpp"
#include "coslab/lab/experiment.hpp"

namespace coslab::lab {

struct SuiteOptions {
  std::size_t max_order = 12;  // exhaustive suites
  std::size_t trials = 0;      // randomized suites; 0 picks the suite default
  std::uint64_t seed = 1;
  int jobs = 1;
  bool timing = false;
};

const std::vector<std::string>& suite_names();

// Throws kUnknownSuite. Every record carries `pass`.
std::vector<ExperimentRecord> run_suite(const std::string& name, const SuiteOptions& options = {});

bool all_passed(const std::vector<ExperimentRecord>& records);

// Ambient order <= 1009, at most 3 generators, side lengths about |G|^(1/d).
CosetProgressionParams random_progression(std::mt19937_64& rng);

// Groups used by the randomized Fourier suites.
std::vector<Group> fourier_suite_groups();
std::vector<Group> convolution_suite_groups();

}  // namespace coslab::lab
