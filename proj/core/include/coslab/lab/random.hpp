#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "coslab/group.hpp"

namespace coslab::lab {

// Independent stream for instance `index` of a run seeded with `seed`.
std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index);

// Bit-reproducible draws (the standard distributions are not portable).
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);
double uniform01(std::mt19937_64& rng);

// k distinct items of [0, n) in increasing order (selection sampling).
std::vector<std::size_t> sample_indices(std::mt19937_64& rng, std::size_t n, std::size_t k);

// Each x -> -x orbit kept independently with probability q.
ElementSet random_symmetric_set(std::mt19937_64& rng, const Group& g, double q);

// Uniform over symmetric sets of exactly `size` elements. Throws kInfeasible
// when no such set exists.
ElementSet random_symmetric_set_of_size(std::mt19937_64& rng, const Group& g, std::size_t size);

}  // namespace coslab::lab
