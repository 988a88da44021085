#include "coslab/lab/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coslab/error.hpp"

namespace coslab::lab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double log_binomial(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

std::mt19937_64 instance_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ index));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = kMax - kMax % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<std::size_t> sample_indices(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < n && out.size() < k; ++i) {
    if (uniform_below(rng, n - i) < k - out.size()) out.push_back(i);
  }
  return out;
}

ElementSet random_symmetric_set(std::mt19937_64& rng, const Group& g, double q) {
  ElementSet out;
  for (const auto& orbit : negation_orbits(g)) {
    if (uniform01(rng) < q) out.insert(out.end(), orbit.begin(), orbit.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

ElementSet random_symmetric_set_of_size(std::mt19937_64& rng, const Group& g, std::size_t size) {
  const auto orbits = negation_orbits(g);
  std::vector<const std::vector<Index>*> singles, pairs;
  for (const auto& o : orbits) (o.size() == 1 ? singles : pairs).push_back(&o);
  const std::size_t t = singles.size();
  const std::size_t p = pairs.size();

  // Split by how many 2-torsion singletons are used, weighted by the number
  // of sets of each shape.
  std::vector<std::size_t> ks;
  std::vector<double> logw;
  for (std::size_t k = size % 2; k <= std::min(t, size); k += 2) {
    const std::size_t m = (size - k) / 2;
    if (m > p) continue;
    ks.push_back(k);
    logw.push_back(log_binomial(t, k) + log_binomial(p, m));
  }
  if (ks.empty()) {
    throw Error(ErrorCode::kInfeasible, "no symmetric subset of " + g.spec() + " has size " + std::to_string(size));
  }
  const double top = *std::max_element(logw.begin(), logw.end());
  std::vector<double> w(logw.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) total += (w[i] = std::exp(logw[i] - top));
  double u = uniform01(rng) * total;
  std::size_t pick = 0;
  while (pick + 1 < w.size() && u >= w[pick]) u -= w[pick++];
  const std::size_t k = ks[pick];

  ElementSet out;
  for (std::size_t i : sample_indices(rng, t, k)) out.push_back((*singles[i])[0]);
  for (std::size_t i : sample_indices(rng, p, (size - k) / 2)) {
    out.insert(out.end(), pairs[i]->begin(), pairs[i]->end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace coslab::lab
