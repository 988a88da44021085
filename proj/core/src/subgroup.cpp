#include "coslab/subgroup.hpp"

#include <algorithm>
#include <unordered_map>

#include "coslab/error.hpp"

namespace coslab {

namespace {

// Extends the membership mask to the closure under the given generators.
void close_under(const Group& g, std::vector<char>& mask, std::vector<Index>& members,
                 std::span<const Index> generators) {
  std::vector<Index> queue(members.begin(), members.end());
  while (!queue.empty()) {
    const Index e = queue.back();
    queue.pop_back();
    for (Index s : generators) {
      const Index next = g.add(e, s);
      if (!mask[next]) {
        mask[next] = 1;
        members.push_back(next);
        queue.push_back(next);
      }
    }
  }
}

ElementSet sorted_from_mask(const std::vector<char>& mask) {
  ElementSet out;
  for (Index x = 0; x < mask.size(); ++x) {
    if (mask[x]) out.push_back(x);
  }
  return out;
}

std::size_t hash_elements(const ElementSet& elements) {
  std::size_t h = 1469598103934665603ULL;
  for (Index x : elements) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// Greedy generating set: walk the elements in order and keep those not yet
// reached. Returns false if the closure escapes `elements`, i.e. the set is
// not a subgroup.
bool greedy_generators(const Group& g, const ElementSet& elements, std::vector<Index>& gens) {
  if (elements.empty() || elements.front() != 0) return false;
  std::vector<char> mask(g.order(), 0);
  mask[0] = 1;
  std::vector<Index> members{0};
  gens.clear();
  for (Index x : elements) {
    if (mask[x]) continue;
    gens.push_back(x);
    const Index one[] = {x};
    close_under(g, mask, members, one);
    if (members.size() > elements.size()) return false;
  }
  return members.size() == elements.size() && sorted_from_mask(mask) == elements;
}

}  // namespace

Subgroup::Subgroup(Group parent, ElementSet elements, std::vector<Index> generators)
    : parent_(std::move(parent)), elements_(std::move(elements)), generators_(std::move(generators)) {}

Subgroup Subgroup::generated_by(const Group& parent, std::span<const Index> generators) {
  for (Index x : generators) {
    if (x >= parent.order()) {
      throw Error(ErrorCode::kInvalidArgument, "generator index out of range");
    }
  }
  std::vector<char> mask(parent.order(), 0);
  mask[0] = 1;
  std::vector<Index> members{0};
  close_under(parent, mask, members, generators);
  return Subgroup(parent, sorted_from_mask(mask), std::vector<Index>(generators.begin(), generators.end()));
}

Subgroup Subgroup::from_elements(const Group& parent, ElementSet elements) {
  elements = make_set(parent, std::move(elements));
  std::vector<Index> gens;
  if (!greedy_generators(parent, elements, gens)) {
    throw Error(ErrorCode::kInvalidArgument, "element set " + format_set(parent, elements) +
                                                 " is not a subgroup of " + parent.spec());
  }
  return Subgroup(parent, std::move(elements), std::move(gens));
}

Subgroup Subgroup::trivial(const Group& parent) { return Subgroup(parent, ElementSet{0}, {}); }

Subgroup Subgroup::whole(const Group& parent) {
  ElementSet all(parent.order());
  for (Index x = 0; x < all.size(); ++x) all[x] = x;
  std::vector<Index> gens;
  for (std::size_t j = 0; j < parent.rank(); ++j) {
    if (parent.moduli()[j] > 1) gens.push_back(parent.stride(j));
  }
  return Subgroup(parent, std::move(all), std::move(gens));
}

bool Subgroup::contains(Index x) const { return coslab::contains(elements_, x); }

bool canonical_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements() < b.elements();
}

Subgroup subgroup_from_generators(const Group& g, std::span<const Index> generators) {
  return Subgroup::generated_by(g, generators);
}

std::vector<Subgroup> enumerate_subgroups(const Group& g, const SubgroupLimits& limits) {
  if (g.order() > limits.max_group_order) {
    throw CapExceededError(ErrorCode::kCapExceeded, 0,
                           "group order " + std::to_string(g.order()) + " above enumeration limit " +
                               std::to_string(limits.max_group_order));
  }
  std::vector<Subgroup> found;
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_hash;
  auto intern = [&](Subgroup candidate) {
    const std::size_t h = hash_elements(candidate.elements());
    auto& bucket = by_hash[h];
    for (std::size_t id : bucket) {
      if (found[id].elements() == candidate.elements()) return;
    }
    if (found.size() >= limits.max_subgroups) {
      throw CapExceededError(ErrorCode::kCapExceeded, found.size(),
                             "more than " + std::to_string(limits.max_subgroups) + " subgroups in " +
                                 g.spec());
    }
    bucket.push_back(found.size());
    found.push_back(std::move(candidate));
  };

  intern(Subgroup::trivial(g));
  // BFS over one-generator extensions H -> H + <x>. One representative per
  // coset of H suffices since H + <x> depends only on x + H.
  for (std::size_t next = 0; next < found.size(); ++next) {
    const Subgroup base = found[next];
    std::vector<char> in_base(g.order(), 0);
    for (Index h : base.elements()) in_base[h] = 1;
    std::vector<char> coset_seen = in_base;
    for (Index x = 0; x < g.order(); ++x) {
      if (coset_seen[x]) continue;
      for (Index h : base.elements()) coset_seen[g.add(x, h)] = 1;
      std::vector<char> mask = in_base;
      std::vector<Index> members(base.elements().begin(), base.elements().end());
      const Index one[] = {x};
      close_under(g, mask, members, one);
      std::vector<Index> gens = base.generators();
      gens.push_back(x);
      intern(Subgroup(g, sorted_from_mask(mask), std::move(gens)));
    }
  }
  std::sort(found.begin(), found.end(), canonical_less);
  return found;
}

Subgroup annihilator(const Subgroup& h) {
  const Group& g = h.parent();
  ElementSet out;
  for (Index gamma = 0; gamma < g.order(); ++gamma) {
    bool trivial_on_h = true;
    for (Index s : h.generators()) {
      if (g.pairing_turns(s, gamma) != 0) {
        trivial_on_h = false;
        break;
      }
    }
    if (trivial_on_h) out.push_back(gamma);
  }
  return Subgroup::from_elements(g, std::move(out));
}

}  // namespace coslab
