#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "coslab/group.hpp"

namespace coslab {

// A subgroup with its canonical (sorted) element list. Two subgroups are
// equal iff their parents and element lists agree; generators are
// provenance only.
class Subgroup {
 public:
  static Subgroup generated_by(const Group& parent, std::span<const Index> generators);
  // Throws if `elements` is not closed under addition or misses 0.
  static Subgroup from_elements(const Group& parent, ElementSet elements);
  static Subgroup trivial(const Group& parent);
  static Subgroup whole(const Group& parent);

  const Group& parent() const { return parent_; }
  const ElementSet& elements() const { return elements_; }
  const std::vector<Index>& generators() const { return generators_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(Index x) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.elements_ == b.elements_;
  }

 private:
  Subgroup(Group parent, ElementSet elements, std::vector<Index> generators);

  friend std::vector<Subgroup> enumerate_subgroups(const Group&, const struct SubgroupLimits&);

  Group parent_;
  ElementSet elements_;
  std::vector<Index> generators_;
};

// Canonical order: by order, then lexicographically by element list.
bool canonical_less(const Subgroup& a, const Subgroup& b);

struct SubgroupLimits {
  std::size_t max_group_order = 10'000;
  std::size_t max_subgroups = 100'000;
};

Subgroup subgroup_from_generators(const Group& g, std::span<const Index> generators);

// All subgroups in canonical order. Throws CapExceededError when the group is
// larger than max_group_order or more than max_subgroups are found.
std::vector<Subgroup> enumerate_subgroups(const Group& g, const SubgroupLimits& limits = {});

// {gamma : gamma(h) = 1 for all h in H}, as a subgroup of the self-dual
// presentation.
Subgroup annihilator(const Subgroup& h);

}  // namespace coslab
