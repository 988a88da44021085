#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coslab {

// Elements and characters are addressed by their row-major position in the
// presentation (last factor fastest). Index 0 is the identity.
using Index = std::size_t;

// Sorted, duplicate-free list of indices.
using ElementSet = std::vector<Index>;

template <class Tag>
class Coordinates {
 public:
  Coordinates() = default;
  explicit Coordinates(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}

  std::span<const std::int64_t> coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  std::int64_t operator[](std::size_t axis) const { return coords_[axis]; }

  friend bool operator==(const Coordinates&, const Coordinates&) = default;
  friend auto operator<=>(const Coordinates&, const Coordinates&) = default;

 private:
  std::vector<std::int64_t> coords_;
};

struct ElementTag {};
struct CharacterTag {};

using GroupElement = Coordinates<ElementTag>;
using Character = Coordinates<CharacterTag>;

// G = Z/n_1 x ... x Z/n_k with componentwise addition. The same presentation
// indexes the dual group: the character with coordinates (g_1..g_k) is
// x -> exp(2 pi i sum_j g_j x_j / n_j).
class Group {
 public:
  explicit Group(std::vector<std::int64_t> moduli);

  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  std::size_t order() const { return order_; }
  // Least common multiple of the moduli; all pairings are multiples of
  // 1/exponent() turns.
  std::int64_t exponent() const { return exponent_; }
  std::size_t stride(std::size_t axis) const { return strides_[axis]; }

  // Coordinates are reduced modulo their factor (negative values allowed).
  Index index_of(std::span<const std::int64_t> coords) const;
  std::vector<std::int64_t> coords_of(Index index) const;

  GroupElement element(Index index) const { return GroupElement(coords_of(index)); }
  Character character(Index index) const { return Character(coords_of(index)); }
  // Strict: coordinates must already be reduced and of the right length.
  Index index(const GroupElement& x) const;
  Index index(const Character& gamma) const;

  Index add(Index a, Index b) const;
  Index negate(Index a) const;
  Index subtract(Index a, Index b) const { return add(a, negate(b)); }
  Index multiply(std::int64_t k, Index a) const;

  // gamma(x) = exp(2 pi i * pairing_turns(x, gamma) / exponent()).
  std::int64_t pairing_turns(Index x, Index gamma) const;

  // "Z4xZ2"; the inverse of parse_group.
  std::string spec() const;

  friend bool operator==(const Group& a, const Group& b) { return a.moduli_ == b.moduli_; }

 private:
  Index checked_index(std::span<const std::int64_t> coords) const;

  std::vector<std::int64_t> moduli_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 1;
  std::int64_t exponent_ = 1;
};

Group make_group(std::vector<std::int64_t> moduli);

// Grammar: factors `Z<n>` joined by `x`, case-insensitive, whitespace ignored.
Group parse_group(std::string_view spec);

// `(a,b,...)`; for rank-1 groups a bare integer is accepted.
Index parse_element(const Group& g, std::string_view literal);

// Comma/semicolon/space separated element literals, optionally wrapped in
// braces: `{0,1,4}`, `(0,0),(1,0)`, `{}`.
ElementSet parse_set(const Group& g, std::string_view literal);

std::string format_element(const Group& g, Index x);
std::string format_set(const Group& g, const ElementSet& set);

std::complex<double> pairing(const Group& g, const GroupElement& x, const Character& gamma);

// Sorts, removes duplicates and validates the range.
ElementSet make_set(const Group& g, std::vector<Index> elements);
ElementSet negate_set(const Group& g, const ElementSet& set);
ElementSet symmetric_difference(const ElementSet& a, const ElementSet& b);
std::size_t symmetric_difference_size(const ElementSet& a, const ElementSet& b);
bool contains(const ElementSet& set, Index x);

bool is_symmetric(const Group& g, const ElementSet& set);
// First x in the set whose negative is missing, or order() if symmetric.
Index first_asymmetric(const Group& g, const ElementSet& set);
bool is_subgroup(const Group& g, const ElementSet& set);

// Orbits of x -> -x in index order: singletons for 2-torsion, pairs otherwise.
std::vector<std::vector<Index>> negation_orbits(const Group& g);

// Every symmetric subset, as the union of the orbits selected by `mask`.
ElementSet symmetric_set_from_mask(const std::vector<std::vector<Index>>& orbits, std::uint64_t mask);

// The trivial group plus every ordered factorization of each n in
// [2, max_order] into moduli >= 2.
std::vector<Group> presentations_up_to(std::size_t max_order);

}  // namespace coslab
