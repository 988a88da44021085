#include "coslab/group.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "coslab/error.hpp"

namespace coslab {

namespace {

constexpr std::size_t kMaxOrder = std::size_t{1} << 31;

std::int64_t reduce(std::int64_t value, std::int64_t modulus) {
  std::int64_t r = value % modulus;
  return r < 0 ? r + modulus : r;
}

}  // namespace

Group::Group(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw Error(ErrorCode::kEmptyPresentation, "empty presentation");
  std::size_t order = 1;
  std::int64_t exponent = 1;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    const std::int64_t n = moduli_[j];
    if (n < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "modulus " + std::to_string(j) + " must be >= 1, got " + std::to_string(n));
    }
    if (static_cast<std::size_t>(n) > kMaxOrder / order) {
      throw Error(ErrorCode::kInvalidArgument, "group order exceeds 2^31");
    }
    order *= static_cast<std::size_t>(n);
    exponent = std::lcm(exponent, n);
  }
  order_ = order;
  exponent_ = exponent;
  strides_.assign(moduli_.size(), 1);
  for (std::size_t j = moduli_.size(); j-- > 1;) {
    strides_[j - 1] = strides_[j] * static_cast<std::size_t>(moduli_[j]);
  }
}

Index Group::index_of(std::span<const std::int64_t> coords) const {
  if (coords.size() != rank()) {
    throw Error(ErrorCode::kInvalidArgument, "coordinate length " + std::to_string(coords.size()) +
                                                 " does not match rank " + std::to_string(rank()));
  }
  Index out = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    out += static_cast<Index>(reduce(coords[j], moduli_[j])) * strides_[j];
  }
  return out;
}

Index Group::checked_index(std::span<const std::int64_t> coords) const {
  if (coords.size() != rank()) {
    throw Error(ErrorCode::kInvalidArgument, "coordinate length " + std::to_string(coords.size()) +
                                                 " does not match rank " + std::to_string(rank()));
  }
  for (std::size_t j = 0; j < rank(); ++j) {
    if (coords[j] < 0 || coords[j] >= moduli_[j]) {
      throw Error(ErrorCode::kInvalidArgument, "coordinate " + std::to_string(coords[j]) +
                                                   " out of range for Z" + std::to_string(moduli_[j]));
    }
  }
  return index_of(coords);
}

std::vector<std::int64_t> Group::coords_of(Index index) const {
  if (index >= order_) {
    throw Error(ErrorCode::kInvalidArgument, "index " + std::to_string(index) + " out of range");
  }
  std::vector<std::int64_t> coords(rank());
  for (std::size_t j = 0; j < rank(); ++j) {
    coords[j] = static_cast<std::int64_t>((index / strides_[j]) % static_cast<std::size_t>(moduli_[j]));
  }
  return coords;
}

Index Group::index(const GroupElement& x) const { return checked_index(x.coords()); }
Index Group::index(const Character& gamma) const { return checked_index(gamma.coords()); }

Index Group::add(Index a, Index b) const {
  Index out = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const auto n = static_cast<std::size_t>(moduli_[j]);
    const std::size_t s = strides_[j];
    const std::size_t digit = (a / s) % n + (b / s) % n;
    out += (digit >= n ? digit - n : digit) * s;
  }
  return out;
}

Index Group::negate(Index a) const {
  Index out = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const auto n = static_cast<std::size_t>(moduli_[j]);
    const std::size_t s = strides_[j];
    const std::size_t digit = (a / s) % n;
    out += (digit == 0 ? 0 : n - digit) * s;
  }
  return out;
}

Index Group::multiply(std::int64_t k, Index a) const {
  Index out = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const std::int64_t n = moduli_[j];
    const std::size_t s = strides_[j];
    const auto digit = static_cast<std::int64_t>((a / s) % static_cast<std::size_t>(n));
    const std::int64_t scaled = reduce(reduce(k, n) * digit, n);
    out += static_cast<std::size_t>(scaled) * s;
  }
  return out;
}

std::int64_t Group::pairing_turns(Index x, Index gamma) const {
  std::int64_t turns = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    const std::int64_t n = moduli_[j];
    const std::size_t s = strides_[j];
    const auto xj = static_cast<std::int64_t>((x / s) % static_cast<std::size_t>(n));
    const auto gj = static_cast<std::int64_t>((gamma / s) % static_cast<std::size_t>(n));
    turns += ((xj * gj) % n) * (exponent_ / n);
    turns %= exponent_;
  }
  return turns;
}

std::string Group::spec() const {
  std::string out;
  for (std::size_t j = 0; j < rank(); ++j) {
    if (j > 0) out += 'x';
    out += 'Z';
    out += std::to_string(moduli_[j]);
  }
  return out;
}

Group make_group(std::vector<std::int64_t> moduli) { return Group(std::move(moduli)); }

namespace {

// Cursor over a literal that skips whitespace and remembers positions in
// the original text for error messages.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool consume_ci(char c) {
    const char p = peek();
    if (p != '\0' && std::tolower(static_cast<unsigned char>(p)) == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!consume(c)) fail(what);
  }
  std::int64_t integer() {
    skip_space();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
      skip_space();
    }
    std::int64_t value = 0;
    std::size_t digits = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (value > (std::numeric_limits<std::int64_t>::max() - 9) / 10) {
        pos_ = start;
        fail("integer overflow");
      }
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
      ++digits;
    }
    if (digits == 0) {
      pos_ = start;
      fail("expected integer");
    }
    return negative ? -value : value;
  }
  [[noreturn]] void fail(const std::string& what) {
    skip_space();
    throw ParseError(text_, pos_, what);
  }
  std::size_t position() const { return pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Index parse_element_at(const Group& g, Cursor& cur) {
  std::vector<std::int64_t> coords;
  if (cur.consume('(')) {
    if (!cur.consume(')')) {
      do {
        coords.push_back(cur.integer());
      } while (cur.consume(','));
      cur.expect(')', "expected ')'");
    }
  } else if (g.rank() == 1) {
    coords.push_back(cur.integer());
  } else {
    cur.fail("expected '(' to start a rank-" + std::to_string(g.rank()) + " element");
  }
  if (coords.size() != g.rank()) {
    cur.fail("element has " + std::to_string(coords.size()) + " coordinates, group rank is " +
             std::to_string(g.rank()));
  }
  return g.index_of(coords);
}

}  // namespace

Group parse_group(std::string_view spec) {
  Cursor cur(spec);
  std::vector<std::int64_t> moduli;
  if (cur.done()) throw Error(ErrorCode::kEmptyPresentation, "empty presentation");
  do {
    if (!cur.consume_ci('z')) cur.fail("expected 'Z'");
    const std::int64_t n = cur.integer();
    if (n < 1) cur.fail("modulus must be >= 1");
    moduli.push_back(n);
  } while (cur.consume_ci('x'));
  if (!cur.done()) cur.fail("unexpected character");
  return Group(std::move(moduli));
}

Index parse_element(const Group& g, std::string_view literal) {
  Cursor cur(literal);
  const Index x = parse_element_at(g, cur);
  if (!cur.done()) cur.fail("unexpected character after element");
  return x;
}

ElementSet parse_set(const Group& g, std::string_view literal) {
  Cursor cur(literal);
  const bool braced = cur.consume('{');
  std::vector<Index> out;
  auto at_end = [&] { return braced ? cur.peek() == '}' : cur.done(); };
  while (!at_end()) {
    if (cur.done()) cur.fail("expected '}'");
    out.push_back(parse_element_at(g, cur));
    if (!cur.consume(',')) cur.consume(';');
  }
  if (braced) {
    cur.expect('}', "expected '}'");
    if (!cur.done()) cur.fail("unexpected character after set");
  }
  return make_set(g, std::move(out));
}

std::string format_element(const Group& g, Index x) {
  const auto coords = g.coords_of(x);
  if (coords.size() == 1) return std::to_string(coords[0]);
  std::string out = "(";
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (j > 0) out += ',';
    out += std::to_string(coords[j]);
  }
  return out + ")";
}

std::string format_set(const Group& g, const ElementSet& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i > 0) out += ',';
    out += format_element(g, set[i]);
  }
  return out + "}";
}

std::complex<double> pairing(const Group& g, const GroupElement& x, const Character& gamma) {
  if (x.size() != g.rank() || gamma.size() != g.rank()) {
    throw Error(ErrorCode::kInvalidArgument, "coordinate length mismatch in pairing");
  }
  const std::int64_t turns = g.pairing_turns(g.index(x), g.index(gamma));
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(turns) /
                       static_cast<double>(g.exponent());
  return std::polar(1.0, angle);
}

ElementSet make_set(const Group& g, std::vector<Index> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!elements.empty() && elements.back() >= g.order()) {
    throw Error(ErrorCode::kInvalidArgument,
                "element index " + std::to_string(elements.back()) + " outside group of order " +
                    std::to_string(g.order()));
  }
  return elements;
}

ElementSet negate_set(const Group& g, const ElementSet& set) {
  std::vector<Index> out;
  out.reserve(set.size());
  for (Index x : set) out.push_back(g.negate(x));
  std::sort(out.begin(), out.end());
  return out;
}

ElementSet symmetric_difference(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t symmetric_difference_size(const ElementSet& a, const ElementSet& b) {
  std::size_t common = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return a.size() + b.size() - 2 * common;
}

bool contains(const ElementSet& set, Index x) { return std::binary_search(set.begin(), set.end(), x); }

Index first_asymmetric(const Group& g, const ElementSet& set) {
  for (Index x : set) {
    if (!contains(set, g.negate(x))) return x;
  }
  return g.order();
}

bool is_symmetric(const Group& g, const ElementSet& set) { return first_asymmetric(g, set) == g.order(); }

bool is_subgroup(const Group& g, const ElementSet& set) {
  if (set.empty() || set.front() != 0) return false;
  std::vector<char> in_set(g.order(), 0);
  for (Index x : set) in_set[x] = 1;
  // Grow the subgroup generated by the elements seen so far; the set is a
  // subgroup iff this never leaves it.
  std::vector<char> reached(g.order(), 0);
  reached[0] = 1;
  std::vector<Index> members{0};
  std::vector<Index> queue;
  for (Index x : set) {
    if (reached[x]) continue;
    queue.assign(members.begin(), members.end());
    while (!queue.empty()) {
      const Index next = g.add(queue.back(), x);
      queue.pop_back();
      if (reached[next]) continue;
      if (!in_set[next]) return false;
      reached[next] = 1;
      members.push_back(next);
      queue.push_back(next);
    }
  }
  return members.size() == set.size();
}

std::vector<std::vector<Index>> negation_orbits(const Group& g) {
  std::vector<std::vector<Index>> orbits;
  std::vector<char> seen(g.order(), 0);
  for (Index x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    const Index y = g.negate(x);
    seen[x] = seen[y] = 1;
    if (y == x) {
      orbits.push_back({x});
    } else {
      orbits.push_back({x, y});
    }
  }
  return orbits;
}

ElementSet symmetric_set_from_mask(const std::vector<std::vector<Index>>& orbits, std::uint64_t mask) {
  ElementSet out;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if ((mask >> i) & 1U) out.insert(out.end(), orbits[i].begin(), orbits[i].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void ordered_factorizations(std::int64_t remaining, std::vector<std::int64_t>& prefix,
                            std::vector<Group>& out) {
  if (remaining == 1) {
    if (!prefix.empty()) out.emplace_back(prefix);
    return;
  }
  for (std::int64_t f = 2; f <= remaining; ++f) {
    if (remaining % f != 0) continue;
    prefix.push_back(f);
    ordered_factorizations(remaining / f, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Group> presentations_up_to(std::size_t max_order) {
  std::vector<Group> out;
  out.emplace_back(std::vector<std::int64_t>{1});
  std::vector<std::int64_t> prefix;
  for (std::size_t n = 2; n <= max_order; ++n) {
    ordered_factorizations(static_cast<std::int64_t>(n), prefix, out);
  }
  return out;
}

}  // namespace coslab
