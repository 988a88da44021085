#include "coslab/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "coslab/error.hpp"
#include "fft.hpp"

namespace coslab {

using detail::cd;

std::string_view to_string(Side side) { return side == Side::kPrimal ? "primal" : "dual"; }

namespace {

void require_side(const DensityFunction& f, Side side, const char* op) {
  if (f.side() != side) {
    throw Error(ErrorCode::kSideMismatch, std::string(op) + " expects a " + std::string(to_string(side)) +
                                              " function, got " + std::string(to_string(f.side())));
  }
}

void require_same_group(const DensityFunction& a, const DensityFunction& b, const char* op) {
  if (!(a.group() == b.group())) {
    throw Error(ErrorCode::kGroupMismatch,
                std::string(op) + ": groups differ (" + a.group().spec() + " vs " + b.group().spec() + ")");
  }
}

// Row-major coordinates for every index, used by the quadratic-time paths.
std::vector<std::int64_t> coordinate_table(const Group& g) {
  std::vector<std::int64_t> table(g.order() * g.rank());
  for (Index x = 0; x < g.order(); ++x) {
    for (std::size_t j = 0; j < g.rank(); ++j) {
      table[x * g.rank() + j] =
          static_cast<std::int64_t>((x / g.stride(j)) % static_cast<std::size_t>(g.moduli()[j]));
    }
  }
  return table;
}

// Direct double sum: out(gamma) = sum_x in(x) exp(sign 2 pi i <x, gamma>).
std::vector<cd> naive_character_sum(const Group& g, std::span<const cd> in, double sign) {
  const std::int64_t e = g.exponent();
  std::vector<cd> roots(static_cast<std::size_t>(e));
  for (std::int64_t t = 0; t < e; ++t) {
    roots[static_cast<std::size_t>(t)] =
        std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(e));
  }
  const auto coords = coordinate_table(g);
  const std::size_t k = g.rank();
  std::vector<std::int64_t> scale(k);
  for (std::size_t j = 0; j < k; ++j) scale[j] = e / g.moduli()[j];
  std::vector<cd> out(g.order());
  std::vector<std::int64_t> c(k);
  for (Index gamma = 0; gamma < g.order(); ++gamma) {
    for (std::size_t j = 0; j < k; ++j) c[j] = coords[gamma * k + j] * scale[j];
    cd acc{0.0, 0.0};
    for (Index x = 0; x < g.order(); ++x) {
      std::int64_t t = 0;
      for (std::size_t j = 0; j < k; ++j) t += coords[x * k + j] * c[j];
      acc += in[x] * roots[static_cast<std::size_t>(t % e)];
    }
    out[gamma] = acc;
  }
  return out;
}

}  // namespace

DensityFunction::DensityFunction(Group group, Side side)
    : group_(std::move(group)), side_(side), values_(group_.order(), value_type{0.0, 0.0}) {}

DensityFunction::DensityFunction(Group group, Side side, std::vector<value_type> values)
    : group_(std::move(group)), side_(side), values_(std::move(values)) {
  if (values_.size() != group_.order()) {
    throw Error(ErrorCode::kInvalidArgument, "density has " + std::to_string(values_.size()) +
                                                 " values, group order is " +
                                                 std::to_string(group_.order()));
  }
}

DensityFunction DensityFunction::from_real(Group group, Side side, std::span<const double> values) {
  std::vector<value_type> v(values.begin(), values.end());
  return DensityFunction(std::move(group), side, std::move(v));
}

std::vector<double> DensityFunction::real_part() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i].real();
  return out;
}

double DensityFunction::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double DensityFunction::max_abs_imag() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v.imag()));
  return m;
}

bool DensityFunction::is_real(double tol) const { return max_abs_imag() <= tol * (1.0 + max_abs()); }

DensityFunction& DensityFunction::operator+=(const DensityFunction& other) {
  require_same_group(*this, other, "operator+=");
  require_side(other, side_, "operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

DensityFunction& DensityFunction::operator-=(const DensityFunction& other) {
  require_same_group(*this, other, "operator-=");
  require_side(other, side_, "operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

DensityFunction& DensityFunction::operator*=(value_type scalar) {
  for (auto& v : values_) v *= scalar;
  return *this;
}

DensityFunction operator+(DensityFunction a, const DensityFunction& b) { return a += b; }
DensityFunction operator-(DensityFunction a, const DensityFunction& b) { return a -= b; }
DensityFunction operator*(DensityFunction a, DensityFunction::value_type scalar) { return a *= scalar; }

Measure::Measure(DensityFunction density) : density_(std::move(density)), mass_(0.0) {
  if (!density_.is_real(1e-9)) {
    throw Error(ErrorCode::kNotReal, "measure density is not real-valued");
  }
  for (auto& v : density_.values()) {
    if (v.real() < -1e-12) {
      throw Error(ErrorCode::kInvalidArgument, "measure density has a negative value " + std::to_string(v.real()));
    }
    v = {v.real(), 0.0};
    mass_ += v.real();
  }
}

bool Measure::is_probability(double tol) const { return std::abs(mass_ - 1.0) <= tol; }

DensityFunction indicator(const Group& g, const ElementSet& set) {
  DensityFunction f(g, Side::kPrimal);
  for (Index x : set) {
    if (x >= g.order()) throw Error(ErrorCode::kInvalidArgument, "set element outside the group");
    f[x] = 1.0;
  }
  return f;
}

DensityFunction point_mass(const Group& g, Index x) { return indicator(g, ElementSet{x}); }

Measure uniform_measure(const Group& g, const ElementSet& support) {
  if (support.empty()) throw Error(ErrorCode::kEmptySet, "uniform measure on an empty set");
  DensityFunction f = indicator(g, support);
  f *= 1.0 / static_cast<double>(support.size());
  return Measure(std::move(f));
}

DensityFunction dft(const DensityFunction& f, TransformMethod method) {
  require_side(f, Side::kPrimal, "dft");
  const Group& g = f.group();
  if (method == TransformMethod::kNaive) {
    return DensityFunction(g, Side::kDual, naive_character_sum(g, f.values(), -1.0));
  }
  std::vector<cd> data(f.values().begin(), f.values().end());
  detail::transform_axes(g, data, detail::Direction::kForward);
  return DensityFunction(g, Side::kDual, std::move(data));
}

DensityFunction idft(const DensityFunction& transform, TransformMethod method) {
  require_side(transform, Side::kDual, "idft");
  const Group& g = transform.group();
  std::vector<cd> data;
  if (method == TransformMethod::kNaive) {
    data = naive_character_sum(g, transform.values(), 1.0);
  } else {
    data.assign(transform.values().begin(), transform.values().end());
    detail::transform_axes(g, data, detail::Direction::kInverse);
  }
  const double scale = 1.0 / static_cast<double>(g.order());
  for (auto& v : data) v *= scale;
  return DensityFunction(g, Side::kPrimal, std::move(data));
}

DensityFunction convolve(const DensityFunction& f, const DensityFunction& h, TransformMethod method) {
  require_same_group(f, h, "convolve");
  require_side(f, Side::kPrimal, "convolve");
  require_side(h, Side::kPrimal, "convolve");
  const Group& g = f.group();
  if (method == TransformMethod::kNaive) {
    DensityFunction out(g, Side::kPrimal);
    for (Index y = 0; y < g.order(); ++y) {
      if (f[y] == cd{0.0, 0.0}) continue;
      for (Index z = 0; z < g.order(); ++z) out[g.add(y, z)] += f[y] * h[z];
    }
    return out;
  }
  DensityFunction ff = dft(f);
  const DensityFunction fh = dft(h);
  for (Index i = 0; i < g.order(); ++i) ff[i] *= fh[i];
  return idft(ff);
}

Measure convolve(const Measure& a, const Measure& b, TransformMethod method) {
  DensityFunction out = convolve(a.density(), b.density(), method);
  for (auto& v : out.values()) v = {std::max(v.real(), 0.0), 0.0};
  return Measure(std::move(out));
}

DensityFunction dual_convolve(const DensityFunction& f, const DensityFunction& h, TransformMethod method) {
  require_same_group(f, h, "dual_convolve");
  require_side(f, Side::kDual, "dual_convolve");
  require_side(h, Side::kDual, "dual_convolve");
  const Group& g = f.group();
  const double scale = 1.0 / static_cast<double>(g.order());
  if (method == TransformMethod::kNaive) {
    DensityFunction out(g, Side::kDual);
    for (Index gamma = 0; gamma < g.order(); ++gamma) {
      cd acc{0.0, 0.0};
      for (Index lambda = 0; lambda < g.order(); ++lambda) acc += f[g.subtract(gamma, lambda)] * h[lambda];
      out[gamma] = acc * scale;
    }
    return out;
  }
  // The dual convolution of two transforms is the transform of the pointwise
  // product of their inverses.
  DensityFunction pf = idft(f);
  const DensityFunction ph = idft(h);
  for (Index i = 0; i < g.order(); ++i) pf[i] *= ph[i];
  return dft(pf);
}

DensityFunction dual_convolution_power(const DensityFunction& f, int r, TransformMethod method) {
  if (r < 1) throw Error(ErrorCode::kInvalidArgument, "convolution power needs r >= 1");
  require_side(f, Side::kDual, "dual_convolution_power");
  DensityFunction acc = f;
  for (int i = 1; i < r; ++i) acc = dual_convolve(f, acc, method);
  return acc;
}

double algebra_norm(const DensityFunction& f) {
  require_side(f, Side::kPrimal, "algebra_norm");
  return l1_norm(dft(f));
}

double lp_norm(const DensityFunction& f, double p) {
  const double weight = f.side() == Side::kDual ? 1.0 / static_cast<double>(f.group().order()) : 1.0;
  if (std::isinf(p)) return f.max_abs();
  if (p != 1.0 && p != 2.0 && p != 4.0) {
    throw Error(ErrorCode::kInvalidArgument, "unsupported exponent p = " + std::to_string(p));
  }
  double acc = 0.0;
  for (const auto& v : f.values()) acc += std::pow(std::abs(v), p);
  return std::pow(acc * weight, 1.0 / p);
}

double l1_norm(const DensityFunction& f) { return lp_norm(f, 1.0); }
double l2_norm(const DensityFunction& f) { return lp_norm(f, 2.0); }
double linf_norm(const DensityFunction& f) { return f.max_abs(); }

std::complex<double> inner_product(const DensityFunction& f, const DensityFunction& g) {
  require_same_group(f, g, "inner_product");
  require_side(g, f.side(), "inner_product");
  cd acc{0.0, 0.0};
  for (Index i = 0; i < f.size(); ++i) acc += f[i] * std::conj(g[i]);
  if (f.side() == Side::kDual) acc /= static_cast<double>(f.group().order());
  return acc;
}

double total_variation(const DensityFunction& f, const DensityFunction& g) {
  require_same_group(f, g, "total_variation");
  double acc = 0.0;
  for (Index i = 0; i < f.size(); ++i) acc += std::abs(f[i] - g[i]);
  return acc;
}

double total_variation(const Measure& mu, const Measure& nu) {
  return total_variation(mu.density(), nu.density());
}

DensityFunction translate(const DensityFunction& f, Index y) {
  const Group& g = f.group();
  if (y >= g.order()) throw Error(ErrorCode::kInvalidArgument, "translation outside the group");
  DensityFunction out(g, f.side());
  for (Index x = 0; x < g.order(); ++x) out[g.add(x, y)] = f[x];
  return out;
}

Measure translate(const Measure& mu, Index y) { return Measure(translate(mu.density(), y)); }

double sup_distance(const DensityFunction& f, const DensityFunction& g) {
  require_same_group(f, g, "sup_distance");
  double m = 0.0;
  for (Index i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

}  // namespace coslab
