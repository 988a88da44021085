#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "coslab/group.hpp"
#include "coslab/tolerance.hpp"

namespace coslab {

// Functions on G live on the primal side with counting measure; functions on
// the dual group live on the dual side, where Haar measure gives every
// character mass 1/|G|. Norms and convolutions below follow that split.
enum class Side { kPrimal, kDual };

std::string_view to_string(Side side);

class DensityFunction {
 public:
  using value_type = std::complex<double>;

  DensityFunction(Group group, Side side);
  DensityFunction(Group group, Side side, std::vector<value_type> values);
  static DensityFunction from_real(Group group, Side side, std::span<const double> values);

  const Group& group() const { return group_; }
  Side side() const { return side_; }
  std::size_t size() const { return values_.size(); }

  std::span<const value_type> values() const { return values_; }
  std::span<value_type> values() { return values_; }
  const value_type& operator[](Index i) const { return values_[i]; }
  value_type& operator[](Index i) { return values_[i]; }

  std::vector<double> real_part() const;
  double max_abs() const;
  double max_abs_imag() const;
  // max |Im| <= tol * (1 + max modulus).
  bool is_real(double tol = 1e-9) const;

  DensityFunction& operator+=(const DensityFunction& other);
  DensityFunction& operator-=(const DensityFunction& other);
  DensityFunction& operator*=(value_type scalar);

 private:
  Group group_;
  Side side_;
  std::vector<value_type> values_;
};

DensityFunction operator+(DensityFunction a, const DensityFunction& b);
DensityFunction operator-(DensityFunction a, const DensityFunction& b);
DensityFunction operator*(DensityFunction a, DensityFunction::value_type scalar);

// Nonnegative real density; probability measures have mass 1.
class Measure {
 public:
  // Throws if any value has real part below -1e-12 or a non-negligible
  // imaginary part.
  explicit Measure(DensityFunction density);

  const DensityFunction& density() const { return density_; }
  const Group& group() const { return density_.group(); }
  double mass() const { return mass_; }
  bool is_probability(double tol = 1e-9) const;
  double operator[](Index i) const { return density_[i].real(); }

 private:
  DensityFunction density_;
  double mass_;
};

enum class TransformMethod { kFast, kNaive };

DensityFunction indicator(const Group& g, const ElementSet& set);
DensityFunction point_mass(const Group& g, Index x);
Measure uniform_measure(const Group& g, const ElementSet& support);

// hat f(gamma) = sum_x f(x) conj(gamma(x)).
DensityFunction dft(const DensityFunction& f, TransformMethod method = TransformMethod::kFast);
// f(x) = |G|^-1 sum_gamma F(gamma) gamma(x).
DensityFunction idft(const DensityFunction& transform, TransformMethod method = TransformMethod::kFast);

// (f * g)(x) = sum_y f(y) g(x - y) on the primal side.
DensityFunction convolve(const DensityFunction& f, const DensityFunction& g,
                         TransformMethod method = TransformMethod::kFast);
Measure convolve(const Measure& a, const Measure& b, TransformMethod method = TransformMethod::kFast);

// (F * G)(gamma) = |G|^-1 sum_lambda F(gamma - lambda) G(lambda).
DensityFunction dual_convolve(const DensityFunction& f, const DensityFunction& g,
                              TransformMethod method = TransformMethod::kFast);
// F^(1) = F, F^(r+1) = F * F^(r). r = 0 is rejected.
DensityFunction dual_convolution_power(const DensityFunction& f, int r,
                                       TransformMethod method = TransformMethod::kFast);

// ||f||_A(G) = integral of |hat f| against probability Haar measure.
double algebra_norm(const DensityFunction& f);

// Side-aware norms: counting measure on the primal side, probability Haar on
// the dual side. `p` must be 1, 2, 4 or infinity.
double lp_norm(const DensityFunction& f, double p);
double l1_norm(const DensityFunction& f);
double l2_norm(const DensityFunction& f);
double linf_norm(const DensityFunction& f);

// <f, g> with the side's measure.
std::complex<double> inner_product(const DensityFunction& f, const DensityFunction& g);

// sum_x |mu(x) - nu(x)|.
double total_variation(const Measure& mu, const Measure& nu);
double total_variation(const DensityFunction& f, const DensityFunction& g);

// (y + f)(x) = f(x - y), so translate(mu_B, y) = mu_{y + B}.
DensityFunction translate(const DensityFunction& f, Index y);
Measure translate(const Measure& mu, Index y);

// sup_x |f(x) - g(x)|.
double sup_distance(const DensityFunction& f, const DensityFunction& g);

}  // namespace coslab
