#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "coslab/group.hpp"

namespace coslab::detail {

using cd = std::complex<double>;

enum class Direction { kForward, kInverse };

// Unnormalized 1-D DFT of length n: forward uses exp(-2 pi i jk / n).
// Lengths whose prime factors are all <= kMaxDirectRadix run as recursive
// mixed-radix Cooley-Tukey; anything else goes through Bluestein's chirp-z
// reduction to a power-of-two transform.
class FftPlan {
 public:
  static constexpr std::size_t kMaxDirectRadix = 64;

  FftPlan(std::size_t n, Direction direction);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;

  std::size_t size() const { return n_; }
  bool uses_bluestein() const { return bluestein_ != nullptr; }

  // In-place on data[0], data[stride], ..., data[(n-1)*stride].
  void execute(cd* data, std::size_t stride) const;

 private:
  struct Bluestein;

  void mixed_radix(const cd* in, std::size_t in_stride, cd* out, std::size_t n, std::size_t level) const;
  void run_contiguous(std::vector<cd>& buffer) const;

  std::size_t n_;
  Direction direction_;
  std::vector<std::size_t> factors_;
  std::vector<cd> twiddles_;
  std::unique_ptr<Bluestein> bluestein_;
};

// Applies the 1-D transform along every axis of the row-major layout.
void transform_axes(const Group& g, std::span<cd> values, Direction direction);

}  // namespace coslab::detail
