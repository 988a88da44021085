#include "fft.hpp"

#include <array>
#include <bit>
#include <numbers>

namespace coslab::detail {

namespace {

std::vector<std::size_t> factorize(std::size_t n) {
  std::vector<std::size_t> out;
  // Prefer radix 4 where possible: fewer passes over the data.
  while (n % 4 == 0) {
    out.push_back(4);
    n /= 4;
  }
  for (std::size_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<cd> make_twiddles(std::size_t n, Direction direction) {
  const double sign = direction == Direction::kForward ? -1.0 : 1.0;
  std::vector<cd> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  }
  return w;
}

}  // namespace

struct FftPlan::Bluestein {
  std::size_t padded = 0;
  std::vector<cd> chirp;           // exp(sign * pi i k^2 / n)
  std::vector<cd> kernel_spectrum;  // forward transform of conj(chirp) laid out circularly
  std::unique_ptr<FftPlan> forward;
  std::unique_ptr<FftPlan> inverse;
};

FftPlan::FftPlan(std::size_t n, Direction direction) : n_(n), direction_(direction) {
  factors_ = factorize(n);
  bool direct = true;
  for (std::size_t f : factors_) direct = direct && f <= kMaxDirectRadix;
  if (direct) {
    twiddles_ = make_twiddles(n, direction);
    return;
  }
  auto b = std::make_unique<Bluestein>();
  b->padded = std::bit_ceil(2 * n - 1);
  const double sign = direction == Direction::kForward ? -1.0 : 1.0;
  b->chirp.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the angle argument small and exact.
    const std::size_t k2 = (k * k) % (2 * n);
    b->chirp[k] = std::polar(1.0, sign * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n));
  }
  b->forward = std::make_unique<FftPlan>(b->padded, Direction::kForward);
  b->inverse = std::make_unique<FftPlan>(b->padded, Direction::kInverse);
  std::vector<cd> kernel(b->padded, cd{0.0, 0.0});
  kernel[0] = std::conj(b->chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    kernel[k] = kernel[b->padded - k] = std::conj(b->chirp[k]);
  }
  b->forward->run_contiguous(kernel);
  b->kernel_spectrum = std::move(kernel);
  bluestein_ = std::move(b);
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

void FftPlan::mixed_radix(const cd* in, std::size_t in_stride, cd* out, std::size_t n,
                          std::size_t level) const {
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  const std::size_t p = factors_[level];
  const std::size_t m = n / p;
  for (std::size_t r = 0; r < p; ++r) {
    mixed_radix(in + r * in_stride, in_stride * p, out + r * m, m, level + 1);
  }
  const std::size_t step = n_ / n;
  std::array<cd, kMaxDirectRadix> t{};
  if (p == 2) {
    for (std::size_t k = 0; k < m; ++k) {
      const cd a = out[k];
      const cd b = out[m + k] * twiddles_[k * step];
      out[k] = a + b;
      out[m + k] = a - b;
    }
    return;
  }
  if (p == 4) {
    // w_4 = -i forward, +i inverse.
    const cd j = direction_ == Direction::kForward ? cd{0.0, -1.0} : cd{0.0, 1.0};
    for (std::size_t k = 0; k < m; ++k) {
      const cd a0 = out[k];
      const cd a1 = out[m + k] * twiddles_[k * step];
      const cd a2 = out[2 * m + k] * twiddles_[2 * k * step];
      const cd a3 = out[3 * m + k] * twiddles_[3 * k * step];
      const cd s02 = a0 + a2;
      const cd d02 = a0 - a2;
      const cd s13 = a1 + a3;
      const cd d13 = (a1 - a3) * j;
      out[k] = s02 + s13;
      out[m + k] = d02 + d13;
      out[2 * m + k] = s02 - s13;
      out[3 * m + k] = d02 - d13;
    }
    return;
  }
  const std::size_t root_step = m * step;  // w_p = W_N^(N/p)
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t r = 0; r < p; ++r) t[r] = out[r * m + k] * twiddles_[(r * k * step) % n_];
    for (std::size_t q = 0; q < p; ++q) {
      cd acc = t[0];
      std::size_t e = 0;
      for (std::size_t r = 1; r < p; ++r) {
        e += q * root_step;
        e %= n_;
        acc += t[r] * twiddles_[e];
      }
      out[q * m + k] = acc;
    }
  }
}

void FftPlan::run_contiguous(std::vector<cd>& buffer) const {
  if (n_ <= 1) return;
  if (!bluestein_) {
    std::vector<cd> out(n_);
    mixed_radix(buffer.data(), 1, out.data(), n_, 0);
    buffer.swap(out);
    return;
  }
  const Bluestein& b = *bluestein_;
  std::vector<cd> work(b.padded, cd{0.0, 0.0});
  for (std::size_t k = 0; k < n_; ++k) work[k] = buffer[k] * b.chirp[k];
  b.forward->run_contiguous(work);
  for (std::size_t k = 0; k < b.padded; ++k) work[k] *= b.kernel_spectrum[k];
  b.inverse->run_contiguous(work);
  const double scale = 1.0 / static_cast<double>(b.padded);
  for (std::size_t k = 0; k < n_; ++k) buffer[k] = work[k] * b.chirp[k] * scale;
}

void FftPlan::execute(cd* data, std::size_t stride) const {
  if (n_ <= 1) return;
  std::vector<cd> buffer(n_);
  for (std::size_t k = 0; k < n_; ++k) buffer[k] = data[k * stride];
  run_contiguous(buffer);
  for (std::size_t k = 0; k < n_; ++k) data[k * stride] = buffer[k];
}

void transform_axes(const Group& g, std::span<cd> values, Direction direction) {
  for (std::size_t axis = 0; axis < g.rank(); ++axis) {
    const auto n = static_cast<std::size_t>(g.moduli()[axis]);
    if (n <= 1) continue;
    const FftPlan plan(n, direction);
    const std::size_t stride = g.stride(axis);
    const std::size_t block = n * stride;
    for (std::size_t outer = 0; outer < g.order(); outer += block) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        plan.execute(values.data() + outer + inner, stride);
      }
    }
  }
}

}  // namespace coslab::detail
