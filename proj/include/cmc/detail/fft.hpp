#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "cmc/errors.hpp"

namespace cmc::detail {

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Forward complex DFT, X[k] = sum_n x[n] e^{-2pi i nk/N}, no normalization.
// Power-of-two sizes run an iterative radix-2 transform; other sizes go
// through Bluestein's chirp-z reduction to a power-of-two convolution.
// All tables are fixed at construction, so repeated transforms are cheap and
// bit-reproducible.
class Fft {
 public:
  explicit Fft(std::size_t n) : n_(n) {
    if (n_ == 0) throw invalid_argument("Fft: size must be positive");
    if (is_pow2(n_)) {
      pow2_n_ = n_;
      init_pow2_tables();
      return;
    }
    m_ = 1;
    while (m_ < 2 * n_ - 1) m_ <<= 1;
    pow2_n_ = m_;
    init_pow2_tables();
    chirp_.resize(n_);
    const std::uint64_t mod = 2 * static_cast<std::uint64_t>(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      const std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % mod;
      const double angle =
          -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n_);
      chirp_[k] = std::polar(1.0, angle);
    }
    std::vector<std::complex<double>> b(m_, {0.0, 0.0});
    b[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n_; ++k) b[k] = b[m_ - k] = std::conj(chirp_[k]);
    transform_pow2(b);
    chirp_fft_ = std::move(b);
  }

  std::size_t size() const noexcept { return n_; }

  void forward(std::vector<std::complex<double>>& data) const {
    if (data.size() != n_) throw invalid_argument("Fft: buffer size mismatch");
    if (m_ == 0) {
      transform_pow2(data);
      return;
    }
    std::vector<std::complex<double>> a(m_, {0.0, 0.0});
    for (std::size_t i = 0; i < n_; ++i) a[i] = data[i] * chirp_[i];
    transform_pow2(a);
    for (std::size_t i = 0; i < m_; ++i) a[i] *= chirp_fft_[i];
    // inverse transform of size m via conj-forward-conj
    for (auto& v : a) v = std::conj(v);
    transform_pow2(a);
    const double scale = 1.0 / static_cast<double>(m_);
    for (std::size_t k = 0; k < n_; ++k) data[k] = std::conj(a[k]) * scale * chirp_[k];
  }

 private:
  void init_pow2_tables() {
    const std::size_t n = pow2_n_;
    bitrev_.resize(n);
    bitrev_[0] = 0;
    for (std::size_t i = 1; i < n; ++i)
      bitrev_[i] = (bitrev_[i >> 1] >> 1) | ((i & 1) ? n >> 1 : 0);
    twiddles_.resize(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j)
      twiddles_[j] = std::polar(
          1.0, -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));
  }

  void transform_pow2(std::vector<std::complex<double>>& data) const {
    const std::size_t n = pow2_n_;
    for (std::size_t i = 0; i < n; ++i)
      if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t half = len >> 1;
      const std::size_t stride = n / len;
      for (std::size_t base = 0; base < n; base += len) {
        for (std::size_t j = 0; j < half; ++j) {
          const std::complex<double> w = twiddles_[j * stride];
          const std::complex<double> u = data[base + j];
          const std::complex<double> v = data[base + j + half] * w;
          data[base + j] = u + v;
          data[base + j + half] = u - v;
        }
      }
    }
  }

  std::size_t n_;
  std::size_t pow2_n_ = 0;
  std::size_t m_ = 0;  // Bluestein convolution size; 0 when n_ is a power of two
  std::vector<std::size_t> bitrev_;
  std::vector<std::complex<double>> twiddles_;
  std::vector<std::complex<double>> chirp_;
  std::vector<std::complex<double>> chirp_fft_;
};

}  // namespace cmc::detail
