#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "cmc/detail/fft.hpp"
#include "cmc/errors.hpp"
#include "cmc/timeseries.hpp"

namespace cmc {

enum class Taper { hann, hamming, boxcar };

struct SpectralConfig {
  // 0 picks min(256, largest power of two <= N/8), which keeps at least
  // eight averaged segments at the default overlap.
  std::size_t segment_length = 0;
  double overlap_fraction = 0.5;
  Taper window = Taper::hann;
  bool detrend_per_segment = true;  // remove the segment mean before tapering

  std::size_t resolve_segment_length(std::size_t n_samples) const {
    if (segment_length != 0) return segment_length;
    std::size_t p = 8;
    while (p * 2 <= n_samples / 8) p *= 2;
    return std::min<std::size_t>(256, p);
  }

  void validate() const {
    if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0))
      throw invalid_argument("SpectralConfig: overlap_fraction must lie in [0, 1)");
  }
};

// One-sided spectrum on frequencies j * sample_rate / segment_length.
// Cross-spectra are complex; power spectra come out with exactly zero
// imaginary part and nonnegative real part.
struct SpectralEstimate {
  std::vector<double> frequencies;           // Hz
  std::vector<std::complex<double>> values;  // density units, 1/Hz scaling
  std::size_t segment_count = 0;
};

struct CoherenceCurve {
  std::vector<double> frequencies;
  std::vector<double> coherence;             // clamped to [0, 1]
  std::vector<std::uint8_t> degenerate;      // 1 where a zero PSD forced the bin to 0
};

namespace detail {

inline std::vector<double> make_taper(Taper window, std::size_t n) {
  std::vector<double> win(n, 1.0);
  switch (window) {
    case Taper::boxcar:
      break;
    case Taper::hann:
      for (std::size_t i = 0; i < n; ++i)
        win[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(n));
      break;
    case Taper::hamming:
      for (std::size_t i = 0; i < n; ++i)
        win[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                        static_cast<double>(n));
      break;
  }
  return win;
}

struct WelchSpectra {
  std::vector<double> frequencies;
  std::vector<std::complex<double>> sab, saa, sbb;
  std::size_t segment_count = 0;
};

inline void load_segment(const TimeSeries& s, std::size_t offset, const std::vector<double>& win,
                         bool detrend, std::vector<std::complex<double>>& out) {
  const std::size_t n = win.size();
  double m = 0.0;
  if (detrend) {
    for (std::size_t i = 0; i < n; ++i) m += s[offset + i];
    m /= static_cast<double>(n);
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = {(s[offset + i] - m) * win[i], 0.0};
}

// Welch-averaged auto- and cross-spectra of an equal-length pair, one-sided,
// window-power normalized. Segment order is fixed, so results are
// bit-reproducible and welch_csd(a, a) coincides with welch_psd(a) exactly.
inline WelchSpectra welch_spectra(const TimeSeries& a, const TimeSeries& b,
                                  const SpectralConfig& cfg) {
  cfg.validate();
  if (a.size() != b.size()) throw invalid_argument("welch: series lengths differ");
  if (a.sample_rate() != b.sample_rate())
    throw invalid_argument("welch: sample rates differ");
  const std::size_t n = a.size();
  const std::size_t nseg = cfg.resolve_segment_length(n);
  if (nseg < 8) throw invalid_argument("welch: segment_length must be at least 8");
  if (n < nseg) throw invalid_argument("welch: series shorter than one segment");
  std::size_t hop =
      static_cast<std::size_t>(static_cast<double>(nseg) * (1.0 - cfg.overlap_fraction));
  if (hop == 0) hop = 1;
  const std::size_t count = (n - nseg) / hop + 1;
  if (count < 2)
    throw invalid_argument("welch: need at least 2 segments; single-segment coherence "
                           "is identically 1");

  const std::vector<double> win = make_taper(cfg.window, nseg);
  double window_power = 0.0;
  for (const double w : win) window_power += w * w;

  const std::size_t bins = nseg / 2 + 1;
  WelchSpectra out;
  out.segment_count = count;
  out.frequencies.resize(bins);
  for (std::size_t j = 0; j < bins; ++j)
    out.frequencies[j] =
        static_cast<double>(j) * a.sample_rate() / static_cast<double>(nseg);
  out.sab.assign(bins, {0.0, 0.0});
  out.saa.assign(bins, {0.0, 0.0});
  out.sbb.assign(bins, {0.0, 0.0});

  const bool same = &a == &b;
  Fft fft(nseg);
  std::vector<std::complex<double>> fa(nseg), fb(nseg);
  for (std::size_t s = 0; s < count; ++s) {
    const std::size_t offset = s * hop;
    load_segment(a, offset, win, cfg.detrend_per_segment, fa);
    fft.forward(fa);
    const std::vector<std::complex<double>>* fbp = &fa;
    if (!same) {
      load_segment(b, offset, win, cfg.detrend_per_segment, fb);
      fft.forward(fb);
      fbp = &fb;
    }
    for (std::size_t j = 0; j < bins; ++j) {
      const std::complex<double> va = fa[j];
      const std::complex<double> vb = (*fbp)[j];
      out.sab[j] += std::conj(va) * vb;
      out.saa[j] += std::conj(va) * va;
      out.sbb[j] += std::conj(vb) * vb;
    }
  }

  const double base = 1.0 / (a.sample_rate() * window_power * static_cast<double>(count));
  const bool even = nseg % 2 == 0;
  for (std::size_t j = 0; j < bins; ++j) {
    const bool edge = j == 0 || (even && j == bins - 1);
    const double scale = edge ? base : 2.0 * base;  // one-sided folding
    out.sab[j] *= scale;
    out.saa[j] *= scale;
    out.sbb[j] *= scale;
  }
  return out;
}

}  // namespace detail

inline SpectralEstimate welch_psd(const TimeSeries& series, const SpectralConfig& cfg = {}) {
  auto spectra = detail::welch_spectra(series, series, cfg);
  return {std::move(spectra.frequencies), std::move(spectra.sab), spectra.segment_count};
}

inline SpectralEstimate welch_csd(const TimeSeries& a, const TimeSeries& b,
                                  const SpectralConfig& cfg = {}) {
  auto spectra = detail::welch_spectra(a, b, cfg);
  return {std::move(spectra.frequencies), std::move(spectra.sab), spectra.segment_count};
}

// coh(f) = |S_ab(f)| / sqrt(S_aa(f) S_bb(f)), clamped to [0, 1]. Bins with a
// vanishing power spectrum on either side are reported as 0 and flagged.
inline CoherenceCurve coherence(const TimeSeries& a, const TimeSeries& b,
                                const SpectralConfig& cfg = {}) {
  const auto spectra = detail::welch_spectra(a, b, cfg);
  CoherenceCurve curve;
  curve.frequencies = spectra.frequencies;
  const std::size_t bins = spectra.frequencies.size();
  curve.coherence.resize(bins);
  curve.degenerate.assign(bins, 0);
  for (std::size_t j = 0; j < bins; ++j) {
    const double denom2 = spectra.saa[j].real() * spectra.sbb[j].real();
    if (denom2 <= 0.0) {
      curve.coherence[j] = 0.0;
      curve.degenerate[j] = 1;
      continue;
    }
    const double value = std::abs(spectra.sab[j]) / std::sqrt(denom2);
    curve.coherence[j] = std::min(value, 1.0);
  }
  return curve;
}

}  // namespace cmc
