#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cmc/crossmap.hpp"
#include "cmc/detail/parallel.hpp"
#include "cmc/embedding.hpp"
#include "cmc/errors.hpp"
#include "cmc/spectral.hpp"
#include "cmc/timeseries.hpp"

namespace cmc {

// Shift axis in samples. Negative shifts displace the candidate cause
// earlier than the candidate effect (the causal side); positive shifts are
// the anti-causal side where Granger-style predictability shows up.
struct ShiftRange {
  std::int64_t min_shift = -20;
  std::int64_t max_shift = 20;
  std::int64_t step = 1;

  void validate() const {
    if (step < 1) throw invalid_argument("ShiftRange: step must be >= 1");
    if (min_shift > 0 || max_shift < 0)
      throw invalid_argument("ShiftRange: range must bracket zero (min <= 0 <= max)");
  }

  std::vector<std::int64_t> shifts() const {
    validate();
    std::vector<std::int64_t> out;
    for (std::int64_t s = min_shift; s <= max_shift; s += step) out.push_back(s);
    return out;
  }

  std::int64_t max_abs() const { return std::max(max_shift, -min_shift); }
};

struct CcmCurve {
  std::vector<std::int64_t> shifts;
  std::vector<double> scores;
  std::string direction_label;
};

// Shift x frequency matrix of coherence values; the central result object.
struct CmcSurface {
  std::vector<std::int64_t> shifts;
  std::vector<double> frequencies;
  std::vector<double> values;            // row-major, shifts.size() x frequencies.size()
  std::vector<std::uint8_t> degenerate;  // same shape, 1 where a bin was degenerate
  std::string direction_label;
  bool normalized = false;

  double at(std::size_t shift_idx, std::size_t freq_idx) const {
    return values[shift_idx * frequencies.size() + freq_idx];
  }
  std::span<const double> shift_row(std::size_t shift_idx) const {
    return {values.data() + shift_idx * frequencies.size(), frequencies.size()};
  }
  // Copy of one frequency column over all shifts.
  std::vector<double> band(std::size_t freq_idx) const {
    std::vector<double> out(shifts.size());
    for (std::size_t i = 0; i < shifts.size(); ++i) out[i] = at(i, freq_idx);
    return out;
  }
};

// Overlapping aligned segments where y is displaced by `shift` samples
// relative to x; negative shift aligns earlier y against later x.
inline std::pair<TimeSeries, TimeSeries> shift_pair(const TimeSeries& x, const TimeSeries& y,
                                                    std::int64_t shift) {
  if (x.size() != y.size()) throw invalid_argument("shift_pair: series lengths differ");
  if (x.sample_rate() != y.sample_rate())
    throw invalid_argument("shift_pair: sample rates differ");
  const auto n = static_cast<std::int64_t>(x.size());
  const std::int64_t overlap = n - (shift < 0 ? -shift : shift);
  if (overlap < 1) throw invalid_argument("shift_pair: shift leaves no overlap");
  const std::int64_t xs = shift < 0 ? -shift : 0;
  const std::int64_t ys = shift > 0 ? shift : 0;
  const double fs = x.sample_rate();
  std::vector<double> xv(x.samples().begin() + xs, x.samples().begin() + xs + overlap);
  std::vector<double> yv(y.samples().begin() + ys, y.samples().begin() + ys + overlap);
  return {TimeSeries(std::move(xv), fs, x.t0() + static_cast<double>(xs) / fs),
          TimeSeries(std::move(yv), fs, y.t0() + static_cast<double>(ys) / fs)};
}

namespace detail {

// Cross-mapping at one shift over a fixed-length aligned window, so that
// every shift in a scan sees a manifold of identical size (no
// length-dependent bias along the shift axis).
struct ShiftPrediction {
  std::vector<double> prediction;
  std::vector<double> truth;
};

inline ShiftPrediction cross_map_at_shift(const TimeSeries& x, const TimeSeries& y,
                                          std::int64_t shift, std::int64_t common_length,
                                          const EmbeddingConfig& cfg,
                                          std::size_t library_length, std::size_t k,
                                          std::int64_t exclusion_radius) {
  const std::int64_t xs = shift < 0 ? -shift : 0;
  const std::int64_t ys = shift > 0 ? shift : 0;
  const double fs = x.sample_rate();
  TimeSeries xp(std::vector<double>(x.samples().begin() + xs,
                                    x.samples().begin() + xs + common_length),
                fs);
  TimeSeries yp(std::vector<double>(y.samples().begin() + ys,
                                    y.samples().begin() + ys + common_length),
                fs);
  const DelayEmbedding manifold = embed(xp, cfg);
  if (library_length > manifold.rows())
    throw invalid_argument("shift scan: library_length exceeds the manifold rows of the "
                           "trimmed overlap");
  const DelayEmbedding* library = &manifold;
  std::optional<DelayEmbedding> prefix_store;
  if (library_length && library_length < manifold.rows()) {
    prefix_store.emplace(manifold.prefix(library_length));
    library = &*prefix_store;
  }
  const CrossMapModel model = find_neighbors(*library, manifold, k, exclusion_radius);
  Prediction pred = cross_map(model, yp);
  ShiftPrediction out;
  out.truth.resize(pred.values.size());
  for (std::size_t i = 0; i < out.truth.size(); ++i)
    out.truth[i] = yp[static_cast<std::size_t>(pred.target_time_index[i])];
  out.prediction = std::move(pred.values);
  return out;
}

struct ScanResult {
  CcmCurve ccm;
  CmcSurface cmc;
};

inline ScanResult scan_shifts(const TimeSeries& x, const TimeSeries& y,
                              const EmbeddingConfig& cfg, const ShiftRange& range,
                              const SpectralConfig& scfg, std::size_t library_length,
                              const std::string& label, std::size_t k,
                              std::int64_t exclusion_radius, unsigned threads, bool want_ccm,
                              bool want_cmc) {
  cfg.validate();
  range.validate();
  if (x.size() != y.size()) throw invalid_argument("shift scan: series lengths differ");
  if (x.sample_rate() != y.sample_rate())
    throw invalid_argument("shift scan: sample rates differ");
  const auto n = static_cast<std::int64_t>(x.size());
  const std::int64_t common = n - range.max_abs();
  if (common <= static_cast<std::int64_t>(cfg.window()) + 1)
    throw invalid_argument("shift scan: overlap after the largest shift is too short "
                           "for the embedding window");
  const std::size_t kk = k ? k : default_neighbor_count(cfg);
  const std::vector<std::int64_t> shifts = range.shifts();
  const double fs = x.sample_rate();

  ScanResult result;
  result.ccm.direction_label = label;
  result.cmc.direction_label = label;
  result.ccm.shifts = shifts;
  result.cmc.shifts = shifts;
  if (want_ccm) result.ccm.scores.resize(shifts.size());

  std::vector<std::vector<double>> rows(want_cmc ? shifts.size() : 0);
  std::vector<std::vector<std::uint8_t>> flags(want_cmc ? shifts.size() : 0);
  std::vector<double> frequencies;

  // Resolve the frequency axis once from the common prediction length.
  if (want_cmc) {
    const std::size_t pred_len = static_cast<std::size_t>(common) - cfg.window();
    const std::size_t nseg = scfg.resolve_segment_length(pred_len);
    const std::size_t bins = nseg / 2 + 1;
    frequencies.resize(bins);
    for (std::size_t j = 0; j < bins; ++j)
      frequencies[j] = static_cast<double>(j) * fs / static_cast<double>(nseg);
  }

  parallel_for(shifts.size(), threads, [&](std::size_t i) {
    const ShiftPrediction sp = cross_map_at_shift(x, y, shifts[i], common, cfg,
                                                  library_length, kk, exclusion_radius);
    if (want_ccm) result.ccm.scores[i] = pearson_r2(sp.prediction, sp.truth);
    if (want_cmc) {
      TimeSeries truth(sp.truth, fs);
      TimeSeries prediction(sp.prediction, fs);
      CoherenceCurve curve = coherence(truth, prediction, scfg);
      rows[i] = std::move(curve.coherence);
      flags[i] = std::move(curve.degenerate);
    }
  });

  if (want_cmc) {
    result.cmc.frequencies = std::move(frequencies);
    const std::size_t bins = result.cmc.frequencies.size();
    result.cmc.values.resize(shifts.size() * bins);
    result.cmc.degenerate.resize(shifts.size() * bins);
    for (std::size_t i = 0; i < shifts.size(); ++i) {
      if (rows[i].size() != bins)
        throw internal_error("shift scan: inconsistent frequency axis across shifts");
      std::copy(rows[i].begin(), rows[i].end(), result.cmc.values.begin() + i * bins);
      std::copy(flags[i].begin(), flags[i].end(), result.cmc.degenerate.begin() + i * bins);
    }
  }
  return result;
}

}  // namespace detail

// Cross-mapping quality as a function of time shift. The convention is
// fixed: x is embedded and the shifted y is predicted, so a converging score
// supports y -> x; pass direction_label accordingly when swapping arguments.
inline CcmCurve ccm_function(const TimeSeries& x, const TimeSeries& y,
                             const EmbeddingConfig& cfg, const ShiftRange& range,
                             std::size_t library_length = 0,
                             std::string direction_label = "y->x", std::size_t k = 0,
                             std::int64_t exclusion_radius = 0, unsigned threads = 0) {
  return detail::scan_shifts(x, y, cfg, range, SpectralConfig{}, library_length,
                             direction_label, k, exclusion_radius, threads, true, false)
      .ccm;
}

// The 2-D shift- and frequency-dependent cross-mapping coherence surface.
inline CmcSurface cmc_surface(const TimeSeries& x, const TimeSeries& y,
                              const EmbeddingConfig& cfg, const ShiftRange& range,
                              const SpectralConfig& scfg = {},
                              std::string direction_label = "y->x", std::size_t k = 0,
                              std::int64_t exclusion_radius = 0, unsigned threads = 0) {
  return detail::scan_shifts(x, y, cfg, range, scfg, 0, direction_label, k,
                             exclusion_radius, threads, false, true)
      .cmc;
}

// Rescales every frequency column to span [0, 1]; constant columns map to
// zero. Idempotent.
inline CmcSurface normalize_per_band(const CmcSurface& surface) {
  CmcSurface out = surface;
  const std::size_t bins = surface.frequencies.size();
  const std::size_t rows = surface.shifts.size();
  for (std::size_t j = 0; j < bins; ++j) {
    double lo = surface.at(0, j), hi = surface.at(0, j);
    for (std::size_t i = 1; i < rows; ++i) {
      lo = std::min(lo, surface.at(i, j));
      hi = std::max(hi, surface.at(i, j));
    }
    for (std::size_t i = 0; i < rows; ++i) {
      const std::size_t idx = i * bins + j;
      out.values[idx] = hi > lo ? (surface.values[idx] - lo) / (hi - lo) : 0.0;
    }
  }
  out.normalized = true;
  return out;
}

// Elementwise mean over surfaces with identical axes and normalization state.
inline CmcSurface average_surfaces(std::span<const CmcSurface> surfaces) {
  if (surfaces.empty()) throw invalid_argument("average_surfaces: no input surfaces");
  const CmcSurface& first = surfaces.front();
  CmcSurface out = first;
  for (std::size_t s = 1; s < surfaces.size(); ++s) {
    const CmcSurface& other = surfaces[s];
    if (other.shifts != first.shifts || other.frequencies != first.frequencies)
      throw invalid_argument("average_surfaces: axis mismatch");
    if (other.normalized != first.normalized)
      throw invalid_argument("average_surfaces: normalization state mismatch");
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += other.values[i];
    for (std::size_t i = 0; i < out.degenerate.size(); ++i)
      out.degenerate[i] = out.degenerate[i] || other.degenerate[i];
  }
  const double inv = 1.0 / static_cast<double>(surfaces.size());
  for (double& v : out.values) v *= inv;
  return out;
}

}  // namespace cmc
