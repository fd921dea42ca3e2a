#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmc/errors.hpp"
#include "cmc/shift_scan.hpp"

namespace cmc {

struct Peak {
  std::size_t index = 0;
  double height = 0.0;
  double prominence = 0.0;
};

// All strict local maxima; a plateau of equal values counts once, reported at
// its midpoint rounded down. Prominence is height minus the higher of the two
// saddle minima encountered walking toward strictly higher terrain; the
// global maximum keeps its full elevation (the curves here are coherences,
// bounded below by zero). Sequences shorter than 3 have no interior peaks.
inline std::vector<Peak> find_peaks(std::span<const double> values) {
  std::vector<Peak> peaks;
  const std::size_t n = values.size();
  if (n < 3) return peaks;

  std::size_t i = 1;
  while (i + 1 <= n - 1) {
    if (values[i] > values[i - 1]) {
      std::size_t j = i;
      while (j + 1 < n && values[j + 1] == values[i]) ++j;
      if (j + 1 < n && values[j + 1] < values[i])
        peaks.push_back({(i + j) / 2, values[i], 0.0});
      i = j + 1;
      continue;
    }
    ++i;
  }

  for (Peak& p : peaks) {
    double left_min = p.height;
    bool left_higher = false;
    for (std::size_t t = p.index; t-- > 0;) {
      if (values[t] > p.height) {
        left_higher = true;
        break;
      }
      left_min = std::min(left_min, values[t]);
    }
    double right_min = p.height;
    bool right_higher = false;
    for (std::size_t t = p.index + 1; t < n; ++t) {
      if (values[t] > p.height) {
        right_higher = true;
        break;
      }
      right_min = std::min(right_min, values[t]);
    }
    p.prominence = (left_higher || right_higher) ? p.height - std::max(left_min, right_min)
                                                 : p.height;
  }
  return peaks;
}

struct CausalStrength {
  double strength = 0.0;
  std::optional<std::int64_t> delay;  // shift samples; empty when nothing admissible
};

namespace detail {
inline bool shift_closer_to_zero(std::int64_t a, std::int64_t b) {
  const std::int64_t aa = a < 0 ? -a : a;
  const std::int64_t ab = b < 0 ? -b : b;
  return aa < ab || (aa == ab && a < b);
}
}  // namespace detail

// Causal strength and effect delay of one shift-dependent curve. If the
// absolute maximum lies on the admissible side (shift < threshold, by default
// E*step to absorb the temporal uncertainty of the embedding window), its
// height is the strength and its shift the delay. Otherwise the maximum is a
// Granger peak; the strength falls back to the prominence of the most
// prominent admissible-side peak, which suppresses shoulder artifacts riding
// on the anti-causal slope. Ties resolve toward the shift nearest zero.
inline CausalStrength causal_strength(std::span<const double> values,
                                      std::span<const std::int64_t> shifts,
                                      std::size_t embedding_dimension,
                                      std::optional<std::int64_t> shift_threshold = {}) {
  if (values.size() != shifts.size())
    throw invalid_argument("causal_strength: values and shifts length mismatch");
  if (values.empty()) throw invalid_argument("causal_strength: empty curve");
  if (embedding_dimension < 1)
    throw invalid_argument("causal_strength: embedding dimension must be >= 1");

  const std::int64_t step = shifts.size() > 1 ? shifts[1] - shifts[0] : 1;
  const std::int64_t threshold =
      shift_threshold ? *shift_threshold
                      : static_cast<std::int64_t>(embedding_dimension) * step;

  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best] ||
        (values[i] == values[best] && detail::shift_closer_to_zero(shifts[i], shifts[best])))
      best = i;
  }
  if (shifts[best] < threshold) {
    if (values[best] <= 0.0) return {0.0, std::nullopt};  // flat-zero curve: no evidence
    return {values[best], shifts[best]};
  }

  const std::vector<Peak> peaks = find_peaks(values);
  const Peak* chosen = nullptr;
  for (const Peak& p : peaks) {
    if (shifts[p.index] >= threshold) continue;
    if (!chosen || p.prominence > chosen->prominence ||
        (p.prominence == chosen->prominence &&
         detail::shift_closer_to_zero(shifts[p.index], shifts[chosen->index])))
      chosen = &p;
  }
  if (!chosen) return {0.0, std::nullopt};
  return {chosen->prominence, shifts[chosen->index]};
}

// Per-frequency causal strength and effect delay of a CMC surface.
struct CausalStrengthProfile {
  std::vector<double> frequencies;
  std::vector<double> strength;
  std::vector<std::optional<std::int64_t>> delay;
  std::string direction_label;
};

inline CausalStrengthProfile strength_profile(const CmcSurface& surface,
                                              std::size_t embedding_dimension,
                                              std::optional<std::int64_t> shift_threshold = {}) {
  CausalStrengthProfile profile;
  profile.frequencies = surface.frequencies;
  profile.direction_label = surface.direction_label;
  profile.strength.resize(surface.frequencies.size());
  profile.delay.resize(surface.frequencies.size());
  for (std::size_t j = 0; j < surface.frequencies.size(); ++j) {
    const std::vector<double> column = surface.band(j);
    const CausalStrength cs =
        causal_strength(column, surface.shifts, embedding_dimension, shift_threshold);
    profile.strength[j] = cs.strength;
    profile.delay[j] = cs.delay;
  }
  return profile;
}

}  // namespace cmc
