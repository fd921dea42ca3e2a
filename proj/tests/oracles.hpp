#pragma once

// Independent reference implementations used as test oracles. These stay
// deliberately naive (exhaustive scans, direct formulas, O(n^2) transforms)
// and must not share code with the library paths they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle {

inline std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& input) {
  const std::size_t n = input.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t t = 0; t < n; ++t) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) *
                           static_cast<double>(t) / static_cast<double>(n);
      acc += input[t] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = acc;
  }
  return out;
}

struct Neighbor {
  double dist2 = 0.0;
  std::int64_t time = 0;
  std::size_t row = 0;
};

// Exhaustive scan over all library rows, ordered by (squared distance, time).
inline std::vector<Neighbor> brute_knn(const std::vector<std::vector<double>>& library,
                                       const std::vector<std::int64_t>& times,
                                       const std::vector<double>& query,
                                       std::int64_t query_time, std::int64_t exclusion_radius,
                                       std::size_t k) {
  std::vector<Neighbor> all;
  for (std::size_t r = 0; r < library.size(); ++r) {
    const std::int64_t dt =
        times[r] >= query_time ? times[r] - query_time : query_time - times[r];
    if (dt <= exclusion_radius) continue;
    double acc = 0.0;
    for (std::size_t d = 0; d < query.size(); ++d) {
      const double diff = query[d] - library[r][d];
      acc += diff * diff;
    }
    all.push_back({acc, times[r], r});
  }
  std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.dist2 < b.dist2 || (a.dist2 == b.dist2 && a.time < b.time);
  });
  if (all.size() > k) all.resize(k);
  return all;
}

inline std::vector<double> direct_weights(const std::vector<double>& distances) {
  std::vector<double> w(distances.size(), 0.0);
  if (distances[0] == 0.0) {
    std::size_t zeros = 0;
    for (const double d : distances)
      if (d == 0.0) ++zeros;
    for (std::size_t j = 0; j < distances.size(); ++j)
      if (distances[j] == 0.0) w[j] = 1.0 / static_cast<double>(zeros);
    return w;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = std::exp(-distances[j] / distances[0]);
    sum += w[j];
  }
  for (double& v : w) v /= sum;
  return w;
}

inline double direct_pearson_r2(const std::vector<double>& a, const std::vector<double>& b) {
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(a.size());
  mb /= static_cast<double>(b.size());
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
    sab += (a[i] - ma) * (b[i] - mb);
  }
  return sab * sab / (saa * sbb);
}

// The complete cross-mapping score recomputed with plain loops: manual delay
// embedding, exhaustive neighbor search over the library prefix, direct
// weight formula, direct correlation.
inline double brute_ccm_score(const std::vector<double>& x, const std::vector<double>& y,
                              std::size_t dimension, std::size_t delay,
                              std::size_t library_length, std::size_t k,
                              std::int64_t exclusion_radius) {
  const std::size_t window = (dimension - 1) * delay;
  const std::size_t rows = x.size() - window;
  std::vector<std::vector<double>> manifold(rows);
  std::vector<std::int64_t> times(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    times[i] = static_cast<std::int64_t>(window + i);
    manifold[i].resize(dimension);
    for (std::size_t c = 0; c < dimension; ++c)
      manifold[i][c] = x[window + i - c * delay];
  }
  std::vector<std::vector<double>> library(manifold.begin(),
                                           manifold.begin() + static_cast<std::ptrdiff_t>(
                                                                  library_length));
  std::vector<std::int64_t> library_times(times.begin(),
                                          times.begin() + static_cast<std::ptrdiff_t>(
                                                              library_length));
  std::vector<double> prediction(rows), truth(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto neighbors =
        brute_knn(library, library_times, manifold[i], times[i], exclusion_radius, k);
    std::vector<double> distances;
    for (const auto& nb : neighbors) distances.push_back(std::sqrt(nb.dist2));
    const auto weights = direct_weights(distances);
    double acc = 0.0;
    for (std::size_t j = 0; j < neighbors.size(); ++j)
      acc += weights[j] * y[static_cast<std::size_t>(neighbors[j].time)];
    prediction[i] = acc;
    truth[i] = y[static_cast<std::size_t>(times[i])];
  }
  return direct_pearson_r2(prediction, truth);
}

struct PeakRef {
  std::size_t index;
  double height;
  double prominence;
};

// Contour-sweep prominence: find peak runs by direct scanning, then walk
// outward to the nearest strictly higher value on each side and take the
// height over the higher of the two minima; a peak with no higher terrain
// keeps its elevation.
inline std::vector<PeakRef> contour_peaks(const std::vector<double>& v) {
  std::vector<PeakRef> peaks;
  const std::size_t n = v.size();
  for (std::size_t start = 1; start < n;) {
    if (!(v[start] > v[start - 1])) {
      ++start;
      continue;
    }
    std::size_t end = start;
    while (end + 1 < n && v[end + 1] == v[start]) ++end;
    if (end + 1 < n && v[end + 1] < v[start]) {
      const std::size_t idx = (start + end) / 2;
      double left_min = v[idx];
      bool left_higher = false;
      for (std::size_t t = idx; t-- > 0;) {
        if (v[t] > v[idx]) {
          left_higher = true;
          break;
        }
        left_min = std::min(left_min, v[t]);
      }
      double right_min = v[idx];
      bool right_higher = false;
      for (std::size_t t = idx + 1; t < n; ++t) {
        if (v[t] > v[idx]) {
          right_higher = true;
          break;
        }
        right_min = std::min(right_min, v[t]);
      }
      const double prom = (left_higher || right_higher)
                              ? v[idx] - std::max(left_min, right_min)
                              : v[idx];
      peaks.push_back({idx, v[idx], prom});
    }
    start = end + 1;
  }
  return peaks;
}

}  // namespace oracle
