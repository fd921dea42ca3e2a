#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cmc/detail/rng.hpp"
#include "cmc/errors.hpp"

namespace cmc {

// Uniformly sampled scalar signal; the universal currency of this library.
// Immutable after construction. Construction rejects non-finite samples so
// downstream numerics never see NaN/Inf.
class TimeSeries {
 public:
  TimeSeries(std::vector<double> samples, double sample_rate, double t0 = 0.0)
      : samples_(std::move(samples)), sample_rate_(sample_rate), t0_(t0) {
    if (!std::isfinite(sample_rate_) || sample_rate_ <= 0.0)
      throw invalid_argument("TimeSeries: sample_rate must be positive and finite");
    if (!std::isfinite(t0_)) throw invalid_argument("TimeSeries: t0 must be finite");
    if (samples_.empty()) throw invalid_argument("TimeSeries: need at least one sample");
    for (double v : samples_)
      if (!std::isfinite(v)) throw invalid_argument("TimeSeries: non-finite sample rejected");
  }

  const std::vector<double>& samples() const noexcept { return samples_; }
  std::span<const double> view() const noexcept { return samples_; }
  double sample_rate() const noexcept { return sample_rate_; }
  double t0() const noexcept { return t0_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double operator[](std::size_t i) const { return samples_[i]; }

 private:
  std::vector<double> samples_;
  double sample_rate_;
  double t0_;
};

struct NoiseConfig {
  double snr = 1.0;        // power ratio var(signal) / var(noise)
  std::uint64_t seed = 0;
};

inline double mean(std::span<const double> values) {
  if (values.empty()) throw invalid_argument("mean: empty input");
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc / static_cast<double>(values.size());
}

// Unbiased sample variance.
inline double variance(std::span<const double> values) {
  if (values.size() < 2) throw invalid_argument("variance: need at least 2 samples");
  const double m = mean(values);
  double acc = 0.0;
  for (double v : values) acc += (v - m) * (v - m);
  return acc / static_cast<double>(values.size() - 1);
}

// Keeps every factor-th sample starting at index 0; the sample rate drops by
// the same factor.
inline TimeSeries subsample(const TimeSeries& series, std::size_t factor) {
  if (factor == 0) throw invalid_argument("subsample: factor must be >= 1");
  if (series.size() < factor)
    throw invalid_argument("subsample: series shorter than the subsampling factor");
  std::vector<double> out;
  out.reserve((series.size() + factor - 1) / factor);
  for (std::size_t i = 0; i < series.size(); i += factor) out.push_back(series[i]);
  return TimeSeries(std::move(out), series.sample_rate() / static_cast<double>(factor),
                    series.t0());
}

// Adds i.i.d. zero-mean Gaussian observation noise with variance
// var(series)/snr. SNR is a power ratio here; the alternative amplitude-ratio
// convention would square it.
inline TimeSeries add_observational_noise(const TimeSeries& series, const NoiseConfig& cfg) {
  if (!(cfg.snr > 0.0) || !std::isfinite(cfg.snr))
    throw invalid_argument("add_observational_noise: snr must be positive and finite");
  if (series.size() < 2)
    throw invalid_argument("add_observational_noise: need at least 2 samples");
  const double var = variance(series.view());
  if (var <= 0.0)
    throw invalid_argument("add_observational_noise: zero-variance input, SNR undefined");
  const double sigma = std::sqrt(var / cfg.snr);
  detail::GaussianRng rng(cfg.seed);
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = series[i] + sigma * rng.gaussian();
  return TimeSeries(std::move(out), series.sample_rate(), series.t0());
}

// Squared Pearson correlation.
inline double pearson_r2(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw invalid_argument("pearson_r2: length mismatch");
  if (a.size() < 3) throw invalid_argument("pearson_r2: need at least 3 samples");
  const double ma = mean(a);
  const double mb = mean(b);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (saa == 0.0 || sbb == 0.0)
    throw degenerate_input("pearson_r2: zero variance input");
  const double r2 = (sab * sab) / (saa * sbb);
  return r2 > 1.0 ? 1.0 : r2;
}

}  // namespace cmc
