#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cmc/errors.hpp"
#include "cmc/timeseries.hpp"

namespace cmc {

struct EmbeddingConfig {
  std::size_t dimension = 2;  // E
  std::size_t delay = 1;      // tau, in samples

  // Temporal span of one delay vector.
  std::size_t window() const noexcept { return (dimension - 1) * delay; }

  void validate() const {
    if (dimension < 1) throw invalid_argument("EmbeddingConfig: dimension must be >= 1");
    if (delay < 1) throw invalid_argument("EmbeddingConfig: delay must be >= 1");
  }
};

// Reconstructed state space. Row i is the delay vector anchored at its newest
// sample, ordered newest-first:
//   [x(t_i), x(t_i - tau), ..., x(t_i - (E-1)tau)],   t_i = (E-1)tau + i.
// time_index maps each row to t_i in the source series.
class DelayEmbedding {
 public:
  DelayEmbedding(std::vector<double> points, std::vector<std::int64_t> time_index,
                 EmbeddingConfig config)
      : points_(std::move(points)), time_index_(std::move(time_index)), config_(config) {
    config_.validate();
    if (time_index_.empty()) throw invalid_argument("DelayEmbedding: no rows");
    if (points_.size() != time_index_.size() * config_.dimension)
      throw invalid_argument("DelayEmbedding: point matrix shape mismatch");
  }

  std::size_t rows() const noexcept { return time_index_.size(); }
  std::size_t dim() const noexcept { return config_.dimension; }
  const EmbeddingConfig& config() const noexcept { return config_; }
  const std::vector<double>& points() const noexcept { return points_; }
  const std::vector<std::int64_t>& time_index() const noexcept { return time_index_; }

  std::span<const double> row(std::size_t i) const {
    return {points_.data() + i * config_.dimension, config_.dimension};
  }

  // First n_rows rows; used as a restricted cross-mapping library.
  DelayEmbedding prefix(std::size_t n_rows) const {
    if (n_rows == 0 || n_rows > rows())
      throw invalid_argument("DelayEmbedding::prefix: row count out of range");
    return DelayEmbedding(
        std::vector<double>(points_.begin(),
                            points_.begin() + static_cast<std::ptrdiff_t>(n_rows * dim())),
        std::vector<std::int64_t>(time_index_.begin(),
                                  time_index_.begin() + static_cast<std::ptrdiff_t>(n_rows)),
        config_);
  }

 private:
  std::vector<double> points_;
  std::vector<std::int64_t> time_index_;
  EmbeddingConfig config_;
};

inline DelayEmbedding embed(const TimeSeries& series, const EmbeddingConfig& cfg) {
  cfg.validate();
  const std::size_t n = series.size();
  const std::size_t w = cfg.window();
  if (n <= w)
    throw invalid_argument("embed: series of length " + std::to_string(n) +
                           " is too short for dimension " + std::to_string(cfg.dimension) +
                           " and delay " + std::to_string(cfg.delay) + "; need at least " +
                           std::to_string(w + 1) + " samples");
  const std::size_t m = n - w;
  std::vector<double> points(m * cfg.dimension);
  std::vector<std::int64_t> times(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t anchor = w + i;
    times[i] = static_cast<std::int64_t>(anchor);
    for (std::size_t c = 0; c < cfg.dimension; ++c)
      points[i * cfg.dimension + c] = series[anchor - c * cfg.delay];
  }
  return DelayEmbedding(std::move(points), std::move(times), cfg);
}

}  // namespace cmc
