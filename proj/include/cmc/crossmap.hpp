#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cmc/detail/kdtree.hpp"
#include "cmc/embedding.hpp"
#include "cmc/errors.hpp"
#include "cmc/timeseries.hpp"

namespace cmc {

inline std::size_t default_neighbor_count(const EmbeddingConfig& cfg) {
  return cfg.dimension + 1;
}

// Neighbourhood structure of a query manifold against a library manifold:
// per query row, the k nearest library rows with Euclidean distances sorted
// ascending and normalised exponential weights.
struct CrossMapModel {
  std::size_t neighbor_count = 0;  // k
  std::size_t query_count = 0;
  std::vector<std::uint32_t> neighbor_rows;  // query_count x k, library row ids
  std::vector<std::int64_t> neighbor_times;  // query_count x k
  std::vector<double> neighbor_distances;    // query_count x k, ascending
  std::vector<double> weights;               // query_count x k, each row sums to 1
  std::vector<std::int64_t> query_times;

  std::span<const double> distance_row(std::size_t i) const {
    return {neighbor_distances.data() + i * neighbor_count, neighbor_count};
  }
  std::span<const double> weight_row(std::size_t i) const {
    return {weights.data() + i * neighbor_count, neighbor_count};
  }
  std::span<const std::int64_t> time_row(std::size_t i) const {
    return {neighbor_times.data() + i * neighbor_count, neighbor_count};
  }
};

// w_j = exp(-d_j/d_1) / sum. A zero nearest distance makes the exponent
// undefined; the zero-distance tie group then shares the weight uniformly,
// which is the limit of the formula as d_1 -> 0+.
inline std::vector<double> compute_weights(std::span<const double> distances) {
  if (distances.empty()) throw invalid_argument("compute_weights: need at least one distance");
  for (std::size_t j = 0; j < distances.size(); ++j) {
    if (distances[j] < 0.0) throw invalid_argument("compute_weights: negative distance");
    if (j > 0 && distances[j] < distances[j - 1])
      throw invalid_argument("compute_weights: distances must be sorted ascending");
  }
  std::vector<double> weights(distances.size(), 0.0);
  if (distances[0] == 0.0) {
    std::size_t zeros = 0;
    while (zeros < distances.size() && distances[zeros] == 0.0) ++zeros;
    const double share = 1.0 / static_cast<double>(zeros);
    for (std::size_t j = 0; j < zeros; ++j) weights[j] = share;
    return weights;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < distances.size(); ++j) {
    weights[j] = std::exp(-distances[j] / distances[0]);
    sum += weights[j];
  }
  for (double& w : weights) w /= sum;
  return weights;
}

// For every query row, the k nearest library rows by Euclidean distance.
// Library rows whose time index lies within exclusion_radius samples of the
// query's time index are inadmissible; radius 0 removes exact self-matches
// when library and queries share a manifold. Ties at equal distance resolve
// toward the lower time index.
inline CrossMapModel find_neighbors(const DelayEmbedding& library, const DelayEmbedding& queries,
                                    std::size_t k, std::int64_t exclusion_radius = 0) {
  if (library.dim() != queries.dim())
    throw invalid_argument("find_neighbors: embedding dimensions differ");
  if (k < 1) throw invalid_argument("find_neighbors: k must be >= 1");
  if (exclusion_radius < 0)
    throw invalid_argument("find_neighbors: exclusion_radius must be >= 0");
  if (library.rows() < k)
    throw invalid_argument("find_neighbors: library holds fewer than k rows");

  detail::KdTree tree(library.points().data(), library.rows(), library.dim(),
                      library.time_index().data());
  CrossMapModel model;
  model.neighbor_count = k;
  model.query_count = queries.rows();
  model.neighbor_rows.resize(model.query_count * k);
  model.neighbor_times.resize(model.query_count * k);
  model.neighbor_distances.resize(model.query_count * k);
  model.weights.resize(model.query_count * k);
  model.query_times = queries.time_index();

  std::vector<detail::KdTree::Hit> hits;
  for (std::size_t i = 0; i < model.query_count; ++i) {
    tree.knn(queries.row(i).data(), queries.time_index()[i], exclusion_radius, k, hits);
    if (hits.size() < k)
      throw invalid_argument("find_neighbors: only " + std::to_string(hits.size()) +
                             " admissible library rows for query " + std::to_string(i) +
                             ", need " + std::to_string(k));
    for (std::size_t j = 0; j < k; ++j) {
      model.neighbor_rows[i * k + j] = hits[j].row;
      model.neighbor_times[i * k + j] = hits[j].time;
      model.neighbor_distances[i * k + j] = std::sqrt(hits[j].dist2);
    }
    const auto w = compute_weights(model.distance_row(i));
    std::copy(w.begin(), w.end(), model.weights.begin() + static_cast<std::ptrdiff_t>(i * k));
  }
  return model;
}

// Weighted average of target samples at the neighbours' time indices,
// aligned to the query manifold's time index.
struct Prediction {
  std::vector<double> values;
  std::vector<std::int64_t> target_time_index;
};

inline Prediction cross_map(const CrossMapModel& model, const TimeSeries& target) {
  Prediction out;
  out.values.resize(model.query_count);
  out.target_time_index = model.query_times;
  const auto n = static_cast<std::int64_t>(target.size());
  const std::size_t k = model.neighbor_count;
  for (std::size_t i = 0; i < model.query_count; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const std::int64_t t = model.neighbor_times[i * k + j];
      if (t < 0 || t >= n)
        throw internal_error("cross_map: neighbor time index outside target range");
      acc += model.weights[i * k + j] * target[static_cast<std::size_t>(t)];
    }
    out.values[i] = acc;
  }
  return out;
}

// One cross-mapping skill evaluation: embed x, restrict the library to the
// first library_length manifold rows, predict y, return R^2 between the
// prediction and the truth. A converging score as library_length grows
// supports the y -> x causal claim. library_length 0 means the full manifold.
inline double ccm_score(const TimeSeries& x, const TimeSeries& y, const EmbeddingConfig& cfg,
                        std::size_t library_length = 0, std::size_t k = 0,
                        std::int64_t exclusion_radius = 0) {
  if (x.size() != y.size()) throw invalid_argument("ccm_score: series lengths differ");
  const DelayEmbedding manifold = embed(x, cfg);
  const std::size_t kk = k ? k : default_neighbor_count(cfg);
  std::size_t lib = library_length ? library_length : manifold.rows();
  if (lib > manifold.rows())
    throw invalid_argument("ccm_score: library_length exceeds manifold rows");
  if (lib <= cfg.window() + kk)
    throw invalid_argument("ccm_score: library_length must exceed (E-1)*tau + k");

  const DelayEmbedding* library = &manifold;
  std::optional<DelayEmbedding> prefix_store;
  if (lib < manifold.rows()) {
    prefix_store.emplace(manifold.prefix(lib));
    library = &*prefix_store;
  }
  const CrossMapModel model = find_neighbors(*library, manifold, kk, exclusion_radius);
  const Prediction pred = cross_map(model, y);
  std::vector<double> truth(pred.values.size());
  for (std::size_t i = 0; i < truth.size(); ++i)
    truth[i] = y[static_cast<std::size_t>(pred.target_time_index[i])];
  return pearson_r2(pred.values, truth);
}

struct ConvergencePoint {
  std::size_t library_length = 0;
  double score = 0.0;
};

// ccm_score across growing library prefixes; the convergence signature of CCM.
inline std::vector<ConvergencePoint> convergence_curve(const TimeSeries& x, const TimeSeries& y,
                                                       const EmbeddingConfig& cfg,
                                                       std::span<const std::size_t> lengths,
                                                       std::size_t k = 0,
                                                       std::int64_t exclusion_radius = 0) {
  if (lengths.empty()) throw invalid_argument("convergence_curve: no library lengths");
  for (std::size_t i = 1; i < lengths.size(); ++i)
    if (lengths[i] <= lengths[i - 1])
      throw invalid_argument("convergence_curve: lengths must be strictly increasing");
  std::vector<ConvergencePoint> out;
  out.reserve(lengths.size());
  for (const std::size_t length : lengths)
    out.push_back({length, ccm_score(x, y, cfg, length, k, exclusion_radius)});
  return out;
}

}  // namespace cmc
