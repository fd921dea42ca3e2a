#pragma once

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cmc/crossmap.hpp"
#include "cmc/embedding.hpp"
#include "cmc/errors.hpp"
#include "cmc/prominence.hpp"
#include "cmc/shift_scan.hpp"
#include "cmc/spectral.hpp"
#include "cmc/timeseries.hpp"

namespace cmc {

inline constexpr std::string_view artifact_version = "0.1.0";

struct AnalysisConfig {
  EmbeddingConfig embedding{2, 1};
  SpectralConfig spectral{};
  ShiftRange shift_range{-20, 20, 1};
  std::vector<std::size_t> library_lengths{};  // optional zero-shift convergence study
  bool normalization = false;                  // profiles from band-normalized surfaces
  std::size_t realizations = 1;                // consumed by the CLI harness
  std::uint64_t seed = 0;
  std::size_t neighbor_count = 0;     // 0 -> E + 1
  std::int64_t exclusion_radius = 0;  // Theiler-style widening is opt-in

  void validate() const {
    embedding.validate();
    spectral.validate();
    shift_range.validate();
    if (realizations == 0) throw invalid_argument("AnalysisConfig: realizations must be >= 1");
    if (exclusion_radius < 0)
      throw invalid_argument("AnalysisConfig: exclusion_radius must be >= 0");
    for (std::size_t i = 1; i < library_lengths.size(); ++i)
      if (library_lengths[i] <= library_lengths[i - 1])
        throw invalid_argument("AnalysisConfig: library_lengths must be strictly increasing");
  }

  std::string canonical() const {
    std::ostringstream os;
    os << "dimension=" << embedding.dimension << ";delay=" << embedding.delay
       << ";segment_length=" << spectral.segment_length
       << ";overlap_fraction=" << spectral.overlap_fraction
       << ";window=" << static_cast<int>(spectral.window)
       << ";detrend_per_segment=" << spectral.detrend_per_segment
       << ";min_shift=" << shift_range.min_shift << ";max_shift=" << shift_range.max_shift
       << ";step=" << shift_range.step << ";library_lengths=";
    for (std::size_t i = 0; i < library_lengths.size(); ++i)
      os << (i ? "," : "") << library_lengths[i];
    os << ";normalization=" << normalization << ";realizations=" << realizations
       << ";seed=" << seed << ";neighbor_count=" << neighbor_count
       << ";exclusion_radius=" << exclusion_radius;
    return os.str();
  }

  // FNV-1a over the canonical form.
  std::uint64_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const char c : canonical()) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

struct Provenance {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::string version{artifact_version};
};

// Full bidirectional result set. "x->y" always means testing whether x
// drives y: the candidate effect y is embedded and used to cross-map the
// candidate cause x.
struct ResultBundle {
  CcmCurve ccm_x_to_y, ccm_y_to_x;
  std::vector<ConvergencePoint> convergence_x_to_y, convergence_y_to_x;
  CmcSurface cmc_x_to_y, cmc_y_to_x;
  CmcSurface cmc_x_to_y_normalized, cmc_y_to_x_normalized;
  CausalStrengthProfile profile_x_to_y, profile_y_to_x;
  Provenance provenance;
};

inline ResultBundle run_pipeline(const AnalysisConfig& cfg, const TimeSeries& x,
                                 const TimeSeries& y, unsigned threads = 0,
                                 std::string_view x_name = "x", std::string_view y_name = "y") {
  cfg.validate();
  ResultBundle bundle;
  bundle.provenance = Provenance{cfg.hash(), cfg.seed, std::string(artifact_version)};

  const std::string label_xy = std::string(x_name) + "->" + std::string(y_name);
  const std::string label_yx = std::string(y_name) + "->" + std::string(x_name);

  // x->y: embed y, predict x.
  auto scan_xy = detail::scan_shifts(y, x, cfg.embedding, cfg.shift_range, cfg.spectral, 0,
                                     label_xy, cfg.neighbor_count, cfg.exclusion_radius,
                                     threads, true, true);
  // y->x: embed x, predict y.
  auto scan_yx = detail::scan_shifts(x, y, cfg.embedding, cfg.shift_range, cfg.spectral, 0,
                                     label_yx, cfg.neighbor_count, cfg.exclusion_radius,
                                     threads, true, true);

  bundle.ccm_x_to_y = std::move(scan_xy.ccm);
  bundle.ccm_y_to_x = std::move(scan_yx.ccm);
  bundle.cmc_x_to_y = std::move(scan_xy.cmc);
  bundle.cmc_y_to_x = std::move(scan_yx.cmc);
  bundle.cmc_x_to_y_normalized = normalize_per_band(bundle.cmc_x_to_y);
  bundle.cmc_y_to_x_normalized = normalize_per_band(bundle.cmc_y_to_x);

  const CmcSurface& source_xy =
      cfg.normalization ? bundle.cmc_x_to_y_normalized : bundle.cmc_x_to_y;
  const CmcSurface& source_yx =
      cfg.normalization ? bundle.cmc_y_to_x_normalized : bundle.cmc_y_to_x;
  bundle.profile_x_to_y = strength_profile(source_xy, cfg.embedding.dimension);
  bundle.profile_y_to_x = strength_profile(source_yx, cfg.embedding.dimension);

  if (!cfg.library_lengths.empty()) {
    bundle.convergence_x_to_y = convergence_curve(y, x, cfg.embedding, cfg.library_lengths,
                                                  cfg.neighbor_count, cfg.exclusion_radius);
    bundle.convergence_y_to_x = convergence_curve(x, y, cfg.embedding, cfg.library_lengths,
                                                  cfg.neighbor_count, cfg.exclusion_radius);
  }
  return bundle;
}

}  // namespace cmc
