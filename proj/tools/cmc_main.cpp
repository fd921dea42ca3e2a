// cmc: frequency-resolved causal discovery between time series.
//
// Subcommands:
//   simulate <preset>   generate benchmark data as CSV
//   analyze             run the bidirectional cross-mapping coherence pipeline
//   reproduce <figure>  emit the result files behind one benchmark figure
//   sweep               length / coupling / noise / embedding studies
//
// Exit codes: 0 success, 2 usage error, 3 data/parse error,
// 4 numeric/degenerate error. CMC_THREADS caps worker parallelism.

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmc/cmc.hpp"
#include "cmc/detail/parallel.hpp"
#include "cmc/wilson_cowan_json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string sanitize(std::string_view name) {
  std::string out;
  for (const char c : name)
    out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

struct Manifest {
  json doc;
  std::vector<std::string> files;

  explicit Manifest(std::string_view kind, std::uint64_t seed) {
    doc["kind"] = std::string(kind);
    doc["version"] = std::string(cmc::artifact_version);
    doc["seed"] = seed;
  }

  void add(const fs::path& path) { files.push_back(path.filename().string()); }

  void write(const fs::path& outdir) {
    doc["files"] = files;
    cmc::detail::write_atomic(outdir / "manifest.json", doc.dump(2) + "\n");
  }
};

fs::path ensure_outdir(const std::string& outdir) {
  fs::path dir(outdir);
  fs::create_directories(dir);
  return dir;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string preset;
  std::string out;
  std::size_t length = 0;  // 0: preset default
  std::uint64_t seed = 1;
  double snr = 0.0;  // 0: no observational noise
  std::size_t subsample = 0;
  double coupling = -1.0;
  bool coupling_set = false;
  bool conventional_sign = false;
  std::string weights;
};

void apply_noise(std::vector<cmc::TimeSeries>& series, double snr, std::uint64_t seed) {
  if (snr <= 0.0) return;
  for (std::size_t i = 0; i < series.size(); ++i)
    series[i] = cmc::add_observational_noise(series[i], {snr, seed + 1000 + i});
}

int run_simulate(const SimulateArgs& args) {
  std::vector<cmc::TimeSeries> series;
  std::vector<std::string> names;
  std::size_t subsample_factor = args.subsample;

  if (args.preset.rfind("logistic-", 0) == 0) {
    auto cfg = cmc::logistic_preset(args.preset, args.length ? args.length : 10000, args.seed);
    if (args.coupling_set) {
      if (cfg.rates.size() != 2)
        throw cmc::invalid_argument("--coupling only applies to two-map logistic presets");
      cfg.coupling[2] = args.coupling;  // A21, the x -> y strength
    }
    series = cmc::simulate_logistic(cfg);
    names = series.size() == 3 ? std::vector<std::string>{"x", "y", "z"}
                               : std::vector<std::string>{"x", "y"};
  } else if (args.preset.rfind("lorenz-", 0) == 0) {
    auto cfg = cmc::lorenz_preset(args.preset);
    if (args.length) cfg.steps = args.length;
    series = cmc::simulate_lorenz(cfg);
    names = {"x1", "y1", "z1", "x2", "y2", "z2"};
    if (subsample_factor == 0) subsample_factor = 100;
  } else if (args.preset == "kuramoto-3") {
    auto cfg = cmc::kuramoto_preset(args.seed);
    if (args.length) cfg.steps = args.length;
    cfg.conventional_sign = args.conventional_sign;
    series = cmc::simulate_kuramoto(cfg);
    names = {"z", "x", "y"};
  } else if (args.preset == "wilson-cowan-v1v4") {
    if (args.weights.empty())
      throw cmc::invalid_argument("preset wilson-cowan-v1v4 requires --weights <file>");
    auto scenario = cmc::load_wilson_cowan_json(args.weights);
    scenario.config.seed = args.seed;
    if (args.length) scenario.config.steps = args.length;
    const auto populations = cmc::simulate_wilson_cowan(scenario.config);
    series = cmc::observe_wilson_cowan(scenario, populations);
    names = scenario.observed_names;
  } else {
    throw cmc::invalid_argument("unknown preset: " + args.preset);
  }

  if (subsample_factor > 1)
    for (auto& s : series) s = cmc::subsample(s, subsample_factor);
  apply_noise(series, args.snr, args.seed);

  const fs::path out = args.out.empty() ? fs::path(args.preset + ".csv") : fs::path(args.out);
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  const cmc::Provenance prov{0, args.seed, std::string(cmc::artifact_version)};
  cmc::save_series_csv(out, series, names, &prov);
  std::cout << "wrote " << out.string() << " (" << series.size() << " series, "
            << series[0].size() << " samples at " << series[0].sample_rate() << " Hz)\n";
  return 0;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string input;
  std::vector<std::string> columns;
  std::string outdir = ".";
  cmc::AnalysisConfig config;
  std::string window = "hann";
  unsigned threads = 0;
};

cmc::Taper parse_taper(const std::string& name) {
  if (name == "hann") return cmc::Taper::hann;
  if (name == "hamming") return cmc::Taper::hamming;
  if (name == "boxcar") return cmc::Taper::boxcar;
  throw cmc::invalid_argument("unknown window: " + name + " (hann|hamming|boxcar)");
}

std::size_t column_index(const cmc::LoadedCsv& data, const std::string& wanted) {
  for (std::size_t i = 0; i < data.names.size(); ++i)
    if (data.names[i] == wanted) return i;
  // fall back to a numeric index
  try {
    const std::size_t idx = std::stoul(wanted);
    if (idx < data.series.size()) return idx;
  } catch (...) {
  }
  throw cmc::invalid_argument("no column named '" + wanted + "' in input");
}

void write_bundle(const fs::path& outdir, const cmc::ResultBundle& bundle,
                  const std::string& a, const std::string& b, Manifest& manifest) {
  const std::string fwd = sanitize(a) + "_to_" + sanitize(b);
  const std::string rev = sanitize(b) + "_to_" + sanitize(a);
  const auto& prov = bundle.provenance;

  const auto put_curve = [&](const std::string& stem, const cmc::CcmCurve& curve) {
    const fs::path path = outdir / (stem + ".csv");
    cmc::save_curve_csv(path, curve, prov);
    manifest.add(path);
  };
  const auto put_surface = [&](const std::string& stem, const cmc::CmcSurface& surface) {
    const fs::path path = outdir / (stem + ".csv");
    cmc::save_surface_csv(path, surface, prov);
    manifest.add(path);
  };
  const auto put_profile = [&](const std::string& stem,
                               const cmc::CausalStrengthProfile& profile) {
    const fs::path path = outdir / (stem + ".csv");
    cmc::save_profile_csv(path, profile, prov);
    manifest.add(path);
  };

  put_curve("ccm_" + fwd, bundle.ccm_x_to_y);
  put_curve("ccm_" + rev, bundle.ccm_y_to_x);
  put_surface("cmc_" + fwd, bundle.cmc_x_to_y);
  put_surface("cmc_" + rev, bundle.cmc_y_to_x);
  put_surface("cmc_" + fwd + "_normalized", bundle.cmc_x_to_y_normalized);
  put_surface("cmc_" + rev + "_normalized", bundle.cmc_y_to_x_normalized);
  put_profile("profile_" + fwd, bundle.profile_x_to_y);
  put_profile("profile_" + rev, bundle.profile_y_to_x);
  if (!bundle.convergence_x_to_y.empty()) {
    const fs::path cf = outdir / ("convergence_" + fwd + ".csv");
    cmc::save_convergence_csv(cf, bundle.convergence_x_to_y, bundle.ccm_x_to_y.direction_label,
                              prov);
    manifest.add(cf);
    const fs::path cr = outdir / ("convergence_" + rev + ".csv");
    cmc::save_convergence_csv(cr, bundle.convergence_y_to_x, bundle.ccm_y_to_x.direction_label,
                              prov);
    manifest.add(cr);
  }
}

int run_analyze(const AnalyzeArgs& args) {
  const auto data = cmc::load_csv(args.input);
  if (data.sample_rate_defaulted)
    std::cerr << "warning: no '# sample_rate=' header in " << args.input
              << ", assuming 1 Hz\n";
  if (data.series.size() < 2)
    throw cmc::degenerate_input("analyze needs at least two columns");

  std::size_t ia = 0, ib = 1;
  if (!args.columns.empty()) {
    if (args.columns.size() != 2)
      throw cmc::invalid_argument("--columns takes exactly two names");
    ia = column_index(data, args.columns[0]);
    ib = column_index(data, args.columns[1]);
  }
  const std::string name_a = ia < data.names.size() ? data.names[ia] : "x";
  const std::string name_b = ib < data.names.size() ? data.names[ib] : "y";

  const fs::path outdir = ensure_outdir(args.outdir);
  const auto bundle = cmc::run_pipeline(args.config, data.series[ia], data.series[ib],
                                        args.threads, name_a, name_b);
  Manifest manifest("analyze", args.config.seed);
  manifest.doc["input"] = args.input;
  manifest.doc["columns"] = {name_a, name_b};
  manifest.doc["config"] = args.config.canonical();
  write_bundle(outdir, bundle, name_a, name_b, manifest);
  manifest.write(outdir);
  std::cout << "analysis written to " << outdir.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep + figure reproduction
// ---------------------------------------------------------------------------

double band_mean_strength(const cmc::CausalStrengthProfile& profile) {
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t j = 0; j < profile.frequencies.size(); ++j) {
    if (profile.frequencies[j] <= 0.0) continue;  // skip the DC band
    acc += profile.strength[j];
    ++count;
  }
  return count ? acc / static_cast<double>(count) : 0.0;
}

cmc::AnalysisConfig logistic_analysis_config(std::uint64_t seed,
                                             std::size_t segment_length = 32) {
  cmc::AnalysisConfig cfg;
  cfg.embedding = {2, 1};
  cfg.spectral.segment_length = segment_length;
  cfg.shift_range = {-20, 20, 1};
  cfg.seed = seed;
  return cfg;
}

struct StudyPoint {
  double value = 0.0;
  std::vector<cmc::TimeSeries> series;
  cmc::AnalysisConfig config;
  std::string tag;
};

int run_study(const std::string& kind, std::vector<double> values, const fs::path& outdir,
              std::uint64_t seed, unsigned threads) {
  std::vector<StudyPoint> points;
  if (kind == "length") {
    if (values.empty()) values = {400, 700, 1000, 2000, 5000};
    for (const double v : values) {
      StudyPoint p;
      p.value = v;
      p.series = cmc::simulate_logistic(
          cmc::logistic_length_study(static_cast<std::size_t>(v), seed));
      p.config = logistic_analysis_config(seed);
      p.tag = "L" + std::to_string(static_cast<long long>(v));
      points.push_back(std::move(p));
    }
  } else if (kind == "coupling") {
    if (values.empty()) values = {0.0, 0.05, 0.1, 0.15, 0.2};
    for (const double v : values) {
      StudyPoint p;
      p.value = v;
      p.series = cmc::simulate_logistic(cmc::logistic_coupling_study(v, 2000, seed));
      p.config = logistic_analysis_config(seed);
      p.tag = "C" + cmc::format_double(v);
      points.push_back(std::move(p));
    }
  } else if (kind == "noise") {
    if (values.empty()) values = {1000, 100, 10, 5, 2};
    for (const double v : values) {
      StudyPoint p;
      p.value = v;
      p.series = cmc::simulate_logistic(cmc::logistic_noise_study(2000, seed));
      apply_noise(p.series, v, seed);
      p.config = logistic_analysis_config(seed);
      p.tag = "SNR" + cmc::format_double(v);
      points.push_back(std::move(p));
    }
  } else if (kind == "embedding") {
    if (values.empty()) values = {2, 4, 6, 8, 10};
    for (const double v : values) {
      StudyPoint p;
      p.value = v;
      p.series = cmc::simulate_logistic(cmc::logistic_embedding_study(seed));
      p.config = logistic_analysis_config(seed);
      p.config.embedding.dimension = static_cast<std::size_t>(v);
      p.tag = "E" + std::to_string(static_cast<long long>(v));
      points.push_back(std::move(p));
    }
  } else {
    throw cmc::invalid_argument("unknown sweep kind: " + kind +
                                " (length|coupling|noise|embedding)");
  }

  Manifest manifest("sweep-" + kind, seed);
  std::string summary;
  cmc::detail::append_provenance(
      summary, cmc::Provenance{0, seed, std::string(cmc::artifact_version)});
  summary += "value,mean_strength_x_to_y,mean_strength_y_to_x\n";
  for (const auto& p : points) {
    const fs::path dir = outdir / p.tag;
    fs::create_directories(dir);
    const auto bundle = cmc::run_pipeline(p.config, p.series[0], p.series[1], threads);
    Manifest sub("sweep-point", seed);
    write_bundle(dir, bundle, "x", "y", sub);
    sub.doc["value"] = p.value;
    sub.write(dir);
    summary += cmc::format_double(p.value) + "," +
               cmc::format_double(band_mean_strength(bundle.profile_x_to_y)) + "," +
               cmc::format_double(band_mean_strength(bundle.profile_y_to_x)) + "\n";
    manifest.files.push_back(p.tag);
  }
  cmc::detail::write_atomic(outdir / "summary.csv", summary);
  manifest.files.push_back("summary.csv");
  manifest.write(outdir);
  std::cout << kind << " sweep written to " << outdir.string() << "\n";
  return 0;
}

int reproduce_fig2(const fs::path& outdir, std::uint64_t seed, unsigned threads) {
  const auto sim = cmc::simulate_logistic(cmc::logistic_preset("logistic-uni", 10000, seed));
  Manifest manifest("fig2", seed);
  const cmc::Provenance prov{0, seed, std::string(cmc::artifact_version)};
  const std::vector<std::string> names{"x", "y"};
  cmc::save_series_csv(outdir / "series.csv", sim, names, &prov);
  manifest.add(outdir / "series.csv");

  const std::vector<std::size_t> lengths{400, 700, 1000, 2000, 5000};
  const auto conv_xy = cmc::convergence_curve(sim[1], sim[0], {2, 1}, lengths);
  const auto conv_yx = cmc::convergence_curve(sim[0], sim[1], {2, 1}, lengths);
  cmc::save_convergence_csv(outdir / "convergence_x_to_y.csv", conv_xy, "x->y", prov);
  cmc::save_convergence_csv(outdir / "convergence_y_to_x.csv", conv_yx, "y->x", prov);
  manifest.add(outdir / "convergence_x_to_y.csv");
  manifest.add(outdir / "convergence_y_to_x.csv");

  const cmc::ShiftRange range{-20, 20, 1};
  const auto ccm_xy = cmc::ccm_function(sim[1], sim[0], {2, 1}, range, 0, "x->y", 0, 0, threads);
  const auto ccm_yx = cmc::ccm_function(sim[0], sim[1], {2, 1}, range, 0, "y->x", 0, 0, threads);
  cmc::save_curve_csv(outdir / "ccm_x_to_y.csv", ccm_xy, prov);
  cmc::save_curve_csv(outdir / "ccm_y_to_x.csv", ccm_yx, prov);
  manifest.add(outdir / "ccm_x_to_y.csv");
  manifest.add(outdir / "ccm_y_to_x.csv");
  manifest.write(outdir);
  return 0;
}

int reproduce_fig3(const fs::path& outdir, std::uint64_t seed, unsigned threads) {
  Manifest manifest("fig3", seed);
  for (const char* name :
       {"logistic-uni", "logistic-circ", "logistic-hidden", "logistic-indep"}) {
    const auto sim = cmc::simulate_logistic(cmc::logistic_preset(name, 10000, seed));
    const fs::path dir = outdir / (std::string(name).substr(9));
    fs::create_directories(dir);
    auto cfg = logistic_analysis_config(seed, 64);
    const auto bundle = cmc::run_pipeline(cfg, sim[0], sim[1], threads);
    Manifest sub("fig3-scenario", seed);
    write_bundle(dir, bundle, "x", "y", sub);
    sub.write(dir);
    manifest.files.push_back(dir.filename().string());
  }
  manifest.write(outdir);
  return 0;
}

int reproduce_fig6(const fs::path& outdir, std::uint64_t seed, unsigned threads) {
  Manifest manifest("fig6", seed);
  for (const char* name : {"lorenz-uni", "lorenz-circ", "lorenz-indep"}) {
    const auto raw = cmc::simulate_lorenz(cmc::lorenz_preset(name));
    const cmc::TimeSeries x1 = cmc::subsample(raw[0], 100);
    const cmc::TimeSeries x2 = cmc::subsample(raw[3], 100);
    const fs::path dir = outdir / (std::string(name).substr(7));
    fs::create_directories(dir);
    cmc::AnalysisConfig cfg;
    cfg.embedding = {7, 1};
    cfg.spectral.segment_length = 64;
    cfg.shift_range = {-20, 20, 1};  // +-2 s at 10 Hz
    cfg.seed = seed;
    const auto bundle = cmc::run_pipeline(cfg, x1, x2, threads, "x1", "x2");
    Manifest sub("fig6-scenario", seed);
    write_bundle(dir, bundle, "x1", "x2", sub);
    sub.write(dir);
    manifest.files.push_back(dir.filename().string());
  }
  manifest.write(outdir);
  return 0;
}

int reproduce_fig7(const fs::path& outdir, std::uint64_t seed, unsigned threads) {
  auto cfg = cmc::kuramoto_preset(seed);
  const auto sim = cmc::simulate_kuramoto(cfg);
  const std::vector<std::string> names{"z", "x", "y"};
  // first 10000 points only
  std::vector<cmc::TimeSeries> obs;
  for (const auto& s : sim)
    obs.emplace_back(std::vector<double>(s.samples().begin(), s.samples().begin() + 10000),
                     s.sample_rate());
  Manifest manifest("fig7", seed);

  cmc::AnalysisConfig acfg;
  acfg.embedding = {5, 1};
  acfg.spectral.segment_length = 64;
  acfg.shift_range = {-20, 20, 1};  // +-0.1 s at 200 Hz
  acfg.seed = seed;

  const cmc::Provenance prov{acfg.hash(), seed, std::string(cmc::artifact_version)};
  const std::pair<std::size_t, std::size_t> pairs[] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& [ia, ib] : pairs) {
    const fs::path dir = outdir / (names[ia] + "_" + names[ib]);
    fs::create_directories(dir);
    const auto curve = cmc::coherence(obs[ia], obs[ib], acfg.spectral);
    std::string coh;
    cmc::detail::append_provenance(coh, prov);
    coh += "frequency_hz,coherence\n";
    for (std::size_t j = 0; j < curve.frequencies.size(); ++j)
      coh += cmc::format_double(curve.frequencies[j]) + "," +
             cmc::format_double(curve.coherence[j]) + "\n";
    cmc::detail::write_atomic(dir / "signal_coherence.csv", coh);

    const auto bundle =
        cmc::run_pipeline(acfg, obs[ia], obs[ib], threads, names[ia], names[ib]);
    Manifest sub("fig7-pair", seed);
    sub.add(dir / "signal_coherence.csv");
    write_bundle(dir, bundle, names[ia], names[ib], sub);
    sub.write(dir);
    manifest.files.push_back(dir.filename().string());
  }
  manifest.write(outdir);
  return 0;
}

int reproduce_fig8(const fs::path& outdir, std::uint64_t seed, unsigned threads,
                   const std::string& weights) {
  if (weights.empty())
    throw cmc::invalid_argument("fig8 requires --weights <wilson-cowan json>");
  const auto scenario = cmc::load_wilson_cowan_json(weights);
  if (scenario.observed_names.size() < 2)
    throw cmc::invalid_argument("fig8 needs at least two observed series");
  const std::string a = scenario.observed_names[0];
  const std::string b = scenario.observed_names[1];

  const std::size_t realizations = 10;
  std::vector<cmc::CmcSurface> raw_ab, raw_ba, norm_ab, norm_ba;
  std::vector<cmc::CcmCurve> ccm_ab, ccm_ba;
  cmc::AnalysisConfig acfg;
  acfg.embedding = {9, 1};
  acfg.seed = seed;
  acfg.realizations = realizations;

  for (std::size_t r = 0; r < realizations; ++r) {
    auto cfg = scenario.config;
    cfg.seed = seed + r;
    const auto populations = cmc::simulate_wilson_cowan(cfg);
    const auto obs = cmc::observe_wilson_cowan(scenario, populations);
    const double fs = obs[0].sample_rate();
    const auto shift_samples = static_cast<std::int64_t>(0.2 * fs + 0.5);
    acfg.shift_range = {-shift_samples, shift_samples, 1};
    const auto bundle = cmc::run_pipeline(acfg, obs[0], obs[1], threads, a, b);
    raw_ab.push_back(bundle.cmc_x_to_y);
    raw_ba.push_back(bundle.cmc_y_to_x);
    norm_ab.push_back(bundle.cmc_x_to_y_normalized);
    norm_ba.push_back(bundle.cmc_y_to_x_normalized);
    ccm_ab.push_back(bundle.ccm_x_to_y);
    ccm_ba.push_back(bundle.ccm_y_to_x);
  }

  const auto mean_curve = [](const std::vector<cmc::CcmCurve>& curves) {
    cmc::CcmCurve out = curves.front();
    for (std::size_t c = 1; c < curves.size(); ++c)
      for (std::size_t i = 0; i < out.scores.size(); ++i)
        out.scores[i] += curves[c].scores[i];
    for (double& v : out.scores) v /= static_cast<double>(curves.size());
    return out;
  };

  Manifest manifest("fig8", seed);
  const cmc::Provenance prov{acfg.hash(), seed, std::string(cmc::artifact_version)};
  const std::string fwd = sanitize(a) + "_to_" + sanitize(b);
  const std::string rev = sanitize(b) + "_to_" + sanitize(a);

  const auto avg_raw_ab = cmc::average_surfaces(raw_ab);
  const auto avg_raw_ba = cmc::average_surfaces(raw_ba);
  const auto avg_norm_ab = cmc::average_surfaces(norm_ab);
  const auto avg_norm_ba = cmc::average_surfaces(norm_ba);

  cmc::save_curve_csv(outdir / ("ccm_" + fwd + ".csv"), mean_curve(ccm_ab), prov);
  cmc::save_curve_csv(outdir / ("ccm_" + rev + ".csv"), mean_curve(ccm_ba), prov);
  cmc::save_surface_csv(outdir / ("cmc_" + fwd + ".csv"), avg_raw_ab, prov);
  cmc::save_surface_csv(outdir / ("cmc_" + rev + ".csv"), avg_raw_ba, prov);
  cmc::save_surface_csv(outdir / ("cmc_" + fwd + "_normalized.csv"), avg_norm_ab, prov);
  cmc::save_surface_csv(outdir / ("cmc_" + rev + "_normalized.csv"), avg_norm_ba, prov);
  cmc::save_profile_csv(outdir / ("profile_" + fwd + ".csv"),
                        cmc::strength_profile(avg_raw_ab, acfg.embedding.dimension), prov);
  cmc::save_profile_csv(outdir / ("profile_" + rev + ".csv"),
                        cmc::strength_profile(avg_raw_ba, acfg.embedding.dimension), prov);
  cmc::save_profile_csv(outdir / ("profile_" + fwd + "_normalized.csv"),
                        cmc::strength_profile(avg_norm_ab, acfg.embedding.dimension), prov);
  cmc::save_profile_csv(outdir / ("profile_" + rev + "_normalized.csv"),
                        cmc::strength_profile(avg_norm_ba, acfg.embedding.dimension), prov);
  for (const char* stem : {"ccm_", "cmc_", "profile_"}) {
    manifest.files.push_back(stem + fwd + ".csv");
    manifest.files.push_back(stem + rev + ".csv");
  }
  manifest.files.push_back("cmc_" + fwd + "_normalized.csv");
  manifest.files.push_back("cmc_" + rev + "_normalized.csv");
  manifest.files.push_back("profile_" + fwd + "_normalized.csv");
  manifest.files.push_back("profile_" + rev + "_normalized.csv");
  manifest.write(outdir);
  return 0;
}

int run_reproduce(const std::string& figure, const std::string& outdir_arg,
                  std::uint64_t seed, unsigned threads, const std::string& weights) {
  const fs::path outdir = ensure_outdir(outdir_arg.empty() ? figure : outdir_arg);
  if (figure == "fig2") return reproduce_fig2(outdir, seed, threads);
  if (figure == "fig3") return reproduce_fig3(outdir, seed, threads);
  if (figure == "fig4" || figure == "fig4a" || figure == "fig4b" || figure == "fig4c") {
    int rc = 0;
    if (figure == "fig4" || figure == "fig4a")
      rc |= run_study("length", {}, ensure_outdir((outdir / "length").string()), seed, threads);
    if (figure == "fig4" || figure == "fig4b")
      rc |= run_study("coupling", {}, ensure_outdir((outdir / "coupling").string()), seed,
                      threads);
    if (figure == "fig4" || figure == "fig4c")
      rc |= run_study("noise", {}, ensure_outdir((outdir / "noise").string()), seed, threads);
    return rc;
  }
  if (figure == "fig5")
    return run_study("embedding", {}, outdir, seed, threads);
  if (figure == "fig6") return reproduce_fig6(outdir, seed, threads);
  if (figure == "fig7") return reproduce_fig7(outdir, seed, threads);
  if (figure == "fig8") return reproduce_fig8(outdir, seed, threads, weights);
  throw cmc::invalid_argument("unknown figure id: " + figure + " (fig2..fig8)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cmc: directed, frequency-specific causal discovery between time series"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "generate benchmark data as CSV");
  sim->add_option("preset", sim_args.preset,
                  "logistic-uni|logistic-circ|logistic-hidden|logistic-indep|"
                  "lorenz-uni|lorenz-circ|lorenz-indep|kuramoto-3|wilson-cowan-v1v4")
      ->required();
  sim->add_option("--out", sim_args.out, "output CSV path (default <preset>.csv)");
  sim->add_option("--length", sim_args.length, "sample/step count override");
  sim->add_option("--seed", sim_args.seed, "random seed");
  sim->add_option("--snr", sim_args.snr, "add observational noise at this power SNR");
  sim->add_option("--subsample", sim_args.subsample,
                  "keep every n-th sample (lorenz presets default to 100)");
  auto* coupling_opt =
      sim->add_option("--coupling", sim_args.coupling, "override A21 for logistic pairs");
  sim->add_flag("--conventional_sign", sim_args.conventional_sign,
                "kuramoto: use sin(theta_j - theta_i) coupling instead of the default");
  sim->add_option("--weights", sim_args.weights, "wilson-cowan network JSON");

  AnalyzeArgs an_args;
  auto* an = app.add_subcommand("analyze", "bidirectional cross-mapping coherence analysis");
  an->add_option("--input", an_args.input, "input CSV")->required();
  an->add_option("--columns", an_args.columns, "two column names (default: first two)");
  an->add_option("--outdir", an_args.outdir, "output directory");
  an->add_option("--dimension", an_args.config.embedding.dimension, "embedding dimension E");
  an->add_option("--delay", an_args.config.embedding.delay, "embedding delay in samples");
  an->add_option("--segment_length", an_args.config.spectral.segment_length,
                 "welch segment length (0 = auto)");
  an->add_option("--overlap_fraction", an_args.config.spectral.overlap_fraction,
                 "welch segment overlap in [0,1)");
  an->add_option("--window", an_args.window, "taper: hann|hamming|boxcar");
  an->add_option("--detrend_per_segment", an_args.config.spectral.detrend_per_segment,
                 "remove per-segment mean");
  an->add_option("--min_shift", an_args.config.shift_range.min_shift, "most negative shift");
  an->add_option("--max_shift", an_args.config.shift_range.max_shift, "most positive shift");
  an->add_option("--step", an_args.config.shift_range.step, "shift step");
  an->add_option("--library_lengths", an_args.config.library_lengths,
                 "library lengths for convergence curves");
  an->add_flag("--normalization", an_args.config.normalization,
               "profiles from band-normalized surfaces");
  an->add_option("--realizations", an_args.config.realizations, "recorded in provenance");
  an->add_option("--seed", an_args.config.seed, "recorded in provenance");
  an->add_option("--neighbor_count", an_args.config.neighbor_count, "kNN count (0 = E+1)");
  an->add_option("--exclusion_radius", an_args.config.exclusion_radius,
                 "temporal self-match exclusion radius in samples");
  an->add_option("--threads", an_args.threads, "worker threads (0 = auto, capped by CMC_THREADS)");

  std::string figure, rep_outdir, rep_weights;
  std::uint64_t rep_seed = 1;
  unsigned rep_threads = 0;
  auto* rep = app.add_subcommand("reproduce", "emit the result files behind one figure");
  rep->add_option("figure", figure, "fig2|fig3|fig4[a-c]|fig5|fig6|fig7|fig8")->required();
  rep->add_option("--outdir", rep_outdir, "output directory (default ./<figure>)");
  rep->add_option("--seed", rep_seed, "random seed");
  rep->add_option("--threads", rep_threads, "worker threads");
  rep->add_option("--weights", rep_weights, "wilson-cowan network JSON (fig8)");

  std::string sweep_kind, sweep_outdir = "sweep";
  std::vector<double> sweep_values;
  std::uint64_t sweep_seed = 1;
  unsigned sweep_threads = 0;
  auto* sw = app.add_subcommand("sweep", "length/coupling/noise/embedding study");
  sw->add_option("--kind", sweep_kind, "length|coupling|noise|embedding")->required();
  sw->add_option("--values", sweep_values, "study points (defaults to the benchmark set)");
  sw->add_option("--outdir", sweep_outdir, "output directory");
  sw->add_option("--seed", sweep_seed, "random seed");
  sw->add_option("--threads", sweep_threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sim->parsed()) {
      sim_args.coupling_set = coupling_opt->count() > 0;
      return run_simulate(sim_args);
    }
    if (an->parsed()) {
      an_args.config.spectral.window = parse_taper(an_args.window);
      return run_analyze(an_args);
    }
    if (rep->parsed()) return run_reproduce(figure, rep_outdir, rep_seed, rep_threads,
                                            rep_weights);
    if (sw->parsed())
      return run_study(sweep_kind, sweep_values, ensure_outdir(sweep_outdir), sweep_seed,
                       sweep_threads);
  } catch (const cmc::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const cmc::degenerate_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const cmc::simulation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const cmc::internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const cmc::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
