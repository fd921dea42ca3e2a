#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "cmc/errors.hpp"
#include "cmc/pipeline.hpp"
#include "cmc/prominence.hpp"
#include "cmc/shift_scan.hpp"
#include "cmc/timeseries.hpp"

namespace cmc {

// CSV conventions: UTF-8, comma-separated, '#'-prefixed key=value header
// lines, one column per series in row-major time order. Numeric payloads are
// rendered with 17 significant digits so a save/load round trip is exact.

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

inline void write_atomic(const std::filesystem::path& path, const std::string& payload) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw parse_error("cannot open for writing: " + tmp.string(), 0);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw parse_error("write failed: " + tmp.string(), 0);
  }
  std::filesystem::rename(tmp, path);
}

inline void append_provenance(std::string& out, const Provenance& prov) {
  out += "# cmc_version=" + prov.version + "\n";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(prov.config_hash));
  out += "# config_hash=";
  out += buf;
  out += "\n# seed=" + std::to_string(prov.seed) + "\n";
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

inline double parse_cell(const std::string& cell, std::size_t line_no) {
  const std::string t = trim(cell);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw parse_error("non-numeric cell '" + t + "'", line_no);
  if (!std::isfinite(value)) throw parse_error("non-finite cell '" + t + "'", line_no);
  return value;
}

}  // namespace detail

struct LoadedCsv {
  std::vector<TimeSeries> series;
  std::vector<std::string> names;      // empty when the file has no columns header
  bool sample_rate_defaulted = false;  // no "# sample_rate=" header; 1 Hz assumed
};

inline LoadedCsv load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open file: " + path.string(), 0);
  double sample_rate = 1.0;
  double t0 = 0.0;
  bool have_rate = false;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = detail::trim(line);
    if (trimmed.empty()) continue;
    if (trimmed[0] == '#') {
      const std::string body = detail::trim(trimmed.substr(1));
      const std::size_t eq = body.find('=');
      if (eq == std::string::npos) continue;  // plain comment
      const std::string key = detail::trim(body.substr(0, eq));
      const std::string value = detail::trim(body.substr(eq + 1));
      if (key == "sample_rate") {
        sample_rate = detail::parse_cell(value, line_no);
        have_rate = true;
      } else if (key == "t0") {
        t0 = detail::parse_cell(value, line_no);
      } else if (key == "columns") {
        names = detail::split(value, ',');
        for (auto& n : names) n = detail::trim(n);
      }
      continue;
    }
    const std::vector<std::string> cells = detail::split(trimmed, ',');
    if (columns.empty()) columns.resize(cells.size());
    if (cells.size() != columns.size())
      throw parse_error("expected " + std::to_string(columns.size()) + " columns, got " +
                            std::to_string(cells.size()),
                        line_no);
    for (std::size_t c = 0; c < cells.size(); ++c)
      columns[c].push_back(detail::parse_cell(cells[c], line_no));
  }
  if (columns.empty() || columns.front().empty())
    throw parse_error("no data rows in " + path.string(), line_no);
  if (!names.empty() && names.size() != columns.size())
    throw parse_error("columns header names " + std::to_string(names.size()) +
                          " series, file has " + std::to_string(columns.size()),
                      line_no);
  LoadedCsv out;
  out.sample_rate_defaulted = !have_rate;
  out.names = std::move(names);
  out.series.reserve(columns.size());
  for (auto& col : columns) out.series.emplace_back(std::move(col), sample_rate, t0);
  return out;
}

inline void save_series_csv(const std::filesystem::path& path,
                            std::span<const TimeSeries> series,
                            std::span<const std::string> names,
                            const Provenance* provenance = nullptr) {
  if (series.empty()) throw invalid_argument("save_series_csv: nothing to write");
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (series[i].size() != series[0].size())
      throw invalid_argument("save_series_csv: series lengths differ");
    if (series[i].sample_rate() != series[0].sample_rate())
      throw invalid_argument("save_series_csv: sample rates differ");
  }
  if (!names.empty() && names.size() != series.size())
    throw invalid_argument("save_series_csv: name count mismatch");
  std::string out;
  if (provenance) detail::append_provenance(out, *provenance);
  out += "# sample_rate=" + format_double(series[0].sample_rate()) + "\n";
  out += "# t0=" + format_double(series[0].t0()) + "\n";
  if (!names.empty()) {
    out += "# columns=";
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) out += ',';
      out += names[i];
    }
    out += '\n';
  }
  for (std::size_t row = 0; row < series[0].size(); ++row) {
    for (std::size_t c = 0; c < series.size(); ++c) {
      if (c) out += ',';
      out += format_double(series[c][row]);
    }
    out += '\n';
  }
  detail::write_atomic(path, out);
}

inline void save_curve_csv(const std::filesystem::path& path, const CcmCurve& curve,
                           const Provenance& provenance) {
  std::string out;
  detail::append_provenance(out, provenance);
  out += "# direction=" + curve.direction_label + "\n";
  out += "shift_samples,score\n";
  for (std::size_t i = 0; i < curve.shifts.size(); ++i)
    out += std::to_string(curve.shifts[i]) + "," + format_double(curve.scores[i]) + "\n";
  detail::write_atomic(path, out);
}

inline void save_convergence_csv(const std::filesystem::path& path,
                                 std::span<const ConvergencePoint> points,
                                 std::string_view direction, const Provenance& provenance) {
  std::string out;
  detail::append_provenance(out, provenance);
  out += "# direction=" + std::string(direction) + "\n";
  out += "library_length,score\n";
  for (const auto& p : points)
    out += std::to_string(p.library_length) + "," + format_double(p.score) + "\n";
  detail::write_atomic(path, out);
}

// Long-form rendering (one row per shift x frequency cell) for plot tools.
inline void save_surface_csv(const std::filesystem::path& path, const CmcSurface& surface,
                             const Provenance& provenance) {
  std::string out;
  detail::append_provenance(out, provenance);
  out += "# direction=" + surface.direction_label + "\n";
  out += "# normalized=" + std::string(surface.normalized ? "1" : "0") + "\n";
  out += "shift_samples,frequency_hz,coherence\n";
  const std::size_t bins = surface.frequencies.size();
  for (std::size_t i = 0; i < surface.shifts.size(); ++i)
    for (std::size_t j = 0; j < bins; ++j)
      out += std::to_string(surface.shifts[i]) + "," + format_double(surface.frequencies[j]) +
             "," + format_double(surface.values[i * bins + j]) + "\n";
  detail::write_atomic(path, out);
}

inline void save_profile_csv(const std::filesystem::path& path,
                             const CausalStrengthProfile& profile,
                             const Provenance& provenance) {
  std::string out;
  detail::append_provenance(out, provenance);
  out += "# direction=" + profile.direction_label + "\n";
  out += "frequency_hz,strength,delay_samples\n";
  for (std::size_t j = 0; j < profile.frequencies.size(); ++j) {
    out += format_double(profile.frequencies[j]) + "," + format_double(profile.strength[j]) +
           ",";
    if (profile.delay[j]) out += std::to_string(*profile.delay[j]);
    out += '\n';
  }
  detail::write_atomic(path, out);
}

}  // namespace cmc
