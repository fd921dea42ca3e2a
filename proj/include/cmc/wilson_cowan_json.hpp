#pragma once

// JSON loader for user-supplied Wilson-Cowan network configurations. The
// connection weights of the two-area model are not part of this library's
// presets; they come from a file like presets/wilson_cowan_example.json.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmc/errors.hpp"
#include "cmc/simulators.hpp"
#include "cmc/timeseries.hpp"

namespace cmc {

// Simulation config plus named observables, each the sum of a population set
// (e.g. per-area aggregate rates).
struct WilsonCowanScenario {
  WilsonCowanConfig config;
  std::vector<std::string> observed_names;
  std::vector<std::vector<std::size_t>> observed_members;
  std::size_t subsample = 1;  // applied to observables before analysis
};

inline WilsonCowanScenario load_wilson_cowan_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open file: " + path.string(), 0);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("invalid JSON in " + path.string() + ": " + e.what(), 0);
  }
  try {
    WilsonCowanScenario scenario;
    WilsonCowanConfig& cfg = scenario.config;
    if (j.contains("tau_e")) cfg.tau_e = j.at("tau_e").get<double>();
    if (j.contains("tau_i")) cfg.tau_i = j.at("tau_i").get<double>();
    if (j.contains("sigma_e")) cfg.sigma_e = j.at("sigma_e").get<double>();
    if (j.contains("sigma_i")) cfg.sigma_i = j.at("sigma_i").get<double>();
    cfg.dt = j.at("dt").get<double>();
    cfg.steps = j.at("steps").get<std::size_t>();
    if (j.contains("burn_in")) cfg.burn_in = j.at("burn_in").get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("subsample")) scenario.subsample = j.at("subsample").get<std::size_t>();

    std::map<std::string, std::size_t> index_of;
    for (const auto& pj : j.at("populations")) {
      WilsonCowanPopulation pop;
      pop.name = pj.at("name").get<std::string>();
      const std::string kind = pj.at("kind").get<std::string>();
      if (kind == "E" || kind == "e")
        pop.kind = PopulationKind::excitatory;
      else if (kind == "I" || kind == "i")
        pop.kind = PopulationKind::inhibitory;
      else
        throw parse_error("population kind must be E or I, got '" + kind + "'", 0);
      if (pj.contains("i_ext")) pop.external_input = pj.at("i_ext").get<double>();
      if (pj.contains("tau")) pop.tau = pj.at("tau").get<double>();
      if (pj.contains("sigma")) pop.sigma = pj.at("sigma").get<double>();
      if (index_of.count(pop.name))
        throw parse_error("duplicate population name '" + pop.name + "'", 0);
      index_of[pop.name] = cfg.populations.size();
      cfg.populations.push_back(std::move(pop));
    }

    const std::size_t p = cfg.populations.size();
    const auto& wj = j.at("weights");
    if (wj.size() != p) throw parse_error("weights must have one row per population", 0);
    cfg.weights.reserve(p * p);
    for (const auto& row : wj) {
      if (row.size() != p)
        throw parse_error("weights rows must have one entry per population", 0);
      for (const auto& v : row) cfg.weights.push_back(v.get<double>());
    }

    if (j.contains("initial_rates"))
      cfg.initial_rates = j.at("initial_rates").get<std::vector<double>>();

    if (j.contains("observed")) {
      for (const auto& oj : j.at("observed")) {
        scenario.observed_names.push_back(oj.at("name").get<std::string>());
        std::vector<std::size_t> members;
        for (const auto& nj : oj.at("sum")) {
          const std::string name = nj.get<std::string>();
          const auto it = index_of.find(name);
          if (it == index_of.end())
            throw parse_error("observed references unknown population '" + name + "'", 0);
          members.push_back(it->second);
        }
        if (members.empty()) throw parse_error("observed sum must not be empty", 0);
        scenario.observed_members.push_back(std::move(members));
      }
    } else {
      for (std::size_t i = 0; i < p; ++i) {
        scenario.observed_names.push_back(cfg.populations[i].name);
        scenario.observed_members.push_back({i});
      }
    }
    cfg.validate();
    return scenario;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error("invalid Wilson-Cowan config in " + path.string() + ": " + e.what(), 0);
  }
}

// Applies the scenario's observable sums (and subsampling) to a simulation.
inline std::vector<TimeSeries> observe_wilson_cowan(const WilsonCowanScenario& scenario,
                                                    const std::vector<TimeSeries>& populations) {
  std::vector<TimeSeries> out;
  out.reserve(scenario.observed_names.size());
  for (const auto& members : scenario.observed_members) {
    std::vector<double> sum(populations[members[0]].size(), 0.0);
    for (const std::size_t m : members)
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += populations[m][i];
    TimeSeries series(std::move(sum), populations[members[0]].sample_rate());
    out.push_back(scenario.subsample > 1 ? subsample(series, scenario.subsample)
                                         : std::move(series));
  }
  return out;
}

}  // namespace cmc
