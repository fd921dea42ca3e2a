#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cmc/detail/rng.hpp"
#include "cmc/errors.hpp"
#include "cmc/timeseries.hpp"

namespace cmc {

// ---------------------------------------------------------------------------
// Coupled logistic maps:  x_i[t+1] = F(r_i x_i[t] (1 - sum_j A_ij x_j[t]))
// with unit diagonal coupling and a mirroring boundary that reflects values
// back into [0, 1].
// ---------------------------------------------------------------------------

struct LogisticMapConfig {
  std::vector<double> rates;
  std::vector<double> coupling;       // row-major n x n, A_ii = 1
  std::size_t length = 10000;
  std::vector<double> initial_state;  // empty: seeded uniform in (0.05, 0.95)
  std::uint64_t seed = 0;
  std::size_t burn_in = 0;

  void validate() const {
    const std::size_t n = rates.size();
    if (n == 0) throw invalid_argument("LogisticMapConfig: no maps");
    if (coupling.size() != n * n)
      throw invalid_argument("LogisticMapConfig: coupling matrix must be n x n");
    for (std::size_t i = 0; i < n; ++i)
      if (coupling[i * n + i] != 1.0)
        throw invalid_argument("LogisticMapConfig: coupling diagonal must be 1");
    if (!initial_state.empty()) {
      if (initial_state.size() != n)
        throw invalid_argument("LogisticMapConfig: initial_state size mismatch");
      for (const double v : initial_state)
        if (!(v > 0.0 && v < 1.0))
          throw invalid_argument("LogisticMapConfig: initial state must lie in (0, 1)");
    }
    if (length == 0) throw invalid_argument("LogisticMapConfig: length must be >= 1");
  }
};

namespace detail {
// Reflect at 0 and at 1 until the value lands in [0, 1].
inline double mirror_into_unit(double v) {
  for (int guard = 0; guard < 1024; ++guard) {
    if (v < 0.0)
      v = -v;
    else if (v > 1.0)
      v = 2.0 - v;
    else
      return v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}
}  // namespace detail

inline std::vector<TimeSeries> simulate_logistic(const LogisticMapConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.rates.size();
  std::vector<double> state = cfg.initial_state;
  if (state.empty()) {
    detail::GaussianRng rng(cfg.seed);
    state.resize(n);
    for (double& v : state) v = 0.05 + 0.9 * rng.uniform();
  }
  std::vector<std::vector<double>> out(n);
  for (auto& series : out) series.reserve(cfg.length);
  std::vector<double> next(n);
  const std::size_t total = cfg.burn_in + cfg.length;
  for (std::size_t t = 0; t < total; ++t) {
    if (t >= cfg.burn_in)
      for (std::size_t i = 0; i < n; ++i) out[i].push_back(state[i]);
    for (std::size_t i = 0; i < n; ++i) {
      double drive = 0.0;
      for (std::size_t j = 0; j < n; ++j) drive += cfg.coupling[i * n + j] * state[j];
      const double raw = cfg.rates[i] * state[i] * (1.0 - drive);
      next[i] = detail::mirror_into_unit(raw);
      if (!std::isfinite(next[i]))
        throw simulation_error("simulate_logistic: state diverged", t);
    }
    state.swap(next);
  }
  std::vector<TimeSeries> result;
  result.reserve(n);
  for (auto& series : out) result.emplace_back(std::move(series), 1.0);
  return result;
}

// Benchmark scenarios: unidirectional x1 -> x2, circular, hidden third
// driver, and independent pairs.
inline LogisticMapConfig logistic_preset(std::string_view name, std::size_t length = 10000,
                                         std::uint64_t seed = 1) {
  LogisticMapConfig cfg;
  cfg.length = length;
  cfg.seed = seed;
  auto pair = [&](double r1, double r2, double a21, double a12) {
    cfg.rates = {r1, r2};
    cfg.coupling = {1.0, a12,  //
                    a21, 1.0};
  };
  if (name == "logistic-uni") {
    pair(3.9902032398544094, 3.9900842430866197, 0.05, 0.0);
  } else if (name == "logistic-circ") {
    pair(3.9903787118484475, 3.9900528401775186, 0.05, 0.05);
  } else if (name == "logistic-hidden") {
    cfg.rates = {3.9903839016316964, 3.9904120926448896, 3.9904110403001893};
    cfg.coupling = {1.0, 0.0, 0.05,  //
                    0.0, 1.0, 0.05,  //
                    0.0, 0.0, 1.0};
  } else if (name == "logistic-indep") {
    pair(3.9903770705735107, 3.9907504255884914, 0.0, 0.0);
  } else {
    throw invalid_argument("unknown logistic preset: " + std::string(name));
  }
  return cfg;
}

// Parameterizations of the robustness studies.
inline LogisticMapConfig logistic_length_study(std::size_t length, std::uint64_t seed = 1) {
  LogisticMapConfig cfg;
  cfg.rates = {3.99097965, 3.99024767};
  cfg.coupling = {1.0, 0.0, 0.05, 1.0};
  cfg.length = length;
  cfg.seed = seed;
  return cfg;
}

inline LogisticMapConfig logistic_coupling_study(double coupling, std::size_t length = 2000,
                                                 std::uint64_t seed = 1) {
  LogisticMapConfig cfg;
  cfg.rates = {3.99, 3.99};
  cfg.coupling = {1.0, 0.0, coupling, 1.0};
  cfg.length = length;
  cfg.seed = seed;
  return cfg;
}

inline LogisticMapConfig logistic_noise_study(std::size_t length = 2000,
                                              std::uint64_t seed = 1) {
  LogisticMapConfig cfg;
  cfg.rates = {3.99097965, 3.99024767};
  cfg.coupling = {1.0, 0.0, 0.15, 1.0};
  cfg.length = length;
  cfg.seed = seed;
  return cfg;
}

inline LogisticMapConfig logistic_embedding_study(std::uint64_t seed = 1) {
  return logistic_noise_study(20000, seed);
}

// ---------------------------------------------------------------------------
// Coupled Lorenz systems, fixed-step classical RK4. Coupling enters the first
// equation of each subsystem: x1' = sigma1 [(y1 - x1) + kappa1 (y2 - x1)] and
// symmetrically for the second subsystem.
// ---------------------------------------------------------------------------

struct LorenzConfig {
  double sigma1 = 10.000, rho1 = 27.000, beta1 = 2.667;
  double sigma2 = 10.209, rho2 = 25.900, beta2 = 2.652;
  double kappa1 = 0.0, kappa2 = 0.0;
  std::size_t steps = 5'000'000;  // recorded samples, dt apart
  double dt = 1e-3;
  std::array<double, 6> initial_state{1.0, 1.0, 1.0, 1.1, 0.9, 1.2};

  void validate() const {
    if (!(dt > 0.0)) throw invalid_argument("LorenzConfig: dt must be positive");
    if (steps == 0) throw invalid_argument("LorenzConfig: steps must be >= 1");
  }
};

// Trajectories ordered x1, y1, z1, x2, y2, z2.
inline std::vector<TimeSeries> simulate_lorenz(const LorenzConfig& cfg) {
  cfg.validate();
  using State = std::array<double, 6>;
  auto deriv = [&cfg](const State& s, State& d) {
    d[0] = cfg.sigma1 * ((s[1] - s[0]) + cfg.kappa1 * (s[4] - s[0]));
    d[1] = s[0] * (cfg.rho1 - s[2]) - s[1];
    d[2] = s[0] * s[1] - cfg.beta1 * s[2];
    d[3] = cfg.sigma2 * ((s[4] - s[3]) + cfg.kappa2 * (s[1] - s[3]));
    d[4] = s[3] * (cfg.rho2 - s[5]) - s[4];
    d[5] = s[3] * s[4] - cfg.beta2 * s[5];
  };

  std::vector<std::vector<double>> out(6);
  for (auto& series : out) series.reserve(cfg.steps);
  State s = cfg.initial_state;
  State k1, k2, k3, k4, tmp;
  const double dt = cfg.dt;
  for (std::size_t t = 0; t < cfg.steps; ++t) {
    for (std::size_t i = 0; i < 6; ++i) {
      if (!std::isfinite(s[i])) throw simulation_error("simulate_lorenz: state diverged", t);
      out[i].push_back(s[i]);
    }
    deriv(s, k1);
    for (std::size_t i = 0; i < 6; ++i) tmp[i] = s[i] + 0.5 * dt * k1[i];
    deriv(tmp, k2);
    for (std::size_t i = 0; i < 6; ++i) tmp[i] = s[i] + 0.5 * dt * k2[i];
    deriv(tmp, k3);
    for (std::size_t i = 0; i < 6; ++i) tmp[i] = s[i] + dt * k3[i];
    deriv(tmp, k4);
    for (std::size_t i = 0; i < 6; ++i)
      s[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  const double fs = 1.0 / cfg.dt;
  std::vector<TimeSeries> result;
  result.reserve(6);
  for (auto& series : out) result.emplace_back(std::move(series), fs);
  return result;
}

inline LorenzConfig lorenz_preset(std::string_view name) {
  LorenzConfig cfg;
  if (name == "lorenz-uni") {
    cfg.kappa1 = 0.0;
    cfg.kappa2 = 0.1;
  } else if (name == "lorenz-circ") {
    cfg.kappa1 = 0.1;
    cfg.kappa2 = 0.1;
  } else if (name == "lorenz-indep") {
    cfg.kappa1 = 0.0;
    cfg.kappa2 = 0.0;
  } else {
    throw invalid_argument("unknown lorenz preset: " + std::string(name));
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Kuramoto oscillator network, Euler-Maruyama. The observed series are
// x_i = sin(theta_i). The coupling term follows sin(theta_i - theta_j)
// verbatim; conventional_sign flips it to the textbook attractive form
// sin(theta_j - theta_i).
// ---------------------------------------------------------------------------

struct KuramotoConfig {
  std::vector<double> base_frequencies_hz{10.50422624, 59.0, 40.0};
  std::vector<double> couplings{0.0, 3.0, 4.3};
  double noise_std = 0.1;
  double dt = 5e-3;
  std::size_t steps = 20000;
  std::uint64_t seed = 0;
  std::vector<double> initial_phases;  // empty: seeded uniform in [0, 2pi)
  bool conventional_sign = false;

  void validate() const {
    if (base_frequencies_hz.empty())
      throw invalid_argument("KuramotoConfig: no oscillators");
    if (couplings.size() != base_frequencies_hz.size())
      throw invalid_argument("KuramotoConfig: couplings size mismatch");
    if (!initial_phases.empty() && initial_phases.size() != base_frequencies_hz.size())
      throw invalid_argument("KuramotoConfig: initial_phases size mismatch");
    if (!(dt > 0.0)) throw invalid_argument("KuramotoConfig: dt must be positive");
    if (noise_std < 0.0) throw invalid_argument("KuramotoConfig: noise_std must be >= 0");
    if (steps == 0) throw invalid_argument("KuramotoConfig: steps must be >= 1");
  }
};

inline std::vector<TimeSeries> simulate_kuramoto(const KuramotoConfig& cfg) {
  cfg.validate();
  const std::size_t m = cfg.base_frequencies_hz.size();
  detail::GaussianRng rng(cfg.seed);
  std::vector<double> theta = cfg.initial_phases;
  if (theta.empty()) {
    theta.resize(m);
    for (double& v : theta) v = 2.0 * std::numbers::pi * rng.uniform();
  }
  std::vector<std::vector<double>> out(m);
  for (auto& series : out) series.reserve(cfg.steps);
  const double sqrt_dt = std::sqrt(cfg.dt);
  std::vector<double> drift(m);
  for (std::size_t t = 0; t < cfg.steps; ++t) {
    for (std::size_t i = 0; i < m; ++i) out[i].push_back(std::sin(theta[i]));
    for (std::size_t i = 0; i < m; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double diff =
            cfg.conventional_sign ? theta[j] - theta[i] : theta[i] - theta[j];
        sum += std::sin(diff);
      }
      drift[i] = 2.0 * std::numbers::pi * cfg.base_frequencies_hz[i] +
                 cfg.couplings[i] / static_cast<double>(m) * sum;
    }
    for (std::size_t i = 0; i < m; ++i)
      theta[i] += drift[i] * cfg.dt + cfg.noise_std * sqrt_dt * rng.gaussian();
  }
  const double fs = 1.0 / cfg.dt;
  std::vector<TimeSeries> result;
  result.reserve(m);
  for (auto& series : out) result.emplace_back(std::move(series), fs);
  return result;
}

// Three oscillators: a slow common driver z plus mutually coupled x and y.
inline KuramotoConfig kuramoto_preset(std::uint64_t seed = 1) {
  KuramotoConfig cfg;
  cfg.seed = seed;
  return cfg;
}

// ---------------------------------------------------------------------------
// Wilson-Cowan-type neural mass network:
//   tau_i dr_i/dt = -r_i + Theta(sum_j W_ij r_j + I_ext,i) + sqrt(tau_i) xi_i
// with the transduction Theta(x) = x / (1 - exp(-x)), Theta(0) = 1, and
// Gaussian noise of per-population strength sigma. Time constants and noise
// strengths default per population kind and can be overridden per population,
// which makes layered configurations (fast gamma module + slow alpha module)
// expressible.
// ---------------------------------------------------------------------------

enum class PopulationKind { excitatory, inhibitory };

struct WilsonCowanPopulation {
  std::string name;
  PopulationKind kind = PopulationKind::excitatory;
  double external_input = 0.0;
  std::optional<double> tau;    // seconds; defaults to tau_e / tau_i by kind
  std::optional<double> sigma;  // defaults to sigma_e / sigma_i by kind
};

struct WilsonCowanConfig {
  double tau_e = 6e-3, tau_i = 15e-3;
  double sigma_e = 0.3, sigma_i = 0.3;
  std::vector<WilsonCowanPopulation> populations;
  std::vector<double> weights;  // P x P row-major; input to i is sum_j W[i][j] r[j]
  double dt = 5e-4;
  std::size_t steps = 20000;
  std::size_t burn_in = 0;
  std::uint64_t seed = 0;
  std::vector<double> initial_rates;  // empty: zeros

  void validate() const {
    const std::size_t p = populations.size();
    if (p == 0) throw invalid_argument("WilsonCowanConfig: no populations");
    if (weights.size() != p * p)
      throw invalid_argument("WilsonCowanConfig: weights must be P x P");
    if (!initial_rates.empty() && initial_rates.size() != p)
      throw invalid_argument("WilsonCowanConfig: initial_rates size mismatch");
    if (!(tau_e > 0.0 && tau_i > 0.0))
      throw invalid_argument("WilsonCowanConfig: time constants must be positive");
    if (sigma_e < 0.0 || sigma_i < 0.0)
      throw invalid_argument("WilsonCowanConfig: noise strengths must be >= 0");
    if (!(dt > 0.0)) throw invalid_argument("WilsonCowanConfig: dt must be positive");
    if (steps == 0) throw invalid_argument("WilsonCowanConfig: steps must be >= 1");
    for (const auto& pop : populations) {
      if (pop.tau && !(*pop.tau > 0.0))
        throw invalid_argument("WilsonCowanConfig: population tau must be positive");
      if (pop.sigma && *pop.sigma < 0.0)
        throw invalid_argument("WilsonCowanConfig: population sigma must be >= 0");
    }
  }
};

// Theta(x) = x / (1 - e^{-x}) continued through the removable singularity.
inline double wilson_cowan_transduction(double x) {
  if (std::abs(x) < 1e-5) return 1.0 + x / 2.0 + x * x / 12.0;
  return x / (-std::expm1(-x));
}

inline std::vector<TimeSeries> simulate_wilson_cowan(const WilsonCowanConfig& cfg) {
  cfg.validate();
  const std::size_t p = cfg.populations.size();
  std::vector<double> tau(p), noise_scale(p);
  for (std::size_t i = 0; i < p; ++i) {
    const auto& pop = cfg.populations[i];
    const bool exc = pop.kind == PopulationKind::excitatory;
    tau[i] = pop.tau ? *pop.tau : (exc ? cfg.tau_e : cfg.tau_i);
    const double sigma = pop.sigma ? *pop.sigma : (exc ? cfg.sigma_e : cfg.sigma_i);
    noise_scale[i] = sigma * std::sqrt(cfg.dt / tau[i]);
  }
  std::vector<double> r = cfg.initial_rates;
  if (r.empty()) r.assign(p, 0.0);
  detail::GaussianRng rng(cfg.seed);
  std::vector<std::vector<double>> out(p);
  for (auto& series : out) series.reserve(cfg.steps);
  std::vector<double> input(p);
  const std::size_t total = cfg.burn_in + cfg.steps;
  for (std::size_t t = 0; t < total; ++t) {
    if (t >= cfg.burn_in)
      for (std::size_t i = 0; i < p; ++i) out[i].push_back(r[i]);
    for (std::size_t i = 0; i < p; ++i) {
      double acc = cfg.populations[i].external_input;
      for (std::size_t j = 0; j < p; ++j) acc += cfg.weights[i * p + j] * r[j];
      input[i] = acc;
    }
    for (std::size_t i = 0; i < p; ++i) {
      r[i] += (-r[i] + wilson_cowan_transduction(input[i])) * cfg.dt / tau[i] +
              noise_scale[i] * rng.gaussian();
      if (!std::isfinite(r[i]))
        throw simulation_error("simulate_wilson_cowan: state diverged", t);
    }
  }
  const double fs = 1.0 / cfg.dt;
  std::vector<TimeSeries> result;
  result.reserve(p);
  for (auto& series : out) result.emplace_back(std::move(series), fs);
  return result;
}

}  // namespace cmc
