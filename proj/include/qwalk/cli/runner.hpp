// Copyright 2026 The qwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Experiment runner behind the `qwalk` executable. Each subcommand writes
// plot-ready CSV files plus a JSON manifest that can be fed back through
// --config to repeat the run.
//
// Configuration layers, lowest to highest precedence: per-command defaults,
// --config file, QWALK_<KEY> environment variables, command-line flags.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/qwalk.hpp"

namespace qwalk::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kInvalidConfig = 2,
  kResourceGuard = 3,
  kNumericalFailure = 4,
};

struct RunConfig {
  std::string command;
  ChainSpec chain;
  double t_max = 10.0;
  double dt = 0.1;
  std::string method = "bessel";
  std::string model = "xxz";
  std::string out = "out";
  int threads = 1;
  std::uint64_t seed = 0;
  std::optional<double> fit_tmin;
  std::optional<double> fit_tmax;
  int snapshots = 64;
  bool snapshot_zero = false;
  bool write_spectra = false;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {"sp-magic", "magnetization", "two-magic",
                                                 "pauli-stats"};
  return names;
}

/// Keys shared by flags (--key), config files and QWALK_<KEY> variables.
inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "L",      "J",      "delta",     "jprime", "particles", "tmax",      "dt",
      "method", "model",  "out",       "threads", "seed",     "fit_tmin",  "fit_tmax",
      "snapshots", "snapshot_zero", "write_spectra"};
  return keys;
}

inline std::string describe_command(const std::string& command) {
  if (command == "sp-magic") return "M2(t) of a single flipped spin (bessel, asymptotic, ed or spectrum)";
  if (command == "magnetization") return "<Z_j>(t) profiles and light-cone front fits";
  if (command == "two-magic") return "two-magnon M2(t), its running average and the doublon comparison";
  if (command == "pauli-stats") return "spacing-ratio statistics of long-time Pauli spectra";
  return {};
}

inline std::string describe_key(const std::string& key) {
  static const std::map<std::string, std::string> text = {
      {"L", "number of sites"},
      {"J", "nearest-neighbour coupling"},
      {"delta", "ZZ anisotropy (>= 0)"},
      {"jprime", "next-nearest-neighbour hopping (model nnn)"},
      {"particles", "flipped spins, 1 or 2"},
      {"tmax", "final time"},
      {"dt", "time step"},
      {"method", "sp-magic route: bessel, asymptotic, ed, spectrum"},
      {"model", "xxz or nnn"},
      {"out", "output directory"},
      {"threads", "worker threads"},
      {"seed", "recorded in the manifest; all commands are deterministic"},
      {"fit_tmin", "start of the fit window"},
      {"fit_tmax", "end of the fit window"},
      {"snapshots", "long-time snapshots pooled by pauli-stats"},
      {"snapshot_zero", "also count stabilizer values of the t = 0 spectrum"},
      {"write_spectra", "write each filtered snapshot spectrum"}};
  const auto it = text.find(key);
  return it == text.end() ? std::string() : it->second;
}

inline RunConfig defaults_for(const std::string& command) {
  RunConfig c;
  c.command = command;
  if (command == "sp-magic") {
    c.chain = {600, 1.0, 0.0, 0.0, 1};
    c.t_max = 100.0;
    c.dt = 0.5;
    c.method = "bessel";
  } else if (command == "magnetization") {
    c.chain = {128, 1.0, 0.5, 0.0, 2};
    c.t_max = 60.0;
    c.dt = 0.5;
    c.method = "ed";
  } else if (command == "two-magic") {
    c.chain = {10, 1.0, 1.0, 0.0, 2};
    c.t_max = 20.0;
    c.dt = 0.1;
    c.method = "spectrum";
  } else if (command == "pauli-stats") {
    c.chain = {10, 1.0, 0.5, 0.0, 2};
    c.method = "spectrum";
  }
  return c;
}

inline nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["L"] = c.chain.sites;
  j["J"] = c.chain.J;
  j["delta"] = c.chain.delta;
  j["jprime"] = c.chain.jprime;
  j["particles"] = c.chain.particles;
  j["tmax"] = c.t_max;
  j["dt"] = c.dt;
  j["method"] = c.method;
  j["model"] = c.model;
  j["out"] = c.out;
  j["threads"] = c.threads;
  j["seed"] = c.seed;
  j["fit_tmin"] = c.fit_tmin ? nlohmann::json(*c.fit_tmin) : nlohmann::json(nullptr);
  j["fit_tmax"] = c.fit_tmax ? nlohmann::json(*c.fit_tmax) : nlohmann::json(nullptr);
  j["snapshots"] = c.snapshots;
  j["snapshot_zero"] = c.snapshot_zero;
  j["write_spectra"] = c.write_spectra;
  return j;
}

namespace detail {

inline double as_number(const std::string& key, const nlohmann::json& v) {
  if (!v.is_number()) throw InvalidArgument("config key '" + key + "' must be a number");
  return v.get<double>();
}

inline int as_int(const std::string& key, const nlohmann::json& v) {
  const double x = as_number(key, v);
  if (x != std::floor(x) || std::abs(x) > 1e9)
    throw InvalidArgument("config key '" + key + "' must be an integer");
  return static_cast<int>(x);
}

inline bool as_bool(const std::string& key, const nlohmann::json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) return v.get<int>() != 0;
  throw InvalidArgument("config key '" + key + "' must be a boolean");
}

inline std::string as_string(const std::string& key, const nlohmann::json& v) {
  if (!v.is_string()) throw InvalidArgument("config key '" + key + "' must be a string");
  return v.get<std::string>();
}

inline bool is_string_key(std::string_view key) {
  return key == "method" || key == "model" || key == "out";
}

// Raw text from a flag or environment variable to a JSON value.
inline nlohmann::json parse_scalar(const std::string& key, const std::string& text) {
  if (is_string_key(key)) return text;
  if (text == "true" || text == "false") return text == "true";
  auto v = nlohmann::json::parse(text, nullptr, false);
  if (v.is_discarded() || !(v.is_number() || v.is_boolean() || v.is_null()))
    throw InvalidArgument("value '" + text + "' for '" + key + "' is not a number");
  return v;
}

}  // namespace detail

inline void set_field(RunConfig& c, const std::string& key, const nlohmann::json& v) {
  using namespace detail;
  if (key == "L") c.chain.sites = as_int(key, v);
  else if (key == "J") c.chain.J = as_number(key, v);
  else if (key == "delta") c.chain.delta = as_number(key, v);
  else if (key == "jprime") c.chain.jprime = as_number(key, v);
  else if (key == "particles") c.chain.particles = as_int(key, v);
  else if (key == "tmax") c.t_max = as_number(key, v);
  else if (key == "dt") c.dt = as_number(key, v);
  else if (key == "method") c.method = as_string(key, v);
  else if (key == "model") c.model = as_string(key, v);
  else if (key == "out") c.out = as_string(key, v);
  else if (key == "threads") c.threads = as_int(key, v);
  else if (key == "seed") c.seed = static_cast<std::uint64_t>(as_int(key, v));
  else if (key == "fit_tmin") c.fit_tmin = v.is_null() ? std::nullopt : std::optional(as_number(key, v));
  else if (key == "fit_tmax") c.fit_tmax = v.is_null() ? std::nullopt : std::optional(as_number(key, v));
  else if (key == "snapshots") c.snapshots = as_int(key, v);
  else if (key == "snapshot_zero") c.snapshot_zero = as_bool(key, v);
  else if (key == "write_spectra") c.write_spectra = as_bool(key, v);
  else throw InvalidArgument("unknown config key '" + key + "'");
}

/// Accepts a flat object of config keys, or a run manifest (uses its
/// "config" member).
inline void apply_json(RunConfig& c, const nlohmann::json& j) {
  const nlohmann::json& cfg = j.contains("config") && j["config"].is_object() ? j["config"] : j;
  if (!cfg.is_object()) throw InvalidArgument("config file must hold a JSON object");
  for (const auto& [key, value] : cfg.items()) set_field(c, key, value);
}

inline void apply_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path);
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw InvalidArgument("config file " + path + " is not valid JSON");
  apply_json(c, j);
}

using EnvLookup = std::function<const char*(const char*)>;

inline void apply_env(RunConfig& c, const EnvLookup& lookup) {
  for (const auto& key : config_keys()) {
    std::string name = "QWALK_";
    for (char ch : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (const char* value = lookup(name.c_str()))
      set_field(c, key, detail::parse_scalar(key, value));
  }
}

inline void validate(const RunConfig& c) {
  c.chain.validate();
  qwalk::detail::require(c.dt > 0.0, "dt must be positive");
  qwalk::detail::require(c.t_max >= c.dt, "tmax must be at least dt");
  qwalk::detail::require(c.threads >= 1, "threads must be >= 1");
  qwalk::detail::require(c.snapshots >= 1, "snapshots must be >= 1");
  qwalk::detail::require(c.model == "xxz" || c.model == "nnn", "model must be xxz or nnn");
  if (c.model == "xxz")
    qwalk::detail::require(c.chain.jprime == 0.0, "model xxz needs jprime = 0 (use --model nnn)");
  if (c.fit_tmin && c.fit_tmax) qwalk::detail::require(*c.fit_tmin < *c.fit_tmax, "fit_tmin must be < fit_tmax");
  if (c.command == "sp-magic") {
    qwalk::detail::require(c.method == "bessel" || c.method == "ed" || c.method == "asymptotic" ||
                        c.method == "spectrum",
                    "sp-magic method must be bessel, ed, asymptotic or spectrum");
    qwalk::detail::require(c.chain.particles == 1, "sp-magic is a single-particle walk");
  }
}

/// t_k = k dt for k = 0 .. floor(tmax / dt).
inline std::vector<double> time_grid(double t_max, double dt) {
  const auto steps = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
  std::vector<double> t(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) t[k] = static_cast<double>(k) * dt;
  return t;
}

inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

inline std::string series_csv(const std::vector<double>& t, const std::vector<double>& m2,
                              const std::string& method) {
  std::string s = "time,m2,method\n";
  for (std::size_t n = 0; n < t.size(); ++n)
    s += format_number(t[n]) + ',' + format_number(m2[n]) + ',' + method + '\n';
  return s;
}

inline nlohmann::json manifest(const RunConfig& c) {
  nlohmann::json j;
  j["tool"] = "qwalk";
  j["version"] = kVersion;
  j["command"] = c.command;
  j["config"] = to_json(c);
  return j;
}

inline SectorBasis walker_basis(const ChainSpec& chain) {
  return chain.particles == 1 ? SectorBasis::single_magnon(chain.sites)
                              : SectorBasis::two_magnon(chain.sites);
}

inline nlohmann::json front_json(const FrontFit& f, double threshold, TimeWindow w) {
  return {{"threshold", threshold},
          {"window", {w.begin, w.end}},
          {"velocity", f.velocity},
          {"velocity_left", f.velocity_left},
          {"velocity_right", f.velocity_right},
          {"residual", f.residual}};
}

}  // namespace detail

/// Time at which the fast (v = J) front reaches the chain end.
inline double fast_front_reflection_time(const ChainSpec& chain) {
  return (chain.sites / 2 - 2) / std::abs(chain.J);
}

inline nlohmann::json cmd_sp_magic(const RunConfig& c) {
  const auto& chain = c.chain;
  const auto times = time_grid(c.t_max, c.dt);
  std::vector<double> t_out, m2;
  if (c.method == "bessel") {
    m2.resize(times.size());
    parallel_for(times.size(), c.threads,
                 [&](std::size_t n) { m2[n] = m2_bessel(times[n], chain.J, chain.sites); });
    t_out = times;
  } else if (c.method == "asymptotic") {
    qwalk::detail::require(c.t_max * chain.J > 1.0, "asymptotic form needs tmax * J > 1");
    for (double t : times)
      if (t * chain.J > 1.0) {
        t_out.push_back(t);
        m2.push_back(m2_asymptotic(t, chain.J));
      }
  } else {
    if (c.method == "spectrum" && chain.sites > kMaxSpectrumSites)
      throw ResourceLimit("spectrum method limited to L <= " + std::to_string(kMaxSpectrumSites));
    const auto basis = SectorBasis::single_magnon(chain.sites);
    const Propagator prop(build_sector_hamiltonian(chain, basis));
    const auto psi0 = initial_state(chain, basis);
    m2.resize(times.size());
    const bool spectrum = c.method == "spectrum";
    parallel_for(times.size(), c.threads, [&](std::size_t n) {
      const auto psi = prop.evolve(psi0, times[n]);
      m2[n] = spectrum ? m2_from_spectrum(pauli_spectrum_full(psi)) : m2_coeff(psi);
    });
    t_out = times;
  }
  detail::write_file(std::filesystem::path(c.out) / "m2.csv", detail::series_csv(t_out, m2, c.method));
  auto j = detail::manifest(c);
  j["results"] = {{"rows", t_out.size()}};
  return j;
}

inline nlohmann::json cmd_magnetization(const RunConfig& c) {
  const auto& chain = c.chain;
  const auto times = time_grid(c.t_max, c.dt);
  const auto basis = detail::walker_basis(chain);
  const Propagator prop(build_sector_hamiltonian(chain, basis));
  const auto psi0 = initial_state(chain, basis);
  std::vector<std::vector<double>> profiles(times.size());
  parallel_for(times.size(), c.threads, [&](std::size_t n) {
    profiles[n] = magnetization_profile(prop.evolve(psi0, times[n]));
  });

  std::string z = "time,site,z\n";
  for (std::size_t n = 0; n < times.size(); ++n)
    for (std::size_t j = 0; j < profiles[n].size(); ++j)
      z += format_number(times[n]) + ',' + std::to_string(j) + ',' + format_number(profiles[n][j]) + '\n';
  detail::write_file(std::filesystem::path(c.out) / "zprofile.csv", z);

  const double t_edge = std::min(c.t_max, fast_front_reflection_time(chain));
  const TimeWindow window{c.fit_tmin.value_or(0.1 * t_edge), c.fit_tmax.value_or(0.9 * t_edge)};
  const auto fast = light_cone_front(times, profiles, window, kFastFrontThreshold);
  std::string f = "time,left,right\n";
  for (std::size_t n = 0; n < times.size(); ++n)
    f += format_number(times[n]) + ',' + std::to_string(fast.left[n]) + ',' +
         std::to_string(fast.right[n]) + '\n';
  detail::write_file(std::filesystem::path(c.out) / "front.csv", f);

  auto j = detail::manifest(c);
  j["results"]["fast_front"] = detail::front_json(fast, kFastFrontThreshold, window);
  try {
    const auto bright = light_cone_front(times, profiles, window, kBrightFrontThreshold);
    j["results"]["bright_front"] = detail::front_json(bright, kBrightFrontThreshold, window);
  } catch (const InvalidArgument& e) {
    j["results"]["bright_front"] = {{"threshold", kBrightFrontThreshold}, {"error", e.what()}};
  }
  return j;
}

inline nlohmann::json cmd_two_magic(const RunConfig& c) {
  ChainSpec chain = c.chain;
  chain.particles = 2;
  if (chain.sites > kMaxSpectrumSites)
    throw ResourceLimit("two-magic uses the full Pauli spectrum, L <= " + std::to_string(kMaxSpectrumSites));
  const auto times = time_grid(c.t_max, c.dt);
  const auto basis = SectorBasis::two_magnon(chain.sites);
  const Propagator prop(build_sector_hamiltonian(chain, basis));
  const auto psi0 = initial_state(chain, basis);
  MagicSeries total{chain, Estimator::spectrum, times, std::vector<double>(times.size())};
  parallel_for(times.size(), c.threads, [&](std::size_t n) {
    total.m2[n] = m2_from_spectrum(pauli_spectrum_full(prop.evolve(psi0, times[n])));
  });
  const std::filesystem::path out(c.out);
  detail::write_file(out / "m2.csv", detail::series_csv(times, total.m2, "spectrum"));
  const auto cumulative = cumulative_average(total);
  detail::write_file(out / "m2_cumulative.csv", detail::series_csv(times, cumulative.m2, "cumulative"));

  auto j = detail::manifest(c);
  if (chain.delta > 0.0) {
    const auto doublon = doublon_magic_series(chain, times, false, c.threads);
    detail::write_file(out / "m2_doublon.csv", detail::series_csv(times, doublon.m2, "doublon"));
    const auto late = default_late_window(chain);
    const TimeWindow window{c.fit_tmin.value_or(late.begin), c.fit_tmax.value_or(late.end)};
    nlohmann::json shift;
    try {
      const auto fit = shift_fit(total, doublon, window);
      shift = {{"window", {window.begin, window.end}},
               {"shift", fit.shift},
               {"residual", fit.residual},
               {"samples", fit.samples}};
    } catch (const InvalidArgument& e) {
      shift = {{"window", {window.begin, window.end}}, {"error", e.what()}};
    }
    detail::write_file(out / "shift.json", shift.dump(2) + "\n");
    j["results"]["shift"] = shift;
  } else {
    j["results"]["shift"] = {{"error", "doublon model needs delta > 0"}};
  }
  return j;
}

/// Snapshot times tJ uniformly spaced in [100 L, 200 L].
inline std::vector<double> snapshot_times(const ChainSpec& chain, int count) {
  const double lo = 100.0 * chain.sites / std::abs(chain.J);
  const double hi = 200.0 * chain.sites / std::abs(chain.J);
  std::vector<double> t(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s)
    t[static_cast<std::size_t>(s)] = count == 1 ? lo : lo + (hi - lo) * s / (count - 1);
  return t;
}

struct StabilizerCounts {
  std::size_t plus_one = 0;
  std::size_t minus_one = 0;
  std::size_t zero = 0;
  std::size_t other = 0;
};

inline StabilizerCounts count_stabilizer_values(const PauliSpectrum& s, double tol = kZeroThreshold) {
  StabilizerCounts n;
  for (double c : s.coefficients) {
    if (std::abs(c) <= tol) ++n.zero;
    else if (std::abs(c - 1.0) <= tol) ++n.plus_one;
    else if (std::abs(c + 1.0) <= tol) ++n.minus_one;
    else ++n.other;
  }
  return n;
}

inline nlohmann::json cmd_pauli_stats(const RunConfig& c) {
  const auto& chain = c.chain;
  if (chain.sites > kMaxSpectrumSites)
    throw ResourceLimit("pauli-stats limited to L <= " + std::to_string(kMaxSpectrumSites));
  const auto basis = detail::walker_basis(chain);
  const Propagator prop(build_sector_hamiltonian(chain, basis));
  const auto psi0 = initial_state(chain, basis);
  const auto times = snapshot_times(chain, c.snapshots);
  const std::filesystem::path out(c.out);

  std::vector<std::vector<double>> per_snapshot(times.size());
  parallel_for(times.size(), c.threads, [&](std::size_t s) {
    const auto spectrum = pauli_spectrum_full(prop.evolve(psi0, times[s]));
    if (c.write_spectra) {
      std::ostringstream os;
      write_filtered_spectrum(os, filter_spectrum(spectrum));
      char name[32];
      std::snprintf(name, sizeof name, "spectrum_%03zu.txt", s);
      detail::write_file(out / name, os.str());
    }
    per_snapshot[s] = spacing_ratios(spectrum.coefficients).ratios;
  });
  std::vector<double> pooled;
  for (const auto& r : per_snapshot) pooled.insert(pooled.end(), r.begin(), r.end());
  const auto hist = unit_histogram(pooled, kDefaultBins);

  std::string rcsv = "ratio\n";
  for (double r : pooled) rcsv += format_number(r) + '\n';
  detail::write_file(out / "ratios.csv", rcsv);
  std::string hcsv = "bin_center,density,poisson\n";
  for (std::size_t b = 0; b < hist.density.size(); ++b)
    hcsv += format_number(hist.centre(b)) + ',' + format_number(hist.density[b]) + ',' +
            format_number(poisson_reference(hist.centre(b))) + '\n';
  detail::write_file(out / "hist.csv", hcsv);

  nlohmann::json summary = {{"mean_ratio", mean(pooled)},
                            {"poisson_mean_ratio", kPoissonMeanRatio},
                            {"sample_count", pooled.size()},
                            {"sup_distance", poisson_sup_distance(hist)},
                            {"snapshot_times", times}};
  if (c.snapshot_zero) {
    const auto counts = count_stabilizer_values(pauli_spectrum_full(psi0));
    summary["t0_counts"] = {{"plus_one", counts.plus_one},
                            {"minus_one", counts.minus_one},
                            {"zero", counts.zero},
                            {"other", counts.other}};
  }
  detail::write_file(out / "summary.json", summary.dump(2) + "\n");
  auto j = detail::manifest(c);
  j["results"] = summary;
  return j;
}

/// Resolves the configuration for `command` from all layers.
inline RunConfig resolve(const std::string& command, const std::optional<std::string>& config_path,
                         const nlohmann::json& flags, const EnvLookup& env) {
  RunConfig c = defaults_for(command);
  if (config_path) apply_config_file(c, *config_path);
  apply_env(c, env);
  for (const auto& [key, value] : flags.items()) set_field(c, key, value);
  validate(c);
  return c;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               const EnvLookup& env = [](const char* name) { return std::getenv(name); }) {
  CLI::App app{"Magic (stabilizer Renyi entropy) in single- and two-particle quantum walks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::map<std::string, std::string> raw;
  std::optional<std::string> config_path;
  for (const auto& name : commands()) {
    auto* sub = app.add_subcommand(name, describe_command(name));
    for (const auto& key : config_keys()) {
      std::string flag = "--" + key;
      for (auto& ch : flag)
        if (ch == '_') ch = '-';
      if (key == "snapshot_zero" || key == "write_spectra") {
        sub->add_flag_callback(flag, [&raw, key] { raw[key] = "true"; }, describe_key(key));
      } else {
        sub->add_option_function<std::string>(flag, [&raw, key](const std::string& v) { raw[key] = v; },
                                               describe_key(key))
            ->type_name(detail::is_string_key(key) ? "TEXT" : "NUM");
      }
    }
    sub->add_option_function<std::string>("--config", [&config_path](const std::string& v) { config_path = v; },
                                           "JSON config file or run manifest");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidConfig;
  }

  std::string command;
  for (auto* sub : app.get_subcommands()) command = sub->get_name();

  try {
    nlohmann::json flags = nlohmann::json::object();
    for (const auto& [key, text] : raw) flags[key] = detail::parse_scalar(key, text);
    const RunConfig config = resolve(command, config_path, flags, env);
    std::filesystem::create_directories(config.out);
    nlohmann::json result;
    if (command == "sp-magic") result = cmd_sp_magic(config);
    else if (command == "magnetization") result = cmd_magnetization(config);
    else if (command == "two-magic") result = cmd_two_magic(config);
    else result = cmd_pauli_stats(config);
    detail::write_file(std::filesystem::path(config.out) / "run.json", result.dump(2) + "\n");
    out << "wrote " << config.out << "\n";
    return kOk;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResourceGuard;
  } catch (const InvalidArgument& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
}

}  // namespace qwalk::cli
