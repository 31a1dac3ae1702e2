// SPDX-License-Identifier: Apache-2.0
//
// mucap: MU-MIMO ergodic sum-rate capacity simulation and analysis
// Copyright (C) 2026 The mucap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MUCAP_RUNNER_HPP
#define MUCAP_RUNNER_HPP

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "mucap/analytic.hpp"
#include "mucap/error.hpp"
#include "mucap/rng.hpp"
#include "mucap/statfit.hpp"
#include "mucap/system_config.hpp"
#include "mucap/zf.hpp"

namespace mucap::runner {

enum class SweepParam { snr_db, rho, l_band, m, omega };
enum class Preset { none, fig1, fig2, fig3 };

inline constexpr std::string_view csv_header =
    "snr_db,rho,l_band,m,omega,trials,seed,esrc_mc,esrc_stderr,esrc_analytic,rel_err,alpha_mean,gof_pass_rate,status";

inline constexpr double default_rho = 0.3;
inline constexpr std::size_t default_trials = 100000;
inline constexpr std::uint64_t default_seed = 20240601;
inline constexpr double rho_limit = 0.5;

inline std::string_view to_string(SweepParam p) {
  switch (p) {
    case SweepParam::snr_db: return "snr_db";
    case SweepParam::rho: return "rho";
    case SweepParam::l_band: return "l_band";
    case SweepParam::m: return "m";
    case SweepParam::omega: return "omega";
  }
  return "?";
}

inline std::optional<SweepParam> parse_param(std::string_view name) {
  for (auto p : {SweepParam::snr_db, SweepParam::rho, SweepParam::l_band, SweepParam::m, SweepParam::omega})
    if (to_string(p) == name) return p;
  return std::nullopt;
}

inline std::string_view to_string(Preset p) {
  switch (p) {
    case Preset::none: return "none";
    case Preset::fig1: return "fig1";
    case Preset::fig2: return "fig2";
    case Preset::fig3: return "fig3";
  }
  return "?";
}

inline std::optional<Preset> parse_preset(std::string_view name) {
  for (auto p : {Preset::none, Preset::fig1, Preset::fig2, Preset::fig3})
    if (to_string(p) == name) return p;
  return std::nullopt;
}

struct SweepAxis {
  SweepParam param;
  std::vector<double> values;
};

struct SweepPlan {
  SystemConfig base;
  std::vector<SweepAxis> axes;
  Preset preset = Preset::none;
  bool omega_axis = false;  // adds omega in {0.8, 1, 1.2} to a preset
};

struct ParseOptions {
  bool allow_extended = false;
  std::optional<Preset> preset_override;
};

// ---------------------------------------------------------------------------
// Plan construction and validation

inline double get_param(const SystemConfig& c, SweepParam p) {
  switch (p) {
    case SweepParam::snr_db: return c.snr_db;
    case SweepParam::rho: return c.correlation.rho;
    case SweepParam::l_band: return static_cast<double>(c.correlation.l_band);
    case SweepParam::m: return c.fading.m;
    case SweepParam::omega: return c.fading.omega;
  }
  return 0.0;
}

inline void set_param(SystemConfig& c, SweepParam p, double v) {
  switch (p) {
    case SweepParam::snr_db: c.snr_db = v; break;
    case SweepParam::rho: c.correlation.rho = v; break;
    case SweepParam::l_band: c.correlation.l_band = static_cast<std::size_t>(v); break;
    case SweepParam::m: c.fading.m = v; break;
    case SweepParam::omega: c.fading.omega = v; break;
  }
}

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Range check for one parameter value; the message names the key and the legal range.
inline void check_value(SweepParam p, double v, std::size_t n, bool allow_extended) {
  const std::string key(to_string(p));
  auto fail = [&](const std::string& range) { throw ConfigError(key + " out of range " + range + ": " + fmt(v)); };
  if (!std::isfinite(v)) fail("(finite values only)");
  switch (p) {
    case SweepParam::snr_db:
      if (v < -50.0 || v > 100.0) fail("[-50, 100]");
      break;
    case SweepParam::rho:
      if (allow_extended) {
        if (!(v >= 0.0 && v < 1.0)) fail("[0, 1)");
      } else if (!(v >= 0.0 && v <= rho_limit)) {
        fail("[0, 0.5]");
      }
      break;
    case SweepParam::l_band:
      if (v != std::floor(v) || v < 0.0) throw ConfigError("l_band must be a non-negative integer: " + fmt(v));
      if (v > static_cast<double>(n) - 1.0) throw ConfigError("l_band exceeds n-1 (l_band=" + fmt(v) + ", n=" + std::to_string(n) + ")");
      break;
    case SweepParam::m:
      if (!(v > 0.0 && v <= 100.0)) fail("(0, 100]");
      break;
    case SweepParam::omega:
      if (!(v > 0.0 && v <= 1e6)) fail("(0, 1e6]");
      break;
  }
}

}  // namespace detail

inline void validate_plan(const SweepPlan& plan, bool allow_extended = false) {
  const SystemConfig& b = plan.base;
  if (b.n_t == 0 || b.n_t > 64) throw ConfigError("n_t out of range [1, 64]: " + std::to_string(b.n_t));
  if (b.n_r < b.n_t || b.n_r > 64) throw ConfigError("n_r out of range [n_t, 64]: " + std::to_string(b.n_r));
  if (b.trials == 0 || b.trials > 1'000'000'000) throw ConfigError("trials out of range [1, 1e9]: " + std::to_string(b.trials));
  const std::size_t n = b.correlation.n;
  std::set<SweepParam> seen;
  for (const auto& axis : plan.axes) {
    if (!seen.insert(axis.param).second) throw ConfigError("duplicate sweep axis: " + std::string(to_string(axis.param)));
    if (axis.values.empty()) throw ConfigError("sweep axis " + std::string(to_string(axis.param)) + " has no values");
    for (double v : axis.values) detail::check_value(axis.param, v, n, allow_extended);
  }
  for (auto p : {SweepParam::snr_db, SweepParam::rho, SweepParam::l_band, SweepParam::m, SweepParam::omega})
    if (!seen.count(p)) detail::check_value(p, get_param(b, p), n, allow_extended);
}

inline std::vector<double> linspace_steps(double start, double stop, double step) {
  if (!(step > 0.0)) throw ConfigError("range step must be positive");
  if (stop < start) throw ConfigError("range stop must not be below start");
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  if (count > 100000) throw ConfigError("range has too many points");
  for (long k = 0; k <= count; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

// Applies a preset to `plan`: fixes the 8x8 geometry, the preset's fixed
// operating point and its axes. Values already in plan.base for parameters
// that are not preset axes (rho for fig1/fig2, omega, trials, seed, side)
// are kept.
inline void apply_preset(SweepPlan& plan, Preset preset) {
  plan.preset = preset;
  if (preset == Preset::none) return;
  SystemConfig& b = plan.base;
  b.n_t = b.n_r = b.n_users = 8;
  b.correlation.n = 8;
  const std::vector<double> m_values{0.7, 2.5};
  plan.axes.clear();
  if (plan.omega_axis) plan.axes.push_back({SweepParam::omega, {0.8, 1.0, 1.2}});
  switch (preset) {
    case Preset::fig1:
      b.correlation.l_band = 7;
      plan.axes.push_back({SweepParam::m, m_values});
      plan.axes.push_back({SweepParam::snr_db, linspace_steps(0.0, 20.0, 1.0)});
      break;
    case Preset::fig2:
      b.snr_db = 10.0;
      plan.axes.push_back({SweepParam::m, m_values});
      plan.axes.push_back({SweepParam::l_band, {1, 2, 3, 4, 5, 6, 7}});
      break;
    case Preset::fig3:
      b.snr_db = 10.0;
      b.correlation.l_band = 3;
      plan.axes.push_back({SweepParam::m, m_values});
      plan.axes.push_back({SweepParam::rho, {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}});
      break;
    case Preset::none: break;
  }
}

inline SweepPlan make_preset_plan(Preset preset, std::size_t trials = default_trials, std::uint64_t seed = default_seed) {
  SweepPlan plan;
  plan.base.trials = trials;
  plan.base.seed = seed;
  plan.base.correlation.rho = default_rho;
  plan.base.fading = {1.0, 1.0};
  apply_preset(plan, preset);
  validate_plan(plan);
  return plan;
}

// ---------------------------------------------------------------------------
// Config document parsing
//
//   # comment
//   preset = fig1            # fig1 | fig2 | fig3 | none
//   n = 8                    # or n_t / n_r
//   snr_db = 10
//   m = 0.7
//   omega = 1
//   rho = 0.3
//   l_band = full            # integer or "full"
//   side = receive           # receive | transmit
//   trials = 100000
//   seed = 42
//   psd_policy = error       # error | clamp
//   omega_axis = false       # presets only
//
//   [sweep.snr_db]
//   values = 0, 5, 10        # or: range = start, stop, step (inclusive)

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_number(std::string_view key, std::string_view text, int line) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ConfigError("line " + std::to_string(line) + ": expected a number for key '" + std::string(key) + "', got '" + std::string(text) + "'");
  return v;
}

inline std::uint64_t parse_unsigned(std::string_view key, std::string_view text, int line) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ConfigError("line " + std::to_string(line) + ": expected a non-negative integer for key '" + std::string(key) + "', got '" +
                      std::string(text) + "'");
  return v;
}

inline std::vector<double> parse_list(std::string_view key, std::string_view text, int line) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number(key, trim(text.substr(0, comma)), line));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

inline bool parse_bool(std::string_view key, std::string_view text, int line) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw ConfigError("line " + std::to_string(line) + ": expected true or false for key '" + std::string(key) + "'");
}

}  // namespace detail

inline SweepPlan parse_config(std::string_view text, const ParseOptions& options = {}) {
  std::map<std::string, std::pair<std::string, int>> top;
  std::vector<std::pair<SweepParam, std::vector<double>>> sweeps;
  std::optional<SweepParam> section;
  bool section_has_values = false;

  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  auto close_section = [&] {
    if (section && !section_has_values)
      throw ConfigError("section [sweep." + std::string(to_string(*section)) + "] needs a 'values' or 'range' key");
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "malformed section header");
      close_section();
      const auto name = detail::trim(line.substr(1, line.size() - 2));
      if (!name.starts_with("sweep.")) throw ConfigError(where + "unknown section [" + std::string(name) + "]");
      const auto param = parse_param(name.substr(6));
      if (!param) throw ConfigError(where + "unknown sweep parameter '" + std::string(name.substr(6)) + "' (expected snr_db, rho, l_band, m or omega)");
      for (const auto& s : sweeps)
        if (s.first == *param) throw ConfigError(where + "duplicate section [" + std::string(name) + "]");
      sweeps.push_back({*param, {}});
      section = param;
      section_has_values = false;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "empty key");
    if (value.empty()) throw ConfigError(where + "missing value for key '" + key + "'");

    if (section) {
      if (section_has_values) throw ConfigError(where + "sweep section already has values");
      if (key == "values") {
        sweeps.back().second = detail::parse_list(key, value, line_no);
      } else if (key == "range") {
        const auto r = detail::parse_list(key, value, line_no);
        if (r.size() != 3) throw ConfigError(where + "range needs start, stop, step");
        sweeps.back().second = linspace_steps(r[0], r[1], r[2]);
      } else {
        throw ConfigError(where + "unknown key '" + key + "' in sweep section (expected values or range)");
      }
      section_has_values = true;
      continue;
    }
    static const std::set<std::string> known{"preset", "n",     "n_t",  "n_r",   "snr_db",     "m",         "omega",
                                             "rho",    "l_band", "side", "trials", "seed", "psd_policy", "omega_axis"};
    if (!known.count(key)) throw ConfigError(where + "unknown key '" + key + "'");
    if (!top.emplace(key, std::pair{std::string(value), line_no}).second) throw ConfigError(where + "duplicate key '" + key + "'");
  }
  close_section();

  auto has = [&](const char* k) { return top.count(k) != 0; };
  auto number = [&](const char* k) { return detail::parse_number(k, top.at(k).first, top.at(k).second); };
  auto count = [&](const char* k) { return detail::parse_unsigned(k, top.at(k).first, top.at(k).second); };

  SweepPlan plan;
  Preset preset = Preset::none;
  if (has("preset")) {
    const auto p = parse_preset(top.at("preset").first);
    if (!p) throw ConfigError("unknown preset '" + top.at("preset").first + "' (expected fig1, fig2, fig3 or none)");
    preset = *p;
  }
  if (options.preset_override) preset = *options.preset_override;

  SystemConfig& b = plan.base;
  b.trials = default_trials;
  b.seed = default_seed;
  b.fading = {1.0, 1.0};
  b.correlation.rho = default_rho;

  if (has("n") && (has("n_t") || has("n_r"))) throw ConfigError("give either n or n_t/n_r, not both");
  if (preset == Preset::none) {
    for (const char* k : {"snr_db", "m", "rho"}) {
      const bool swept = std::any_of(sweeps.begin(), sweeps.end(), [&](const auto& s) { return to_string(s.first) == k; });
      if (!has(k) && !swept) throw ConfigError(std::string("missing required key '") + k + "'");
    }
    if (!has("n") && !has("n_t")) throw ConfigError("missing required key 'n' (or 'n_t')");
    if (has("omega_axis")) throw ConfigError("omega_axis applies to presets only");
  } else {
    for (const char* k : {"n", "n_t", "n_r"})
      if (has(k) && count(k) != 8) throw ConfigError(std::string(k) + " out of range [8, 8]: presets use the 8x8 geometry");
  }

  if (has("n")) b.n_t = b.n_r = count("n");
  if (has("n_t")) b.n_t = count("n_t");
  b.n_r = has("n_r") ? count("n_r") : (has("n") ? b.n_r : b.n_t);
  b.n_users = b.n_t;
  if (has("side")) {
    const auto& s = top.at("side").first;
    if (s == "receive") b.mode.side = CorrelatedSide::receive;
    else if (s == "transmit") b.mode.side = CorrelatedSide::transmit;
    else throw ConfigError("side must be receive or transmit, got '" + s + "'");
  }
  b.correlation.n = b.mode.correlated_dim(b.n_t, b.n_r);
  b.correlation.l_band = b.correlation.n == 0 ? 0 : b.correlation.n - 1;
  if (has("snr_db")) b.snr_db = number("snr_db");
  if (has("m")) b.fading.m = number("m");
  if (has("omega")) b.fading.omega = number("omega");
  if (has("rho")) b.correlation.rho = number("rho");
  if (has("l_band")) {
    const auto& v = top.at("l_band").first;
    if (v != "full") {
      const double l = number("l_band");
      detail::check_value(SweepParam::l_band, l, b.correlation.n, options.allow_extended);
      b.correlation.l_band = static_cast<std::size_t>(l);
    }
  }
  if (has("trials")) b.trials = count("trials");
  if (has("seed")) b.seed = count("seed");
  if (has("psd_policy")) {
    const auto& s = top.at("psd_policy").first;
    if (s == "error") b.psd_policy = PsdPolicy::error;
    else if (s == "clamp") b.psd_policy = PsdPolicy::clamp;
    else throw ConfigError("psd_policy must be error or clamp, got '" + s + "'");
  }
  if (has("omega_axis")) plan.omega_axis = detail::parse_bool("omega_axis", top.at("omega_axis").first, top.at("omega_axis").second);

  if (preset == Preset::none) {
    for (auto& [param, values] : sweeps) plan.axes.push_back({param, std::move(values)});
  } else {
    apply_preset(plan, preset);
  }
  plan.preset = preset;
  validate_plan(plan, options.allow_extended);
  return plan;
}

// ---------------------------------------------------------------------------
// Sweep execution

// Seed of one sweep point, a function of the master seed and the point's
// parameter values only. Adding or removing other points leaves it unchanged.
inline std::uint64_t point_seed(std::uint64_t master, const SystemConfig& point) {
  return combine_seed({master, std::bit_cast<std::uint64_t>(point.snr_db), std::bit_cast<std::uint64_t>(point.correlation.rho),
                       static_cast<std::uint64_t>(point.correlation.l_band), std::bit_cast<std::uint64_t>(point.fading.m),
                       std::bit_cast<std::uint64_t>(point.fading.omega)});
}

// Cartesian product of the axes, first axis slowest.
inline std::vector<SystemConfig> expand_points(const SweepPlan& plan) {
  std::vector<SystemConfig> points{plan.base};
  for (const auto& axis : plan.axes) {
    std::vector<SystemConfig> next;
    next.reserve(points.size() * axis.values.size());
    for (const auto& p : points) {
      for (double v : axis.values) {
        SystemConfig q = p;
        set_param(q, axis.param, v);
        next.push_back(q);
      }
    }
    points = std::move(next);
  }
  for (auto& p : points) p.seed = point_seed(plan.base.seed, p);
  return points;
}

struct ResultRow {
  SystemConfig point;
  bool ok = false;
  std::string reason;
  double esrc_mc = 0.0;
  double esrc_stderr = 0.0;
  double esrc_analytic = 0.0;
  double rel_err = 0.0;
  std::vector<double> betas;
  std::optional<double> alpha_mean;
  std::optional<double> gof_pass_rate;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  bool all_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.ok; });
  }
};

struct RunOptions {
  bool full_fit = false;
  unsigned threads = 1;
  double gof_level = 0.05;
  std::function<void(const ResultRow&, std::size_t index, std::size_t total)> on_row;
};

// Monte Carlo ESRC plus the fitted closed form for a single operating point.
inline ResultRow run_point(const SystemConfig& point, const RunOptions& options = {}) {
  ResultRow row;
  row.point = point;
  try {
    const MonteCarloOutput mc = monte_carlo_esrc(point, point.trials, point.seed, {options.threads});
    std::vector<double> betas;
    betas.reserve(mc.sinr.n_users);
    for (const auto& user : mc.sinr.samples) betas.push_back(statfit::fit_exponential(user));
    row.esrc_mc = mc.result.esrc_mc;
    row.esrc_stderr = mc.result.std_err;
    row.esrc_analytic = analytic::esrc_closed_form(analytic::BetaVector(betas));
    row.rel_err = std::abs(row.esrc_mc - row.esrc_analytic) / row.esrc_analytic;
    row.betas = std::move(betas);
    if (options.full_fit) {
      double alpha_sum = 0.0;
      std::size_t pass = 0;
      for (const auto& user : mc.sinr.samples) {
        const statfit::GammaFit fit = statfit::fit_gamma_ml(user, options.gof_level);
        alpha_sum += fit.alpha;
        if (fit.chi2_pass && fit.ks_pass) ++pass;
      }
      const auto users = static_cast<double>(mc.sinr.n_users);
      row.alpha_mean = alpha_sum / users;
      row.gof_pass_rate = static_cast<double>(pass) / users;
    }
    row.ok = true;
  } catch (const Error& e) {
    row = ResultRow{};
    row.point = point;
    row.reason = e.what();
  }
  return row;
}

// Points run on up to options.threads workers; each point's result is a pure
// function of the point, so the table is identical for any thread count.
inline ResultTable run_sweep(const SweepPlan& plan, const RunOptions& options = {}) {
  const auto points = expand_points(plan);
  ResultTable table;
  table.rows.resize(points.size());
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, options.threads), points.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      table.rows[i] = run_point(points[i], options);
      if (options.on_row) options.on_row(table.rows[i], i, points.size());
    }
    return table;
  }
  RunOptions inner = options;
  inner.threads = 1;
  std::atomic<std::size_t> next{0};
  std::mutex report;
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      table.rows[i] = run_point(points[i], inner);
      if (options.on_row) {
        std::lock_guard lock(report);
        options.on_row(table.rows[i], i, points.size());
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return table;
}

// ---------------------------------------------------------------------------
// Output

inline void emit_csv(const ResultTable& table, std::ostream& out) {
  using detail::fmt;
  out << csv_header << '\n';
  for (const auto& r : table.rows) {
    const auto& p = r.point;
    out << fmt(p.snr_db) << ',' << fmt(p.correlation.rho) << ',' << p.correlation.l_band << ',' << fmt(p.fading.m) << ','
        << fmt(p.fading.omega) << ',' << p.trials << ',' << p.seed << ',';
    if (r.ok) {
      out << fmt(r.esrc_mc) << ',' << fmt(r.esrc_stderr) << ',' << fmt(r.esrc_analytic) << ',' << fmt(r.rel_err) << ','
          << (r.alpha_mean ? fmt(*r.alpha_mean) : "") << ',' << (r.gof_pass_rate ? fmt(*r.gof_pass_rate) : "") << ",ok\n";
    } else {
      out << ",,,,,,failed\n";
    }
  }
}

inline void emit_csv(const ResultTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit_csv(table, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

// CSV produced by emit_csv, as header names and string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw ConfigError("CSV has no column '" + std::string(name) + "'");
  }
};

inline CsvTable read_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  };
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV input");
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != t.header.size()) throw IoError("CSV row has " + std::to_string(cells.size()) + " cells, expected " + std::to_string(t.header.size()));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

// gnuplot data: one block per combination of the non-x sweep parameters,
// blocks separated by two blank lines (addressable with `index`). Columns:
// x esrc_mc esrc_stderr esrc_analytic. Failed rows are skipped.
inline void emit_gnuplot(const CsvTable& csv, SweepParam x, std::ostream& out) {
  const std::size_t xi = csv.column(to_string(x));
  std::vector<std::size_t> keys;
  for (auto p : {SweepParam::snr_db, SweepParam::rho, SweepParam::l_band, SweepParam::m, SweepParam::omega})
    if (p != x) keys.push_back(csv.column(to_string(p)));
  const std::size_t mc = csv.column("esrc_mc"), se = csv.column("esrc_stderr"), an = csv.column("esrc_analytic"),
                    st = csv.column("status");

  std::vector<std::string> order;
  std::map<std::string, std::vector<const std::vector<std::string>*>> blocks;
  for (const auto& row : csv.rows) {
    if (row[st] != "ok") continue;
    std::string label;
    for (auto k : keys) label += (label.empty() ? "" : " ") + csv.header[k] + "=" + row[k];
    if (!blocks.count(label)) order.push_back(label);
    blocks[label].push_back(&row);
  }
  bool first = true;
  for (const auto& label : order) {
    if (!first) out << "\n\n";
    first = false;
    out << "# " << label << '\n' << "# " << to_string(x) << " esrc_mc esrc_stderr esrc_analytic\n";
    for (const auto* row : blocks[label]) out << (*row)[xi] << ' ' << (*row)[mc] << ' ' << (*row)[se] << ' ' << (*row)[an] << '\n';
  }
}

}  // namespace mucap::runner

#endif  // MUCAP_RUNNER_HPP
