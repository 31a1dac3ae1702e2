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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mucap.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mucap::IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_betas(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
      throw mucap::ConfigError("--betas: not a number: '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw mucap::ConfigError("--betas: empty list");
  return out;
}

struct RunArgs {
  std::string config;
  std::string preset;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::string out;
  bool full_fit = false;
  bool allow_extended = false;
  bool strict_sequential = false;
  unsigned threads = 0;
  bool quiet = false;
};

int cmd_run(const RunArgs& a, const CLI::App& sub) {
  using namespace mucap::runner;
  mucap::runner::ParseOptions popts;
  popts.allow_extended = a.allow_extended;
  if (!a.preset.empty()) {
    const auto p = parse_preset(a.preset);
    if (!p || *p == Preset::none) throw mucap::ConfigError("--preset must be fig1, fig2 or fig3");
    popts.preset_override = p;
  }

  SweepPlan plan;
  if (!a.config.empty()) {
    plan = parse_config(read_file(a.config), popts);
  } else if (popts.preset_override) {
    plan = make_preset_plan(*popts.preset_override);
  } else {
    throw mucap::ConfigError("run needs --config or --preset");
  }
  if (sub.count("--trials")) plan.base.trials = a.trials;
  if (sub.count("--seed")) plan.base.seed = a.seed;
  validate_plan(plan, a.allow_extended);

  RunOptions ropts;
  ropts.full_fit = a.full_fit;
  ropts.threads = a.strict_sequential ? 1u : (a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency()));
  ropts.on_row = [&](const ResultRow& row, std::size_t i, std::size_t total) {
    if (!row.ok)
      std::cerr << "point " << (i + 1) << "/" << total << " failed: " << row.reason << '\n';
    else if (!a.quiet)
      std::cerr << "point " << (i + 1) << "/" << total << " done\n";
  };
  const ResultTable table = run_sweep(plan, ropts);
  if (a.out.empty() || a.out == "-") {
    emit_csv(table, std::cout);
  } else {
    emit_csv(table, a.out);
  }
  return table.all_ok() ? 0 : 1;
}

int cmd_pdf(const std::string& betas, double grid_max, std::size_t points, const std::string& out, const std::string& method,
            std::size_t nodes) {
  const mucap::analytic::BetaVector b(parse_betas(betas));
  if (points == 0) throw mucap::ConfigError("--points must be positive");
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k) grid[k] = grid_max * static_cast<double>(k + 1) / static_cast<double>(points);
  const auto cfg = method == "talbot" ? mucap::specfun::LaplaceInversionConfig::talbot(nodes)
                                      : mucap::specfun::LaplaceInversionConfig::euler(nodes);
  const auto pdf = mucap::analytic::capacity_pdf(b, grid, cfg);

  std::ofstream file;
  if (!out.empty() && out != "-") {
    file.open(out, std::ios::binary | std::ios::trunc);
    if (!file) throw mucap::IoError("cannot open '" + out + "' for writing");
  }
  std::ostream& os = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;
  char buf[64];
  os << "capacity,pdf\n";
  for (std::size_t k = 0; k < points; ++k) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", grid[k], pdf[k]);
    os << buf;
  }
  if (!os) throw mucap::IoError("failed writing '" + out + "'");
  return 0;
}

int cmd_plot_data(const std::string& in_path, const std::string& x, const std::string& out) {
  const auto param = mucap::runner::parse_param(x);
  if (!param) throw mucap::ConfigError("--x must be one of snr_db, rho, l_band, m, omega");
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw mucap::IoError("cannot read '" + in_path + "'");
  const auto csv = mucap::runner::read_csv(in);
  if (out.empty() || out == "-") {
    mucap::runner::emit_gnuplot(csv, *param, std::cout);
    return 0;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw mucap::IoError("cannot open '" + out + "' for writing");
  mucap::runner::emit_gnuplot(csv, *param, file);
  return file ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mucap: ergodic sum-rate capacity of ZF MU-MIMO under correlated Nakagami-m fading"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Run a parameter sweep and write a CSV table");
  run->add_option("--config", ra.config, "Sweep configuration file");
  run->add_option("--preset", ra.preset, "Figure preset (overrides config axes)")->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  run->add_option("--trials", ra.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);
  run->add_option("--seed", ra.seed, "Master seed");
  run->add_option("--out", ra.out, "Output CSV path (default stdout)");
  run->add_flag("--full-fit", ra.full_fit, "Gamma ML fit with chi-square and KS gates per user");
  run->add_flag("--allow-extended", ra.allow_extended, "Allow rho in [0, 1)");
  run->add_flag("--strict-sequential", ra.strict_sequential, "Single-threaded execution");
  run->add_option("--threads", ra.threads, "Worker threads (default: hardware concurrency)");
  run->add_flag("-q,--quiet", ra.quiet, "Only report failed points on stderr");

  std::string betas, pdf_out, method = "euler";
  double grid_max = 0.0;
  std::size_t points = 0, nodes = 32;
  auto* pdf = app.add_subcommand("pdf", "Sum-capacity density by numerical Laplace inversion");
  pdf->add_option("--betas", betas, "Comma-separated per-user mean SINRs")->required();
  pdf->add_option("--grid-max", grid_max, "Largest capacity grid value (bit/s/Hz)")->required()->check(CLI::Range(1e-9, 64.0));
  pdf->add_option("--points", points, "Number of grid points")->required()->check(CLI::PositiveNumber);
  pdf->add_option("--out", pdf_out, "Output CSV path (default stdout)");
  pdf->add_option("--method", method, "Inversion method")->check(CLI::IsMember({"euler", "talbot"}));
  pdf->add_option("--nodes", nodes, "Inversion node count")->check(CLI::Range(8, 400));

  std::string plot_in, plot_x = "snr_db", plot_out;
  auto* plot = app.add_subcommand("plot-data", "Rewrite a result CSV as gnuplot data blocks");
  plot->add_option("--in", plot_in, "Result CSV from `run`")->required();
  plot->add_option("--x", plot_x, "Parameter on the x axis")->check(CLI::IsMember({"snr_db", "rho", "l_band", "m", "omega"}));
  plot->add_option("--out", plot_out, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(ra, *run);
    if (*pdf) return cmd_pdf(betas, grid_max, points, pdf_out, method, nodes);
    if (*plot) return cmd_plot_data(plot_in, plot_x, plot_out);
  } catch (const mucap::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const mucap::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 3;
  } catch (const mucap::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
