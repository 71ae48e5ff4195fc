// racer: command-line front end for the racing benchmark.
//
//   racer run --config <file> [--cells <filter>] [--out <dir>] [--jobs N]
//   racer summarize --in <dir>
//   racer gen-track --seed N --out <file>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "racer/env/track.hpp"
#include "racer/harness/config.hpp"
#include "racer/harness/output.hpp"
#include "racer/harness/runner.hpp"
#include "racer/harness/summary.hpp"

namespace {

using namespace racer;

int run_command(const std::string& config_path, const std::string& cells_filter,
                const std::string& out_dir, int jobs) {
  const harness::ExperimentConfig config =
      config_path.empty() ? harness::ExperimentConfig{} : harness::load_config(config_path);
  const auto cells = harness::select_cells(cells_filter);
  const auto runs = harness::expand_grid(config, cells);
  std::cerr << "running " << runs.size() << " runs (" << cells.size() << " cells x "
            << config.seeds.size() << " seeds) on " << jobs << " thread(s)\n";

  const auto results = harness::run_grid(runs, jobs, [&](std::size_t i, const harness::RunResult& r) {
    std::cerr << "[" << i + 1 << "/" << runs.size() << "] " << r.config.cell_name() << " seed "
              << r.config.track_seed << ": " << harness::status_name(r.status);
    if (!r.episode_rewards.empty()) {
      std::cerr << ", final " << harness::final_performance(r.episode_rewards);
    }
    if (!r.message.empty()) std::cerr << " (" << r.message << ")";
    std::cerr << ", " << r.wall_seconds << " s\n";
  });

  harness::write_results(out_dir, config, results);
  std::cout << harness::format_table(harness::summarize(harness::to_curves(results)));
  return 0;
}

int summarize_command(const std::string& in_dir) {
  const auto curves = harness::read_results(in_dir);
  std::cout << harness::write_summary(in_dir, harness::summarize(curves));
  return 0;
}

int gen_track_command(std::uint64_t seed, const std::string& out_path) {
  const env::Track track = env::generate_track(seed);
  if (out_path.empty() || out_path == "-") {
    env::write_track(std::cout, track);
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write '" << out_path << "'\n";
    return 1;
  }
  env::write_track(out, track);
  return out ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-control racing benchmark: PPO and SPG actor-critic trainers"};
  app.require_subcommand(1);

  std::string config_path;
  std::string cells_filter;
  std::string out_dir = "results";
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* run = app.add_subcommand("run", "Train the configured grid and write curves and summary");
  run->add_option("--config", config_path, "Hyperparameter file (key = value)")->check(CLI::ExistingFile);
  run->add_option("--cells", cells_filter,
                  "Comma-separated cells, e.g. 'ppo-log:memory,spg-single' or 'baseline'");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string in_dir;
  auto* summarize = app.add_subcommand("summarize", "Rebuild the summary table from a results directory");
  summarize->add_option("--in", in_dir, "Results directory written by 'run'")->required();

  std::uint64_t seed = 1;
  std::string track_out;
  auto* gen_track = app.add_subcommand("gen-track", "Write a generated track as text");
  gen_track->add_option("--seed", seed, "Track seed")->required();
  gen_track->add_option("--out", track_out, "Output file ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(config_path, cells_filter, out_dir, jobs);
    if (*summarize) return summarize_command(in_dir);
    if (*gen_track) return gen_track_command(seed, track_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
