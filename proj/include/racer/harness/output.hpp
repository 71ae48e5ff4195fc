#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "racer/harness/config.hpp"
#include "racer/harness/runner.hpp"
#include "racer/harness/summary.hpp"

namespace racer::harness {

// Results directory layout:
//   config.txt           effective configuration
//   manifest.txt         one line per run: cell, seeds, status, wall time
//   curves/<algorithm>_<regime>.csv
//                        episode,seed_<s1>,...,seed_<sn>,mean
//   summary.csv, summary.txt
// Everything except the wall times in manifest.txt is a pure function of
// the configuration.

std::string curve_file_name(Algorithm algorithm, Regime regime);

// All curves must belong to one cell. Missing episodes of aborted runs are
// left empty and the mean covers the seeds present on that row.
void write_curve_csv(std::ostream& out, std::span<const SeedCurve> cell_curves);
std::vector<SeedCurve> read_curve_csv(std::istream& in, Algorithm algorithm, Regime regime);

// One CSV per cell under `dir`. Throws std::runtime_error on I/O failure.
void emit_curves(std::span<const SeedCurve> curves, const std::filesystem::path& dir);

struct ManifestEntry {
  Algorithm algorithm = Algorithm::PpoLinear;
  Regime regime = Regime::Recent;
  std::uint64_t seed = 0;
  std::uint64_t run_seed = 0;
  RunStatus status = RunStatus::Completed;
  int episodes = 0;
  int aborted_episode = -1;
  double wall_seconds = 0.0;
};

void write_manifest(std::ostream& out, std::span<const RunResult> results);
std::vector<ManifestEntry> read_manifest(std::istream& in);

void write_results(const std::filesystem::path& dir, const ExperimentConfig& config,
                   std::span<const RunResult> results);

// Curves joined with manifest statuses.
std::vector<SeedCurve> read_results(const std::filesystem::path& dir);

// Writes summary.csv and summary.txt and returns the text table.
std::string write_summary(const std::filesystem::path& dir, const Summary& summary);

}  // namespace racer::harness
