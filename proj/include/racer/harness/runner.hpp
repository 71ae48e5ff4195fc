#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "racer/harness/config.hpp"

namespace racer::harness {

enum class RunStatus {
  Completed,
  AbortedNonFinite,  // a loss or gradient became non-finite
  Failed,            // any other error; message says what
};

std::string_view status_name(RunStatus status);
RunStatus parse_status(std::string_view name);

struct RunResult {
  RunConfig config;
  std::uint64_t run_seed = 0;
  std::vector<double> episode_rewards;  // one entry per finished episode
  std::vector<int> episode_crashes;
  RunStatus status = RunStatus::Completed;
  int aborted_episode = -1;
  std::string message;
  double wall_seconds = 0.0;
};

// Rolls out and trains one cell. Fully determined by the config.
RunResult run_cell(const RunConfig& config);

using ProgressFn = std::function<void(std::size_t index, const RunResult& result)>;

// Runs cells independently on `jobs` threads; results keep input order.
std::vector<RunResult> run_grid(std::span<const RunConfig> cells, int jobs,
                                const ProgressFn& on_done = {});

}  // namespace racer::harness
