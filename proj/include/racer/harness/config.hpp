#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "racer/algos/ppo.hpp"
#include "racer/algos/spg.hpp"
#include "racer/env/car.hpp"
#include "racer/env/track.hpp"
#include "racer/replay/replay.hpp"

namespace racer::harness {

using replay::Regime;

enum class Algorithm {
  PpoLinear,
  PpoLog,
  SpgSingle,
  SpgMulti,
  SpgpSingle,
  SpgpMulti,
  FrozenBaseline,  // actor kept at its initialization, never trained
};

inline constexpr std::array<Algorithm, 6> kTrainedAlgorithms{
    Algorithm::PpoLinear, Algorithm::PpoLog,     Algorithm::SpgSingle,
    Algorithm::SpgMulti,  Algorithm::SpgpSingle, Algorithm::SpgpMulti};
inline constexpr std::array<Regime, 3> kRegimes{Regime::Recent, Regime::Memory, Regime::Both};

std::string_view algorithm_name(Algorithm algorithm);
std::string_view algorithm_title(Algorithm algorithm);  // table column heading
Algorithm parse_algorithm(std::string_view name);
bool is_ppo(Algorithm algorithm);
bool is_spg(Algorithm algorithm);

enum class CellAvailability {
  Supported,
  Unstable,  // runnable but known to diverge; not part of the default grid
  Rejected,
};
CellAvailability cell_availability(Algorithm algorithm, Regime regime);

// Every hyperparameter of an experiment. Defaults are the published values
// for the training setup plus this project's environment constants.
struct ExperimentConfig {
  int episodes = 200;
  int steps_per_episode = 200;
  std::size_t buffer_size = 10000;
  double gamma = 0.9;
  int frame_skip = 0;
  int hidden_units = 100;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};

  env::PhysicsParams physics;
  env::TrackGenParams track;

  algos::PpoConfig ppo;
  algos::SpgConfig spg_single{.actor_lr = 0.01, .policy_epochs = 1};
  algos::SpgConfig spg_multi{.actor_lr = 0.001, .policy_epochs = 10};
};

// `key = value` lines; `#` starts a comment. Keys absent from the file keep
// their defaults; unknown keys and malformed values throw
// std::invalid_argument naming the line.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);
void write_config(std::ostream& out, const ExperimentConfig& config);

// Everything needed to run one (algorithm, regime, track seed) cell.
struct RunConfig {
  Algorithm algorithm = Algorithm::PpoLinear;
  Regime regime = Regime::Recent;
  std::uint64_t track_seed = 1;
  int episodes = 200;
  int steps_per_episode = 200;
  std::size_t buffer_size = 10000;
  double gamma = 0.9;
  int frame_skip = 0;
  int hidden_units = 100;
  env::PhysicsParams physics;
  env::TrackGenParams track;
  algos::PpoConfig ppo;  // used by PPO algorithms
  algos::SpgConfig spg;  // used by SPG algorithms

  std::string cell_name() const;  // "<algorithm>/<regime>"
};

// Throws std::invalid_argument for rejected cells.
RunConfig make_run_config(const ExperimentConfig& config, Algorithm algorithm, Regime regime,
                          std::uint64_t track_seed);

struct Cell {
  Algorithm algorithm;
  Regime regime;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// The 15 populated cells of the results table, row by row.
std::vector<Cell> paper_cells();

// Cells x seeds, seed-major within each cell.
std::vector<RunConfig> expand_grid(const ExperimentConfig& config, std::span<const Cell> cells);

// Comma-separated tokens `algorithm` or `algorithm:regime`. `baseline`
// selects the frozen-policy baseline. Empty filter = paper_cells().
std::vector<Cell> select_cells(std::string_view filter);

// Seed for policy sampling and minibatching; the track seed alone fixes
// the track, so every algorithm sees the same tracks.
std::uint64_t derive_run_seed(std::uint64_t track_seed, Algorithm algorithm);

}  // namespace racer::harness
