#include "racer/harness/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace racer::harness {

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::PpoLinear: return "ppo-linear";
    case Algorithm::PpoLog: return "ppo-log";
    case Algorithm::SpgSingle: return "spg-single";
    case Algorithm::SpgMulti: return "spg-multi";
    case Algorithm::SpgpSingle: return "spgp-single";
    case Algorithm::SpgpMulti: return "spgp-multi";
    case Algorithm::FrozenBaseline: return "baseline";
  }
  return "unknown";
}

std::string_view algorithm_title(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::PpoLinear: return "PPO, linear";
    case Algorithm::PpoLog: return "PPO, log";
    case Algorithm::SpgSingle: return "SPG, single";
    case Algorithm::SpgMulti: return "SPG, multiple";
    case Algorithm::SpgpSingle: return "SPG-p, single";
    case Algorithm::SpgpMulti: return "SPG-p, multiple";
    case Algorithm::FrozenBaseline: return "Frozen baseline";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : kTrainedAlgorithms) {
    if (algorithm_name(a) == name) return a;
  }
  if (name == algorithm_name(Algorithm::FrozenBaseline)) return Algorithm::FrozenBaseline;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

bool is_ppo(Algorithm algorithm) {
  return algorithm == Algorithm::PpoLinear || algorithm == Algorithm::PpoLog;
}

bool is_spg(Algorithm algorithm) {
  return algorithm == Algorithm::SpgSingle || algorithm == Algorithm::SpgMulti ||
         algorithm == Algorithm::SpgpSingle || algorithm == Algorithm::SpgpMulti;
}

CellAvailability cell_availability(Algorithm algorithm, Regime regime) {
  switch (algorithm) {
    case Algorithm::PpoLinear:
    case Algorithm::FrozenBaseline:
      return regime == Regime::Recent ? CellAvailability::Supported : CellAvailability::Rejected;
    case Algorithm::PpoLog:
      return regime == Regime::Both ? CellAvailability::Unstable : CellAvailability::Supported;
    default:
      return CellAvailability::Supported;
  }
}

namespace {

struct Field {
  std::function<void(const std::string&)> set;
  std::function<std::string()> get;
};

template <typename T>
T parse_value(const std::string& text) {
  std::istringstream in(text);
  T value{};
  in >> value;
  if (!in || !(in >> std::ws).eof()) throw std::invalid_argument("bad value '" + text + "'");
  return value;
}

// Shortest text that parses back to the same value.
template <typename T>
std::string format_value(const T& value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("cannot format config value");
  return std::string(buf.data(), end);
}

template <typename T>
Field bind(T& target) {
  return {[&target](const std::string& text) { target = parse_value<T>(text); },
          [&target] { return format_value(target); }};
}

std::map<std::string, Field> fields_of(ExperimentConfig& c) {
  std::map<std::string, Field> f;
  f["episodes"] = bind(c.episodes);
  f["steps_per_episode"] = bind(c.steps_per_episode);
  f["buffer_size"] = bind(c.buffer_size);
  f["gamma"] = bind(c.gamma);
  f["frame_skip"] = bind(c.frame_skip);
  f["neurons_per_hidden_layer"] = bind(c.hidden_units);
  f["seeds"] = {[&c](const std::string& text) {
                  c.seeds.clear();
                  std::istringstream in(text);
                  for (std::string token; std::getline(in, token, ',');) {
                    c.seeds.push_back(parse_value<std::uint64_t>(token));
                  }
                  if (c.seeds.empty()) throw std::invalid_argument("empty seed list");
                },
                [&c] {
                  std::string out;
                  for (std::size_t i = 0; i < c.seeds.size(); ++i) {
                    out += (i ? "," : "") + std::to_string(c.seeds[i]);
                  }
                  return out;
                }};

  f["env.dt"] = bind(c.physics.dt);
  f["env.top_speed"] = bind(c.physics.top_speed);
  f["env.max_acceleration"] = bind(c.physics.max_acceleration);
  f["env.sensor_range"] = bind(c.physics.sensor_range);
  f["env.min_turn_radius"] = bind(c.physics.min_turn_radius);
  f["env.max_turn_rate"] = bind(c.physics.max_turn_rate);
  f["track.min_points"] = bind(c.track.min_points);
  f["track.max_points"] = bind(c.track.max_points);
  f["track.min_radius"] = bind(c.track.min_radius);
  f["track.max_radius"] = bind(c.track.max_radius);
  f["track.half_width"] = bind(c.track.half_width);

  f["ppo.critic_lr"] = bind(c.ppo.critic_lr);
  f["ppo.actor_lr"] = bind(c.ppo.actor_lr);
  f["ppo.beta"] = bind(c.ppo.beta);
  f["ppo.epsilon"] = bind(c.ppo.epsilon);
  f["ppo.value_epochs"] = bind(c.ppo.value_epochs);
  f["ppo.policy_epochs"] = bind(c.ppo.policy_epochs);
  f["ppo.minibatch"] = bind(c.ppo.minibatch);

  for (auto [prefix, spg] : {std::pair<std::string, algos::SpgConfig*>{"spg_single.", &c.spg_single},
                             std::pair<std::string, algos::SpgConfig*>{"spg_multi.", &c.spg_multi}}) {
    f[prefix + "critic_lr"] = bind(spg->critic_lr);
    f[prefix + "actor_lr"] = bind(spg->actor_lr);
    f[prefix + "beta"] = bind(spg->beta);
    f[prefix + "n_action_samples"] = bind(spg->n_samples);
    f[prefix + "T"] = bind(spg->temperature);
    f[prefix + "gamma_T"] = bind(spg->temp_decay);
    f[prefix + "value_epochs"] = bind(spg->value_epochs);
    f[prefix + "policy_epochs"] = bind(spg->policy_epochs);
    f[prefix + "minibatch"] = bind(spg->minibatch);
  }
  return f;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void check(const ExperimentConfig& c) {
  auto fail = [](const std::string& what) { throw std::invalid_argument("config: " + what); };
  if (c.episodes < 1) fail("episodes must be >= 1");
  if (c.steps_per_episode < 1) fail("steps_per_episode must be >= 1");
  if (c.buffer_size < 1) fail("buffer_size must be >= 1");
  if (c.gamma < 0.0 || c.gamma > 1.0) fail("gamma must lie in [0, 1]");
  if (c.frame_skip < 0) fail("frame_skip must be >= 0");
  if (c.hidden_units < 1) fail("neurons_per_hidden_layer must be >= 1");
  if (!(c.ppo.epsilon > 0.0 && c.ppo.epsilon < 1.0)) fail("ppo.epsilon must lie in (0, 1)");
  if (c.ppo.value_epochs < 1 || c.ppo.policy_epochs < 1) fail("ppo epochs must be >= 1");
  for (const algos::SpgConfig* spg : {&c.spg_single, &c.spg_multi}) {
    if (spg->n_samples < 0) fail("n_action_samples must be >= 0");
    if (spg->temperature < 0.0) fail("T must be >= 0");
    if (spg->value_epochs < 1 || spg->policy_epochs < 1) fail("spg epochs must be >= 1");
  }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  auto fields = fields_of(config);
  std::string line;
  for (int number = 1; std::getline(in, line); ++number) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(number) + ": ";
    if (eq == std::string::npos) throw std::invalid_argument(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const auto it = fields.find(key);
    if (it == fields.end()) throw std::invalid_argument(where + "unknown key '" + key + "'");
    try {
      it->second.set(trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + key + ": " + e.what());
    }
  }
  check(config);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_config(in);
}

void write_config(std::ostream& out, const ExperimentConfig& config) {
  ExperimentConfig copy = config;
  for (const auto& [key, field] : fields_of(copy)) out << key << " = " << field.get() << '\n';
}

std::string RunConfig::cell_name() const {
  return std::string(algorithm_name(algorithm)) + "/" + std::string(replay::regime_name(regime));
}

RunConfig make_run_config(const ExperimentConfig& config, Algorithm algorithm, Regime regime,
                          std::uint64_t track_seed) {
  if (cell_availability(algorithm, regime) == CellAvailability::Rejected) {
    throw std::invalid_argument("cell " + std::string(algorithm_name(algorithm)) + "/" +
                                std::string(replay::regime_name(regime)) + " is not part of the grid");
  }
  RunConfig run;
  run.algorithm = algorithm;
  run.regime = regime;
  run.track_seed = track_seed;
  run.episodes = config.episodes;
  run.steps_per_episode = config.steps_per_episode;
  run.buffer_size = config.buffer_size;
  run.gamma = config.gamma;
  run.frame_skip = config.frame_skip;
  run.hidden_units = config.hidden_units;
  run.physics = config.physics;
  run.track = config.track;
  run.ppo = config.ppo;
  run.ppo.space = algorithm == Algorithm::PpoLog ? algos::RatioSpace::Log : algos::RatioSpace::Linear;
  const bool single = algorithm == Algorithm::SpgSingle || algorithm == Algorithm::SpgpSingle;
  run.spg = single ? config.spg_single : config.spg_multi;
  run.spg.prioritized = algorithm == Algorithm::SpgpSingle || algorithm == Algorithm::SpgpMulti;
  return run;
}

std::vector<Cell> paper_cells() {
  std::vector<Cell> cells;
  for (Regime regime : kRegimes) {
    for (Algorithm algorithm : kTrainedAlgorithms) {
      if (cell_availability(algorithm, regime) == CellAvailability::Supported) {
        cells.push_back({algorithm, regime});
      }
    }
  }
  return cells;
}

std::vector<RunConfig> expand_grid(const ExperimentConfig& config, std::span<const Cell> cells) {
  std::vector<RunConfig> runs;
  for (const Cell& cell : cells) {
    for (std::uint64_t seed : config.seeds) {
      runs.push_back(make_run_config(config, cell.algorithm, cell.regime, seed));
    }
  }
  return runs;
}

std::vector<Cell> select_cells(std::string_view filter) {
  if (filter.empty()) return paper_cells();
  std::vector<Cell> cells;
  auto add = [&cells](Cell c) {
    if (std::find(cells.begin(), cells.end(), c) == cells.end()) cells.push_back(c);
  };
  std::istringstream in{std::string(filter)};
  for (std::string token; std::getline(in, token, ',');) {
    token = trim(token);
    if (token.empty()) continue;
    const auto colon = token.find(':');
    const Algorithm algorithm = parse_algorithm(token.substr(0, colon));
    if (colon != std::string::npos) {
      const Regime regime = replay::parse_regime(token.substr(colon + 1));
      if (cell_availability(algorithm, regime) == CellAvailability::Rejected) {
        throw std::invalid_argument("cell '" + token + "' is not part of the grid");
      }
      add({algorithm, regime});
      continue;
    }
    for (Regime regime : kRegimes) {
      if (cell_availability(algorithm, regime) == CellAvailability::Supported) add({algorithm, regime});
    }
  }
  return cells;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_run_seed(std::uint64_t track_seed, Algorithm algorithm) {
  return splitmix64(splitmix64(track_seed) ^ (static_cast<std::uint64_t>(algorithm) + 1));
}

}  // namespace racer::harness
