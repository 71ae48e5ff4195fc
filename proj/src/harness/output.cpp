#include "racer/harness/output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace racer::harness {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", v);
  return buf;
}

std::map<std::string, std::string> key_values(const std::string& line) {
  std::map<std::string, std::string> kv;
  std::istringstream in(line);
  for (std::string token; in >> token;) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw std::runtime_error("manifest: malformed field '" + token + "'");
    kv[token.substr(0, eq)] = token.substr(eq + 1);
  }
  return kv;
}

}  // namespace

std::string curve_file_name(Algorithm algorithm, Regime regime) {
  return std::string(algorithm_name(algorithm)) + "_" + std::string(replay::regime_name(regime)) + ".csv";
}

void write_curve_csv(std::ostream& out, std::span<const SeedCurve> cell_curves) {
  std::size_t rows = 0;
  out << "episode";
  for (const SeedCurve& c : cell_curves) {
    out << ",seed_" << c.seed;
    rows = std::max(rows, c.rewards.size());
  }
  out << ",mean\n";
  for (std::size_t e = 0; e < rows; ++e) {
    out << e;
    double sum = 0.0;
    int count = 0;
    for (const SeedCurve& c : cell_curves) {
      out << ',';
      if (e < c.rewards.size()) {
        out << fixed(c.rewards[e]);
        sum += c.rewards[e];
        ++count;
      }
    }
    out << ',' << fixed(sum / count) << '\n';
  }
}

std::vector<SeedCurve> read_curve_csv(std::istream& in, Algorithm algorithm, Regime regime) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("curve csv: missing header");
  std::vector<SeedCurve> curves;
  {
    std::istringstream header(line);
    std::string field;
    std::getline(header, field, ',');  // episode
    while (std::getline(header, field, ',')) {
      if (field == "mean") break;
      if (field.rfind("seed_", 0) != 0) throw std::runtime_error("curve csv: bad column '" + field + "'");
      curves.push_back({algorithm, regime, std::stoull(field.substr(5)), {}, RunStatus::Completed});
    }
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');
    for (SeedCurve& c : curves) {
      if (!std::getline(row, field, ',')) throw std::runtime_error("curve csv: short row");
      if (!field.empty()) c.rewards.push_back(std::stod(field));
    }
  }
  return curves;
}

void emit_curves(std::span<const SeedCurve> curves, const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<Cell> order;
  for (const SeedCurve& c : curves) {
    const Cell cell{c.algorithm, c.regime};
    if (std::find(order.begin(), order.end(), cell) == order.end()) order.push_back(cell);
  }
  for (const Cell& cell : order) {
    std::vector<SeedCurve> group;
    for (const SeedCurve& c : curves) {
      if (c.algorithm == cell.algorithm && c.regime == cell.regime) group.push_back(c);
    }
    std::ofstream out = open_out(dir / curve_file_name(cell.algorithm, cell.regime));
    write_curve_csv(out, group);
    if (!out) throw std::runtime_error("write failed for curve of " + curve_file_name(cell.algorithm, cell.regime));
  }
}

void write_manifest(std::ostream& out, std::span<const RunResult> results) {
  for (const RunResult& r : results) {
    char wall[32];
    std::snprintf(wall, sizeof wall, "%.3f", r.wall_seconds);
    out << "algorithm=" << algorithm_name(r.config.algorithm)
        << " regime=" << replay::regime_name(r.config.regime) << " seed=" << r.config.track_seed
        << " run_seed=" << r.run_seed << " status=" << status_name(r.status)
        << " episodes=" << r.episode_rewards.size() << " aborted_episode=" << r.aborted_episode
        << " wall_seconds=" << wall << '\n';
  }
}

std::vector<ManifestEntry> read_manifest(std::istream& in) {
  std::vector<ManifestEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto kv = key_values(line);
    ManifestEntry e;
    e.algorithm = parse_algorithm(kv.at("algorithm"));
    e.regime = replay::parse_regime(kv.at("regime"));
    e.seed = std::stoull(kv.at("seed"));
    e.run_seed = std::stoull(kv.at("run_seed"));
    e.status = parse_status(kv.at("status"));
    e.episodes = std::stoi(kv.at("episodes"));
    e.aborted_episode = std::stoi(kv.at("aborted_episode"));
    e.wall_seconds = std::stod(kv.at("wall_seconds"));
    entries.push_back(e);
  }
  return entries;
}

void write_results(const fs::path& dir, const ExperimentConfig& config, std::span<const RunResult> results) {
  fs::create_directories(dir);
  {
    std::ofstream out = open_out(dir / "config.txt");
    write_config(out, config);
  }
  {
    std::ofstream out = open_out(dir / "manifest.txt");
    write_manifest(out, results);
  }
  const std::vector<SeedCurve> curves = to_curves(results);
  emit_curves(curves, dir / "curves");
  write_summary(dir, summarize(curves));
}

std::vector<SeedCurve> read_results(const fs::path& dir) {
  std::ifstream manifest_in(dir / "manifest.txt");
  if (!manifest_in) throw std::runtime_error("cannot read '" + (dir / "manifest.txt").string() + "'");
  const std::vector<ManifestEntry> manifest = read_manifest(manifest_in);

  std::vector<Cell> cells;
  for (const ManifestEntry& e : manifest) {
    const Cell cell{e.algorithm, e.regime};
    if (std::find(cells.begin(), cells.end(), cell) == cells.end()) cells.push_back(cell);
  }
  std::vector<SeedCurve> curves;
  for (const Cell& cell : cells) {
    const fs::path path = dir / "curves" / curve_file_name(cell.algorithm, cell.regime);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
    for (SeedCurve& c : read_curve_csv(in, cell.algorithm, cell.regime)) {
      for (const ManifestEntry& e : manifest) {
        if (e.algorithm == c.algorithm && e.regime == c.regime && e.seed == c.seed) c.status = e.status;
      }
      curves.push_back(std::move(c));
    }
  }
  return curves;
}

std::string write_summary(const fs::path& dir, const Summary& summary) {
  fs::create_directories(dir);
  {
    std::ofstream out = open_out(dir / "summary.csv");
    write_summary_csv(out, summary);
  }
  const std::string table = format_table(summary);
  std::ofstream out = open_out(dir / "summary.txt");
  out << table;
  return table;
}

}  // namespace racer::harness
