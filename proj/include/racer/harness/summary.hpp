#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "racer/harness/config.hpp"
#include "racer/harness/runner.hpp"

namespace racer::harness {

inline constexpr int kFinalWindow = 20;

// Per-episode rewards of one (cell, seed) run, as kept in memory or read
// back from a results directory.
struct SeedCurve {
  Algorithm algorithm = Algorithm::PpoLinear;
  Regime regime = Regime::Recent;
  std::uint64_t seed = 0;
  std::vector<double> rewards;
  RunStatus status = RunStatus::Completed;
};

SeedCurve to_curve(const RunResult& result);
std::vector<SeedCurve> to_curves(std::span<const RunResult> results);

// Mean of the last `window` rewards (all of them when fewer).
double final_performance(std::span<const double> rewards, int window = kFinalWindow);

struct SummaryRow {
  Algorithm algorithm = Algorithm::PpoLinear;
  Regime regime = Regime::Recent;
  double mean = 0.0;
  double standard_error = 0.0;  // sample std-dev across seeds / sqrt(n)
  std::vector<double> per_seed;  // final performance of each completed seed
  int seeds_excluded = 0;        // aborted or failed runs
  bool short_history = false;    // some seed had fewer than kFinalWindow episodes
};

struct Summary {
  std::vector<SummaryRow> rows;  // regime-major, table column order

  const SummaryRow* find(Algorithm algorithm, Regime regime) const;
};

Summary summarize(std::span<const SeedCurve> curves);

// Results-table layout: one row per regime, one column per algorithm.
std::string format_table(const Summary& summary);
void write_summary_csv(std::ostream& out, const Summary& summary);

}  // namespace racer::harness
