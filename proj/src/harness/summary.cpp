#include "racer/harness/summary.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

namespace racer::harness {

SeedCurve to_curve(const RunResult& result) {
  return {result.config.algorithm, result.config.regime, result.config.track_seed,
          result.episode_rewards, result.status};
}

std::vector<SeedCurve> to_curves(std::span<const RunResult> results) {
  std::vector<SeedCurve> curves;
  curves.reserve(results.size());
  for (const RunResult& r : results) curves.push_back(to_curve(r));
  return curves;
}

double final_performance(std::span<const double> rewards, int window) {
  if (rewards.empty()) return std::numeric_limits<double>::quiet_NaN();
  const std::size_t n = std::min<std::size_t>(rewards.size(), static_cast<std::size_t>(window));
  double sum = 0.0;
  for (std::size_t i = rewards.size() - n; i < rewards.size(); ++i) sum += rewards[i];
  return sum / static_cast<double>(n);
}

const SummaryRow* Summary::find(Algorithm algorithm, Regime regime) const {
  for (const SummaryRow& row : rows) {
    if (row.algorithm == algorithm && row.regime == regime) return &row;
  }
  return nullptr;
}

Summary summarize(std::span<const SeedCurve> curves) {
  std::vector<Algorithm> columns(kTrainedAlgorithms.begin(), kTrainedAlgorithms.end());
  columns.push_back(Algorithm::FrozenBaseline);

  Summary summary;
  for (Regime regime : kRegimes) {
    for (Algorithm algorithm : columns) {
      SummaryRow row;
      row.algorithm = algorithm;
      row.regime = regime;
      bool present = false;
      for (const SeedCurve& c : curves) {
        if (c.algorithm != algorithm || c.regime != regime) continue;
        present = true;
        if (c.status != RunStatus::Completed || c.rewards.empty()) {
          ++row.seeds_excluded;
          continue;
        }
        if (c.rewards.size() < static_cast<std::size_t>(kFinalWindow)) row.short_history = true;
        row.per_seed.push_back(final_performance(c.rewards));
      }
      if (!present) continue;
      const double n = static_cast<double>(row.per_seed.size());
      if (row.per_seed.empty()) {
        row.mean = row.standard_error = std::numeric_limits<double>::quiet_NaN();
      } else {
        double sum = 0.0;
        for (double v : row.per_seed) sum += v;
        row.mean = sum / n;
        double sq = 0.0;
        for (double v : row.per_seed) sq += (v - row.mean) * (v - row.mean);
        row.standard_error = row.per_seed.size() > 1 ? std::sqrt(sq / (n - 1.0)) / std::sqrt(n) : 0.0;
      }
      summary.rows.push_back(std::move(row));
    }
  }
  return summary;
}

namespace {

std::string cell_text(const SummaryRow* row) {
  if (row == nullptr) return "";
  if (row->per_seed.empty()) return "aborted";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f +/- %.1f", row->mean, row->standard_error);
  std::string text = buf;
  if (row->seeds_excluded > 0) text += " (" + std::to_string(row->seeds_excluded) + " aborted)";
  if (row->short_history) text += " *";
  return text;
}

std::string capitalized(std::string_view s) {
  std::string out(s);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(out[0]));
  return out;
}

}  // namespace

std::string format_table(const Summary& summary) {
  std::vector<Algorithm> columns;
  for (Algorithm a : kTrainedAlgorithms) columns.push_back(a);
  columns.push_back(Algorithm::FrozenBaseline);
  // Drop columns with no data at all.
  std::erase_if(columns, [&](Algorithm a) {
    return std::none_of(summary.rows.begin(), summary.rows.end(),
                        [a](const SummaryRow& r) { return r.algorithm == a; });
  });

  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header{""};
  for (Algorithm a : columns) header.emplace_back(algorithm_title(a));
  table.push_back(header);
  bool any_short = false;
  for (Regime regime : kRegimes) {
    std::vector<std::string> line{capitalized(replay::regime_name(regime))};
    for (Algorithm a : columns) {
      const SummaryRow* row = summary.find(a, regime);
      any_short = any_short || (row && row->short_history);
      line.push_back(cell_text(row));
    }
    table.push_back(line);
  }

  std::vector<std::size_t> widths(table.front().size(), 0);
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], line[c].size());
  }
  std::ostringstream out;
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      out << (c ? " | " : "") << line[c] << std::string(widths[c] - line[c].size(), ' ');
    }
    out << '\n';
  }
  out << "Final performance: mean of the last " << kFinalWindow
      << " episode rewards per seed; mean +/- standard error across seeds.\n";
  if (any_short) out << "* fewer than " << kFinalWindow << " episodes available for some seeds\n";
  return out.str();
}

void write_summary_csv(std::ostream& out, const Summary& summary) {
  out << "algorithm,regime,mean,standard_error,seeds,seeds_excluded,short_history\n";
  char buf[64];
  for (const SummaryRow& row : summary.rows) {
    out << algorithm_name(row.algorithm) << ',' << replay::regime_name(row.regime) << ',';
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", row.mean, row.standard_error);
    out << buf << ',' << row.per_seed.size() << ',' << row.seeds_excluded << ','
        << (row.short_history ? 1 : 0) << '\n';
  }
}

}  // namespace racer::harness
