#include "racer/returns/returns.hpp"

#include <stdexcept>

namespace racer::returns {

std::vector<double> discounted_returns(std::span<const double> rewards, double gamma) {
  if (rewards.empty()) throw std::invalid_argument("discounted_returns: empty reward list");
  std::vector<double> gains(rewards.size());
  double running = 0.0;
  for (std::size_t t = rewards.size(); t-- > 0;) {
    running = rewards[t] + gamma * running;
    gains[t] = running;
  }
  return gains;
}

std::vector<double> advantages(std::span<const double> gains, std::span<const double> values) {
  if (gains.size() != values.size()) throw std::invalid_argument("advantages: length mismatch");
  std::vector<double> out(gains.size());
  for (std::size_t t = 0; t < gains.size(); ++t) out[t] = gains[t] - values[t];
  return out;
}

double EpisodeTrace::total_reward() const {
  double total = 0.0;
  for (const Transition& tr : transitions) total += tr.reward;
  return total;
}

void EpisodeTrace::compute_gains() {
  std::vector<double> rewards;
  rewards.reserve(transitions.size());
  for (const Transition& tr : transitions) rewards.push_back(tr.reward);
  const std::vector<double> gains = discounted_returns(rewards, gamma);
  for (std::size_t t = 0; t < transitions.size(); ++t) transitions[t].gain = gains[t];
}

}  // namespace racer::returns
