#include "racer/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <random>
#include <thread>

#include "racer/algos/critic.hpp"
#include "racer/algos/ppo.hpp"
#include "racer/algos/spg.hpp"
#include "racer/env/car.hpp"
#include "racer/policy/gaussian_policy.hpp"
#include "racer/replay/replay.hpp"
#include "racer/returns/returns.hpp"

namespace racer::harness {

std::string_view status_name(RunStatus status) {
  switch (status) {
    case RunStatus::Completed: return "completed";
    case RunStatus::AbortedNonFinite: return "aborted-nonfinite";
    case RunStatus::Failed: return "failed";
  }
  return "failed";
}

RunStatus parse_status(std::string_view name) {
  if (name == "completed") return RunStatus::Completed;
  if (name == "aborted-nonfinite") return RunStatus::AbortedNonFinite;
  if (name == "failed") return RunStatus::Failed;
  throw std::invalid_argument("unknown run status '" + std::string(name) + "'");
}

namespace {

returns::EpisodeTrace roll_out(env::RacingEnv& environment, const nn::MlpParams& actor, int episode,
                               int steps, double gamma, std::mt19937_64& rng, int& crashes) {
  returns::EpisodeTrace trace;
  trace.gamma = gamma;
  trace.transitions.reserve(steps);
  crashes = 0;
  Observation obs = environment.reset();
  for (int t = 0; t < steps; ++t) {
    const policy::PolicyOutput out = policy::policy_forward(actor, obs);
    const policy::ActionSample sample = policy::sample_action(out, rng);
    if (!std::isfinite(sample.log_prob)) {
      throw algos::NonFiniteError("non-finite action log-likelihood during rollout");
    }
    const env::StepOutcome outcome = environment.step(clamp_action(sample.action));
    crashes += outcome.crashed ? 1 : 0;
    trace.transitions.push_back({obs, sample.action, outcome.reward, episode, t, 0.0, sample.log_prob});
    obs = outcome.observation;
  }
  trace.compute_gains();
  return trace;
}

std::span<const returns::Transition> pick_source(replay::SourceKind kind,
                                                 const replay::ReplayBuffer& buffer,
                                                 const returns::EpisodeTrace& recent) {
  if (kind == replay::SourceKind::Buffer) return buffer.contents();
  return recent.transitions;
}

}  // namespace

RunResult run_cell(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  RunResult result;
  result.config = config;
  result.run_seed = derive_run_seed(config.track_seed, config.algorithm);

  env::RacingEnv environment(env::generate_track(config.track_seed, config.track), config.physics,
                             config.frame_skip);
  std::mt19937_64 rng(result.run_seed);
  nn::MlpParams actor = policy::make_actor(rng(), config.hidden_units);
  const algos::CriticKind kind =
      is_ppo(config.algorithm) ? algos::CriticKind::StateValue : algos::CriticKind::StateActionValue;
  nn::MlpParams critic = algos::make_critic(kind, rng(), config.hidden_units);
  replay::ReplayBuffer buffer(config.buffer_size);
  const bool uses_buffer = config.regime != Regime::Recent;
  double temperature = config.spg.temperature;

  const double critic_lr = is_ppo(config.algorithm) ? config.ppo.critic_lr : config.spg.critic_lr;
  const int value_epochs = is_ppo(config.algorithm) ? config.ppo.value_epochs : config.spg.value_epochs;
  const int policy_epochs = is_ppo(config.algorithm) ? config.ppo.policy_epochs : config.spg.policy_epochs;
  const std::size_t minibatch = is_ppo(config.algorithm) ? config.ppo.minibatch : config.spg.minibatch;

  for (int episode = 0; episode < config.episodes; ++episode) {
    try {
      int crashes = 0;
      const returns::EpisodeTrace trace =
          roll_out(environment, actor, episode, config.steps_per_episode, config.gamma, rng, crashes);
      result.episode_rewards.push_back(trace.total_reward());
      result.episode_crashes.push_back(crashes);
      if (config.algorithm == Algorithm::FrozenBaseline) continue;

      if (uses_buffer) buffer.push_episode(trace.transitions);

      for (const replay::SchedulePhase& phase : replay::epoch_schedule(config.regime, value_epochs)) {
        const algos::CriticTrainConfig train{critic_lr, phase.epochs, minibatch};
        algos::critic_update(critic, kind, pick_source(phase.source, buffer, trace), train, rng);
      }
      for (const replay::SchedulePhase& phase : replay::epoch_schedule(config.regime, policy_epochs)) {
        const auto source = pick_source(phase.source, buffer, trace);
        if (is_ppo(config.algorithm)) {
          algos::ppo_update(actor, critic, source, phase.epochs, config.ppo, rng);
        } else {
          algos::spg_actor_update(actor, critic, source, phase.epochs, config.spg, temperature, rng);
        }
      }
      if (is_spg(config.algorithm)) {
        temperature = algos::decay_temperature(temperature, config.spg.temp_decay);
      }
    } catch (const algos::NonFiniteError& e) {
      result.status = RunStatus::AbortedNonFinite;
      result.aborted_episode = episode;
      result.message = e.what();
      break;
    }
  }

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

std::vector<RunResult> run_grid(std::span<const RunConfig> cells, int jobs, const ProgressFn& on_done) {
  std::vector<RunResult> results(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        results[i] = run_cell(cells[i]);
      } catch (const std::exception& e) {
        results[i].config = cells[i];
        results[i].status = RunStatus::Failed;
        results[i].message = e.what();
      }
      if (on_done) {
        std::lock_guard lock(progress_mutex);
        on_done(i, results[i]);
      }
    }
  };

  const int threads = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(cells.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  return results;
}

}  // namespace racer::harness
