#pragma once

#include <chrono>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "agr/core.hpp"
#include "agr/mcts.hpp"

namespace agr {

// Rng stream roles: world randomness is isolated from planner randomness so
// planner configuration never perturbs the simulated worlds.
inline constexpr uint64_t kWorldStream = 0;
inline constexpr uint64_t kPlannerStream = 1;

struct EpisodeRecord {
    uint64_t episode_index = 0;
    int steps = 0;
    double discounted_return = 0.0;
    bool reached_terminal = false;
    double wall_seconds = 0.0;
};

struct RunStats {
    double mean_return = 0.0;
    double std_err = 0.0;  // sample standard deviation / sqrt(n); 0 when n < 2
    double completion_rate = 0.0;
    double mean_steps = 0.0;
};

RunStats summarize(std::span<const EpisodeRecord> records);

struct SweepSummary {
    std::string domain;
    std::string planner;  // "pomcp" | "pgs"
    double param = 0.0;   // expertise (maintenance) or sensor accuracy (assembly)
    int simulations = 0;
    int episodes = 0;
    RunStats stats;
};

struct ExperimentConfig {
    std::string domain = "maintenance";
    std::vector<std::string> planners = {"pomcp", "pgs"};
    std::vector<int> simulations = {32, 64, 128, 256, 512, 1024, 2048, 4096, 8192};
    int episodes = 100;
    int max_steps = 100;
    uint64_t seed = 1;
    double gamma = 0.95;
    double ucb_c = 5.0;
    double alpha = 10.0;
    int particles = 1000;
    int max_depth = 100;
    double expertise = 0.75;  // maintenance worker skill
    double accuracy = 0.9;    // assembly sensor accuracy
    std::string out_path = "results.csv";
};

// Runs every (planner, simulations) point of the sweep. Episode seeds depend
// only on (seed, episode index), so every point replays the same worlds and
// reruns are bit-identical.
std::vector<SweepSummary> run_sweep(const ExperimentConfig& cfg);

// CSV rows sorted by (domain, planner, param, simulations), numbers with six
// significant digits, so equal configurations produce byte-identical files.
void write_csv(std::vector<SweepSummary> rows, std::ostream& out);
void write_csv_file(std::vector<SweepSummary> rows, const std::string& path);

PlannerMode parse_planner(const std::string& name);  // throws on unknown names

// Fallback belief after particle deprivation: fresh initial states, nudged
// by validated transforms until consistent with the recorded observations.
template <GenerativeModel M>
ParticleBelief<typename M::State> recover_belief(const M& model,
                                                 const History<typename M::Obs>& constraints,
                                                 std::size_t target_count, Rng& rng) {
    ParticleBelief<typename M::State> out;
    const std::size_t budget = 10 * target_count;
    for (std::size_t i = 0; i < budget && out.size() < target_count; ++i) {
        auto s = model.initial_state(rng);
        if (model.consistent_with(s, constraints) && !model.is_terminal(s)) {
            out.particles.push_back(std::move(s));
            continue;
        }
        for (int k = 0; k < 32; ++k) {
            if (auto t = model.transform_particle(s, rng, constraints)) {
                if (!model.is_terminal(*t)) out.particles.push_back(std::move(*t));
                break;
            }
        }
    }
    if (!out.empty())
        while (out.size() < target_count)
            out.particles.push_back(
                out.particles[rng.uniform_int(static_cast<uint32_t>(out.size()))]);
    return out;
}

// One benchmark episode: plan, act on the hidden true state, record the
// observation, reuse the matching search subtree, and filter the belief.
// An unrecoverable belief (nothing consistent survives, and fresh starts
// cannot be made consistent) aborts the episode; it counts as incomplete.
// on_step(step_index, action, outcome) runs after every executed action.
template <GenerativeModel M, class StepFn>
EpisodeRecord run_episode(const M& model, const PlannerConfig& planner_cfg, int max_steps,
                          int particle_count, uint64_t base_seed, uint64_t episode_index,
                          StepFn&& on_step) {
    using State = typename M::State;
    using Obs = typename M::Obs;
    if (max_steps < 1) throw std::invalid_argument("run_episode: max_steps < 1");
    if (particle_count < 1) throw std::invalid_argument("run_episode: particle_count < 1");

    const auto start = std::chrono::steady_clock::now();
    Rng world(derive_seed(base_seed, episode_index, kWorldStream));
    Rng mind(derive_seed(base_seed, episode_index, kPlannerStream));

    State truth = model.initial_state(world);
    ParticleBelief<State> belief;
    belief.particles.reserve(particle_count);
    for (int i = 0; i < particle_count; ++i)
        belief.particles.push_back(model.initial_state(mind));

    Planner<M> planner(planner_cfg);
    History<Obs> history;
    EpisodeRecord rec;
    rec.episode_index = episode_index;

    double disc = 1.0;
    for (int t = 0; t < max_steps; ++t) {
        ActionId a;
        try {
            a = planner.plan(belief, model, mind);
        } catch (const BeliefUnplannable&) {
            // The belief says the task is over but the episode continues, so
            // the belief is wrong; restart it like a deprivation.
            planner.reset();
            belief = recover_belief(model, history, static_cast<std::size_t>(particle_count),
                                    mind);
            if (belief.empty()) break;  // unrecoverable; abort as incomplete
            a = planner.plan(belief, model, mind);
        }
        auto outcome = model.step(truth, a, world);
        rec.discounted_return += disc * outcome.reward;
        disc *= planner_cfg.gamma;
        rec.steps += 1;
        history = append_history(history, a, outcome.observation);
        on_step(t, a, outcome);
        truth = outcome.next_state;
        if (outcome.terminal) {
            rec.reached_terminal = true;
            break;
        }
        if (t + 1 >= max_steps) break;

        auto seeds = planner.advance_root(a, outcome.observation);
        try {
            belief = update_belief(belief, a, outcome.observation, model, history,
                                   static_cast<std::size_t>(particle_count), mind,
                                   std::span<const State>(seeds));
        } catch (const ParticleDeprivation&) {
            planner.reset();
            belief = recover_belief(model, history, static_cast<std::size_t>(particle_count),
                                    mind);
            if (belief.empty()) break;  // unrecoverable; abort as incomplete
        }
    }

    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

template <GenerativeModel M>
EpisodeRecord run_episode(const M& model, const PlannerConfig& planner_cfg, int max_steps,
                          int particle_count, uint64_t base_seed, uint64_t episode_index) {
    return run_episode(model, planner_cfg, max_steps, particle_count, base_seed,
                       episode_index, [](int, ActionId, const auto&) {});
}

// Shared by run_sweep and the acceptance checks: one (planner, simulations)
// configuration over a block of episodes.
template <GenerativeModel M, class StepFn>
std::vector<EpisodeRecord> run_point(const M& model, const PlannerConfig& planner_cfg,
                                     int episodes, int max_steps, int particle_count,
                                     uint64_t base_seed, StepFn&& on_step) {
    std::vector<EpisodeRecord> records;
    records.reserve(static_cast<std::size_t>(episodes));
    for (int e = 0; e < episodes; ++e)
        records.push_back(run_episode(model, planner_cfg, max_steps, particle_count,
                                      base_seed, static_cast<uint64_t>(e), on_step));
    return records;
}

template <GenerativeModel M>
std::vector<EpisodeRecord> run_point(const M& model, const PlannerConfig& planner_cfg,
                                     int episodes, int max_steps, int particle_count,
                                     uint64_t base_seed) {
    return run_point(model, planner_cfg, episodes, max_steps, particle_count, base_seed,
                     [](int, ActionId, const auto&) {});
}

}  // namespace agr
