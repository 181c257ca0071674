#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "agr/core.hpp"

namespace agr {

// Tabular POMDP with explicit distributions, small enough to solve exactly.
// Terminal states must be encoded absorbing with zero reward so stopped
// simulations and the full expansion agree.
struct EnumerablePomdp {
    int num_states = 0;
    int num_actions = 0;
    int num_obs = 0;
    double gamma = 0.95;
    std::vector<double> transition;   // [s][a][s']
    std::vector<double> observation;  // [s'][a][w]
    std::vector<double> reward;       // [s][a][s']
    std::vector<uint8_t> terminal;    // empty means no terminal states

    double t(int s, int a, int s2) const {
        return transition[(static_cast<std::size_t>(s) * num_actions + a) * num_states + s2];
    }
    double o(int s2, int a, int w) const {
        return observation[(static_cast<std::size_t>(s2) * num_actions + a) * num_obs + w];
    }
    double r(int s, int a, int s2) const {
        return reward[(static_cast<std::size_t>(s) * num_actions + a) * num_states + s2];
    }
    bool is_terminal(int s) const { return !terminal.empty() && terminal[s] != 0; }

    void validate() const;  // throws std::invalid_argument
};

// Exact depth-limited belief-state action values by full expansion of the
// optimal value recursion (every action, every positive-probability
// observation, exact Bayes belief updates). Returns one value per action.
std::vector<double> exact_belief_values(const EnumerablePomdp& pomdp,
                                        std::span<const double> belief, int depth);

// Tabular MDP for shaping-invariance checks. Same encoding conventions.
struct ExplicitMdp {
    int num_states = 0;
    int num_actions = 0;
    std::vector<double> transition;  // [s][a][s']
    std::vector<double> reward;      // [s][a][s']
    std::vector<uint8_t> terminal;

    double t(int s, int a, int s2) const {
        return transition[(static_cast<std::size_t>(s) * num_actions + a) * num_states + s2];
    }
    double r(int s, int a, int s2) const {
        return reward[(static_cast<std::size_t>(s) * num_actions + a) * num_states + s2];
    }
    bool is_terminal(int s) const { return !terminal.empty() && terminal[s] != 0; }

    void validate() const;
};

// Finite-horizon optimal action values, flattened [s][a]. With a potential,
// every transition reward gains gamma*alpha*phi(s') - alpha*phi(s) and the
// horizon boundary starts at -alpha*phi(s) (the outstanding potential is
// cashed out), which makes shaped values equal plain values minus
// alpha*phi(s) exactly, so greedy action sets coincide at every horizon.
std::vector<double> solve_mdp_exact(const ExplicitMdp& mdp, double gamma, int horizon,
                                    std::span<const double> potential = {},
                                    double alpha = 0.0);

// Indices within tol of the maximum.
inline std::vector<int> argmax_set(std::span<const double> values, double tol = 1e-9) {
    double best = values[0];
    for (double v : values) best = v > best ? v : best;
    std::vector<int> out;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] >= best - tol) out.push_back(static_cast<int>(i));
    return out;
}

// Two hidden fault states, a noisy probe, and one commit action per fault.
// Commits resolve into an absorbing state, so the planning question is how
// much probing the probe cost is worth. Small enough to expand exactly.
EnumerablePomdp two_state_probe_pomdp();

// Random rewards-in-[-1,1] MDP with sparse transitions and sometimes one
// absorbing state; potentials are uniform draws per state. For shaping
// invariance checks.
ExplicitMdp random_mdp(Rng& rng, int max_states, int max_actions);
std::vector<double> random_potential(Rng& rng, int num_states);

// Generative adapter so search planners can run on an enumerated POMDP and
// be compared against exact_belief_values.
class EnumeratedModel {
public:
    using State = int;
    using Obs = int;

    EnumeratedModel(const EnumerablePomdp& pomdp, std::vector<double> initial);

    int action_count() const { return pomdp_->num_actions; }
    State initial_state(Rng& rng) const;
    StepOutcome<State, Obs> step(const State& s, ActionId a, Rng& rng) const;
    bool is_terminal(const State& s) const { return pomdp_->is_terminal(s); }
    double pgs_points(const State&) const { return 0.0; }
    std::optional<State> transform_particle(const State&, Rng&, const History<Obs>&) const {
        return std::nullopt;
    }
    bool consistent_with(const State&, const History<Obs>&) const { return true; }

    const EnumerablePomdp& pomdp() const { return *pomdp_; }

private:
    const EnumerablePomdp* pomdp_;
    std::vector<double> initial_;
};

// Belief as particle counts proportional to the given distribution (largest
// remainders get the leftover particles), so small beliefs are represented
// exactly.
std::vector<int> proportional_particles(std::span<const double> belief, int count);

struct OracleCheck {
    std::vector<double> planner_q;  // root action values, unvisited edges NaN
    std::vector<double> exact_q;
    double max_abs_diff = 0.0;      // over all actions
};

// Runs the search planner (no shaping) on the enumerated POMDP at the given
// depth and compares every root action value against the exact expansion.
OracleCheck compare_planner_to_oracle(const EnumerablePomdp& pomdp,
                                      std::span<const double> belief, int depth,
                                      int num_simulations, double ucb_c, uint64_t seed,
                                      int belief_particles = 1000);

}  // namespace agr
