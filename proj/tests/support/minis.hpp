#pragma once

#include <optional>

#include "agr/core.hpp"

// Tiny hand-checkable models for exercising the planning machinery.

// Deterministic counter: every action advances the state by one, emits
// observation 0, and pays 1.
struct CountingModel {
    using State = int;
    using Obs = int;
    int action_count() const { return 2; }
    State initial_state(agr::Rng&) const { return 0; }
    agr::StepOutcome<State, Obs> step(const State& s, agr::ActionId, agr::Rng&) const {
        return {s + 1, 0, 1.0, false};
    }
    bool is_terminal(const State&) const { return false; }
    double pgs_points(const State&) const { return 0.0; }
    std::optional<State> transform_particle(const State&, agr::Rng&,
                                            const agr::History<Obs>&) const {
        return std::nullopt;
    }
    bool consistent_with(const State&, const agr::History<Obs>&) const { return true; }
};

// Hidden bit that never moves and is observed exactly.
struct EmitterModel {
    using State = int;
    using Obs = int;
    int action_count() const { return 1; }
    State initial_state(agr::Rng& rng) const { return rng.bernoulli(0.5) ? 1 : 0; }
    agr::StepOutcome<State, Obs> step(const State& s, agr::ActionId, agr::Rng&) const {
        return {s, s, 0.0, false};
    }
    bool is_terminal(const State&) const { return false; }
    double pgs_points(const State&) const { return 0.0; }
    std::optional<State> transform_particle(const State&, agr::Rng&,
                                            const agr::History<Obs>&) const {
        return std::nullopt;
    }
    bool consistent_with(const State&, const agr::History<Obs>&) const { return true; }
};

// Noisy emitter: observation is uniform over {0..19}, so matching any one
// value keeps a twentieth of the stepped particles.
struct NoisyEmitterModel {
    using State = int;
    using Obs = int;
    int action_count() const { return 1; }
    State initial_state(agr::Rng&) const { return 0; }
    agr::StepOutcome<State, Obs> step(const State& s, agr::ActionId, agr::Rng& rng) const {
        return {s + 1, static_cast<Obs>(rng.uniform_int(20)), 0.0, false};
    }
    bool is_terminal(const State&) const { return false; }
    double pgs_points(const State&) const { return 0.0; }
    std::optional<State> transform_particle(const State&, agr::Rng&,
                                            const agr::History<Obs>&) const {
        return std::nullopt;
    }
    bool consistent_with(const State&, const agr::History<Obs>&) const { return true; }
};

// Hidden bit observed exactly, where the latest recorded reading binds the
// bit and the transform can flip a particle to match it.
struct RepairableEmitterModel {
    using State = int;
    using Obs = int;
    int action_count() const { return 1; }
    State initial_state(agr::Rng& rng) const { return rng.bernoulli(0.5) ? 1 : 0; }
    agr::StepOutcome<State, Obs> step(const State& s, agr::ActionId, agr::Rng&) const {
        return {s, s, 0.0, false};
    }
    bool is_terminal(const State&) const { return false; }
    double pgs_points(const State&) const { return 0.0; }
    std::optional<State> transform_particle(const State& s, agr::Rng&,
                                            const agr::History<Obs>& c) const {
        State n = 1 - s;
        if (!consistent_with(n, c)) return std::nullopt;
        return n;
    }
    bool consistent_with(const State& s, const agr::History<Obs>& c) const {
        return c.empty() || s == c.back().observation;
    }
};

// Hidden bit that never moves, read through a sensor that lies 10% of the
// time. No transform volunteers, so the rejection path must survive on
// emission alone even when the reading contradicts every particle.
struct LyingEmitterModel {
    using State = int;
    using Obs = int;
    int action_count() const { return 1; }
    State initial_state(agr::Rng& rng) const { return rng.bernoulli(0.5) ? 1 : 0; }
    agr::StepOutcome<State, Obs> step(const State& s, agr::ActionId, agr::Rng& rng) const {
        return {s, rng.bernoulli(0.9) ? s : 1 - s, 0.0, false};
    }
    bool is_terminal(const State&) const { return false; }
    double pgs_points(const State&) const { return 0.0; }
    std::optional<State> transform_particle(const State&, agr::Rng&,
                                            const agr::History<Obs>&) const {
        return std::nullopt;
    }
    bool consistent_with(const State& s, const agr::History<Obs>& c) const {
        return c.empty() || s == c.back().observation;
    }
};

// Two-armed bandit: arm 1 pays 1, arm 0 pays nothing, both end the episode.
struct BanditModel {
    using State = int;  // 0 live, 1 finished
    using Obs = int;
    int action_count() const { return 2; }
    State initial_state(agr::Rng&) const { return 0; }
    agr::StepOutcome<State, Obs> step(const State&, agr::ActionId a, agr::Rng&) const {
        return {1, 0, a == 1 ? 1.0 : 0.0, true};
    }
    bool is_terminal(const State& s) const { return s == 1; }
    double pgs_points(const State&) const { return 0.0; }
    std::optional<State> transform_particle(const State&, agr::Rng&,
                                            const agr::History<Obs>&) const {
        return std::nullopt;
    }
    bool consistent_with(const State&, const agr::History<Obs>&) const { return true; }
};

// Single-action chain paying 1 per step for `length` steps, then terminal.
struct ChainModel {
    using State = int;
    using Obs = int;
    int length = 2;
    int action_count() const { return 1; }
    State initial_state(agr::Rng&) const { return 0; }
    agr::StepOutcome<State, Obs> step(const State& s, agr::ActionId, agr::Rng&) const {
        int next = s + 1;
        return {next, 0, 1.0, next >= length};
    }
    bool is_terminal(const State& s) const { return s >= length; }
    double pgs_points(const State&) const { return 0.0; }
    std::optional<State> transform_particle(const State&, agr::Rng&,
                                            const agr::History<Obs>&) const {
        return std::nullopt;
    }
    bool consistent_with(const State&, const agr::History<Obs>&) const { return true; }
};

// Action a jumps straight to state a; goal points favor state 2.
struct LadderModel {
    using State = int;
    using Obs = int;
    int action_count() const { return 3; }
    State initial_state(agr::Rng&) const { return 0; }
    agr::StepOutcome<State, Obs> step(const State&, agr::ActionId a, agr::Rng&) const {
        return {static_cast<State>(a), 0, 0.0, false};
    }
    bool is_terminal(const State&) const { return false; }
    double pgs_points(const State& s) const { return s == 2 ? 5.0 : static_cast<double>(s); }
    std::optional<State> transform_particle(const State&, agr::Rng&,
                                            const agr::History<Obs>&) const {
        return std::nullopt;
    }
    bool consistent_with(const State&, const agr::History<Obs>&) const { return true; }
};
