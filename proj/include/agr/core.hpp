#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "agr/rng.hpp"
#include "agr/target.hpp"

namespace agr {

using ActionId = int;

// Observation: either a domain sensor reading (payload P) or an observed
// worker activity triple. Ordered so it can key search-tree branches.
template <class P>
struct Observation {
    std::variant<P, ActivityTriple> value;

    Observation() = default;
    Observation(P payload) : value(std::move(payload)) {}
    Observation(ActivityTriple triple) : value(triple) {}

    bool is_target() const { return std::holds_alternative<ActivityTriple>(value); }
    const ActivityTriple& triple() const { return std::get<ActivityTriple>(value); }
    const P& payload() const { return std::get<P>(value); }

    auto operator<=>(const Observation&) const = default;
};

template <class Obs>
struct HistoryEntry {
    ActionId action = 0;
    Obs observation{};

    auto operator<=>(const HistoryEntry&) const = default;
};

// Action-observation history; append-only by convention.
template <class Obs>
using History = std::vector<HistoryEntry<Obs>>;

template <class Obs>
History<Obs> append_history(const History<Obs>& h, ActionId action, const Obs& obs) {
    History<Obs> out = h;
    out.push_back({action, obs});
    return out;
}

template <class State, class Obs>
struct StepOutcome {
    State next_state;
    Obs observation;
    double reward = 0.0;
    bool terminal = false;  // further steps from next_state are illegal
};

template <class State>
struct ParticleBelief {
    std::vector<State> particles;

    bool empty() const { return particles.empty(); }
    std::size_t size() const { return particles.size(); }

    const State& sample(Rng& rng) const {
        return particles[rng.uniform_int(static_cast<uint32_t>(particles.size()))];
    }
};

// Generative world model: simulator access only, no explicit distributions.
// consistent_with must accept any state the model itself can produce along
// the recorded history; transform_particle returns only validated states.
template <class M>
concept GenerativeModel =
    std::copyable<typename M::State> && std::equality_comparable<typename M::Obs> &&
    requires(const M m, const typename M::State s, ActionId a, Rng& rng,
             const History<typename M::Obs>& h) {
        { m.action_count() } -> std::convertible_to<int>;
        { m.initial_state(rng) } -> std::same_as<typename M::State>;
        { m.step(s, a, rng) } -> std::same_as<StepOutcome<typename M::State, typename M::Obs>>;
        { m.is_terminal(s) } -> std::same_as<bool>;
        { m.pgs_points(s) } -> std::convertible_to<double>;
        { m.transform_particle(s, rng, h) } -> std::same_as<std::optional<typename M::State>>;
        { m.consistent_with(s, h) } -> std::same_as<bool>;
    };

inline double discounted_return(std::span<const double> rewards, double gamma) {
    double total = 0.0;
    double disc = 1.0;
    for (double r : rewards) {
        total += disc * r;
        disc *= gamma;
    }
    return total;
}

struct ParticleDeprivation : std::runtime_error {
    ParticleDeprivation() : std::runtime_error("belief update rejected every particle") {}
};

// Rejection-filter belief update. Draws particles uniformly from the prior
// belief, steps them through the executed action, and keeps those whose
// simulated observation matches the real one. A survivor's lineage emitted
// every recorded observation itself, so noisy readings thin the posterior
// without hijacking it: a lying sensor costs acceptance rate, not truth.
// Shortfall is filled first from domain transforms of survivors, then by
// duplicating survivors. Manufactured particles are different: transforms
// must validate face-value against the recorded constraints. reuse seeds
// (already-filtered states, e.g. from the reused search tree's matching
// child) count toward the target directly. When rejection starves entirely,
// the transform budget is spent revitalizing stepped particles instead, so a
// belief that merely disagrees with the newest reading is repaired rather
// than lost.
//
// Budgets are 10x target for rejection and 10x target for transforms, so the
// update is bounded. Throws ParticleDeprivation when nothing survives either
// budget.
template <GenerativeModel M>
ParticleBelief<typename M::State> update_belief(
    const ParticleBelief<typename M::State>& belief, ActionId action,
    const typename M::Obs& observed, const M& model,
    const History<typename M::Obs>& constraints, std::size_t target_count, Rng& rng,
    std::span<const typename M::State> reuse = {}) {
    if (belief.empty()) throw std::invalid_argument("update_belief: empty source belief");
    if (target_count == 0) throw std::invalid_argument("update_belief: zero target count");

    ParticleBelief<typename M::State> out;
    out.particles.reserve(target_count);

    for (const auto& s : reuse) {
        if (out.size() >= target_count) break;
        out.particles.push_back(s);
    }

    const std::size_t budget = 10 * target_count;
    for (std::size_t i = 0; i < budget && out.size() < target_count; ++i) {
        const auto& drawn = belief.sample(rng);
        if (model.is_terminal(drawn)) continue;  // cannot explain a continuing episode
        auto outcome = model.step(drawn, action, rng);
        if (outcome.observation == observed)
            out.particles.push_back(std::move(outcome.next_state));
    }

    if (!out.empty()) {
        for (std::size_t i = 0; i < budget && out.size() < target_count; ++i) {
            const auto& base =
                out.particles[rng.uniform_int(static_cast<uint32_t>(out.size()))];
            if (auto t = model.transform_particle(base, rng, constraints))
                out.particles.push_back(std::move(*t));
        }
    } else {
        // Rejection starved: the stepped particles disagree with the newest
        // observation only (older bindings survive a step), so one validated
        // transform can realign them. Deprivation fires only if even that
        // budget produces nothing.
        for (std::size_t i = 0; i < budget && out.size() < target_count; ++i) {
            const auto& drawn = belief.sample(rng);
            if (model.is_terminal(drawn)) continue;
            auto outcome = model.step(drawn, action, rng);
            if (auto t = model.transform_particle(outcome.next_state, rng, constraints))
                out.particles.push_back(std::move(*t));
        }
        if (out.empty()) throw ParticleDeprivation{};
    }
    while (out.size() < target_count)
        out.particles.push_back(
            out.particles[rng.uniform_int(static_cast<uint32_t>(out.size()))]);

    return out;
}

}  // namespace agr
