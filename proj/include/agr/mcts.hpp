#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "agr/core.hpp"

namespace agr {

enum class PlannerMode { pomcp, pgs };

struct PlannerConfig {
    int num_simulations = 512;
    double ucb_c = 5.0;
    double gamma = 0.95;
    int max_depth = 100;
    double alpha = 10.0;        // scales goal points into reward units
    PlannerMode mode = PlannerMode::pomcp;
};

// Potential-based bonus for one simulated transition.
inline double shaping_bonus(double points_before, double points_after, double gamma,
                            double alpha) {
    return gamma * alpha * points_after - alpha * points_before;
}

template <class State, class Obs>
struct SearchNode {
    struct Edge {
        int visits = 0;
        double q = 0.0;
        std::map<Obs, std::unique_ptr<SearchNode>> children;
    };

    int visits = 0;                // equals the sum of edge visits
    std::vector<Edge> edges;
    std::vector<State> particles;  // states that entered this node (non-root)

    explicit SearchNode(int num_actions) : edges(num_actions) {}
};

// UCB1 over a node's action edges: any untried action first, otherwise
// argmax of q + c*sqrt(ln N(h) / N(h,a)). Ties break uniformly.
template <class Node>
ActionId ucb1_select(const Node& node, double c, Rng& rng) {
    int untried = 0;
    for (const auto& e : node.edges)
        if (e.visits == 0) ++untried;
    if (untried > 0) {
        int k = static_cast<int>(rng.uniform_int(static_cast<uint32_t>(untried)));
        for (std::size_t a = 0; a < node.edges.size(); ++a)
            if (node.edges[a].visits == 0 && k-- == 0) return static_cast<ActionId>(a);
    }

    double best = -std::numeric_limits<double>::infinity();
    int best_count = 0;
    const double log_n = std::log(static_cast<double>(node.visits));
    for (const auto& e : node.edges) {
        double u = e.q + c * std::sqrt(log_n / e.visits);
        if (u > best) {
            best = u;
            best_count = 1;
        } else if (u == best) {
            ++best_count;
        }
    }
    int k = static_cast<int>(rng.uniform_int(static_cast<uint32_t>(best_count)));
    for (std::size_t a = 0; a < node.edges.size(); ++a) {
        const auto& e = node.edges[a];
        double u = e.q + c * std::sqrt(log_n / e.visits);
        if (u == best && k-- == 0) return static_cast<ActionId>(a);
    }
    throw std::logic_error("ucb1_select: no edge selected");
}

inline constexpr int kMaxProbedActions = 64;

// Greedy goal-point rollout action: probe each action with one simulated
// step and pick the action whose successor scores the most goal points.
// Ties (including the everything-looks-equal case) break uniformly.
template <GenerativeModel M>
ActionId pgs_rollout_action(const typename M::State& state, const M& model, Rng& rng) {
    const int n = model.action_count();
    if (n > kMaxProbedActions) throw std::invalid_argument("pgs_rollout_action: action space");
    double score[kMaxProbedActions];
    double best = -std::numeric_limits<double>::infinity();
    int best_count = 0;
    for (ActionId a = 0; a < n; ++a) {
        auto outcome = model.step(state, a, rng);
        score[a] = model.pgs_points(outcome.next_state);
        if (score[a] > best) {
            best = score[a];
            best_count = 1;
        } else if (score[a] == best) {
            ++best_count;
        }
    }
    int k = static_cast<int>(rng.uniform_int(static_cast<uint32_t>(best_count)));
    for (ActionId a = 0; a < n; ++a)
        if (score[a] == best && k-- == 0) return a;
    throw std::logic_error("pgs_rollout_action: no action selected");
}

// Discounted return of one playout from state at the given depth. Mode picks
// the playout policy only: returns are raw rewards in both modes, so a playout
// estimates the environment's own value under that policy and the potential
// bonus exists solely on tree transitions.
template <GenerativeModel M>
double rollout(typename M::State state, int depth, const PlannerConfig& cfg, const M& model,
               Rng& rng) {
    double total = 0.0;
    double disc = 1.0;
    const bool greedy = cfg.mode == PlannerMode::pgs;
    while (depth < cfg.max_depth && !model.is_terminal(state)) {
        ActionId a = greedy ? pgs_rollout_action(state, model, rng)
                            : static_cast<ActionId>(rng.uniform_int(
                                  static_cast<uint32_t>(model.action_count())));
        auto outcome = model.step(state, a, rng);
        total += disc * outcome.reward;
        disc *= cfg.gamma;
        ++depth;
        if (outcome.terminal) break;
        state = std::move(outcome.next_state);
    }
    return total;
}

// Thrown when every belief particle is terminal: nothing can be simulated,
// yet the caller asked for an action, so the belief contradicts a continuing
// episode and needs recovery.
struct BeliefUnplannable : std::runtime_error {
    BeliefUnplannable() : std::runtime_error("plan: every belief particle is terminal") {}
};

// Monte-Carlo tree search over action-observation histories with particle
// beliefs at the nodes. In pgs mode simulated (not executed) rewards carry a
// potential-based bonus from the model's goal points.
template <GenerativeModel M>
class Planner {
public:
    using State = typename M::State;
    using Obs = typename M::Obs;
    using Node = SearchNode<State, Obs>;

    explicit Planner(PlannerConfig cfg) : cfg_(cfg) {
        if (cfg_.num_simulations <= 0) throw std::invalid_argument("num_simulations");
        if (cfg_.gamma < 0.0 || cfg_.gamma > 1.0) throw std::invalid_argument("gamma");
        if (cfg_.max_depth <= 0) throw std::invalid_argument("max_depth");
    }

    // Runs the simulation budget from the belief and returns the root action
    // with the highest mean value (ties uniform). The search tree persists
    // for advance_root.
    ActionId plan(const ParticleBelief<State>& belief, const M& model, Rng& rng) {
        if (belief.empty()) throw std::invalid_argument("plan: empty belief");
        if (!root_) root_ = std::make_unique<Node>(model.action_count());

        for (int i = 0; i < cfg_.num_simulations; ++i) {
            const State& s = belief.sample(rng);
            if (model.is_terminal(s)) continue;
            simulate(s, *root_, 0, model, rng);
        }

        double best = -std::numeric_limits<double>::infinity();
        int best_count = 0;
        for (const auto& e : root_->edges) {
            if (e.visits == 0) continue;
            if (e.q > best) {
                best = e.q;
                best_count = 1;
            } else if (e.q == best) {
                ++best_count;
            }
        }
        if (best_count == 0) throw BeliefUnplannable{};
        int k = static_cast<int>(rng.uniform_int(static_cast<uint32_t>(best_count)));
        for (std::size_t a = 0; a < root_->edges.size(); ++a) {
            const auto& e = root_->edges[a];
            if (e.visits > 0 && e.q == best && k-- == 0) return static_cast<ActionId>(a);
        }
        throw std::logic_error("plan: no action selected");
    }

    // Descends the tree along the executed (action, observation) edge so the
    // subtree is reused next step. Returns the adopted node's particles as
    // belief seeds; empty when no matching branch exists (tree restarts).
    std::vector<State> advance_root(ActionId action, const Obs& obs) {
        if (!root_ || action < 0 || static_cast<std::size_t>(action) >= root_->edges.size()) {
            root_.reset();
            return {};
        }
        auto& children = root_->edges[action].children;
        auto it = children.find(obs);
        if (it == children.end()) {
            root_.reset();
            return {};
        }
        std::unique_ptr<Node> child = std::move(it->second);
        std::vector<State> seeds = child->particles;
        root_ = std::move(child);
        return seeds;
    }

    void reset() { root_.reset(); }

    const Node* root() const { return root_.get(); }
    const PlannerConfig& config() const { return cfg_; }

private:
    double simulate(const State& state, Node& node, int depth, const M& model, Rng& rng) {
        if (depth >= cfg_.max_depth) return 0.0;
        if (depth > 0) node.particles.push_back(state);

        ActionId a = ucb1_select(node, cfg_.ucb_c, rng);
        auto outcome = model.step(state, a, rng);
        double r = outcome.reward;
        if (cfg_.mode == PlannerMode::pgs)
            r += shaping_bonus(model.pgs_points(state), model.pgs_points(outcome.next_state),
                               cfg_.gamma, cfg_.alpha);

        double total;
        if (outcome.terminal || depth + 1 >= cfg_.max_depth) {
            total = r;
        } else {
            auto& slot = node.edges[a].children[outcome.observation];
            if (slot) {
                total = r + cfg_.gamma * simulate(outcome.next_state, *slot, depth + 1,
                                                  model, rng);
            } else {
                slot = std::make_unique<Node>(model.action_count());
                slot->particles.push_back(outcome.next_state);
                total = r + cfg_.gamma * rollout(std::move(outcome.next_state), depth + 1,
                                                 cfg_, model, rng);
            }
        }

        node.visits += 1;
        auto& edge = node.edges[a];
        edge.visits += 1;
        edge.q += (total - edge.q) / edge.visits;
        return total;
    }

    PlannerConfig cfg_;
    std::unique_ptr<Node> root_;
};

}  // namespace agr
