#include "agr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "agr/mcts.hpp"

namespace agr {

namespace {

constexpr double kRowTol = 1e-9;
constexpr double kEps = 1e-15;

void check_row(double sum, const char* what) {
    if (std::abs(sum - 1.0) > kRowTol)
        throw std::invalid_argument(std::string(what) + " row does not sum to 1");
}

}  // namespace

void EnumerablePomdp::validate() const {
    if (num_states <= 0 || num_actions <= 0 || num_obs <= 0)
        throw std::invalid_argument("pomdp: empty dimension");
    const auto s = static_cast<std::size_t>(num_states);
    const auto a = static_cast<std::size_t>(num_actions);
    const auto w = static_cast<std::size_t>(num_obs);
    if (transition.size() != s * a * s || observation.size() != s * a * w ||
        reward.size() != s * a * s)
        throw std::invalid_argument("pomdp: table size mismatch");
    if (!terminal.empty() && terminal.size() != s)
        throw std::invalid_argument("pomdp: terminal flag size mismatch");

    for (int i = 0; i < num_states; ++i) {
        for (int j = 0; j < num_actions; ++j) {
            double tsum = 0.0;
            for (int k = 0; k < num_states; ++k) {
                double p = t(i, j, k);
                if (p < 0.0) throw std::invalid_argument("pomdp: negative probability");
                tsum += p;
            }
            check_row(tsum, "transition");
            double osum = 0.0;
            for (int k = 0; k < num_obs; ++k) {
                double p = o(i, j, k);
                if (p < 0.0) throw std::invalid_argument("pomdp: negative probability");
                osum += p;
            }
            check_row(osum, "observation");
            if (is_terminal(i)) {
                if (std::abs(t(i, j, i) - 1.0) > kRowTol)
                    throw std::invalid_argument("pomdp: terminal state not absorbing");
                if (std::abs(r(i, j, i)) > kRowTol)
                    throw std::invalid_argument("pomdp: terminal state has reward");
            }
        }
    }
}

namespace {

double belief_value(const EnumerablePomdp& p, std::span<const double> belief, int depth);

double belief_action_value(const EnumerablePomdp& p, std::span<const double> belief,
                           int action, int depth) {
    double immediate = 0.0;
    for (int s = 0; s < p.num_states; ++s) {
        if (belief[s] < kEps) continue;
        double er = 0.0;
        for (int s2 = 0; s2 < p.num_states; ++s2) er += p.t(s, action, s2) * p.r(s, action, s2);
        immediate += belief[s] * er;
    }
    if (depth <= 1) return immediate;

    std::vector<double> next(static_cast<std::size_t>(p.num_states));
    double future = 0.0;
    for (int w = 0; w < p.num_obs; ++w) {
        double pr = 0.0;
        for (int s2 = 0; s2 < p.num_states; ++s2) {
            double mass = 0.0;
            for (int s = 0; s < p.num_states; ++s) mass += belief[s] * p.t(s, action, s2);
            mass *= p.o(s2, action, w);
            next[s2] = mass;
            pr += mass;
        }
        if (pr < kEps) continue;  // unreachable observation branch
        for (double& b : next) b /= pr;
        future += pr * belief_value(p, next, depth - 1);
    }
    return immediate + p.gamma * future;
}

double belief_value(const EnumerablePomdp& p, std::span<const double> belief, int depth) {
    if (depth <= 0) return 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < p.num_actions; ++a)
        best = std::max(best, belief_action_value(p, belief, a, depth));
    return best;
}

}  // namespace

std::vector<double> exact_belief_values(const EnumerablePomdp& pomdp,
                                        std::span<const double> belief, int depth) {
    pomdp.validate();
    if (depth < 0) throw std::invalid_argument("exact_belief_values: negative depth");
    if (belief.size() != static_cast<std::size_t>(pomdp.num_states))
        throw std::invalid_argument("exact_belief_values: belief size mismatch");
    double sum = 0.0;
    for (double b : belief) {
        if (b < 0.0) throw std::invalid_argument("exact_belief_values: negative belief mass");
        sum += b;
    }
    check_row(sum, "belief");

    // Branching is (actions * observations)^depth; refuse clearly infeasible calls.
    double work = 1.0;
    for (int d = 0; d < depth; ++d) {
        work *= static_cast<double>(pomdp.num_actions) * pomdp.num_obs;
        if (work > 5e8) throw std::invalid_argument("exact_belief_values: depth too large");
    }

    std::vector<double> values(static_cast<std::size_t>(pomdp.num_actions));
    for (int a = 0; a < pomdp.num_actions; ++a)
        values[a] = depth == 0 ? 0.0 : belief_action_value(pomdp, belief, a, depth);
    return values;
}

void ExplicitMdp::validate() const {
    if (num_states <= 0 || num_actions <= 0)
        throw std::invalid_argument("mdp: empty dimension");
    const auto s = static_cast<std::size_t>(num_states);
    const auto a = static_cast<std::size_t>(num_actions);
    if (transition.size() != s * a * s || reward.size() != s * a * s)
        throw std::invalid_argument("mdp: table size mismatch");
    if (!terminal.empty() && terminal.size() != s)
        throw std::invalid_argument("mdp: terminal flag size mismatch");
    for (int i = 0; i < num_states; ++i) {
        for (int j = 0; j < num_actions; ++j) {
            double tsum = 0.0;
            for (int k = 0; k < num_states; ++k) {
                double p = t(i, j, k);
                if (p < 0.0) throw std::invalid_argument("mdp: negative probability");
                tsum += p;
            }
            check_row(tsum, "transition");
            if (is_terminal(i)) {
                if (std::abs(t(i, j, i) - 1.0) > kRowTol)
                    throw std::invalid_argument("mdp: terminal state not absorbing");
                if (std::abs(r(i, j, i)) > kRowTol)
                    throw std::invalid_argument("mdp: terminal state has reward");
            }
        }
    }
}

std::vector<double> solve_mdp_exact(const ExplicitMdp& mdp, double gamma, int horizon,
                                    std::span<const double> potential, double alpha) {
    mdp.validate();
    if (horizon < 1) throw std::invalid_argument("solve_mdp_exact: horizon < 1");
    if (!potential.empty() && potential.size() != static_cast<std::size_t>(mdp.num_states))
        throw std::invalid_argument("solve_mdp_exact: potential size mismatch");

    const bool shaped = !potential.empty();
    const auto ns = static_cast<std::size_t>(mdp.num_states);
    const auto na = static_cast<std::size_t>(mdp.num_actions);

    std::vector<double> value(ns, 0.0);
    if (shaped)
        for (std::size_t s = 0; s < ns; ++s) value[s] = -alpha * potential[s];

    std::vector<double> q(ns * na, 0.0);
    std::vector<double> next_value(ns);
    for (int k = 0; k < horizon; ++k) {
        for (int s = 0; s < mdp.num_states; ++s) {
            double best = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < mdp.num_actions; ++a) {
                double total = 0.0;
                for (int s2 = 0; s2 < mdp.num_states; ++s2) {
                    double p = mdp.t(s, a, s2);
                    if (p < kEps) continue;
                    double rr = mdp.r(s, a, s2);
                    if (shaped) rr += gamma * alpha * potential[s2] - alpha * potential[s];
                    total += p * (rr + gamma * value[s2]);
                }
                q[static_cast<std::size_t>(s) * na + a] = total;
                best = std::max(best, total);
            }
            next_value[s] = best;
        }
        value.swap(next_value);
    }
    return q;
}

EnumerablePomdp two_state_probe_pomdp() {
    // States: 0 fault A, 1 fault B, 2 resolved (absorbing). Actions: 0 probe
    // (-0.1, reads the fault correctly with p 0.8), 1 fix A, 2 fix B (+1
    // when matched, -1 otherwise, both resolving). Observations: 0 looks-A,
    // 1 looks-B; resolving emits 0. The unit reward scale and the 0.5
    // discount keep every root action's search value resolvable well inside
    // 0.1 at 10^5 simulations: rarely-visited commit arms carry coin-flip
    // noise of 1/sqrt(visits), and the discount damps the exploration bias
    // that the mean backup injects below the root.
    EnumerablePomdp p;
    p.num_states = 3;
    p.num_actions = 3;
    p.num_obs = 2;
    p.gamma = 0.5;
    p.transition.assign(27, 0.0);
    p.observation.assign(18, 0.0);
    p.reward.assign(27, 0.0);
    p.terminal = {0, 0, 1};

    auto t = [&](int s, int a, int s2) -> double& {
        return p.transition[static_cast<std::size_t>((s * 3 + a) * 3 + s2)];
    };
    auto o = [&](int s2, int a, int w) -> double& {
        return p.observation[static_cast<std::size_t>((s2 * 3 + a) * 2 + w)];
    };
    auto r = [&](int s, int a, int s2) -> double& {
        return p.reward[static_cast<std::size_t>((s * 3 + a) * 3 + s2)];
    };

    const double acc = 0.8;
    for (int s = 0; s < 2; ++s) {
        t(s, 0, s) = 1.0;  // probing never moves the fault
        for (int a = 1; a < 3; ++a) {
            t(s, a, 2) = 1.0;
            r(s, a, 2) = (a - 1 == s) ? 1.0 : -1.0;
        }
        r(s, 0, s) = -0.1;
        o(s, 0, 0) = s == 0 ? acc : 1.0 - acc;
        o(s, 0, 1) = s == 0 ? 1.0 - acc : acc;
        o(s, 1, 0) = o(s, 2, 0) = 1.0;  // unreachable rows, keep them valid
    }
    for (int a = 0; a < 3; ++a) {
        t(2, a, 2) = 1.0;
        o(2, a, 0) = 1.0;
    }
    p.validate();
    return p;
}

ExplicitMdp random_mdp(Rng& rng, int max_states, int max_actions) {
    if (max_states < 2 || max_actions < 2) throw std::invalid_argument("random_mdp: bounds");
    ExplicitMdp m;
    m.num_states = 2 + static_cast<int>(rng.uniform_int(static_cast<uint32_t>(max_states - 1)));
    m.num_actions =
        2 + static_cast<int>(rng.uniform_int(static_cast<uint32_t>(max_actions - 1)));
    const auto ns = static_cast<std::size_t>(m.num_states);
    const auto na = static_cast<std::size_t>(m.num_actions);
    m.transition.assign(ns * na * ns, 0.0);
    m.reward.assign(ns * na * ns, 0.0);
    m.terminal.assign(ns, 0);
    if (rng.bernoulli(0.3)) m.terminal[rng.uniform_int(static_cast<uint32_t>(ns))] = 1;

    auto t = [&](int s, int a, int s2) -> double& {
        return m.transition[(static_cast<std::size_t>(s) * na + a) * ns + s2];
    };
    auto r = [&](int s, int a, int s2) -> double& {
        return m.reward[(static_cast<std::size_t>(s) * na + a) * ns + s2];
    };

    for (int s = 0; s < m.num_states; ++s) {
        for (int a = 0; a < m.num_actions; ++a) {
            if (m.terminal[s]) {
                t(s, a, s) = 1.0;
                continue;
            }
            const int support = 1 + static_cast<int>(rng.uniform_int(
                                        static_cast<uint32_t>(std::min(m.num_states, 4))));
            double total = 0.0;
            for (int k = 0; k < support; ++k) {
                int s2 = static_cast<int>(rng.uniform_int(static_cast<uint32_t>(ns)));
                double w = 0.05 + rng.uniform01();
                t(s, a, s2) += w;
                total += w;
                r(s, a, s2) = 2.0 * rng.uniform01() - 1.0;
            }
            for (int s2 = 0; s2 < m.num_states; ++s2) t(s, a, s2) /= total;
        }
    }
    m.validate();
    return m;
}

std::vector<double> random_potential(Rng& rng, int num_states) {
    std::vector<double> phi(static_cast<std::size_t>(num_states));
    for (double& v : phi) v = rng.uniform01();
    return phi;
}

std::vector<int> proportional_particles(std::span<const double> belief, int count) {
    std::vector<int> out(belief.size(), 0);
    std::vector<std::pair<double, std::size_t>> rema(belief.size());
    int assigned = 0;
    for (std::size_t s = 0; s < belief.size(); ++s) {
        double exact = belief[s] * count;
        out[s] = static_cast<int>(exact);
        assigned += out[s];
        rema[s] = {exact - out[s], s};
    }
    std::sort(rema.begin(), rema.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (int i = 0; assigned < count; ++i, ++assigned) out[rema[i % rema.size()].second] += 1;
    return out;
}

EnumeratedModel::EnumeratedModel(const EnumerablePomdp& pomdp, std::vector<double> initial)
    : pomdp_(&pomdp), initial_(std::move(initial)) {
    pomdp_->validate();
    if (initial_.size() != static_cast<std::size_t>(pomdp_->num_states))
        throw std::invalid_argument("enumerated model: initial belief size mismatch");
    double sum = 0.0;
    for (double b : initial_) sum += b;
    check_row(sum, "initial belief");
}

EnumeratedModel::State EnumeratedModel::initial_state(Rng& rng) const {
    double u = rng.uniform01();
    double acc = 0.0;
    for (int s = 0; s < pomdp_->num_states; ++s) {
        acc += initial_[s];
        if (u < acc) return s;
    }
    return pomdp_->num_states - 1;
}

StepOutcome<int, int> EnumeratedModel::step(const State& s, ActionId a, Rng& rng) const {
    if (a < 0 || a >= pomdp_->num_actions) throw std::invalid_argument("enumerated step: action");
    double u = rng.uniform01();
    double acc = 0.0;
    int s2 = pomdp_->num_states - 1;
    for (int k = 0; k < pomdp_->num_states; ++k) {
        acc += pomdp_->t(s, a, k);
        if (u < acc) {
            s2 = k;
            break;
        }
    }
    u = rng.uniform01();
    acc = 0.0;
    int w = pomdp_->num_obs - 1;
    for (int k = 0; k < pomdp_->num_obs; ++k) {
        acc += pomdp_->o(s2, a, k);
        if (u < acc) {
            w = k;
            break;
        }
    }
    return {s2, w, pomdp_->r(s, a, s2), pomdp_->is_terminal(s2)};
}

OracleCheck compare_planner_to_oracle(const EnumerablePomdp& pomdp,
                                      std::span<const double> belief, int depth,
                                      int num_simulations, double ucb_c, uint64_t seed,
                                      int belief_particles) {
    OracleCheck check;
    check.exact_q = exact_belief_values(pomdp, belief, depth);

    std::vector<double> initial(belief.begin(), belief.end());
    EnumeratedModel model(pomdp, initial);
    ParticleBelief<int> particles;
    auto counts = proportional_particles(belief, belief_particles);
    for (std::size_t s = 0; s < counts.size(); ++s)
        for (int i = 0; i < counts[s]; ++i) particles.particles.push_back(static_cast<int>(s));

    PlannerConfig cfg;
    cfg.num_simulations = num_simulations;
    cfg.ucb_c = ucb_c;
    cfg.gamma = pomdp.gamma;
    cfg.max_depth = depth;
    cfg.mode = PlannerMode::pomcp;

    Planner<EnumeratedModel> planner(cfg);
    Rng rng(seed);
    planner.plan(particles, model, rng);

    const auto* root = planner.root();
    check.planner_q.assign(static_cast<std::size_t>(pomdp.num_actions),
                           std::numeric_limits<double>::quiet_NaN());
    check.max_abs_diff = 0.0;
    for (int a = 0; a < pomdp.num_actions; ++a) {
        const auto& edge = root->edges[static_cast<std::size_t>(a)];
        if (edge.visits > 0) check.planner_q[static_cast<std::size_t>(a)] = edge.q;
        double diff = edge.visits == 0 ? std::numeric_limits<double>::infinity()
                                       : std::abs(edge.q - check.exact_q[a]);
        check.max_abs_diff = std::max(check.max_abs_diff, diff);
    }
    return check;
}

}  // namespace agr
