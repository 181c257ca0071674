#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agr/bench.hpp"
#include "agr/oracle.hpp"

namespace {

int run_oracle_tests(int sims, int seeds, int mdps, uint64_t base_seed) {
    bool all_ok = true;

    const auto pomdp = agr::two_state_probe_pomdp();
    const std::vector<double> belief = {0.5, 0.5, 0.0};
    for (int depth = 3; depth <= 5; ++depth) {
        for (int k = 0; k < seeds; ++k) {
            auto check = agr::compare_planner_to_oracle(
                pomdp, belief, depth, sims, 5.0, agr::derive_seed(base_seed, depth, k));
            bool ok = check.max_abs_diff <= 0.1;
            all_ok = all_ok && ok;
            std::printf("[%s] search vs exact values: depth %d seed %d max|dQ| %.4f\n",
                        ok ? "PASS" : "FAIL", depth, k, check.max_abs_diff);
        }
    }

    agr::Rng rng(base_seed);
    int mismatched = 0;
    for (int i = 0; i < mdps; ++i) {
        auto mdp = agr::random_mdp(rng, 20, 4);
        auto phi = agr::random_potential(rng, mdp.num_states);
        auto plain = agr::solve_mdp_exact(mdp, 0.95, 12);
        auto shaped = agr::solve_mdp_exact(mdp, 0.95, 12, phi, 10.0);
        for (int s = 0; s < mdp.num_states; ++s) {
            if (mdp.is_terminal(s)) continue;
            auto na = static_cast<std::size_t>(mdp.num_actions);
            std::span<const double> q0(plain.data() + s * na, na);
            std::span<const double> q1(shaped.data() + s * na, na);
            if (agr::argmax_set(q0) != agr::argmax_set(q1)) {
                ++mismatched;
                break;
            }
        }
    }
    std::printf("[%s] shaping keeps greedy actions: %d/%d random MDPs match\n",
                mismatched == 0 ? "PASS" : "FAIL", mdps - mismatched, mdps);
    all_ok = all_ok && mismatched == 0;

    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"online planning toolkit for active goal recognition"};
    app.require_subcommand(1);

    agr::ExperimentConfig cfg;
    auto* run = app.add_subcommand("run", "run a planner sweep and write a results CSV");
    run->set_config("--config", "", "key=value file; command-line options override it");
    run->add_option("--domain", cfg.domain, "maintenance | assembly")
        ->check(CLI::IsMember({"maintenance", "assembly"}))
        ->capture_default_str();
    run->add_option("--planner", cfg.planners, "planners to sweep (pomcp,pgs)")
        ->delimiter(',')
        ->check(CLI::IsMember({"pomcp", "pgs"}))
        ->capture_default_str();
    run->add_option("--sims", cfg.simulations, "simulation budgets, comma separated")
        ->delimiter(',')
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--episodes", cfg.episodes)->check(CLI::PositiveNumber)->capture_default_str();
    run->add_option("--max-steps", cfg.max_steps)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--seed", cfg.seed)->capture_default_str();
    run->add_option("--gamma", cfg.gamma)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    run->add_option("--ucb-c", cfg.ucb_c)
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    run->add_option("--alpha", cfg.alpha, "goal point scale for pgs shaping")
        ->capture_default_str();
    run->add_option("--particles", cfg.particles)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--max-depth", cfg.max_depth)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    run->add_option("--expertise", cfg.expertise, "maintenance worker skill: low|medium|high")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, double>{{"low", 0.5}, {"medium", 0.75}, {"high", 0.9}}))
        ->capture_default_str();
    run->add_option("--accuracy", cfg.accuracy, "assembly sensor accuracy")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    run->add_option("--out", cfg.out_path, "CSV output path")->capture_default_str();

    int ot_sims = 100000;
    int ot_seeds = 2;
    int ot_mdps = 20;
    uint64_t ot_seed = 7;
    auto* oracle =
        app.add_subcommand("oracle-tests", "check the planner and shaping against exact solutions");
    oracle->add_option("--sims", ot_sims, "simulations per comparison")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    oracle->add_option("--seeds", ot_seeds, "planner seeds per depth")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    oracle->add_option("--mdps", ot_mdps, "random MDPs for the shaping check")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    oracle->add_option("--seed", ot_seed)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            auto rows = agr::run_sweep(cfg);
            agr::write_csv_file(rows, cfg.out_path);
            agr::write_csv(rows, std::cout);
            return 0;
        }
        return run_oracle_tests(ot_sims, ot_seeds, ot_mdps, ot_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
