#include "agr/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <tuple>

#include "agr/assembly.hpp"
#include "agr/maintenance.hpp"

namespace agr {

RunStats summarize(std::span<const EpisodeRecord> records) {
    RunStats st;
    if (records.empty()) return st;
    const double n = static_cast<double>(records.size());
    double sum = 0.0, steps = 0.0, completed = 0.0;
    for (const auto& r : records) {
        sum += r.discounted_return;
        steps += r.steps;
        if (r.reached_terminal) completed += 1.0;
    }
    st.mean_return = sum / n;
    st.mean_steps = steps / n;
    st.completion_rate = completed / n;
    if (records.size() > 1) {
        double ss = 0.0;
        for (const auto& r : records) {
            double d = r.discounted_return - st.mean_return;
            ss += d * d;
        }
        st.std_err = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return st;
}

PlannerMode parse_planner(const std::string& name) {
    if (name == "pomcp") return PlannerMode::pomcp;
    if (name == "pgs") return PlannerMode::pgs;
    throw std::invalid_argument("unknown planner: " + name);
}

namespace {

PlannerConfig planner_config(const ExperimentConfig& cfg, const std::string& planner,
                             int simulations) {
    PlannerConfig pc;
    pc.num_simulations = simulations;
    pc.ucb_c = cfg.ucb_c;
    pc.gamma = cfg.gamma;
    pc.max_depth = cfg.max_depth;
    pc.alpha = cfg.alpha;
    pc.mode = parse_planner(planner);
    return pc;
}

template <GenerativeModel M>
std::vector<SweepSummary> sweep_model(const M& model, const ExperimentConfig& cfg,
                                      double param) {
    std::vector<SweepSummary> rows;
    for (const auto& planner : cfg.planners) {
        for (int sims : cfg.simulations) {
            auto records = run_point(model, planner_config(cfg, planner, sims), cfg.episodes,
                                     cfg.max_steps, cfg.particles, cfg.seed);
            SweepSummary row;
            row.domain = cfg.domain;
            row.planner = planner;
            row.param = param;
            row.simulations = sims;
            row.episodes = cfg.episodes;
            row.stats = summarize(records);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string format_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::vector<SweepSummary> run_sweep(const ExperimentConfig& cfg) {
    if (cfg.episodes < 1) throw std::invalid_argument("run_sweep: episodes < 1");
    if (cfg.simulations.empty()) throw std::invalid_argument("run_sweep: no budgets");
    for (int s : cfg.simulations)
        if (s < 1) throw std::invalid_argument("run_sweep: simulations < 1");

    if (cfg.domain == "maintenance") {
        MaintenanceConfig mc;
        mc.expertise = cfg.expertise;
        return sweep_model(MaintenanceModel(mc), cfg, cfg.expertise);
    }
    if (cfg.domain == "assembly") {
        AssemblyConfig ac;
        ac.sensor_accuracy = cfg.accuracy;
        return sweep_model(AssemblyModel(ac), cfg, cfg.accuracy);
    }
    throw std::invalid_argument("unknown domain: " + cfg.domain);
}

void write_csv(std::vector<SweepSummary> rows, std::ostream& out) {
    std::sort(rows.begin(), rows.end(), [](const SweepSummary& a, const SweepSummary& b) {
        return std::tie(a.domain, a.planner, a.param, a.simulations) <
               std::tie(b.domain, b.planner, b.param, b.simulations);
    });
    out << "domain,planner,param,simulations,episodes,mean_return,std_err,completion_rate,"
           "mean_steps\n";
    for (const auto& r : rows) {
        out << r.domain << ',' << r.planner << ',' << format_g6(r.param) << ','
            << r.simulations << ',' << r.episodes << ',' << format_g6(r.stats.mean_return)
            << ',' << format_g6(r.stats.std_err) << ','
            << format_g6(r.stats.completion_rate) << ',' << format_g6(r.stats.mean_steps)
            << '\n';
    }
}

void write_csv_file(std::vector<SweepSummary> rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_csv(std::move(rows), out);
}

}  // namespace agr
