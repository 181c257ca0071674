#include "agr/maintenance.hpp"

#include <stdexcept>

namespace agr {

namespace {

constexpr double kPerceiveCost = -0.5;
constexpr double kMissingToolCost = -2.0;  // per needed, absent tool per worker step
constexpr double kDeliveryReward = 5.0;
constexpr double kWastedBringCost = -10.0;
constexpr double kTerminalReward = 10.0;

bool triple_is(const ActivityTriple& t, MntActivity a, MntObject o, ActResult r) {
    return t.activity == a && t.object == o && t.result == r;
}

}  // namespace

MaintenanceModel::MaintenanceModel(MaintenanceConfig cfg) : cfg_(cfg) {
    if (cfg_.expertise <= 0.0 || cfg_.expertise > 1.0)
        throw std::invalid_argument("maintenance: expertise outside (0, 1]");
    if (cfg_.p_initial_loose < 0.0 || cfg_.p_initial_loose > 1.0 ||
        cfg_.p_initial_damaged < 0.0 || cfg_.p_initial_damaged > 1.0)
        throw std::invalid_argument("maintenance: initial fault probability outside [0, 1]");
    if (cfg_.fetch_cost_steps < 1)
        throw std::invalid_argument("maintenance: fetch_cost_steps < 1");

    goals_.push_back({"compartment-secured", [](const State& s) {
                          return !s.screw_loose && s.compartment_inspected;
                      }});
    goals_.push_back({"relay-working", [](const State& s) {
                          return !s.relay_damaged && s.relay_inspected;
                      }});
}

MaintenanceModel::State MaintenanceModel::initial_state(Rng& rng) const {
    State s;
    s.screw_loose = rng.bernoulli(cfg_.p_initial_loose);
    s.relay_damaged = rng.bernoulli(cfg_.p_initial_damaged);
    s.worker = {kMntNone, kMntBoard, ActResult::none};
    return s;
}

bool MaintenanceModel::tool_needed(const State& s, int tool) const {
    const ActivityTriple& w = s.worker;
    switch (tool) {
        case kScrewdriver:
            return triple_is(w, kMntInspect, kMntCompartment, ActResult::not_ok) ||
                   triple_is(w, kMntScrew, kMntCompartment, ActResult::fail) ||
                   triple_is(w, kMntScrew, kMntCompartment, ActResult::not_ok);
        case kMultimeter:
            return triple_is(w, kMntInspect, kMntBoard, ActResult::fail);
        case kRelayPart:
            return triple_is(w, kMntInspect, kMntBoard, ActResult::not_ok) ||
                   triple_is(w, kMntReplace, kMntBoard, ActResult::fail);
        default:
            return false;
    }
}

// The stored triple encodes what the worker does next: an OK (or initial)
// outcome starts a fresh inspection of a random component; NOT_OK
// inspections lead to the matching repair; FAIL and failed repairs retry.
TargetStep<MaintenanceState> MaintenanceModel::advance_target(const State& s, Rng& rng) const {
    State n = s;
    const ActivityTriple& w = s.worker;

    MntActivity act;
    MntObject obj;
    if (triple_is(w, kMntInspect, kMntCompartment, ActResult::not_ok) ||
        triple_is(w, kMntScrew, kMntCompartment, ActResult::fail) ||
        triple_is(w, kMntScrew, kMntCompartment, ActResult::not_ok)) {
        act = kMntScrew;
        obj = kMntCompartment;
    } else if (triple_is(w, kMntInspect, kMntBoard, ActResult::not_ok) ||
               triple_is(w, kMntReplace, kMntBoard, ActResult::fail)) {
        act = kMntReplace;
        obj = kMntBoard;
    } else if (triple_is(w, kMntInspect, kMntBoard, ActResult::fail)) {
        act = kMntInspect;
        obj = kMntBoard;
    } else {
        act = kMntInspect;
        obj = rng.bernoulli(0.5) ? kMntCompartment : kMntBoard;
    }

    ActResult result;
    if (act == kMntInspect && obj == kMntCompartment) {
        bool perceived_loose = rng.bernoulli(cfg_.expertise) ? n.screw_loose : !n.screw_loose;
        result = perceived_loose ? ActResult::not_ok : ActResult::ok;
        n.compartment_inspected = !perceived_loose;
    } else if (act == kMntInspect && obj == kMntBoard) {
        if (!n.has_tool(kMultimeter)) {
            result = ActResult::fail;
        } else {
            result = n.relay_damaged ? ActResult::not_ok : ActResult::ok;
            n.relay_inspected = !n.relay_damaged;
        }
    } else if (act == kMntScrew) {
        if (!n.has_tool(kScrewdriver)) {
            result = ActResult::fail;
        } else if (rng.bernoulli(cfg_.expertise)) {
            n.screw_loose = false;
            result = ActResult::ok;
        } else {
            result = ActResult::not_ok;
        }
    } else {  // replace relay
        if (!n.has_tool(kRelayPart)) {
            result = ActResult::fail;
        } else {
            n.relay_damaged = false;
            n.clear_tool(kRelayPart);  // the spare is installed
            result = ActResult::ok;
        }
    }

    n.worker = {static_cast<uint8_t>(act), static_cast<uint8_t>(obj), result};
    return {n, n.worker, 0.0};
}

double MaintenanceModel::pgs_points(const State& s) const {
    double pts = 0.0;
    for (int t = 0; t < kMntToolCount; ++t) {
        bool needed = tool_needed(s, t);
        bool present = s.has_tool(t);
        if (needed && present)
            pts += 1.0;
        else if (needed && !present)
            pts -= 1.0;
        else if (!needed && present)
            pts -= 1.0;
    }
    return pts;
}

StepOutcome<MaintenanceState, MaintenanceModel::Obs> MaintenanceModel::step(const State& s,
                                                                            ActionId a,
                                                                            Rng& rng) const {
    if (a < 0 || a >= action_count()) throw std::invalid_argument("maintenance step: action");
    if (is_terminal(s)) throw std::logic_error("maintenance step: state is terminal");

    auto missing_penalty = [&](const State& st) {
        double r = 0.0;
        for (int t = 0; t < kMntToolCount; ++t)
            if (tool_needed(st, t) && !st.has_tool(t)) r += kMissingToolCost;
        return r;
    };

    if (a == kPerceive) {
        auto ts = advance_target(s, rng);
        double reward = kPerceiveCost + ts.reward + missing_penalty(ts.state);
        bool done = is_terminal(ts.state);
        if (done) reward += kTerminalReward;
        return {ts.state, Obs{ts.triple}, reward, done};
    }

    // Bring(tool): the worker keeps going for the whole fetch; the delivery
    // lands only if the job is still unfinished when the robot returns.
    const int tool = a - kBringBase;
    State cur = s;
    double reward = 0.0;
    for (int i = 0; i < cfg_.fetch_cost_steps; ++i) {
        auto ts = advance_target(cur, rng);
        cur = ts.state;
        reward += ts.reward + missing_penalty(cur);
        if (is_terminal(cur)) return {cur, Obs{MntNull{}}, reward + kTerminalReward, true};
    }
    if (!cur.has_tool(tool) && tool_needed(cur, tool)) {
        cur.set_tool(tool);
        reward += kDeliveryReward;
    } else {
        cur.set_tool(tool);
        reward += kWastedBringCost;
    }
    return {cur, Obs{MntNull{}}, reward, false};
}

const char* MaintenanceModel::tool_name(int tool) {
    switch (tool) {
        case kScrewdriver: return "screwdriver";
        case kMultimeter: return "multimeter";
        case kRelayPart: return "relay-part";
        case kDummyTool1: return "dummy1";
        case kDummyTool2: return "dummy2";
        case kDummyTool3: return "dummy3";
    }
    return "?";
}

const char* MaintenanceModel::action_name(ActionId a) {
    static const char* names[] = {"perceive",      "bring-screwdriver", "bring-multimeter",
                                  "bring-relay",   "bring-dummy1",      "bring-dummy2",
                                  "bring-dummy3"};
    if (a >= 0 && a < 7) return names[a];
    return "?";
}

}  // namespace agr
