#include "agr/assembly.hpp"

#include <stdexcept>

namespace agr {

namespace {

constexpr double kSenseCost = -0.5;
constexpr double kRestockCost = -2.0;
constexpr double kRestockFullCost = -5.0;
constexpr double kGlueCost = -2.0;
constexpr double kWorkerBlockedCost = -5.0;  // missing part or glue on an attempt
constexpr double kWorkerWaitCost = -2.0;
constexpr double kTruckGluedReward = 5.0;

}  // namespace

AssemblyModel::AssemblyModel(AssemblyConfig cfg) : cfg_(cfg) {
    if (cfg_.sensor_accuracy <= 0.0 || cfg_.sensor_accuracy > 1.0)
        throw std::invalid_argument("assembly: sensor_accuracy outside (0, 1]");
    if (cfg_.capacity < 1 || cfg_.capacity > 255)
        throw std::invalid_argument("assembly: capacity outside [1, 255]");
    for (uint8_t q : cfg_.initial_quantity)
        if (q > cfg_.capacity) throw std::invalid_argument("assembly: initial quantity over capacity");

    goals_.push_back({"red-truck-built", [](const State& s) { return s.truck_done(kTruckRed); }});
    goals_.push_back(
        {"blue-truck-built", [](const State& s) { return s.truck_done(kTruckBlue); }});
}

AssemblyModel::State AssemblyModel::initial_state(Rng&) const {
    State s;
    s.quantity = cfg_.initial_quantity;
    s.current_truck = kTruckRed;  // fixed build order: red, then blue
    s.worker = {kAsmNone, kObjContainer, ActResult::ok};
    return s;
}

// One worker activity. A blocked worker (last attempt FAIL) waits one step,
// then retries. Part attempts draw uniformly from the non-empty containers
// holding the required part; attempts with no stock fail and flag every
// container of that part as needed. The finished truck needs its matching
// glue staged; gluing consumes it.
TargetStep<AssemblyState> AssemblyModel::advance_target(const State& s, Rng& rng) const {
    State n = s;

    if (s.worker.activity == kAsmAssemble && s.worker.result == ActResult::fail) {
        n.worker = {kAsmWait, s.worker.object, ActResult::ok};
        return {n, n.worker, kWorkerWaitCost};
    }

    const int truck = n.current_truck;
    if (n.parts_done < kAsmPartsPerTruck) {
        const uint8_t part = kRecipe[truck][n.parts_done];
        int candidates[kAsmContainerCount];
        int count = 0;
        for (int c = 0; c < kAsmContainerCount; ++c)
            if (kContainerPart[c] == part && n.quantity[c] > 0) candidates[count++] = c;
        if (count == 0) {
            for (int c = 0; c < kAsmContainerCount; ++c)
                if (kContainerPart[c] == part) n.needed_mask |= static_cast<uint8_t>(1u << c);
            n.worker = {kAsmAssemble, part, ActResult::fail};
            return {n, n.worker, kWorkerBlockedCost};
        }
        const int chosen = candidates[count == 1 ? 0 : rng.uniform_int(count)];
        n.quantity[chosen] -= 1;
        n.parts_done += 1;
        for (int c = 0; c < kAsmContainerCount; ++c)
            if (kContainerPart[c] == part) n.needed_mask &= static_cast<uint8_t>(~(1u << c));
        n.worker = {kAsmAssemble, part, ActResult::ok};
        return {n, n.worker, 0.0};
    }

    // All parts attached: glue the truck together.
    const uint8_t cabin = cabin_object(truck);
    if (n.staged_glue == 1u + kGlueFor[truck]) {
        n.staged_glue = 0;
        n.done_mask |= static_cast<uint8_t>(1u << truck);
        n.needed_mask = 0;
        const int other = 1 - truck;
        if (!n.truck_done(other)) {
            n.current_truck = static_cast<uint8_t>(other);
            n.parts_done = 0;
        }
        n.worker = {kAsmAssemble, cabin, ActResult::ok};
        return {n, n.worker, kTruckGluedReward};
    }
    n.worker = {kAsmAssemble, cabin, ActResult::fail};
    return {n, n.worker, kWorkerBlockedCost};
}

double AssemblyModel::pgs_points(const State& s) const {
    double pts = 0.0;
    for (int t = 0; t < kAsmTruckCount; ++t)
        if (s.truck_done(t)) pts += 1.0;
    if (!s.truck_done(s.current_truck)) pts -= 0.5;
    for (int c = 0; c < kAsmContainerCount; ++c)
        if (((s.needed_mask >> c) & 1u) && s.quantity[c] == 0) pts -= 1.0;
    return pts;
}

StepOutcome<AssemblyState, AssemblyModel::Obs> AssemblyModel::step(const State& s, ActionId a,
                                                                   Rng& rng) const {
    if (a < 0 || a >= kActionCount) throw std::invalid_argument("assembly step: action");
    if (is_terminal(s)) throw std::logic_error("assembly step: state is terminal");

    // Provisions land before the worker moves, so a restock or glue staged
    // this step already counts for this step's attempt; sensors read the
    // settled end-of-step state.
    State pre = s;
    double reward = 0.0;
    if (a >= kRestockBase && a < kRestockBase + kAsmContainerCount) {
        const int c = a - kRestockBase;
        reward += pre.quantity[c] == cfg_.capacity ? kRestockFullCost : kRestockCost;
        pre.quantity[c] = static_cast<uint8_t>(cfg_.capacity);
    } else if (a >= kBringGlueBase) {
        const int g = a - kBringGlueBase;
        reward += kGlueCost;
        pre.staged_glue = static_cast<uint8_t>(1 + g);
    } else {
        reward += kSenseCost;
    }

    auto ts = advance_target(pre, rng);
    State cur = ts.state;
    reward += ts.reward;

    Obs obs{AsmReading{}};
    if (a == kPerceiveWorker) {
        obs = Obs{ts.triple};
    } else if (a == kInspectTruck) {
        uint8_t read = cur.current_truck;
        if (!rng.bernoulli(cfg_.sensor_accuracy)) read = static_cast<uint8_t>(1 - read);
        obs = Obs{AsmReading{AsmReading::Kind::truck, 0, read}};
    } else if (a >= kInspectBase && a < kInspectBase + kAsmContainerCount) {
        const int c = a - kInspectBase;
        bool read_empty = cur.quantity[c] == 0;
        if (!rng.bernoulli(cfg_.sensor_accuracy)) read_empty = !read_empty;
        obs = Obs{AsmReading{AsmReading::Kind::container, static_cast<uint8_t>(c),
                             static_cast<uint8_t>(read_empty ? 1 : 0)}};
    }

    return {cur, obs, reward, is_terminal(cur)};
}

// Recorded observations bind facts about consistent particles:
//  - the worker triple of the newest entry, when that entry is a perceive
//    (older perceives are stale: the worker moved on every step since);
//  - a container read empty stays empty until restocked, so the latest
//    reading of each container binds quantity == 0 unless a restock or a
//    non-empty reading came later;
//  - the latest truck reading binds the current truck for particles with no
//    completed truck (after a completion the worker switched trucks).
bool AssemblyModel::consistent_with(const State& s, const History<Obs>& constraints) const {
    if (constraints.empty()) return true;

    const auto& last = constraints.back();
    if (last.observation.is_target() && !(s.worker == last.observation.triple())) return false;

    uint8_t container_decided = 0;
    bool truck_decided = false;
    for (auto it = constraints.rbegin(); it != constraints.rend(); ++it) {
        const ActionId act = it->action;
        if (act >= kRestockBase && act < kRestockBase + kAsmContainerCount) {
            container_decided |= static_cast<uint8_t>(1u << (act - kRestockBase));
            continue;
        }
        if (it->observation.is_target()) continue;
        const AsmReading& r = it->observation.payload();
        if (r.kind == AsmReading::Kind::container) {
            const uint8_t bit = static_cast<uint8_t>(1u << r.index);
            if (container_decided & bit) continue;
            container_decided |= bit;
            if (r.value == 1 && s.quantity[r.index] != 0) return false;
        } else if (r.kind == AsmReading::Kind::truck) {
            if (truck_decided) continue;
            truck_decided = true;
            if (s.done_mask == 0 && s.current_truck != r.value) return false;
        }
    }
    return true;
}

std::optional<AssemblyState> AssemblyModel::transform_particle(
    const State& s, Rng& rng, const History<Obs>& constraints) const {
    State n = s;
    switch (rng.uniform_int(3)) {
        case 0: {  // re-randomize one container's stock
            const int c = rng.uniform_int(kAsmContainerCount);
            n.quantity[c] = static_cast<uint8_t>(rng.uniform_int(cfg_.capacity + 1));
            break;
        }
        case 1: {  // re-randomize the worker's last activity
            n.worker.activity = static_cast<uint8_t>(rng.uniform_int(3));
            n.worker.object = static_cast<uint8_t>(rng.uniform_int(kAsmObjectCount));
            n.worker.result = rng.bernoulli(0.5) ? ActResult::ok : ActResult::fail;
            break;
        }
        default: {  // flip the hidden truck choice while it is still open
            if (s.done_mask != 0) return std::nullopt;
            n.current_truck = static_cast<uint8_t>(1 - n.current_truck);
            break;
        }
    }
    if (!consistent_with(n, constraints)) return std::nullopt;
    return n;
}

const char* AssemblyModel::action_name(ActionId a) {
    static const char* names[] = {
        "perceive-worker",  "inspect-truck",      "inspect-container0", "inspect-container1",
        "inspect-container2", "inspect-container3", "inspect-container4", "inspect-container5",
        "restock-container0", "restock-container1", "restock-container2", "restock-container3",
        "restock-container4", "restock-container5", "bring-glue-a",       "bring-glue-b"};
    if (a >= 0 && a < kActionCount) return names[a];
    return "?";
}

}  // namespace agr
