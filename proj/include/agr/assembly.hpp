#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "agr/core.hpp"
#include "agr/target.hpp"

namespace agr {

// Toy-truck assembly: a worker builds a red truck and then a blue truck from
// parts held in six containers; the robot restocks containers and fetches
// glue. Which wheel bin each pull drains and the worker's exact progress are
// hidden, so the belief drifts and sensing keeps it anchored.

enum AsmActivity : uint8_t { kAsmNone = 0, kAsmAssemble = 1, kAsmWait = 2 };
enum AsmObject : uint8_t {
    kObjChassis = 0,
    kObjWheels = 1,
    kObjBlueCabin = 2,
    kObjYellowCabin = 3,
    kObjRedCabin = 4,
    kObjContainer = 5,
};
inline constexpr int kAsmObjectCount = 6;

enum AsmTruck : uint8_t { kTruckRed = 0, kTruckBlue = 1 };
enum AsmGlue : uint8_t { kGlueA = 0, kGlueB = 1 };  // A bonds red, B bonds blue

inline constexpr int kAsmContainerCount = 6;
inline constexpr int kAsmPartsPerTruck = 4;
inline constexpr int kAsmTruckCount = 2;

struct AssemblyState {
    std::array<uint8_t, kAsmContainerCount> quantity{};
    uint8_t needed_mask = 0;   // containers whose part blocked the worker
    uint8_t current_truck = kTruckRed;
    uint8_t parts_done = 0;    // recipe progress on the current truck
    uint8_t done_mask = 0;     // bit per completed truck
    uint8_t staged_glue = 0;   // 0 = none, otherwise 1 + glue id
    ActivityTriple worker{};

    bool truck_done(int truck) const { return (done_mask >> truck) & 1u; }

    auto operator<=>(const AssemblyState&) const = default;
};

struct AssemblyConfig {
    double sensor_accuracy = 0.9;  // container and truck inspections
    int capacity = 15;
    std::array<uint8_t, kAsmContainerCount> initial_quantity{1, 1, 1, 1, 1, 1};
};

// Robot sensor payload: nothing, a container emptiness reading, or a truck
// type reading.
struct AsmReading {
    enum class Kind : uint8_t { null, container, truck } kind = Kind::null;
    uint8_t index = 0;  // container id for container readings
    uint8_t value = 0;  // container: 1 if read empty; truck: truck id

    auto operator<=>(const AsmReading&) const = default;
};

// Generative assembly model. Actions: perceive the worker, inspect the
// truck under construction, inspect or restock one of six containers, or
// stage one of two glues. Step rewards stay within [-10, +5].
class AssemblyModel {
public:
    using State = AssemblyState;
    using Obs = Observation<AsmReading>;

    static constexpr ActionId kPerceiveWorker = 0;
    static constexpr ActionId kInspectTruck = 1;
    static constexpr ActionId kInspectBase = 2;   // + container id
    static constexpr ActionId kRestockBase = 8;   // + container id
    static constexpr ActionId kBringGlueBase = 14;  // + glue id
    static constexpr int kActionCount = 16;

    // Container part layout and per-truck recipes (part sequence by object).
    static constexpr std::array<uint8_t, kAsmContainerCount> kContainerPart = {
        kObjChassis, kObjWheels, kObjWheels, kObjBlueCabin, kObjYellowCabin, kObjRedCabin};
    static constexpr std::array<std::array<uint8_t, kAsmPartsPerTruck>, kAsmTruckCount>
        kRecipe = {{{kObjChassis, kObjWheels, kObjWheels, kObjRedCabin},
                    {kObjChassis, kObjWheels, kObjWheels, kObjBlueCabin}}};
    static constexpr std::array<uint8_t, kAsmTruckCount> kGlueFor = {kGlueA, kGlueB};

    explicit AssemblyModel(AssemblyConfig cfg = {});

    int action_count() const { return kActionCount; }
    State initial_state(Rng& rng) const;
    StepOutcome<State, Obs> step(const State& s, ActionId a, Rng& rng) const;
    bool is_terminal(const State& s) const {
        return s.done_mask == ((1u << kAsmTruckCount) - 1);
    }
    double pgs_points(const State& s) const;

    // Particle revitalization: one random variation (container quantity,
    // worker triple, or truck flip), returned only if it satisfies every
    // recorded observation constraint.
    std::optional<State> transform_particle(const State& s, Rng& rng,
                                            const History<Obs>& constraints) const;
    bool consistent_with(const State& s, const History<Obs>& constraints) const;

    TargetStep<State> advance_target(const State& s, Rng& rng) const;

    std::span<const GoalCondition<State>> goals() const { return goals_; }
    const AssemblyConfig& config() const { return cfg_; }

    static uint8_t cabin_object(int truck) {
        return truck == kTruckRed ? kObjRedCabin : kObjBlueCabin;
    }
    static const char* action_name(ActionId a);

private:
    AssemblyConfig cfg_;
    std::vector<GoalCondition<State>> goals_;
};

}  // namespace agr
