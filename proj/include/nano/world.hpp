#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nano/lattice.hpp"
#include "nano/output.hpp"
#include "nano/predicate.hpp"
#include "nano/rng.hpp"
#include "nano/schedule.hpp"
#include "nano/solver.hpp"

namespace nano {

enum class DestinationKind { VacantNeighbors, AllNeighbors };
enum class CollisionKind { IgnoreOccupied, ErrorOnCollision };

struct BehaviorSpec {
    std::string action_name;  // reported to the execution hook
    DestinationKind destination = DestinationKind::VacantNeighbors;
    CollisionKind collision = CollisionKind::IgnoreOccupied;
    double every = 1.0;
    Predicate until;  // checked at fire time; true suppresses the firing
};

/// Reaction rules: conditions under which an agent schedules one of its
/// behaviors immediately. The only built-in condition reacts to
/// occupancy changes in the agent's neighborhood.
enum class RuleCondition { NeighborhoodChanged };

struct ReactionRule {
    RuleCondition condition = RuleCondition::NeighborhoodChanged;
    std::uint32_t behavior = 0;
};

struct AgentPrototype {
    std::vector<BehaviorSpec> behaviors;
    std::vector<ReactionRule> rules;
};

struct ScatterSpec {
    std::int64_t count = 1;
    std::size_t prototype = 0;
};

class CollisionError : public std::runtime_error {
public:
    CollisionError(double time, Coord at);
    double time;
    Coord at;
};

class ScatterOverflow : public std::runtime_error {
public:
    ScatterOverflow(std::int64_t requested, std::size_t vacant);
};

struct RunStats {
    std::uint64_t events_executed = 0;
    std::uint64_t agents_created = 0;
    std::uint64_t agents_absorbed = 0;
};

enum class StepStatus { Advanced, Depleted, Terminated };

struct StepResult {
    StepStatus status = StepStatus::Advanced;
    double clock = 0.0;
};

/// The running model: one layer, the event schedule, agent state, and
/// the random stream. Agents touch space only through the world's
/// actions; they never see each other directly.
class World {
public:
    World(Layer layer, std::uint64_t seed);

    /// Builds a world from a solved configuration: the layer first, then
    /// agent prototypes, setup events in declaration order, and last the
    /// observer when an image sequence was requested.
    static World instantiate(const ConfigNode& solved, std::uint64_t seed);

    /// Executes the next event. The clock advances to the event's time
    /// before anything runs; the termination condition is evaluated at
    /// the new time and wins over the event.
    StepResult step();

    Layer& layer() { return layer_; }
    const Layer& layer() const { return layer_; }
    Schedule& schedule() { return schedule_; }
    const Schedule& schedule() const { return schedule_; }
    const RunStats& stats() const { return stats_; }
    std::size_t alive_count() const { return layer_.occupied_count(); }
    SplitMix64& rng() { return rng_; }

    std::size_t add_prototype(AgentPrototype prototype);
    const AgentPrototype& prototype(std::size_t index) const {
        return prototypes_.at(index);
    }
    std::size_t prototype_count() const { return prototypes_.size(); }

    /// Registers the setup action and queues its event at the current
    /// clock.
    void add_scatter(ScatterSpec spec);
    void set_terminate(Predicate predicate) { terminate_ = std::move(predicate); }
    const Predicate& terminate() const { return terminate_; }
    /// Schedules the frame observer at the current clock.
    void enable_frames();
    bool frames_enabled() const { return frames_enabled_; }
    void add_sink(FrameSink* sink) { sinks_.push_back(sink); }

    /// Places count agents of the prototype uniformly over distinct
    /// vacant sites and schedules their behaviors. Throws
    /// ScatterOverflow when the arena cannot hold them.
    std::vector<std::uint32_t> run_scatter(const ScatterSpec& spec);

    /// Deterministic placement at a chosen vacant site; behaviors are
    /// scheduled exactly as for scattered agents.
    std::uint32_t spawn_at(std::size_t prototype, Coord site);

    /// Runs one behavior firing for the agent right now: the wander
    /// action. Does not touch the schedule.
    void perform(std::uint32_t agent_id, const BehaviorSpec& behavior);

    bool alive(std::uint32_t agent_id) const;
    Coord position_of(std::uint32_t agent_id) const {
        return layer_.position_of(agent_id);
    }

    Frame capture() const;

    /// Test instrumentation: called after every behavior execution with
    /// the clock and the action name.
    std::function<void(double, const std::string&)> on_behavior_executed;

private:
    struct AgentState {
        bool alive = false;
        std::size_t prototype = 0;
    };

    void execute(const Event& event);
    void on_site_changed(Coord c, std::uint32_t cause);
    /// Hooks the occupancy listener once rules exist. Deferred past
    /// construction so the callback's world pointer survives the move
    /// out of instantiate().
    void wire_rules();
    AgentState& agent(std::uint32_t id);

    Layer layer_;
    Schedule schedule_;
    SplitMix64 rng_;
    std::vector<AgentPrototype> prototypes_;
    std::vector<ScatterSpec> scatters_;
    std::vector<AgentState> agents_;  // index: id - 1
    Predicate terminate_;
    bool frames_enabled_ = false;
    bool any_rules_ = false;
    bool rules_wired_ = false;
    std::vector<FrameSink*> sinks_;
    RunStats stats_;
};

}  // namespace nano
