#include "nano/world.hpp"

#include <algorithm>

namespace nano {

namespace {

std::string coord_string(Coord c) {
    return "(" + std::to_string(c.x) + ", " + std::to_string(c.y) + ")";
}

LatticeKind lattice_kind_of(const std::string& class_name) {
    if (class_name == "RectangularLattice") return LatticeKind::Rectangular;
    if (class_name == "TriangularLattice") return LatticeKind::Triangular;
    if (class_name == "HexagonalLattice") return LatticeKind::Hexagonal;
    throw std::logic_error("unsupported geometry class: " + class_name);
}

BoundaryKind boundary_kind_of(const std::string& class_name) {
    if (class_name == "AbsorbingBoundary") return BoundaryKind::Absorbing;
    if (class_name == "PeriodicBoundary") return BoundaryKind::Periodic;
    throw std::logic_error("unsupported boundary class: " + class_name);
}

ArenaKind arena_kind_of(const std::string& class_name) {
    if (class_name == "RectangularArena") return ArenaKind::Rectangular;
    if (class_name == "HexagonalArena") return ArenaKind::Hexagonal;
    throw std::logic_error("unsupported arena class: " + class_name);
}

BehaviorSpec behavior_spec_of(const ConfigNode& behavior) {
    BehaviorSpec spec;
    const ConfigNode& action = behavior.at("action").as_component();
    if (action.class_name != "Wander")
        throw std::logic_error("unsupported action class: " + action.class_name);
    spec.action_name = "wander";
    const std::string& destination =
        action.at("destination").as_component().class_name;
    spec.destination = destination == "AllNeighbors"
                           ? DestinationKind::AllNeighbors
                           : DestinationKind::VacantNeighbors;
    const std::string& collision =
        action.at("collision").as_component().class_name;
    spec.collision = collision == "ErrorOnCollision"
                         ? CollisionKind::ErrorOnCollision
                         : CollisionKind::IgnoreOccupied;
    spec.every = std::get<double>(behavior.at("every").as_primitive());
    spec.until = std::get<Predicate>(behavior.at("until").as_primitive());
    return spec;
}

}  // namespace

CollisionError::CollisionError(double time_, Coord at_)
    : std::runtime_error("collision at " + coord_string(at_) + " at time " +
                         decimal_literal(time_)),
      time(time_),
      at(at_) {}

ScatterOverflow::ScatterOverflow(std::int64_t requested, std::size_t vacant)
    : std::runtime_error("scatter of " + std::to_string(requested) +
                         " agents onto " + std::to_string(vacant) +
                         " vacant sites") {}

World::World(Layer layer, std::uint64_t seed)
    : layer_(std::move(layer)), rng_(seed) {}

World World::instantiate(const ConfigNode& solved, std::uint64_t seed) {
    // Parents before children: the layer exists before any agent that
    // will live on it, setup before observation.
    const ConfigNode& geometry = solved.at("geometry").as_component();
    const int width = static_cast<int>(
        std::get<std::int64_t>(geometry.at("width").as_primitive()));
    const int height = static_cast<int>(
        std::get<std::int64_t>(geometry.at("height").as_primitive()));
    Layer layer(lattice_kind_of(geometry.class_name), width, height,
                arena_kind_of(solved.at("arena").as_component().class_name),
                boundary_kind_of(solved.at("boundary").as_component().class_name));
    World world(std::move(layer), seed);
    world.set_terminate(
        std::get<Predicate>(solved.at("terminate").as_primitive()));

    for (const ConfigElem& element : solved.at("initially").as_list()) {
        const ConfigNode& scatter = std::get<ConfigNode>(element);
        if (scatter.class_name != "Scatter")
            throw std::logic_error("unsupported setup class: " +
                                   scatter.class_name);
        AgentPrototype prototype;
        const ConfigNode& description = scatter.at("description").as_component();
        for (const ConfigElem& behavior : description.at("do").as_list())
            prototype.behaviors.push_back(
                behavior_spec_of(std::get<ConfigNode>(behavior)));
        ScatterSpec spec;
        spec.count = std::get<std::int64_t>(scatter.at("count").as_primitive());
        spec.prototype = world.add_prototype(std::move(prototype));
        world.add_scatter(spec);
    }

    for (const ConfigElem& element : solved.at("output").as_list()) {
        const ConfigNode& sink = std::get<ConfigNode>(element);
        if (sink.class_name == "ImageSequence") world.enable_frames();
    }
    return world;
}

std::size_t World::add_prototype(AgentPrototype prototype) {
    if (!prototype.rules.empty()) any_rules_ = true;
    prototypes_.push_back(std::move(prototype));
    return prototypes_.size() - 1;
}

void World::add_scatter(ScatterSpec spec) {
    if (spec.prototype >= prototypes_.size())
        throw std::logic_error("scatter names an unknown prototype");
    scatters_.push_back(spec);
    Event e;
    e.time = schedule_.clock();
    e.kind = EventKind::Setup;
    e.setup_index = static_cast<std::uint32_t>(scatters_.size() - 1);
    schedule_.push(e);
}

void World::enable_frames() {
    if (frames_enabled_) return;
    frames_enabled_ = true;
    Event e;
    e.time = schedule_.clock();
    e.kind = EventKind::Observe;
    schedule_.push(e);
}

World::AgentState& World::agent(std::uint32_t id) {
    if (id == 0 || id > agents_.size())
        throw std::logic_error("unknown agent id " + std::to_string(id));
    return agents_[id - 1];
}

bool World::alive(std::uint32_t agent_id) const {
    if (agent_id == 0 || agent_id > agents_.size()) return false;
    return agents_[agent_id - 1].alive;
}

std::vector<std::uint32_t> World::run_scatter(const ScatterSpec& spec) {
    std::vector<Coord> vacant = layer_.vacant_sites();
    if (spec.count < 0 ||
        static_cast<std::size_t>(spec.count) > vacant.size())
        throw ScatterOverflow(spec.count, vacant.size());
    std::vector<std::uint32_t> placed;
    placed.reserve(static_cast<std::size_t>(spec.count));
    // Partial Fisher-Yates: element i is a uniform draw over the sites
    // not yet chosen, so the count sites are distinct and unbiased.
    for (std::int64_t i = 0; i < spec.count; ++i) {
        const auto offset = static_cast<std::size_t>(i);
        const std::size_t j =
            offset + static_cast<std::size_t>(rng_.below(vacant.size() - offset));
        std::swap(vacant[offset], vacant[j]);
        placed.push_back(spawn_at(spec.prototype, vacant[offset]));
    }
    return placed;
}

std::uint32_t World::spawn_at(std::size_t prototype, Coord site) {
    const AgentPrototype& proto = prototypes_.at(prototype);
    if (!proto.rules.empty()) wire_rules();
    agents_.push_back(AgentState{true, prototype});
    const auto id = static_cast<std::uint32_t>(agents_.size());
    layer_.place(id, site);
    ++stats_.agents_created;
    for (std::size_t k = 0; k < proto.behaviors.size(); ++k) {
        Event e;
        e.time = schedule_.clock() + proto.behaviors[k].every;
        e.kind = EventKind::Act;
        e.agent = id;
        e.behavior = static_cast<std::uint32_t>(k);
        schedule_.push(e);
    }
    return id;
}

void World::perform(std::uint32_t agent_id, const BehaviorSpec& behavior) {
    wire_rules();
    AgentState& state = agent(agent_id);
    if (!state.alive)
        throw std::logic_error("behavior on a dead agent");
    const Coord pos = layer_.position_of(agent_id);
    std::vector<NeighborTarget> candidates;
    for (const NeighborTarget& target : layer_.neighbors(pos)) {
        if (behavior.destination == DestinationKind::VacantNeighbors &&
            !target.off_arena && !layer_.vacant(target.coord))
            continue;
        candidates.push_back(target);
    }
    if (candidates.empty()) return;  // nowhere to go: stay
    const NeighborTarget target =
        candidates[rng_.below(candidates.size())];
    if (target.off_arena) {
        layer_.remove(agent_id, pos);
        state.alive = false;
        ++stats_.agents_absorbed;
        return;
    }
    const std::uint32_t occupant = layer_.occupant(target.coord);
    if (occupant != 0) {
        if (behavior.collision == CollisionKind::ErrorOnCollision)
            throw CollisionError(schedule_.clock(), target.coord);
        return;  // occupied destination ignored: stay
    }
    layer_.move(agent_id, pos, target.coord);
}

StepResult World::step() {
    wire_rules();
    if (schedule_.empty()) return {StepStatus::Depleted, schedule_.clock()};
    const Event event = schedule_.pop();
    // The clock now sits at the event's time; termination at that time
    // preempts the event itself.
    if (eval(terminate_, schedule_.clock()))
        return {StepStatus::Terminated, schedule_.clock()};
    execute(event);
    return {StepStatus::Advanced, schedule_.clock()};
}

void World::execute(const Event& event) {
    switch (event.kind) {
        case EventKind::Setup:
            run_scatter(scatters_.at(event.setup_index));
            ++stats_.events_executed;
            return;
        case EventKind::Observe: {
            const Frame frame = capture();
            for (FrameSink* sink : sinks_) sink->on_frame(frame);
            ++stats_.events_executed;
            // Self-cancel once nothing but observation remains.
            if (schedule_.pending_work() > 0) {
                Event next;
                next.time = schedule_.clock() + 1.0;
                next.kind = EventKind::Observe;
                schedule_.push(next);
            }
            return;
        }
        case EventKind::Act: {
            AgentState& state = agent(event.agent);
            if (!state.alive) return;  // lazily cancelled; not an execution
            const BehaviorSpec& behavior =
                prototypes_.at(state.prototype).behaviors.at(event.behavior);
            if (eval(behavior.until, schedule_.clock()))
                return;  // expired: neither executes nor reschedules
            perform(event.agent, behavior);
            ++stats_.events_executed;
            if (on_behavior_executed)
                on_behavior_executed(schedule_.clock(), behavior.action_name);
            if (state.alive) {
                Event next = event;
                next.time = schedule_.clock() + behavior.every;
                schedule_.push(next);
            }
            return;
        }
    }
}

void World::wire_rules() {
    if (rules_wired_ || !any_rules_) return;
    rules_wired_ = true;
    layer_.set_change_listener(
        [this](Coord c, std::uint32_t cause) { on_site_changed(c, cause); });
}

void World::on_site_changed(Coord c, std::uint32_t cause) {
    for (const NeighborTarget& target : layer_.neighbors(c)) {
        if (target.off_arena) continue;
        const std::uint32_t occupant = layer_.occupant(target.coord);
        if (occupant == 0) continue;
        // An agent's own movement is not news to it.
        if (occupant == cause) continue;
        const AgentState& state = agents_[occupant - 1];
        for (const ReactionRule& rule : prototypes_[state.prototype].rules) {
            if (rule.condition != RuleCondition::NeighborhoodChanged) continue;
            Event e;
            e.time = schedule_.clock();
            e.kind = EventKind::Act;
            e.agent = occupant;
            e.behavior = rule.behavior;
            schedule_.push(e);
        }
    }
}

Frame World::capture() const {
    Frame frame;
    frame.time = schedule_.clock();
    frame.width = layer_.width();
    frame.height = layer_.height();
    frame.class_index.assign(
        static_cast<std::size_t>(layer_.width()) *
            static_cast<std::size_t>(layer_.height()),
        0);
    for (const auto& [id, coord] : layer_.positions()) {
        const std::size_t cls = agents_[id - 1].prototype + 1;
        frame.class_index[static_cast<std::size_t>(coord.y) *
                              static_cast<std::size_t>(layer_.width()) +
                          static_cast<std::size_t>(coord.x)] =
            static_cast<std::uint8_t>(cls > 255 ? 255 : cls);
    }
    return frame;
}

}  // namespace nano
