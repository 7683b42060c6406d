#include "nano/registry.hpp"

#include <algorithm>
#include <set>

#include "nano/diagnostics.hpp"

namespace nano {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Satisfied: return "satisfied";
        case Verdict::Violated: return "violated";
        case Verdict::Undecided: return "undecided";
    }
    return "?";
}

std::optional<std::string> MapSlotReader::binding(std::string_view slot) const {
    auto it = bindings_.find(std::string(slot));
    if (it == bindings_.end()) return std::nullopt;
    return it->second;
}

Constraint forbid_when(std::string id, std::string owner_class,
                       std::string antecedent_slot, std::string antecedent_class,
                       std::string consequent_slot, std::string forbidden_class,
                       std::string description) {
    Constraint c;
    c.id = std::move(id);
    c.description = std::move(description);
    c.owner_class = std::move(owner_class);
    c.blame_slot = consequent_slot;
    c.participants = {antecedent_slot, consequent_slot};
    c.eval = [antecedent_slot = std::move(antecedent_slot),
              antecedent_class = std::move(antecedent_class),
              consequent_slot = std::move(consequent_slot),
              forbidden_class =
                  std::move(forbidden_class)](const SlotReader& reader) {
        const auto antecedent = reader.binding(antecedent_slot);
        if (antecedent && *antecedent != antecedent_class)
            return Verdict::Satisfied;
        const auto consequent = reader.binding(consequent_slot);
        if (!antecedent || !consequent) return Verdict::Undecided;
        return *consequent == forbidden_class ? Verdict::Violated
                                              : Verdict::Satisfied;
    };
    return c;
}

Constraint require_when(std::string id, std::string owner_class,
                        std::string antecedent_slot,
                        std::string antecedent_class,
                        std::string consequent_slot, std::string description) {
    Constraint c;
    c.id = std::move(id);
    c.description = std::move(description);
    c.owner_class = std::move(owner_class);
    c.blame_slot = consequent_slot;
    c.participants = {antecedent_slot, consequent_slot};
    // Undecided until the consequent is bound: later binding always cures
    // it, so it can never be Violated mid-solve. Interpolation binds every
    // slot, so by the end the consequent is inevitably present; the rule
    // matters for registries whose consequent slot has no defaults.
    c.eval = [antecedent_slot = std::move(antecedent_slot),
              antecedent_class = std::move(antecedent_class),
              consequent_slot =
                  std::move(consequent_slot)](const SlotReader& reader) {
        const auto antecedent = reader.binding(antecedent_slot);
        if (antecedent && *antecedent != antecedent_class)
            return Verdict::Satisfied;
        if (!antecedent) return Verdict::Undecided;
        return reader.binding(consequent_slot) ? Verdict::Satisfied
                                               : Verdict::Undecided;
    };
    return c;
}

const char* slot_kind_name(SlotKind kind) {
    switch (kind) {
        case SlotKind::Component: return "component";
        case SlotKind::List: return "list";
        case SlotKind::Primitive: return "primitive";
    }
    return "?";
}

std::string DefaultCandidate::label() const {
    if (const auto* seed = std::get_if<ComponentSeed>(&value))
        return seed->class_name;
    if (const auto* list = std::get_if<ListSeed>(&value)) {
        std::string s = "[";
        for (std::size_t i = 0; i < list->elements.size(); ++i) {
            if (i) s += ", ";
            s += list->elements[i].class_name;
        }
        return s + "]";
    }
    return primitive_literal(std::get<PrimitiveValue>(value));
}

const SlotSpec* ComponentClass::find_slot(std::string_view name) const {
    for (const auto& slot : slots)
        if (slot.name == name) return &slot;
    return nullptr;
}

const MapIst* Rst::find(std::string_view identifier) const {
    for (const auto& [name, table] : members)
        if (name == identifier) return table;
    return nullptr;
}

const SlotTable* MapIst::find(std::string_view slot_name) const {
    for (const auto& slot : slots)
        if (slot.spec->name == slot_name) return &slot;
    return nullptr;
}

void Registry::add_class(ComponentClass cls) {
    if (finalized_) throw RegistryAuditError("registry is frozen");
    if (index_.count(cls.name))
        throw RegistryAuditError("duplicate class: " + cls.name);
    index_[cls.name] = classes_.size();
    classes_.push_back(std::move(cls));
}

void Registry::add_constraint(Constraint constraint) {
    if (finalized_) throw RegistryAuditError("registry is frozen");
    constraints_.push_back(std::move(constraint));
}

void Registry::set_root(std::string class_name) {
    if (finalized_) throw RegistryAuditError("registry is frozen");
    root_ = std::move(class_name);
}

const ComponentClass* Registry::find_class(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return nullptr;
    return &classes_[it->second];
}

const ComponentClass& Registry::require_class(std::string_view name) const {
    const ComponentClass* cls = find_class(name);
    if (!cls)
        throw RegistryAuditError("unregistered class: " + std::string(name));
    return *cls;
}

const ComponentClass* Registry::find_by_surface(std::string_view surface) const {
    for (const auto& cls : classes_)
        if (!cls.surface_name.empty() && cls.surface_name == surface)
            return &cls;
    return nullptr;
}

bool Registry::is_subclass_of(std::string_view cls, std::string_view base) const {
    const ComponentClass* current = find_class(cls);
    while (current) {
        if (current->name == base) return true;
        if (current->parent.empty()) return false;
        current = find_class(current->parent);
    }
    return false;
}

std::vector<const ComponentClass*> Registry::concrete_subclasses(
    std::string_view base) const {
    std::vector<const ComponentClass*> out;
    for (const auto& cls : classes_)
        if (!cls.abstract_base && is_subclass_of(cls.name, base))
            out.push_back(&cls);
    return out;
}

std::vector<const Constraint*> Registry::constraints_for(
    std::string_view owner_class) const {
    std::vector<const Constraint*> out;
    for (const auto& c : constraints_)
        if (c.owner_class == owner_class) out.push_back(&c);
    return out;
}

const MapIst& Registry::root_ist() const {
    if (!finalized_) throw RegistryAuditError("registry is not finalized");
    return tables_.find(root_)->second;
}

const MapIst* Registry::class_ist(std::string_view class_name) const {
    auto it = tables_.find(class_name);
    if (it == tables_.end()) return nullptr;
    return &it->second;
}

void Registry::finalize() {
    if (finalized_) return;
    audit();
    build_tables();
    finalized_ = true;
}

namespace {

void audit_seed(const Registry& reg, const ComponentClass& owner,
                const SlotSpec& slot, const ComponentSeed& seed) {
    const ComponentClass* target = reg.find_class(seed.class_name);
    if (!target)
        throw RegistryAuditError(owner.name + "." + slot.name +
                                 ": default names unregistered class " +
                                 seed.class_name);
    if (target->abstract_base)
        throw RegistryAuditError(owner.name + "." + slot.name +
                                 ": default instantiates abstract class " +
                                 seed.class_name);
    if (!reg.is_subclass_of(seed.class_name, slot.expected_class))
        throw RegistryAuditError(owner.name + "." + slot.name + ": default " +
                                 seed.class_name + " is not a " +
                                 slot.expected_class);
    std::set<std::string> seen;
    for (const auto& [preset_slot, preset_value] : seed.presets) {
        const SlotSpec* preset_spec = target->find_slot(preset_slot);
        if (!preset_spec)
            throw RegistryAuditError(seed.class_name +
                                     " has no slot named " + preset_slot);
        if (preset_spec->kind != SlotKind::Primitive)
            throw RegistryAuditError("preset " + seed.class_name + "." +
                                     preset_slot + " must be primitive");
        if (kind_of(preset_value) != preset_spec->primitive_kind)
            throw RegistryAuditError("preset " + seed.class_name + "." +
                                     preset_slot + " has the wrong kind");
        if (!seen.insert(preset_slot).second)
            throw RegistryAuditError("preset " + seed.class_name + "." +
                                     preset_slot + " repeated");
    }
    // Every required slot of the seeded class must be preset, otherwise
    // the default could never instantiate.
    for (const auto& target_slot : target->slots)
        if (target_slot.required && !seen.count(target_slot.name))
            throw RegistryAuditError("default " + seed.class_name +
                                     " leaves required slot " +
                                     target_slot.name + " open");
}

void audit_constraint(const Registry& reg, const Constraint& c,
                      const std::string& context) {
    if (!c.eval)
        throw RegistryAuditError(context + ": constraint " + c.id +
                                 " has no evaluator");
    const ComponentClass& owner = reg.require_class(c.owner_class);
    auto check_slot = [&](const std::string& slot_name, const char* role) {
        if (!owner.find_slot(slot_name))
            throw RegistryAuditError(context + ": constraint " + c.id + " " +
                                     role + " '" + slot_name +
                                     "' is not a slot of " + owner.name);
    };
    check_slot(c.blame_slot, "blames");
    for (const auto& p : c.participants) check_slot(p, "reads");
}

}  // namespace

void Registry::audit() const {
    if (root_.empty()) throw RegistryAuditError("no root class set");
    require_class(root_);
    for (const auto& cls : classes_) {
        if (!cls.parent.empty()) {
            require_class(cls.parent);
            // Reject inheritance cycles.
            const ComponentClass* cursor = find_class(cls.parent);
            while (cursor) {
                if (cursor->name == cls.name)
                    throw RegistryAuditError("inheritance cycle through " +
                                             cls.name);
                cursor = cursor->parent.empty() ? nullptr
                                                : find_class(cursor->parent);
            }
        }
        std::set<std::string> slot_names;
        for (const auto& slot : cls.slots) {
            const std::string context = cls.name + "." + slot.name;
            if (!slot_names.insert(slot.name).second)
                throw RegistryAuditError("duplicate slot: " + context);
            if (slot.required != slot.defaults.empty())
                throw RegistryAuditError(
                    context + ": required must mean exactly no defaults");
            if (slot.kind != SlotKind::Primitive) {
                if (slot.expected_class.empty())
                    throw RegistryAuditError(context + ": no expected class");
                require_class(slot.expected_class);
            }
            for (const auto& candidate : slot.defaults) {
                switch (slot.kind) {
                    case SlotKind::Component: {
                        const auto* seed =
                            std::get_if<ComponentSeed>(&candidate.value);
                        if (!seed)
                            throw RegistryAuditError(
                                context + ": component default must seed a class");
                        audit_seed(*this, cls, slot, *seed);
                        break;
                    }
                    case SlotKind::List: {
                        const auto* list =
                            std::get_if<ListSeed>(&candidate.value);
                        if (!list)
                            throw RegistryAuditError(
                                context + ": list default must be a list seed");
                        for (const auto& element : list->elements)
                            audit_seed(*this, cls, slot, element);
                        break;
                    }
                    case SlotKind::Primitive: {
                        const auto* prim =
                            std::get_if<PrimitiveValue>(&candidate.value);
                        if (!prim)
                            throw RegistryAuditError(
                                context + ": primitive default must be a value");
                        if (kind_of(*prim) != slot.primitive_kind)
                            throw RegistryAuditError(
                                context + ": default has the wrong kind");
                        break;
                    }
                }
                for (const auto& implied : candidate.implied)
                    audit_constraint(*this, implied, context);
            }
        }
        // Surface identifiers must be unambiguous among the concrete
        // classes assignable to any one expected class.
        for (const auto& slot : cls.slots) {
            if (slot.kind == SlotKind::Primitive) continue;
            std::set<std::string> surfaces;
            for (const ComponentClass* member :
                 concrete_subclasses(slot.expected_class)) {
                if (member->surface_name.empty()) continue;
                if (!surfaces.insert(member->surface_name).second)
                    throw RegistryAuditError(
                        "ambiguous identifier '" + member->surface_name +
                        "' among subclasses of " + slot.expected_class);
            }
        }
    }
    for (const auto& c : constraints_) audit_constraint(*this, c, "registry");
}

Rst Registry::build_rst(const std::string& expected_class) const {
    Rst rst;
    rst.expected_class = expected_class;
    for (const ComponentClass* member : concrete_subclasses(expected_class)) {
        if (member->surface_name.empty()) continue;
        rst.members.emplace_back(member->surface_name,
                                 &tables_.find(member->name)->second);
    }
    return rst;
}

void Registry::build_tables() {
    // Two phases so resolving tables can point at any class table.
    for (const auto& cls : classes_) {
        if (cls.abstract_base) continue;
        MapIst table;
        table.component = &cls;
        tables_.emplace(cls.name, std::move(table));
    }
    for (auto& [name, table] : tables_) {
        for (const auto& slot : table.component->slots) {
            SlotTable st;
            st.spec = &slot;
            switch (slot.kind) {
                case SlotKind::Component:
                    st.table = build_rst(slot.expected_class);
                    break;
                case SlotKind::List: {
                    ListIst list;
                    list.member_class = slot.expected_class;
                    list.member = build_rst(slot.expected_class);
                    st.table = std::move(list);
                    break;
                }
                case SlotKind::Primitive:
                    st.table = PrimitiveInstantiator{slot.primitive_kind};
                    break;
            }
            table.slots.push_back(std::move(st));
        }
    }
}

namespace {

SlotSpec primitive_slot(std::string name, PrimitiveKind kind,
                        PrimitiveValue default_value) {
    SlotSpec slot;
    slot.name = std::move(name);
    slot.kind = SlotKind::Primitive;
    slot.primitive_kind = kind;
    slot.defaults.push_back(DefaultCandidate{std::move(default_value), {}});
    return slot;
}

SlotSpec component_slot(std::string name, std::string expected,
                        std::vector<std::string> default_classes) {
    SlotSpec slot;
    slot.name = std::move(name);
    slot.kind = SlotKind::Component;
    slot.expected_class = std::move(expected);
    for (auto& cls : default_classes)
        slot.defaults.push_back(
            DefaultCandidate{ComponentSeed{std::move(cls), {}}, {}});
    return slot;
}

SlotSpec required_component_slot(std::string name, std::string expected) {
    SlotSpec slot;
    slot.name = std::move(name);
    slot.kind = SlotKind::Component;
    slot.expected_class = std::move(expected);
    slot.required = true;
    return slot;
}

SlotSpec list_slot(std::string name, std::string member,
                   std::vector<std::string> seeded_elements) {
    SlotSpec slot;
    slot.name = std::move(name);
    slot.kind = SlotKind::List;
    slot.expected_class = std::move(member);
    ListSeed seed;
    for (auto& cls : seeded_elements)
        seed.elements.push_back(ComponentSeed{std::move(cls), {}});
    slot.defaults.push_back(DefaultCandidate{std::move(seed), {}});
    return slot;
}

ComponentClass abstract_class(std::string name) {
    ComponentClass cls;
    cls.name = std::move(name);
    cls.abstract_base = true;
    return cls;
}

ComponentClass leaf_class(std::string name, std::string surface,
                          std::string parent) {
    ComponentClass cls;
    cls.name = std::move(name);
    cls.surface_name = std::move(surface);
    cls.parent = std::move(parent);
    return cls;
}

ComponentClass lattice_class(std::string name, std::string surface) {
    ComponentClass cls = leaf_class(std::move(name), std::move(surface),
                                    "Geometry");
    cls.slots.push_back(primitive_slot("width", PrimitiveKind::Integer,
                                       PrimitiveValue{std::int64_t{32}}));
    cls.slots.push_back(primitive_slot("height", PrimitiveKind::Integer,
                                       PrimitiveValue{std::int64_t{32}}));
    return cls;
}

}  // namespace

std::vector<Constraint> compatibility_constraints() {
    std::vector<Constraint> out;
    out.push_back(forbid_when(
        "C1", "Project", "arena", "HexagonalArena", "boundary",
        "PeriodicBoundary",
        "a hexagonal arena cannot use a periodic boundary"));
    out.push_back(forbid_when(
        "C2", "Project", "geometry", "RectangularLattice", "arena",
        "HexagonalArena",
        "a rectangular lattice cannot carry a hexagonal arena"));
    out.push_back(require_when(
        "C3", "Wander", "destination", "AllNeighbors", "collision",
        "moves onto occupied sites need a collision rule"));
    return out;
}

Registry seed_registry() {
    Registry reg;

    ComponentClass project;
    project.name = "Project";
    project.slots.push_back(component_slot(
        "geometry", "Geometry",
        {"RectangularLattice", "TriangularLattice", "HexagonalLattice"}));
    project.slots.push_back(component_slot(
        "boundary", "Boundary", {"AbsorbingBoundary", "PeriodicBoundary"}));
    project.slots.push_back(component_slot(
        "arena", "ArenaShape", {"RectangularArena", "HexagonalArena"}));
    project.slots.push_back(list_slot("initially", "SetupAction", {}));
    project.slots.push_back(list_slot("output", "OutputSink", {"ImageSequence"}));
    project.slots.push_back(primitive_slot("terminate",
                                           PrimitiveKind::Predicate,
                                           PrimitiveValue{Predicate::never()}));
    reg.add_class(std::move(project));

    reg.add_class(abstract_class("Geometry"));
    reg.add_class(lattice_class("RectangularLattice", "rectangular"));
    reg.add_class(lattice_class("TriangularLattice", "triangular"));
    reg.add_class(lattice_class("HexagonalLattice", "hexagonal"));

    reg.add_class(abstract_class("Boundary"));
    reg.add_class(leaf_class("AbsorbingBoundary", "absorbing", "Boundary"));
    reg.add_class(leaf_class("PeriodicBoundary", "periodic", "Boundary"));

    reg.add_class(abstract_class("ArenaShape"));
    reg.add_class(leaf_class("RectangularArena", "rectangular", "ArenaShape"));
    reg.add_class(leaf_class("HexagonalArena", "hexagonal", "ArenaShape"));

    reg.add_class(abstract_class("SetupAction"));
    ComponentClass scatter = leaf_class("Scatter", "scatter", "SetupAction");
    scatter.slots.push_back(primitive_slot("count", PrimitiveKind::Integer,
                                           PrimitiveValue{std::int64_t{1}}));
    scatter.slots.push_back(
        required_component_slot("description", "AgentDescriptor"));
    reg.add_class(std::move(scatter));

    ComponentClass agent;
    agent.name = "AgentDescriptor";
    agent.surface_name = "Agent";
    agent.slots.push_back(list_slot("do", "Behavior", {}));
    reg.add_class(std::move(agent));

    ComponentClass behavior;
    behavior.name = "Behavior";
    behavior.surface_name = "Behavior";
    behavior.slots.push_back(
        required_component_slot("action", "BehaviorAction"));
    behavior.slots.push_back(
        primitive_slot("every", PrimitiveKind::Decimal, PrimitiveValue{1.0}));
    behavior.slots.push_back(primitive_slot(
        "until", PrimitiveKind::Predicate, PrimitiveValue{Predicate::never()}));
    reg.add_class(std::move(behavior));

    reg.add_class(abstract_class("BehaviorAction"));
    ComponentClass wander = leaf_class("Wander", "wander", "BehaviorAction");
    wander.slots.push_back(component_slot("destination", "DestinationRule",
                                          {"VacantNeighbors", "AllNeighbors"}));
    wander.slots.push_back(component_slot(
        "collision", "CollisionRule", {"IgnoreOccupied", "ErrorOnCollision"}));
    reg.add_class(std::move(wander));

    reg.add_class(abstract_class("DestinationRule"));
    reg.add_class(leaf_class("VacantNeighbors", "vacant", "DestinationRule"));
    reg.add_class(leaf_class("AllNeighbors", "all", "DestinationRule"));

    reg.add_class(abstract_class("CollisionRule"));
    reg.add_class(leaf_class("IgnoreOccupied", "ignore", "CollisionRule"));
    reg.add_class(leaf_class("ErrorOnCollision", "error", "CollisionRule"));

    reg.add_class(abstract_class("OutputSink"));
    reg.add_class(leaf_class("ImageSequence", "imageSequence", "OutputSink"));

    for (auto& constraint : compatibility_constraints())
        reg.add_constraint(std::move(constraint));

    reg.set_root("Project");
    reg.finalize();
    return reg;
}

namespace {

void walk_rst(const Rst& rst, std::set<std::string>& visited);

void walk_ist(const MapIst& ist, std::set<std::string>& visited) {
    if (!visited.insert(ist.component->name).second) return;
    for (const auto& slot : ist.slots) {
        if (const auto* rst = std::get_if<Rst>(&slot.table)) {
            walk_rst(*rst, visited);
        } else if (const auto* list = std::get_if<ListIst>(&slot.table)) {
            if (const auto* member_rst = std::get_if<Rst>(&list->member))
                walk_rst(*member_rst, visited);
        }
    }
}

void walk_rst(const Rst& rst, std::set<std::string>& visited) {
    for (const auto& [surface, table] : rst.members) walk_ist(*table, visited);
}

}  // namespace

std::vector<std::string> reachable_classes(const Registry& registry) {
    std::set<std::string> visited;
    walk_ist(registry.root_ist(), visited);
    return {visited.begin(), visited.end()};
}

}  // namespace nano
