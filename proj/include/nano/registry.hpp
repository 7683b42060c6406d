#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nano/value.hpp"

namespace nano {

/// Three-valued constraint verdict. A constraint over a partially bound
/// instance may be undecidable; only Violated eliminates a candidate.
enum class Verdict { Satisfied, Violated, Undecided };

const char* verdict_name(Verdict v);

/// Read access to the slots of one component instance. Component slots
/// report the bound class name, primitive slots their literal rendering.
/// Unbound slots report nullopt.
class SlotReader {
public:
    virtual ~SlotReader() = default;
    virtual std::optional<std::string> binding(std::string_view slot) const = 0;
};

/// SlotReader over a plain map, for direct constraint evaluation.
class MapSlotReader final : public SlotReader {
public:
    explicit MapSlotReader(std::map<std::string, std::string> bindings)
        : bindings_(std::move(bindings)) {}
    std::optional<std::string> binding(std::string_view slot) const override;

private:
    std::map<std::string, std::string> bindings_;
};

/// A declarative compatibility rule scoped to instances of owner_class.
/// eval must be monotone: once Violated on a partial assignment it stays
/// Violated under any extension that keeps the bound slots fixed.
struct Constraint {
    std::string id;
    std::string description;
    std::string owner_class;
    /// Consequent slot: the slot named when the violation is reported.
    std::string blame_slot;
    /// Every slot eval may read, used to attribute violations.
    std::vector<std::string> participants;
    std::function<Verdict(const SlotReader&)> eval;
};

/// (antecedent_slot = antecedent_class) implies forbidden_class must not
/// occupy consequent_slot. Undecided while either side is unbound, except
/// that a non-matching antecedent satisfies immediately.
Constraint forbid_when(std::string id, std::string owner_class,
                       std::string antecedent_slot, std::string antecedent_class,
                       std::string consequent_slot, std::string forbidden_class,
                       std::string description);

/// (antecedent_slot = antecedent_class) implies consequent_slot is bound.
Constraint require_when(std::string id, std::string owner_class,
                        std::string antecedent_slot,
                        std::string antecedent_class,
                        std::string consequent_slot, std::string description);

enum class SlotKind { Component, List, Primitive };

const char* slot_kind_name(SlotKind kind);

/// Instantiate a class as a default, optionally pre-binding primitive
/// slots. Presets override the class's own slot defaults.
struct ComponentSeed {
    std::string class_name;
    std::vector<std::pair<std::string, PrimitiveValue>> presets;
};

/// Default value for a list slot: a fixed roster of element seeds
/// (possibly empty).
struct ListSeed {
    std::vector<ComponentSeed> elements;
};

using CandidateValue = std::variant<ComponentSeed, ListSeed, PrimitiveValue>;

/// One entry in a slot's ordered default sequence.
struct DefaultCandidate {
    CandidateValue value;
    /// Extra constraints activated on the owning instance while this
    /// candidate is bound.
    std::vector<Constraint> implied;

    std::string label() const;
};

struct SlotSpec {
    std::string name;
    SlotKind kind = SlotKind::Primitive;
    /// Expected class for Component slots, element class for List slots.
    std::string expected_class;
    PrimitiveKind primitive_kind = PrimitiveKind::Integer;
    /// Invariant: required iff defaults is empty.
    bool required = false;
    std::vector<DefaultCandidate> defaults;
};

struct ComponentClass {
    std::string name;
    /// Identifier that names this class in source; empty means the class
    /// cannot be written by the user (abstract bases, the root).
    std::string surface_name;
    /// Parent class name, empty for forest roots.
    std::string parent;
    bool abstract_base = false;
    std::vector<SlotSpec> slots;

    const SlotSpec* find_slot(std::string_view name) const;
};

struct MapIst;
struct ListIst;

/// Resolving table: surface identifier -> instantiator of one concrete
/// class assignable to the expected class.
struct Rst {
    std::string expected_class;
    std::vector<std::pair<std::string, const MapIst*>> members;

    const MapIst* find(std::string_view identifier) const;
};

struct PrimitiveInstantiator {
    PrimitiveKind kind = PrimitiveKind::Integer;
};

struct ListIst {
    std::string member_class;
    /// Element tables: component members resolve by identifier, primitive
    /// members parse directly.
    std::variant<Rst, PrimitiveInstantiator> member;
};

struct SlotTable {
    const SlotSpec* spec = nullptr;
    std::variant<Rst, ListIst, PrimitiveInstantiator> table;
};

/// Instantiation table for one concrete class: its slots with the tables
/// their values translate through.
struct MapIst {
    const ComponentClass* component = nullptr;
    std::vector<SlotTable> slots;

    const SlotTable* find(std::string_view slot_name) const;
};

/// The component library: a class forest, compatibility constraints, and
/// the symbol tables derived from them. Frozen by finalize(); lookups and
/// translation are only valid afterwards.
class Registry {
public:
    void add_class(ComponentClass cls);
    void add_constraint(Constraint constraint);
    void set_root(std::string class_name);

    /// Audits the library and builds the symbol tables. Throws
    /// RegistryAuditError on any inconsistency (unknown expected class,
    /// required slot with defaults, preset naming a missing slot, ...).
    void finalize();
    bool finalized() const { return finalized_; }

    const ComponentClass* find_class(std::string_view name) const;
    const ComponentClass& require_class(std::string_view name) const;
    const ComponentClass* find_by_surface(std::string_view surface) const;
    bool is_subclass_of(std::string_view cls, std::string_view base) const;
    /// Concrete classes assignable to base, in declaration order.
    std::vector<const ComponentClass*> concrete_subclasses(
        std::string_view base) const;

    const std::vector<ComponentClass>& classes() const { return classes_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    std::vector<const Constraint*> constraints_for(
        std::string_view owner_class) const;

    const std::string& root_class() const { return root_; }
    const MapIst& root_ist() const;
    const MapIst* class_ist(std::string_view class_name) const;

private:
    void audit() const;
    void build_tables();
    Rst build_rst(const std::string& expected_class) const;

    std::vector<ComponentClass> classes_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::vector<Constraint> constraints_;
    std::map<std::string, MapIst, std::less<>> tables_;
    std::string root_;
    bool finalized_ = false;
};

/// The built-in component library: a root model class with geometry,
/// boundary, arena, setup, output and termination slots; scatter setup;
/// agents with timed behaviors; the wander action. Finalized and ready
/// for translation.
Registry seed_registry();

/// The cross-slot compatibility rules shipped with the seed registry.
std::vector<Constraint> compatibility_constraints();

/// Walks every resolving table reachable from the root instantiator and
/// returns the names of all classes visited. Every name is registered;
/// used to audit table construction.
std::vector<std::string> reachable_classes(const Registry& registry);

}  // namespace nano
