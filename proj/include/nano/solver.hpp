#pragma once

#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nano/object_node.hpp"
#include "nano/registry.hpp"
#include "nano/translate.hpp"

namespace nano {

enum class Provenance { User, Default, Preset };

struct ProvenanceTag {
    Provenance kind = Provenance::User;
    /// Position in the slot's default sequence when kind is Default.
    int default_index = -1;

    std::string render() const;  // "user", "default[2]", "preset"
    bool operator==(const ProvenanceTag&) const = default;
};

struct BoundSlot;

/// One fully interpolated component instance. Slots appear in registry
/// declaration order and every slot of the class is present.
struct ConfigNode {
    std::string class_name;
    std::vector<BoundSlot> slots;
    SourceSpan span;

    const BoundSlot* find(std::string_view name) const;
    const BoundSlot& at(std::string_view name) const;
};

using ConfigElem = std::variant<ConfigNode, PrimitiveValue>;
using SlotValue =
    std::variant<ConfigNode, std::vector<ConfigElem>, PrimitiveValue>;

struct BoundSlot {
    std::string name;
    ProvenanceTag provenance;
    SlotValue value;

    const ConfigNode& as_component() const { return std::get<ConfigNode>(value); }
    const std::vector<ConfigElem>& as_list() const {
        return std::get<std::vector<ConfigElem>>(value);
    }
    const PrimitiveValue& as_primitive() const {
        return std::get<PrimitiveValue>(value);
    }
};

/// A constraint activated on one instance. Slot names in the rule are
/// read relative to instance_path. Registry-owned constraints are
/// unconditional; candidate-implied ones vanish when their candidate is
/// backtracked.
struct ActiveConstraint {
    const Constraint* rule = nullptr;
    std::string instance_path;
    bool unconditional = true;
};

/// The solver's working state: a trail of slot-path bindings plus the
/// constraints the bound instances have activated. Rollback truncates
/// both, which is what makes chronological backtracking cheap.
class PartialConfiguration {
public:
    explicit PartialConfiguration(const Registry& registry)
        : registry_(&registry) {}

    struct Mark {
        std::size_t bindings = 0;
        std::size_t constraints = 0;
    };
    Mark mark() const { return {trail_.size(), active_.size()}; }
    void rollback(Mark m);

    /// Activates the registry constraints owned by class_name, scoped to
    /// the instance at instance_path.
    void activate_instance(const std::string& instance_path,
                           std::string_view class_name);
    /// Activates a candidate-implied constraint on the owning instance.
    void add_constraint(const std::string& instance_path,
                        const Constraint& rule);

    /// Binds slot_path to a rendering of its value: the class name for
    /// components, the literal for primitives. Paths bind at most once
    /// between rollbacks.
    void bind(std::string slot_path, std::string repr, bool user);
    std::optional<std::string> binding(std::string_view slot_path) const;
    bool user_bound(std::string_view slot_path) const;
    std::size_t binding_count() const { return trail_.size(); }

    struct Violation {
        const Constraint* rule = nullptr;
        std::string instance_path;
        /// True when the rule is unconditional and every bound
        /// participant came from the user: no amount of backtracking
        /// over defaults can repair it. Implied rules are never hard;
        /// abandoning their candidate removes them.
        bool hard = false;
    };
    /// Evaluates every active constraint against the current bindings.
    std::vector<Violation> violations() const;

    const Registry& registry() const { return *registry_; }

private:
    struct Entry {
        std::string path;
        std::string repr;
        bool user = false;
    };
    std::vector<Entry> trail_;
    std::vector<ActiveConstraint> active_;
    std::deque<Constraint> implied_storage_;  // stable addresses for active_
    const Registry* registry_;
};

struct EliminatedCandidate {
    std::string label;
    /// Constraint ids that rejected it; empty when a nested solve failed.
    std::vector<std::string> violated;
};

struct UnsolvableInfo {
    /// Deepest slot whose candidates were exhausted, or the blamed slot
    /// of a conflict among user-given values.
    std::string slot_path;
    std::vector<EliminatedCandidate> tried;
    /// Distinct constraint ids involved, in first-seen order.
    std::vector<std::string> violated_constraints;
    /// True when user-given values alone violate a constraint; no
    /// default choice could have repaired the model.
    bool hard_conflict = false;
    std::string description;

    std::string message() const;
};

struct SolverOutcome {
    std::optional<ConfigNode> configuration;
    std::optional<UnsolvableInfo> failure;

    bool solved() const { return configuration.has_value(); }
};

/// Completes a translated model into a full configuration by walking the
/// slots in declaration order and backtracking over each slot's ordered
/// defaults. User-given values are fixed singletons: they are validated
/// in place, never reassigned. Equivalent to enumerating all default
/// combinations lexicographically and returning the first that satisfies
/// every constraint.
SolverOutcome interpolate(const TranslationResult& translation,
                          const Registry& registry);

/// The order interpolation visits the slots of one instance: registry
/// declaration order. Primitive and list nodes have no slots.
std::vector<std::string> solve_order(const ObjectNode& node,
                                     const Registry& registry);

struct CandidateVerdict {
    bool valid = true;
    std::vector<std::string> violated;
    bool hard = false;
};

/// Tentatively binds candidate into the slot and evaluates the active
/// constraints, then rolls back. Nested slots are not solved; this is
/// the shallow validity gate interpolation applies before recursing.
CandidateVerdict validate_candidate(const DefaultCandidate& candidate,
                                    PartialConfiguration& cfg,
                                    const std::string& instance_path,
                                    const std::string& slot_name);

bool config_equal(const ConfigNode& a, const ConfigNode& b);

}  // namespace nano
