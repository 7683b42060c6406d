#include "nano/solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace nano {

std::string ProvenanceTag::render() const {
    switch (kind) {
        case Provenance::User: return "user";
        case Provenance::Default:
            return "default[" + std::to_string(default_index) + "]";
        case Provenance::Preset: return "preset";
    }
    return "?";
}

const BoundSlot* ConfigNode::find(std::string_view name) const {
    for (const auto& slot : slots)
        if (slot.name == name) return &slot;
    return nullptr;
}

const BoundSlot& ConfigNode::at(std::string_view name) const {
    const BoundSlot* slot = find(name);
    if (!slot)
        throw std::logic_error("no slot '" + std::string(name) + "' on " +
                               class_name);
    return *slot;
}

void PartialConfiguration::rollback(Mark m) {
    if (m.bindings > trail_.size() || m.constraints > active_.size())
        throw std::logic_error("rollback past the present");
    trail_.resize(m.bindings);
    active_.resize(m.constraints);
}

void PartialConfiguration::activate_instance(const std::string& instance_path,
                                             std::string_view class_name) {
    for (const Constraint* rule : registry_->constraints_for(class_name))
        active_.push_back(ActiveConstraint{rule, instance_path, true});
}

void PartialConfiguration::add_constraint(const std::string& instance_path,
                                          const Constraint& rule) {
    implied_storage_.push_back(rule);
    active_.push_back(
        ActiveConstraint{&implied_storage_.back(), instance_path, false});
}

void PartialConfiguration::bind(std::string slot_path, std::string repr,
                                bool user) {
    trail_.push_back(Entry{std::move(slot_path), std::move(repr), user});
}

std::optional<std::string> PartialConfiguration::binding(
    std::string_view slot_path) const {
    for (auto it = trail_.rbegin(); it != trail_.rend(); ++it)
        if (it->path == slot_path) return it->repr;
    return std::nullopt;
}

bool PartialConfiguration::user_bound(std::string_view slot_path) const {
    for (auto it = trail_.rbegin(); it != trail_.rend(); ++it)
        if (it->path == slot_path) return it->user;
    return false;
}

namespace {

/// Reads one instance's slots out of the trail by path prefix.
class InstanceReader final : public SlotReader {
public:
    InstanceReader(const PartialConfiguration& cfg, const std::string& prefix)
        : cfg_(cfg), prefix_(prefix) {}
    std::optional<std::string> binding(std::string_view slot) const override {
        return cfg_.binding(prefix_ + "/" + std::string(slot));
    }

private:
    const PartialConfiguration& cfg_;
    const std::string& prefix_;
};

}  // namespace

std::vector<PartialConfiguration::Violation> PartialConfiguration::violations()
    const {
    std::vector<Violation> out;
    for (const auto& active : active_) {
        InstanceReader reader(*this, active.instance_path);
        if (active.rule->eval(reader) != Verdict::Violated) continue;
        Violation v;
        v.rule = active.rule;
        v.instance_path = active.instance_path;
        bool any_bound = false;
        bool all_user = true;
        for (const auto& participant : active.rule->participants) {
            const std::string path = active.instance_path + "/" + participant;
            if (!binding(path)) continue;
            any_bound = true;
            if (!user_bound(path)) all_user = false;
        }
        v.hard = active.unconditional && any_bound && all_user;
        out.push_back(std::move(v));
    }
    return out;
}

std::string UnsolvableInfo::message() const {
    std::string msg = "Unsolvable at '" + slot_path + "'";
    if (hard_conflict) {
        msg += ": violated";
        for (const auto& id : violated_constraints) msg += " " + id;
        if (!description.empty()) msg += " (" + description + ")";
        return msg;
    }
    msg += ": every candidate was rejected";
    for (const auto& tried_candidate : tried) {
        msg += "\n  candidate " + tried_candidate.label;
        if (tried_candidate.violated.empty()) {
            msg += ": no consistent completion";
        } else {
            msg += ": violated";
            for (const auto& id : tried_candidate.violated) msg += " " + id;
        }
    }
    return msg;
}

namespace {

struct HardConflict {
    std::string slot_path;
    std::string constraint_id;
    std::string description;
};

std::size_t path_depth(const std::string& path) {
    return static_cast<std::size_t>(
        std::count_if(path.begin(), path.end(),
                      [](char c) { return c == '/' || c == '['; }));
}

class Solver {
public:
    explicit Solver(const Registry& registry)
        : registry_(registry), cfg_(registry) {}

    SolverOutcome run(const ObjectNode& root_object) {
        const std::string root_path = registry_.root_class();
        SolverOutcome outcome;
        try {
            ConfigNode root;
            if (solve_instance(registry_.root_class(),
                               &root_object.as_map(), {}, root_path,
                               root_object.span, root)) {
                // All slots bound; a lingering violation would be a
                // monotonicity bug in a constraint evaluator.
                for (const auto& v : cfg_.violations())
                    throw std::logic_error("constraint " + v.rule->id +
                                           " violated in a solved model");
                outcome.configuration = std::move(root);
                return outcome;
            }
            UnsolvableInfo info;
            if (deepest_) {
                info.slot_path = deepest_->slot_path;
                info.tried = deepest_->tried;
                for (const auto& candidate : deepest_->tried)
                    for (const auto& id : candidate.violated)
                        if (std::find(info.violated_constraints.begin(),
                                      info.violated_constraints.end(),
                                      id) == info.violated_constraints.end())
                            info.violated_constraints.push_back(id);
            } else {
                info.slot_path = root_path;
            }
            outcome.failure = std::move(info);
        } catch (const HardConflict& conflict) {
            UnsolvableInfo info;
            info.slot_path = conflict.slot_path;
            info.violated_constraints = {conflict.constraint_id};
            info.hard_conflict = true;
            info.description = conflict.description;
            outcome.failure = std::move(info);
        }
        return outcome;
    }

private:
    struct SlotFailure {
        std::string slot_path;
        std::vector<EliminatedCandidate> tried;
    };

    bool solve_instance(
        const std::string& class_name, const MapObjectNode* user,
        const std::vector<std::pair<std::string, PrimitiveValue>>& presets,
        const std::string& path, SourceSpan span, ConfigNode& out) {
        const ComponentClass& cls = registry_.require_class(class_name);
        for (const auto& slot : cls.slots) {
            if (!slot.required) continue;
            const bool preset = std::any_of(
                presets.begin(), presets.end(),
                [&](const auto& p) { return p.first == slot.name; });
            if (!preset && (!user || !user->find(slot.name)))
                throw std::logic_error("instance " + path +
                                       " is missing required slot " +
                                       slot.name);
        }
        out.class_name = class_name;
        out.span = span;
        cfg_.activate_instance(path, class_name);
        return solve_slots(cls, 0, user, presets, path, out);
    }

    bool solve_slots(
        const ComponentClass& cls, std::size_t index, const MapObjectNode* user,
        const std::vector<std::pair<std::string, PrimitiveValue>>& presets,
        const std::string& path, ConfigNode& node) {
        if (index == cls.slots.size()) return true;
        const SlotSpec& slot = cls.slots[index];
        const std::string slot_path = path + "/" + slot.name;
        std::vector<EliminatedCandidate> eliminated;

        auto attempt = [&](auto&& try_bind, const std::string& label) -> bool {
            const auto mark = cfg_.mark();
            const std::size_t bound_before = node.slots.size();
            std::vector<std::string> violated;
            if (try_bind(violated)) {
                if (solve_slots(cls, index + 1, user, presets, path, node))
                    return true;
                // A later slot exhausted its candidates under this choice.
                cfg_.rollback(mark);
                node.slots.resize(bound_before);
                return false;
            }
            cfg_.rollback(mark);
            node.slots.resize(bound_before);
            eliminated.push_back(
                EliminatedCandidate{label, std::move(violated)});
            return false;
        };

        const PrimitiveValue* preset_value = nullptr;
        for (const auto& [preset_name, value] : presets)
            if (preset_name == slot.name) preset_value = &value;

        if (preset_value) {
            if (attempt(
                    [&](std::vector<std::string>& violated) {
                        return bind_primitive(slot_path, *preset_value,
                                              ProvenanceTag{Provenance::Preset,
                                                            -1},
                                              slot, node, violated);
                    },
                    primitive_literal(*preset_value)))
                return true;
        } else if (const ObjectNode* given = user ? user->find(slot.name)
                                                  : nullptr) {
            if (attempt(
                    [&](std::vector<std::string>& violated) {
                        return bind_user(slot, *given, slot_path, node,
                                         violated);
                    },
                    user_label(*given)))
                return true;
        } else {
            for (std::size_t k = 0; k < slot.defaults.size(); ++k) {
                const DefaultCandidate& candidate = slot.defaults[k];
                if (attempt(
                        [&](std::vector<std::string>& violated) {
                            return bind_default(slot, candidate,
                                                static_cast<int>(k), slot_path,
                                                path, node, violated);
                        },
                        candidate.label()))
                    return true;
            }
        }
        record_exhausted(slot_path, std::move(eliminated));
        return false;
    }

    /// Evaluates the active constraints right after a bind. Throws when
    /// the violation rests on user-given values alone; otherwise reports
    /// the violated ids so the candidate can be eliminated.
    bool constraints_hold(std::vector<std::string>& violated) {
        const auto violations = cfg_.violations();
        if (violations.empty()) return true;
        for (const auto& v : violations)
            if (v.hard)
                throw HardConflict{v.instance_path + "/" + v.rule->blame_slot,
                                   v.rule->id, v.rule->description};
        for (const auto& v : violations) violated.push_back(v.rule->id);
        return false;
    }

    bool bind_primitive(const std::string& slot_path,
                        const PrimitiveValue& value, ProvenanceTag provenance,
                        const SlotSpec& slot, ConfigNode& node,
                        std::vector<std::string>& violated) {
        cfg_.bind(slot_path, primitive_literal(value),
                  provenance.kind == Provenance::User);
        if (!constraints_hold(violated)) return false;
        node.slots.push_back(BoundSlot{slot.name, provenance, value});
        return true;
    }

    bool bind_user(const SlotSpec& slot, const ObjectNode& given,
                   const std::string& slot_path, ConfigNode& node,
                   std::vector<std::string>& violated) {
        const ProvenanceTag tag{Provenance::User, -1};
        if (given.is_primitive())
            return bind_primitive(slot_path, given.as_primitive().value, tag,
                                  slot, node, violated);
        if (given.is_map()) {
            const MapObjectNode& map = given.as_map();
            cfg_.bind(slot_path, map.class_name, true);
            if (!constraints_hold(violated)) return false;
            ConfigNode child;
            if (!solve_instance(map.class_name, &map, {}, slot_path,
                                given.span, child))
                return false;
            node.slots.push_back(BoundSlot{slot.name, tag, std::move(child)});
            return true;
        }
        const ListObjectNode& list = given.as_list();
        cfg_.bind(slot_path, user_label(given), true);
        if (!constraints_hold(violated)) return false;
        std::vector<ConfigElem> elements;
        for (std::size_t i = 0; i < list.elements.size(); ++i) {
            const ObjectNode& element = list.elements[i];
            const std::string element_path =
                slot_path + "[" + std::to_string(i) + "]";
            if (element.is_primitive()) {
                elements.emplace_back(element.as_primitive().value);
                continue;
            }
            ConfigNode child;
            if (!solve_instance(element.as_map().class_name,
                                &element.as_map(), {}, element_path,
                                element.span, child))
                return false;
            elements.emplace_back(std::move(child));
        }
        node.slots.push_back(BoundSlot{slot.name, tag, std::move(elements)});
        return true;
    }

    bool bind_default(const SlotSpec& slot, const DefaultCandidate& candidate,
                      int index, const std::string& slot_path,
                      const std::string& owner_path, ConfigNode& node,
                      std::vector<std::string>& violated) {
        const ProvenanceTag tag{Provenance::Default, index};
        if (const auto* value = std::get_if<PrimitiveValue>(&candidate.value)) {
            cfg_.bind(slot_path, primitive_literal(*value), false);
            for (const auto& implied : candidate.implied)
                cfg_.add_constraint(owner_path, implied);
            if (!constraints_hold(violated)) return false;
            node.slots.push_back(BoundSlot{slot.name, tag, *value});
            return true;
        }
        if (const auto* seed = std::get_if<ComponentSeed>(&candidate.value)) {
            cfg_.bind(slot_path, seed->class_name, false);
            for (const auto& implied : candidate.implied)
                cfg_.add_constraint(owner_path, implied);
            if (!constraints_hold(violated)) return false;
            ConfigNode child;
            if (!solve_instance(seed->class_name, nullptr, seed->presets,
                                slot_path, SourceSpan{}, child))
                return false;
            node.slots.push_back(BoundSlot{slot.name, tag, std::move(child)});
            return true;
        }
        const auto* list = std::get_if<ListSeed>(&candidate.value);
        cfg_.bind(slot_path, candidate.label(), false);
        for (const auto& implied : candidate.implied)
            cfg_.add_constraint(owner_path, implied);
        if (!constraints_hold(violated)) return false;
        std::vector<ConfigElem> elements;
        for (std::size_t i = 0; i < list->elements.size(); ++i) {
            const ComponentSeed& seed = list->elements[i];
            ConfigNode child;
            if (!solve_instance(seed.class_name, nullptr, seed.presets,
                                slot_path + "[" + std::to_string(i) + "]",
                                SourceSpan{}, child))
                return false;
            elements.emplace_back(std::move(child));
        }
        node.slots.push_back(BoundSlot{slot.name, tag, std::move(elements)});
        return true;
    }

    std::string user_label(const ObjectNode& given) {
        if (given.is_primitive())
            return primitive_literal(given.as_primitive().value);
        if (given.is_map()) return given.as_map().class_name;
        std::string label = "[";
        const auto& list = given.as_list();
        for (std::size_t i = 0; i < list.elements.size(); ++i) {
            if (i) label += ", ";
            label += list.elements[i].is_map()
                         ? list.elements[i].as_map().class_name
                         : primitive_literal(
                               list.elements[i].as_primitive().value);
        }
        return label + "]";
    }

    void record_exhausted(const std::string& slot_path,
                          std::vector<EliminatedCandidate> tried) {
        const std::size_t depth = path_depth(slot_path);
        if (deepest_ && depth <= deepest_depth_) return;
        deepest_ = SlotFailure{slot_path, std::move(tried)};
        deepest_depth_ = depth;
    }

    const Registry& registry_;
    PartialConfiguration cfg_;
    std::optional<SlotFailure> deepest_;
    std::size_t deepest_depth_ = 0;
};

}  // namespace

SolverOutcome interpolate(const TranslationResult& translation,
                          const Registry& registry) {
    if (!registry.finalized())
        throw std::logic_error("interpolate needs a finalized registry");
    if (!translation.duplicates.empty())
        throw std::logic_error("interpolate after unresolved overdetermination");
    return Solver(registry).run(translation.root);
}

std::vector<std::string> solve_order(const ObjectNode& node,
                                     const Registry& registry) {
    if (!node.is_map()) return {};
    const ComponentClass& cls =
        registry.require_class(node.as_map().class_name);
    std::vector<std::string> out;
    out.reserve(cls.slots.size());
    for (const auto& slot : cls.slots) out.push_back(slot.name);
    return out;
}

CandidateVerdict validate_candidate(const DefaultCandidate& candidate,
                                    PartialConfiguration& cfg,
                                    const std::string& instance_path,
                                    const std::string& slot_name) {
    const auto mark = cfg.mark();
    cfg.bind(instance_path + "/" + slot_name, candidate.label(), false);
    for (const auto& implied : candidate.implied)
        cfg.add_constraint(instance_path, implied);
    CandidateVerdict verdict;
    for (const auto& v : cfg.violations()) {
        verdict.valid = false;
        verdict.violated.push_back(v.rule->id);
        if (v.hard) verdict.hard = true;
    }
    cfg.rollback(mark);
    return verdict;
}

bool config_equal(const ConfigNode& a, const ConfigNode& b) {
    if (a.class_name != b.class_name) return false;
    if (a.slots.size() != b.slots.size()) return false;
    for (std::size_t i = 0; i < a.slots.size(); ++i) {
        const BoundSlot& sa = a.slots[i];
        const BoundSlot& sb = b.slots[i];
        if (sa.name != sb.name) return false;
        if (!(sa.provenance == sb.provenance)) return false;
        if (sa.value.index() != sb.value.index()) return false;
        if (const auto* node = std::get_if<ConfigNode>(&sa.value)) {
            if (!config_equal(*node, std::get<ConfigNode>(sb.value)))
                return false;
        } else if (const auto* list =
                       std::get_if<std::vector<ConfigElem>>(&sa.value)) {
            const auto& other = std::get<std::vector<ConfigElem>>(sb.value);
            if (list->size() != other.size()) return false;
            for (std::size_t j = 0; j < list->size(); ++j) {
                const ConfigElem& ea = (*list)[j];
                const ConfigElem& eb = other[j];
                if (ea.index() != eb.index()) return false;
                if (const auto* child = std::get_if<ConfigNode>(&ea)) {
                    if (!config_equal(*child, std::get<ConfigNode>(eb)))
                        return false;
                } else if (!primitive_equal(std::get<PrimitiveValue>(ea),
                                            std::get<PrimitiveValue>(eb))) {
                    return false;
                }
            }
        } else if (!primitive_equal(std::get<PrimitiveValue>(sa.value),
                                    std::get<PrimitiveValue>(sb.value))) {
            return false;
        }
    }
    return true;
}

}  // namespace nano
