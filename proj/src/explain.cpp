#include "nano/explain.hpp"

#include <sstream>

#include <json.hpp>

namespace nano {

namespace {

std::string value_repr(const SlotValue& value) {
    if (const auto* node = std::get_if<ConfigNode>(&value))
        return node->class_name;
    if (const auto* prim = std::get_if<PrimitiveValue>(&value))
        return primitive_literal(*prim);
    const auto& list = std::get<std::vector<ConfigElem>>(value);
    std::string repr = "[";
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) repr += ", ";
        if (const auto* node = std::get_if<ConfigNode>(&list[i]))
            repr += node->class_name;
        else
            repr += primitive_literal(std::get<PrimitiveValue>(list[i]));
    }
    return repr + "]";
}

void flatten_node(const ConfigNode& node, const std::string& path,
                  std::vector<BindingLine>& out) {
    for (const auto& slot : node.slots) {
        const std::string slot_path = path + "/" + slot.name;
        out.push_back(BindingLine{slot_path, value_repr(slot.value),
                                  slot.provenance.render()});
        if (const auto* child = std::get_if<ConfigNode>(&slot.value)) {
            flatten_node(*child, slot_path, out);
        } else if (const auto* list =
                       std::get_if<std::vector<ConfigElem>>(&slot.value)) {
            for (std::size_t i = 0; i < list->size(); ++i) {
                const std::string element_path =
                    slot_path + "[" + std::to_string(i) + "]";
                if (const auto* element = std::get_if<ConfigNode>(&(*list)[i])) {
                    out.push_back(BindingLine{element_path,
                                              element->class_name, "element"});
                    flatten_node(*element, element_path, out);
                } else {
                    out.push_back(BindingLine{
                        element_path,
                        primitive_literal(std::get<PrimitiveValue>((*list)[i])),
                        "element"});
                }
            }
        }
    }
}

class TextWriter {
public:
    explicit TextWriter(const Registry& registry) : registry_(registry) {}

    std::string render(const ConfigNode& root) {
        for (const auto& slot : root.slots) emit_slot(slot, 0);
        return std::move(out_).str();
    }

private:
    void indent(int depth) {
        for (int i = 0; i < depth; ++i) out_ << "    ";
    }

    std::string surface(const ConfigNode& node) const {
        const std::string& name =
            registry_.require_class(node.class_name).surface_name;
        // Only the root class lacks a surface name and it is never a
        // slot value.
        return name;
    }

    void emit_slot(const BoundSlot& slot, int depth) {
        indent(depth);
        const std::string prov = slot.provenance.render();
        if (const auto* node = std::get_if<ConfigNode>(&slot.value)) {
            if (node->slots.empty()) {
                out_ << slot.name << ": " << surface(*node) << ";  // " << prov
                     << " " << node->class_name << "\n";
            } else {
                out_ << slot.name << ": " << surface(*node) << " {  // "
                     << prov << " " << node->class_name << "\n";
                for (const auto& child : node->slots)
                    emit_slot(child, depth + 1);
                indent(depth);
                out_ << "};\n";
            }
            return;
        }
        if (const auto* prim = std::get_if<PrimitiveValue>(&slot.value)) {
            out_ << slot.name << ": " << primitive_literal(*prim) << ";  // "
                 << prov << "\n";
            return;
        }
        const auto& list = std::get<std::vector<ConfigElem>>(slot.value);
        if (list.empty()) {
            out_ << slot.name << " { };  // " << prov << "\n";
            return;
        }
        out_ << slot.name << " {  // " << prov << "\n";
        for (const auto& element : list) {
            if (const auto* node = std::get_if<ConfigNode>(&element)) {
                indent(depth + 1);
                if (node->slots.empty()) {
                    out_ << surface(*node) << ";\n";
                } else {
                    out_ << surface(*node) << " {\n";
                    for (const auto& child : node->slots)
                        emit_slot(child, depth + 2);
                    indent(depth + 1);
                    out_ << "};\n";
                }
            } else {
                indent(depth + 1);
                out_ << primitive_literal(std::get<PrimitiveValue>(element))
                     << ";\n";
            }
        }
        indent(depth);
        out_ << "};\n";
    }

    const Registry& registry_;
    std::ostringstream out_;
};

}  // namespace

std::vector<BindingLine> flatten_bindings(const ConfigNode& root,
                                          const Registry& registry) {
    (void)registry;
    std::vector<BindingLine> out;
    flatten_node(root, root.class_name, out);
    return out;
}

std::string explain_text(const ConfigNode& root, const Registry& registry) {
    return TextWriter(registry).render(root);
}

std::string explain_json(const ConfigNode& root, const Registry& registry) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& line : flatten_bindings(root, registry)) {
        rows.push_back({{"path", line.path},
                        {"value", line.value},
                        {"provenance", line.provenance}});
    }
    return rows.dump(2);
}

std::string registry_text(const Registry& registry) {
    std::ostringstream out;
    for (const auto& cls : registry.classes()) {
        out << "class " << cls.name;
        if (!cls.surface_name.empty()) out << " (" << cls.surface_name << ")";
        if (cls.abstract_base) out << " [abstract]";
        if (!cls.parent.empty()) out << " : " << cls.parent;
        if (cls.name == registry.root_class()) out << " [root]";
        out << "\n";
        for (const auto& slot : cls.slots) {
            out << "    " << slot.name << ": " << slot_kind_name(slot.kind);
            if (slot.kind == SlotKind::Primitive)
                out << " " << primitive_kind_name(slot.primitive_kind);
            else
                out << " " << slot.expected_class;
            if (slot.required) {
                out << " (required)";
            } else {
                out << " =";
                for (std::size_t k = 0; k < slot.defaults.size(); ++k) {
                    if (k) out << " |";
                    out << " " << slot.defaults[k].label();
                }
            }
            out << "\n";
        }
    }
    if (!registry.constraints().empty()) out << "constraints\n";
    for (const auto& c : registry.constraints()) {
        out << "    " << c.id << " on " << c.owner_class << ": "
            << c.description << " [blames " << c.blame_slot << "]\n";
    }
    return std::move(out).str();
}

std::string registry_json(const Registry& registry) {
    nlohmann::json doc;
    doc["root"] = registry.root_class();
    doc["classes"] = nlohmann::json::array();
    for (const auto& cls : registry.classes()) {
        nlohmann::json jcls;
        jcls["name"] = cls.name;
        if (!cls.surface_name.empty()) jcls["identifier"] = cls.surface_name;
        if (!cls.parent.empty()) jcls["parent"] = cls.parent;
        jcls["abstract"] = cls.abstract_base;
        jcls["slots"] = nlohmann::json::array();
        for (const auto& slot : cls.slots) {
            nlohmann::json jslot;
            jslot["name"] = slot.name;
            jslot["kind"] = slot_kind_name(slot.kind);
            if (slot.kind == SlotKind::Primitive)
                jslot["value_kind"] = primitive_kind_name(slot.primitive_kind);
            else
                jslot["expected"] = slot.expected_class;
            jslot["required"] = slot.required;
            auto jdefaults = nlohmann::json::array();
            for (const auto& candidate : slot.defaults)
                jdefaults.push_back(candidate.label());
            jslot["defaults"] = std::move(jdefaults);
            jcls["slots"].push_back(std::move(jslot));
        }
        doc["classes"].push_back(std::move(jcls));
    }
    doc["constraints"] = nlohmann::json::array();
    for (const auto& c : registry.constraints()) {
        doc["constraints"].push_back({{"id", c.id},
                                      {"owner", c.owner_class},
                                      {"blames", c.blame_slot},
                                      {"participants", c.participants},
                                      {"description", c.description}});
    }
    return doc.dump(2);
}

}  // namespace nano
