#include "nano/object_node.hpp"

namespace nano {

const ObjectNode* MapObjectNode::find(const std::string& slot_name) const {
    for (const auto& [name, value] : slots)
        if (name == slot_name) return &value;
    return nullptr;
}

std::size_t object_node_count(const ObjectNode& node) {
    std::size_t total = 1;
    if (node.is_map()) {
        for (const auto& [name, value] : node.as_map().slots)
            total += object_node_count(value);
    } else if (node.is_list()) {
        for (const auto& element : node.as_list().elements)
            total += object_node_count(element);
    }
    return total;
}

bool object_equal(const ObjectNode& a, const ObjectNode& b) {
    if (a.node.index() != b.node.index()) return false;
    if (a.is_primitive()) {
        const auto& pa = a.as_primitive();
        const auto& pb = b.as_primitive();
        return pa.kind == pb.kind && primitive_equal(pa.value, pb.value);
    }
    if (a.is_list()) {
        const auto& la = a.as_list();
        const auto& lb = b.as_list();
        if (la.member_class != lb.member_class) return false;
        if (la.elements.size() != lb.elements.size()) return false;
        for (std::size_t i = 0; i < la.elements.size(); ++i)
            if (!object_equal(la.elements[i], lb.elements[i])) return false;
        return true;
    }
    const auto& ma = a.as_map();
    const auto& mb = b.as_map();
    if (ma.class_name != mb.class_name) return false;
    if (ma.slots.size() != mb.slots.size()) return false;
    for (std::size_t i = 0; i < ma.slots.size(); ++i) {
        if (ma.slots[i].first != mb.slots[i].first) return false;
        if (!object_equal(ma.slots[i].second, mb.slots[i].second)) return false;
    }
    return true;
}

}  // namespace nano
