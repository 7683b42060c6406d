#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nano/source_span.hpp"
#include "nano/value.hpp"

namespace nano {

struct ObjectNode;

/// A component instance under construction: class name plus the slots the
/// source actually specified, in source order. Duplicate bindings are not
/// stored here; translation keeps the first and records the repeat.
struct MapObjectNode {
    std::string class_name;
    std::vector<std::pair<std::string, ObjectNode>> slots;

    const ObjectNode* find(const std::string& slot_name) const;
};

struct ListObjectNode {
    std::string member_class;
    std::vector<ObjectNode> elements;
};

struct PrimitiveObjectNode {
    PrimitiveKind kind = PrimitiveKind::Integer;
    PrimitiveValue value;
};

/// Typed object tree produced by translation. Every class name is
/// resolvable in the registry that produced it.
struct ObjectNode {
    std::variant<MapObjectNode, ListObjectNode, PrimitiveObjectNode> node;
    SourceSpan span;

    bool is_map() const { return std::holds_alternative<MapObjectNode>(node); }
    bool is_list() const { return std::holds_alternative<ListObjectNode>(node); }
    bool is_primitive() const {
        return std::holds_alternative<PrimitiveObjectNode>(node);
    }
    MapObjectNode& as_map() { return std::get<MapObjectNode>(node); }
    const MapObjectNode& as_map() const { return std::get<MapObjectNode>(node); }
    ListObjectNode& as_list() { return std::get<ListObjectNode>(node); }
    const ListObjectNode& as_list() const {
        return std::get<ListObjectNode>(node);
    }
    const PrimitiveObjectNode& as_primitive() const {
        return std::get<PrimitiveObjectNode>(node);
    }
};

std::size_t object_node_count(const ObjectNode& node);

/// Structural equality ignoring spans.
bool object_equal(const ObjectNode& a, const ObjectNode& b);

}  // namespace nano
