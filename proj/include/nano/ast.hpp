#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "nano/source_span.hpp"

namespace nano {

struct AstNode;

/// Literal leaf. Integer and decimal are distinct classes: the lexeme
/// either has a decimal point or it does not.
struct PrimitiveNode {
    std::variant<std::int64_t, double, std::string, bool> value;
};

/// A bare identifier: `wander;` or an operand such as `time`.
struct ReferenceNode {
    std::string identifier;
};

/// `id: value;` (exactly one value) or `id { ... };` (zero or more
/// children). Lowered operator expressions are also assignments, with the
/// canonical operator name as identifier and the two operands as values.
struct AssignmentNode {
    std::string identifier;
    std::vector<AstNode> values;
};

/// Heterogeneous syntax tree node. After parsing, these three variants
/// are the only node kinds in the tree.
struct AstNode {
    std::variant<PrimitiveNode, ReferenceNode, AssignmentNode> node;
    SourceSpan span;

    bool is_primitive() const { return std::holds_alternative<PrimitiveNode>(node); }
    bool is_reference() const { return std::holds_alternative<ReferenceNode>(node); }
    bool is_assignment() const { return std::holds_alternative<AssignmentNode>(node); }

    const PrimitiveNode& as_primitive() const { return std::get<PrimitiveNode>(node); }
    const ReferenceNode& as_reference() const { return std::get<ReferenceNode>(node); }
    const AssignmentNode& as_assignment() const { return std::get<AssignmentNode>(node); }
    AssignmentNode& as_assignment() { return std::get<AssignmentNode>(node); }
};

/// Identifier of the hidden document root assignment.
inline constexpr const char* kRootIdentifier = "__root__";

/// Canonical names produced by expression lowering.
/// Comparison: geq leq gt lt eq neq; arithmetic: plus minus times divide.
bool is_comparison_operator_name(const std::string& name);
bool is_arithmetic_operator_name(const std::string& name);
inline bool is_operator_name(const std::string& name) {
    return is_comparison_operator_name(name) || is_arithmetic_operator_name(name);
}

/// Span-ignoring structural equality.
bool structurally_equal(const AstNode& a, const AstNode& b);

/// Renders a document root back to Nanosyntax. Re-parsing the result
/// yields a structurally identical tree.
std::string to_source(const AstNode& root);

/// Name of the variant held by a node ("primitive", "reference",
/// "assignment"); used by diagnostics and the closure check.
const char* node_kind_name(const AstNode& node);

/// Total number of nodes in the tree, root included.
std::size_t node_count(const AstNode& node);

}  // namespace nano
