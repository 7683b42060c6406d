#include "nano/ast.hpp"

#include <array>
#include <sstream>

#include "nano/value.hpp"

namespace nano {

namespace {

constexpr std::array<const char*, 6> kComparisonNames = {"geq", "leq", "gt", "lt", "eq", "neq"};
constexpr std::array<const char*, 4> kArithmeticNames = {"plus", "minus", "times", "divide"};

const char* operator_symbol(const std::string& name) {
    if (name == "geq") return ">=";
    if (name == "leq") return "<=";
    if (name == "gt") return ">";
    if (name == "lt") return "<";
    if (name == "eq") return "==";
    if (name == "neq") return "!=";
    if (name == "plus") return "+";
    if (name == "minus") return "-";
    if (name == "times") return "*";
    if (name == "divide") return "/";
    return nullptr;
}


std::string escape_string(const std::string& raw) {
    std::string out = "\"";
    for (char c : raw) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

std::string format_primitive(const PrimitiveNode& prim) {
    if (const auto* i = std::get_if<std::int64_t>(&prim.value)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&prim.value)) return decimal_literal(*d);
    if (const auto* s = std::get_if<std::string>(&prim.value)) return escape_string(*s);
    return std::get<bool>(prim.value) ? "true" : "false";
}

// A node printable inside an infix expression: primitives, references,
// and binary operator assignments over the same.
bool expression_like(const AstNode& node) {
    if (node.is_primitive() || node.is_reference()) return true;
    if (!node.is_assignment()) return false;
    const auto& asg = node.as_assignment();
    if (!is_operator_name(asg.identifier) || asg.values.size() != 2) return false;
    return expression_like(asg.values[0]) && expression_like(asg.values[1]);
}

void print_statement(const AstNode& node, std::ostringstream& out, int indent);

void print_indent(std::ostringstream& out, int indent) {
    for (int i = 0; i < indent; ++i) out << "    ";
}

// True when a node can be rendered in value position (after a colon).
bool printable_as_value(const AstNode& node) {
    if (node.is_primitive() || node.is_reference()) return true;
    const auto& asg = node.as_assignment();
    if (is_operator_name(asg.identifier) && asg.values.size() == 2 && expression_like(node)) {
        return true;
    }
    return true;  // assignments render as nested colon or block values
}

void print_value(const AstNode& node, std::ostringstream& out, int indent) {
    if (node.is_primitive()) {
        out << format_primitive(node.as_primitive());
        return;
    }
    if (node.is_reference()) {
        out << node.as_reference().identifier;
        return;
    }
    const auto& asg = node.as_assignment();
    if (is_operator_name(asg.identifier) && asg.values.size() == 2 && expression_like(node)) {
        out << "(";
        print_value(asg.values[0], out, indent);
        out << " " << operator_symbol(asg.identifier) << " ";
        print_value(asg.values[1], out, indent);
        out << ")";
        return;
    }
    if (asg.values.size() == 1 && printable_as_value(asg.values[0])) {
        out << asg.identifier << ": ";
        print_value(asg.values[0], out, indent);
        return;
    }
    out << asg.identifier << " {\n";
    for (const AstNode& child : asg.values) {
        print_statement(child, out, indent + 1);
    }
    print_indent(out, indent);
    out << "}";
}

void print_statement(const AstNode& node, std::ostringstream& out, int indent) {
    print_indent(out, indent);
    if (node.is_reference()) {
        out << node.as_reference().identifier << ";\n";
        return;
    }
    if (node.is_primitive()) {
        out << format_primitive(node.as_primitive()) << ";\n";
        return;
    }
    const auto& asg = node.as_assignment();
    if (asg.values.size() == 1 && printable_as_value(asg.values[0])) {
        out << asg.identifier << ": ";
        print_value(asg.values[0], out, indent);
        out << ";\n";
        return;
    }
    out << asg.identifier << " {\n";
    for (const AstNode& child : asg.values) {
        print_statement(child, out, indent + 1);
    }
    print_indent(out, indent);
    out << "};\n";
}

}  // namespace

bool is_comparison_operator_name(const std::string& name) {
    for (const char* n : kComparisonNames) {
        if (name == n) return true;
    }
    return false;
}

bool is_arithmetic_operator_name(const std::string& name) {
    for (const char* n : kArithmeticNames) {
        if (name == n) return true;
    }
    return false;
}

bool structurally_equal(const AstNode& a, const AstNode& b) {
    if (a.node.index() != b.node.index()) return false;
    if (a.is_primitive()) return a.as_primitive().value == b.as_primitive().value;
    if (a.is_reference()) return a.as_reference().identifier == b.as_reference().identifier;
    const auto& la = a.as_assignment();
    const auto& lb = b.as_assignment();
    if (la.identifier != lb.identifier || la.values.size() != lb.values.size()) return false;
    for (std::size_t i = 0; i < la.values.size(); ++i) {
        if (!structurally_equal(la.values[i], lb.values[i])) return false;
    }
    return true;
}

std::string to_source(const AstNode& root) {
    std::ostringstream out;
    if (root.is_assignment() && root.as_assignment().identifier == kRootIdentifier) {
        for (const AstNode& child : root.as_assignment().values) {
            print_statement(child, out, 0);
        }
    } else {
        print_statement(root, out, 0);
    }
    return out.str();
}

const char* node_kind_name(const AstNode& node) {
    if (node.is_primitive()) return "primitive";
    if (node.is_reference()) return "reference";
    return "assignment";
}

std::size_t node_count(const AstNode& node) {
    std::size_t count = 1;
    if (node.is_assignment()) {
        for (const AstNode& child : node.as_assignment().values) {
            count += node_count(child);
        }
    }
    return count;
}

}  // namespace nano
