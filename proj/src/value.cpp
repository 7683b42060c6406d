#include "nano/value.hpp"

#include <charconv>
#include <stdexcept>

namespace nano {

namespace {

const char* comparison_symbol(const std::string& name) {
    if (name == "geq") return ">=";
    if (name == "leq") return "<=";
    if (name == "gt") return ">";
    if (name == "lt") return "<";
    if (name == "eq") return "==";
    if (name == "neq") return "!=";
    throw std::logic_error("unknown comparison: " + name);
}

std::string expr_source(const PredExpr& expr) {
    switch (expr.kind) {
        case PredExpr::Kind::Number:
            return decimal_literal(expr.number);
        case PredExpr::Kind::Time:
            return "time";
        case PredExpr::Kind::Binary:
            return "(" + expr_source(*expr.lhs) + " " + std::string(1, expr.op) +
                   " " + expr_source(*expr.rhs) + ")";
    }
    return {};
}

bool expr_equal(const PredExpr& a, const PredExpr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case PredExpr::Kind::Number:
            return a.number == b.number;
        case PredExpr::Kind::Time:
            return true;
        case PredExpr::Kind::Binary:
            return a.op == b.op && expr_equal(*a.lhs, *b.lhs) &&
                   expr_equal(*a.rhs, *b.rhs);
    }
    return false;
}

}  // namespace

PredExpr PredExpr::make_number(double v) {
    PredExpr e;
    e.kind = Kind::Number;
    e.number = v;
    return e;
}

PredExpr PredExpr::make_time() {
    PredExpr e;
    e.kind = Kind::Time;
    return e;
}

PredExpr PredExpr::make_binary(char op, PredExpr l, PredExpr r) {
    PredExpr e;
    e.kind = Kind::Binary;
    e.op = op;
    e.lhs = std::make_shared<PredExpr>(std::move(l));
    e.rhs = std::make_shared<PredExpr>(std::move(r));
    return e;
}

Predicate Predicate::always() {
    Predicate p;
    p.constant = true;
    return p;
}

Predicate Predicate::compare(std::string op, PredExpr l, PredExpr r) {
    Predicate p;
    p.kind = Kind::Compare;
    p.comparison = std::move(op);
    p.lhs = std::move(l);
    p.rhs = std::move(r);
    return p;
}

bool Predicate::operator==(const Predicate& other) const {
    if (kind != other.kind) return false;
    if (kind == Kind::Constant) return constant == other.constant;
    return comparison == other.comparison && expr_equal(lhs, other.lhs) &&
           expr_equal(rhs, other.rhs);
}

double eval(const PredExpr& expr, double time) {
    switch (expr.kind) {
        case PredExpr::Kind::Number:
            return expr.number;
        case PredExpr::Kind::Time:
            return time;
        case PredExpr::Kind::Binary: {
            const double l = eval(*expr.lhs, time);
            const double r = eval(*expr.rhs, time);
            switch (expr.op) {
                case '+': return l + r;
                case '-': return l - r;
                case '*': return l * r;
                case '/': return l / r;
                default: throw std::logic_error("bad arithmetic op");
            }
        }
    }
    return 0.0;
}

bool eval(const Predicate& predicate, double time) {
    if (predicate.kind == Predicate::Kind::Constant) return predicate.constant;
    const double l = eval(predicate.lhs, time);
    const double r = eval(predicate.rhs, time);
    const std::string& op = predicate.comparison;
    if (op == "geq") return l >= r;
    if (op == "leq") return l <= r;
    if (op == "gt") return l > r;
    if (op == "lt") return l < r;
    if (op == "eq") return l == r;
    return l != r;
}

std::string to_source(const Predicate& predicate) {
    if (predicate.kind == Predicate::Kind::Constant)
        return predicate.constant ? "true" : "false";
    return "(" + expr_source(predicate.lhs) + " " +
           comparison_symbol(predicate.comparison) + " " +
           expr_source(predicate.rhs) + ")";
}

const char* primitive_kind_name(PrimitiveKind kind) {
    switch (kind) {
        case PrimitiveKind::Integer: return "integer";
        case PrimitiveKind::Decimal: return "decimal";
        case PrimitiveKind::String: return "string";
        case PrimitiveKind::Boolean: return "boolean";
        case PrimitiveKind::Predicate: return "condition";
    }
    return "?";
}

PrimitiveKind kind_of(const PrimitiveValue& value) {
    switch (value.index()) {
        case 0: return PrimitiveKind::Integer;
        case 1: return PrimitiveKind::Decimal;
        case 2: return PrimitiveKind::String;
        case 3: return PrimitiveKind::Boolean;
        default: return PrimitiveKind::Predicate;
    }
}

std::string decimal_literal(double value) {
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
    std::string s(buf, ptr);
    if (s.find('.') == std::string::npos) s += ".0";
    return s;
}

std::string primitive_literal(const PrimitiveValue& value) {
    if (const auto* i = std::get_if<std::int64_t>(&value))
        return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&value)) return decimal_literal(*d);
    if (const auto* s = std::get_if<std::string>(&value)) {
        std::string out = "\"";
        for (char c : *s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                default: out += c;
            }
        }
        out += '"';
        return out;
    }
    if (const auto* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
    return to_source(std::get<Predicate>(value));
}

bool primitive_equal(const PrimitiveValue& a, const PrimitiveValue& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            return lhs == std::get<T>(b);
        },
        a);
}

}  // namespace nano
