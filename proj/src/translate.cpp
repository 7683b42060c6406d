#include "nano/translate.hpp"

#include <stdexcept>

namespace nano {

namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& message,
                       SourceSpan span) {
    throw CompileError(kind, span, message);
}

char arithmetic_op_char(const std::string& name) {
    if (name == "plus") return '+';
    if (name == "minus") return '-';
    if (name == "times") return '*';
    return '/';
}

PredExpr to_pred_expr(const AstNode& node) {
    if (node.is_primitive()) {
        const auto& prim = node.as_primitive();
        if (const auto* i = std::get_if<std::int64_t>(&prim.value))
            return PredExpr::make_number(static_cast<double>(*i));
        if (const auto* d = std::get_if<double>(&prim.value))
            return PredExpr::make_number(*d);
        fail(ErrorKind::KindMismatch, "conditions compare numbers", node.span);
    }
    if (node.is_reference()) {
        const auto& name = node.as_reference().identifier;
        if (name == "time") return PredExpr::make_time();
        fail(ErrorKind::UnknownIdentifier,
             "only 'time' may appear in a condition, found '" + name + "'",
             node.span);
    }
    const auto& asg = node.as_assignment();
    if (is_arithmetic_operator_name(asg.identifier) && asg.values.size() == 2)
        return PredExpr::make_binary(arithmetic_op_char(asg.identifier),
                                     to_pred_expr(asg.values[0]),
                                     to_pred_expr(asg.values[1]));
    fail(ErrorKind::KindMismatch, "conditions compare numbers", node.span);
}

Predicate to_predicate(const AstNode& node) {
    if (node.is_primitive()) {
        const auto& prim = node.as_primitive();
        if (const auto* b = std::get_if<bool>(&prim.value))
            return *b ? Predicate::always() : Predicate::never();
        fail(ErrorKind::KindMismatch,
             "a condition is a boolean or a comparison", node.span);
    }
    if (node.is_assignment()) {
        const auto& asg = node.as_assignment();
        if (is_comparison_operator_name(asg.identifier) &&
            asg.values.size() == 2) {
            return Predicate::compare(asg.identifier,
                                      to_pred_expr(asg.values[0]),
                                      to_pred_expr(asg.values[1]));
        }
    }
    fail(ErrorKind::KindMismatch, "a condition is a boolean or a comparison",
         node.span);
}

class Translator {
public:
    Translator(const Registry& registry) : registry_(registry) {}

    TranslationResult run(const AstNode& ast_root) {
        TranslationResult result;
        const auto& root_asg = ast_root.as_assignment();
        result.root = translate_map(registry_.root_ist(), root_asg.values,
                                    ast_root.span, registry_.root_class());
        result.duplicates = std::move(duplicates_);
        return result;
    }

private:
    ObjectNode translate_map(const MapIst& ist,
                             const std::vector<AstNode>& children,
                             SourceSpan span, const std::string& path) {
        MapObjectNode map;
        map.class_name = ist.component->name;
        for (const AstNode& child : children) {
            if (child.is_primitive())
                fail(ErrorKind::KindMismatch,
                     "expected a slot binding inside " + ist.component->name,
                     child.span);
            const std::string& name = child.is_reference()
                                          ? child.as_reference().identifier
                                          : child.as_assignment().identifier;
            const SlotTable* slot = ist.find(name);
            if (!slot) {
                fail(ErrorKind::UnknownIdentifier,
                     "'" + name + "' is not a slot of " + ist.component->name,
                     child.span);
            }
            if (child.is_reference())
                fail(ErrorKind::KindMismatch,
                     "slot '" + name + "' needs a value", child.span);
            const std::string slot_path = path + "/" + name;
            if (map.find(name)) {
                duplicates_.push_back(DuplicateSlot{slot_path, child.span});
                continue;
            }
            map.slots.emplace_back(
                name, translate_slot(*slot, child.as_assignment(), child.span,
                                     slot_path));
        }
        ObjectNode node;
        node.node = std::move(map);
        node.span = span;
        return node;
    }

    ObjectNode translate_slot(const SlotTable& slot, const AssignmentNode& asg,
                              SourceSpan span, const std::string& path) {
        if (const auto* rst = std::get_if<Rst>(&slot.table)) {
            if (asg.values.size() != 1)
                fail(ErrorKind::KindMismatch,
                     "slot '" + slot.spec->name + "' takes exactly one value",
                     span);
            return translate_component(*rst, asg.values[0], path);
        }
        if (const auto* list = std::get_if<ListIst>(&slot.table)) {
            ListObjectNode out;
            out.member_class = list->member_class;
            std::size_t index = 0;
            for (const AstNode& element : asg.values) {
                const std::string element_path =
                    path + "[" + std::to_string(index++) + "]";
                if (const auto* member_rst = std::get_if<Rst>(&list->member)) {
                    out.elements.push_back(
                        translate_component(*member_rst, element, element_path));
                } else {
                    const auto& prim =
                        std::get<PrimitiveInstantiator>(list->member);
                    out.elements.push_back(translate_primitive(prim, element));
                }
            }
            ObjectNode node;
            node.node = std::move(out);
            node.span = span;
            return node;
        }
        const auto& prim = std::get<PrimitiveInstantiator>(slot.table);
        if (asg.values.size() != 1)
            fail(ErrorKind::KindMismatch,
                 "slot '" + slot.spec->name + "' takes exactly one value",
                 span);
        return translate_primitive(prim, asg.values[0]);
    }

    ObjectNode translate_component(const Rst& rst, const AstNode& value,
                                   const std::string& path) {
        const MapIst* ist = resolve(rst, value);
        const std::vector<AstNode> no_children;
        const auto& children =
            value.is_assignment() ? value.as_assignment().values : no_children;
        return translate_map(*ist, children, value.span, path);
    }

    ObjectNode translate_primitive(const PrimitiveInstantiator& prim,
                                   const AstNode& value) {
        PrimitiveObjectNode out;
        out.kind = prim.kind;
        if (prim.kind == PrimitiveKind::Predicate) {
            out.value = to_predicate(value);
        } else {
            if (!value.is_primitive())
                fail(ErrorKind::KindMismatch,
                     std::string("expected a ") + primitive_kind_name(prim.kind),
                     value.span);
            const auto& literal = value.as_primitive().value;
            switch (prim.kind) {
                case PrimitiveKind::Integer:
                    if (const auto* i = std::get_if<std::int64_t>(&literal)) {
                        out.value = *i;
                    } else {
                        fail(ErrorKind::KindMismatch,
                             "expected an integer", value.span);
                    }
                    break;
                case PrimitiveKind::Decimal:
                    // Integer literals widen losslessly into decimal slots.
                    if (const auto* d = std::get_if<double>(&literal)) {
                        out.value = *d;
                    } else if (const auto* i =
                                   std::get_if<std::int64_t>(&literal)) {
                        out.value = static_cast<double>(*i);
                    } else {
                        fail(ErrorKind::KindMismatch, "expected a decimal",
                             value.span);
                    }
                    break;
                case PrimitiveKind::String:
                    if (const auto* s = std::get_if<std::string>(&literal)) {
                        out.value = *s;
                    } else {
                        fail(ErrorKind::KindMismatch, "expected a string",
                             value.span);
                    }
                    break;
                case PrimitiveKind::Boolean:
                    if (const auto* b = std::get_if<bool>(&literal)) {
                        out.value = *b;
                    } else {
                        fail(ErrorKind::KindMismatch, "expected a boolean",
                             value.span);
                    }
                    break;
                case PrimitiveKind::Predicate:
                    break;
            }
        }
        ObjectNode node;
        node.node = std::move(out);
        node.span = value.span;
        return node;
    }

    const Registry& registry_;
    std::vector<DuplicateSlot> duplicates_;
};

void collect_underdetermined(const ObjectNode& node, const std::string& path,
                             const Registry& registry,
                             std::vector<Diagnostic>& out) {
    if (node.is_map()) {
        const auto& map = node.as_map();
        const ComponentClass& cls = registry.require_class(map.class_name);
        for (const auto& slot : cls.slots) {
            if (slot.required && !map.find(slot.name)) {
                out.push_back(Diagnostic{
                    DiagnosticKind::Underdetermined, path + "/" + slot.name,
                    "required slot '" + slot.name + "' of " + cls.name +
                        " is not bound",
                    node.span});
            }
        }
        for (const auto& [name, value] : map.slots)
            collect_underdetermined(value, path + "/" + name, registry, out);
    } else if (node.is_list()) {
        const auto& list = node.as_list();
        for (std::size_t i = 0; i < list.elements.size(); ++i)
            collect_underdetermined(list.elements[i],
                                    path + "[" + std::to_string(i) + "]",
                                    registry, out);
    }
}

}  // namespace

const MapIst* resolve(const Rst& rst, const AstNode& node) {
    if (node.is_primitive())
        fail(ErrorKind::KindMismatch,
             "expected a component where " + rst.expected_class + " fits",
             node.span);
    const std::string& identifier = node.is_reference()
                                        ? node.as_reference().identifier
                                        : node.as_assignment().identifier;
    const MapIst* ist = rst.find(identifier);
    if (!ist)
        fail(ErrorKind::UnknownIdentifier,
             "'" + identifier + "' does not name a " + rst.expected_class,
             node.span);
    return ist;
}

TranslationResult translate(const AstNode& ast_root, const Registry& registry) {
    if (!registry.finalized())
        throw RegistryAuditError("translate needs a finalized registry");
    if (!ast_root.is_assignment() ||
        ast_root.as_assignment().identifier != kRootIdentifier)
        throw std::logic_error("translate expects the document root");
    return Translator(registry).run(ast_root);
}

std::vector<Diagnostic> check_determination(const TranslationResult& result,
                                            const Registry& registry) {
    std::vector<Diagnostic> out;
    for (const auto& dup : result.duplicates) {
        out.push_back(Diagnostic{DiagnosticKind::Overdetermined, dup.slot_path,
                                 "slot is bound more than once", dup.span});
    }
    collect_underdetermined(result.root, registry.root_class(), registry, out);
    return out;
}

}  // namespace nano
