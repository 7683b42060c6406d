#pragma once

#include <string>
#include <vector>

#include "nano/ast.hpp"
#include "nano/diagnostics.hpp"
#include "nano/object_node.hpp"
#include "nano/registry.hpp"

namespace nano {

/// A slot the source bound more than once. Translation keeps the first
/// binding; the repeat surfaces as an overdetermination diagnostic.
struct DuplicateSlot {
    std::string slot_path;
    SourceSpan span;
};

struct TranslationResult {
    ObjectNode root;
    std::vector<DuplicateSlot> duplicates;
};

/// Depth-first translation of the parse tree through the registry's
/// symbol tables. Throws CompileError (UnknownIdentifier, KindMismatch)
/// at the first node that fails to resolve.
TranslationResult translate(const AstNode& ast_root, const Registry& registry);

/// Resolves one value node's identifier against a resolving table.
/// Throws UnknownIdentifier when no member matches.
const MapIst* resolve(const Rst& rst, const AstNode& node);

/// Overdetermined (duplicate bindings) and Underdetermined (required
/// slots left open) findings, in discovery order. Empty means the tree
/// is ready for interpolation.
std::vector<Diagnostic> check_determination(const TranslationResult& result,
                                            const Registry& registry);

}  // namespace nano
