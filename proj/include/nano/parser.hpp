#pragma once

#include <string_view>
#include <vector>

#include "nano/ast.hpp"
#include "nano/token.hpp"

namespace nano {

/// Parses a token stream into the hidden-root assignment node. Each
/// top-level statement becomes a child of the root. Throws
/// CompileError(ErrorKind::Parse) on malformed input.
AstNode parse(const std::vector<Token>& tokens);

/// Convenience: tokenize + parse.
AstNode parse_source(std::string_view source);

/// Lowers a standalone infix expression to the three core node kinds.
/// `time >= 100.0` becomes AssignmentNode("geq", [Reference(time),
/// Primitive(100.0)]); a lone primitive passes through unchanged.
AstNode lower_expression(const std::vector<Token>& expression_tokens);

}  // namespace nano
