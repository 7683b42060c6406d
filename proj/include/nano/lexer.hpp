#pragma once

#include <string_view>
#include <vector>

#include "nano/token.hpp"

namespace nano {

/// Splits source text into tokens. Comments (`//` to end of line) and
/// whitespace are skipped; every other character must belong to a token.
/// Throws CompileError(ErrorKind::Lex) on unrecognized characters,
/// malformed numbers, and unterminated strings.
std::vector<Token> tokenize(std::string_view source);

}  // namespace nano
