#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nano/source_span.hpp"

namespace nano {

enum class TokenKind {
    Identifier,
    Integer,
    Decimal,
    String,
    Boolean,
    Colon,
    Semicolon,
    LBrace,
    RBrace,
    LParen,
    RParen,
    // comparison operators
    Geq,
    Leq,
    Gt,
    Lt,
    Eq,
    Neq,
    // arithmetic operators
    Plus,
    Minus,
    Star,
    Slash,
};

struct Token {
    TokenKind kind;
    SourceSpan span;
    std::string text;        // raw text (unescaped content for strings)
    std::int64_t int_value = 0;
    double decimal_value = 0.0;
    bool bool_value = false;
};

const char* token_kind_name(TokenKind kind);

}  // namespace nano
