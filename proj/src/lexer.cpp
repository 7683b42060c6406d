#include "nano/lexer.hpp"

#include <cctype>
#include <charconv>

#include "nano/diagnostics.hpp"

namespace nano {

namespace {

struct Cursor {
    std::string_view src;
    std::size_t pos = 0;
    int line = 1;
    int column = 1;

    bool done() const { return pos >= src.size(); }
    char peek() const { return src[pos]; }
    char peek2() const { return pos + 1 < src.size() ? src[pos + 1] : '\0'; }

    char advance() {
        char c = src[pos++];
        if (c == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        return c;
    }

    SourceSpan here(int length = 1) const { return SourceSpan{line, column, length}; }
};

bool is_identifier_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_identifier_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

[[noreturn]] void lex_error(SourceSpan span, const std::string& message) {
    throw CompileError(ErrorKind::Lex, span, message);
}

Token simple(TokenKind kind, SourceSpan span, std::string text) {
    Token t;
    t.kind = kind;
    t.span = span;
    t.text = std::move(text);
    return t;
}

Token lex_number(Cursor& cur) {
    SourceSpan start = cur.here();
    std::string digits;
    while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        digits.push_back(cur.advance());
    }
    bool is_decimal = false;
    if (!cur.done() && cur.peek() == '.') {
        is_decimal = true;
        digits.push_back(cur.advance());
        if (cur.done() || !std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            start.length = static_cast<int>(digits.size());
            lex_error(start, "malformed number: expected digits after decimal point");
        }
        while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            digits.push_back(cur.advance());
        }
    }
    start.length = static_cast<int>(digits.size());

    Token t;
    t.span = start;
    t.text = digits;
    if (is_decimal) {
        t.kind = TokenKind::Decimal;
        t.decimal_value = std::stod(digits);
    } else {
        t.kind = TokenKind::Integer;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), t.int_value);
        if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
            lex_error(start, "integer literal out of range: " + digits);
        }
    }
    return t;
}

Token lex_string(Cursor& cur) {
    SourceSpan start = cur.here();
    cur.advance();  // opening quote
    std::string content;
    int consumed = 1;
    while (true) {
        if (cur.done() || cur.peek() == '\n') {
            lex_error(start, "unterminated string literal");
        }
        char c = cur.advance();
        ++consumed;
        if (c == '"') break;
        if (c == '\\') {
            if (cur.done() || cur.peek() == '\n') {
                lex_error(start, "unterminated string literal");
            }
            char esc = cur.advance();
            ++consumed;
            switch (esc) {
                case '"': content.push_back('"'); break;
                case '\\': content.push_back('\\'); break;
                case 'n': content.push_back('\n'); break;
                case 't': content.push_back('\t'); break;
                default: {
                    SourceSpan at{cur.line, cur.column - 2, 2};
                    lex_error(at, std::string("unknown escape sequence: \\") + esc);
                }
            }
        } else {
            content.push_back(c);
        }
    }
    start.length = consumed;
    return simple(TokenKind::String, start, std::move(content));
}

Token lex_identifier(Cursor& cur) {
    SourceSpan start = cur.here();
    std::string name;
    while (!cur.done() && is_identifier_char(cur.peek())) {
        name.push_back(cur.advance());
    }
    start.length = static_cast<int>(name.size());
    if (name == "true" || name == "false") {
        Token t = simple(TokenKind::Boolean, start, name);
        t.bool_value = (name == "true");
        return t;
    }
    return simple(TokenKind::Identifier, start, std::move(name));
}

}  // namespace

std::vector<Token> tokenize(std::string_view source) {
    std::vector<Token> tokens;
    Cursor cur{source};

    while (!cur.done()) {
        char c = cur.peek();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            cur.advance();
            continue;
        }
        if (c == '/' && cur.peek2() == '/') {
            while (!cur.done() && cur.peek() != '\n') cur.advance();
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            tokens.push_back(lex_number(cur));
            continue;
        }
        if (c == '"') {
            tokens.push_back(lex_string(cur));
            continue;
        }
        if (is_identifier_start(c)) {
            tokens.push_back(lex_identifier(cur));
            continue;
        }

        SourceSpan span = cur.here();
        switch (c) {
            case ':': cur.advance(); tokens.push_back(simple(TokenKind::Colon, span, ":")); break;
            case ';': cur.advance(); tokens.push_back(simple(TokenKind::Semicolon, span, ";")); break;
            case '{': cur.advance(); tokens.push_back(simple(TokenKind::LBrace, span, "{")); break;
            case '}': cur.advance(); tokens.push_back(simple(TokenKind::RBrace, span, "}")); break;
            case '(': cur.advance(); tokens.push_back(simple(TokenKind::LParen, span, "(")); break;
            case ')': cur.advance(); tokens.push_back(simple(TokenKind::RParen, span, ")")); break;
            case '+': cur.advance(); tokens.push_back(simple(TokenKind::Plus, span, "+")); break;
            case '-': cur.advance(); tokens.push_back(simple(TokenKind::Minus, span, "-")); break;
            case '*': cur.advance(); tokens.push_back(simple(TokenKind::Star, span, "*")); break;
            case '/': cur.advance(); tokens.push_back(simple(TokenKind::Slash, span, "/")); break;
            case '>':
                cur.advance();
                if (!cur.done() && cur.peek() == '=') {
                    cur.advance();
                    span.length = 2;
                    tokens.push_back(simple(TokenKind::Geq, span, ">="));
                } else {
                    tokens.push_back(simple(TokenKind::Gt, span, ">"));
                }
                break;
            case '<':
                cur.advance();
                if (!cur.done() && cur.peek() == '=') {
                    cur.advance();
                    span.length = 2;
                    tokens.push_back(simple(TokenKind::Leq, span, "<="));
                } else {
                    tokens.push_back(simple(TokenKind::Lt, span, "<"));
                }
                break;
            case '=':
                cur.advance();
                if (!cur.done() && cur.peek() == '=') {
                    cur.advance();
                    span.length = 2;
                    tokens.push_back(simple(TokenKind::Eq, span, "=="));
                } else {
                    lex_error(span, "unrecognized character '='; did you mean ':' or '=='?");
                }
                break;
            case '!':
                cur.advance();
                if (!cur.done() && cur.peek() == '=') {
                    cur.advance();
                    span.length = 2;
                    tokens.push_back(simple(TokenKind::Neq, span, "!="));
                } else {
                    lex_error(span, "unrecognized character '!'");
                }
                break;
            default:
                lex_error(span, std::string("unrecognized character '") + c + "'");
        }
    }
    return tokens;
}

const char* token_kind_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::Identifier: return "identifier";
        case TokenKind::Integer: return "integer";
        case TokenKind::Decimal: return "decimal";
        case TokenKind::String: return "string";
        case TokenKind::Boolean: return "boolean";
        case TokenKind::Colon: return "':'";
        case TokenKind::Semicolon: return "';'";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::Geq: return "'>='";
        case TokenKind::Leq: return "'<='";
        case TokenKind::Gt: return "'>'";
        case TokenKind::Lt: return "'<'";
        case TokenKind::Eq: return "'=='";
        case TokenKind::Neq: return "'!='";
        case TokenKind::Plus: return "'+'";
        case TokenKind::Minus: return "'-'";
        case TokenKind::Star: return "'*'";
        case TokenKind::Slash: return "'/'";
    }
    return "token";
}

}  // namespace nano
