#include "nano/parser.hpp"

#include <optional>

#include "nano/diagnostics.hpp"
#include "nano/lexer.hpp"

namespace nano {

namespace {

const char* lowered_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::Geq: return "geq";
        case TokenKind::Leq: return "leq";
        case TokenKind::Gt: return "gt";
        case TokenKind::Lt: return "lt";
        case TokenKind::Eq: return "eq";
        case TokenKind::Neq: return "neq";
        case TokenKind::Plus: return "plus";
        case TokenKind::Minus: return "minus";
        case TokenKind::Star: return "times";
        case TokenKind::Slash: return "divide";
        default: return nullptr;
    }
}

bool is_comparison(TokenKind kind) {
    switch (kind) {
        case TokenKind::Geq:
        case TokenKind::Leq:
        case TokenKind::Gt:
        case TokenKind::Lt:
        case TokenKind::Eq:
        case TokenKind::Neq:
            return true;
        default:
            return false;
    }
}

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

    AstNode parse_document() {
        AssignmentNode root;
        root.identifier = kRootIdentifier;
        while (!done()) {
            root.values.push_back(parse_statement());
        }
        return AstNode{std::move(root), SourceSpan{1, 1, 0}};
    }

    // A standalone expression; the whole token stream must be consumed.
    AstNode parse_whole_expression() {
        if (done()) {
            error("expected expression");
        }
        AstNode expr = parse_expression();
        if (!done()) {
            error("dangling token after expression");
        }
        return expr;
    }

private:
    const std::vector<Token>& tokens_;
    std::size_t pos_ = 0;

    bool done() const { return pos_ >= tokens_.size(); }
    const Token& peek() const { return tokens_[pos_]; }
    const Token* peek2() const { return pos_ + 1 < tokens_.size() ? &tokens_[pos_ + 1] : nullptr; }
    const Token& advance() { return tokens_[pos_++]; }

    SourceSpan error_span() const {
        if (!done()) return peek().span;
        if (!tokens_.empty()) {
            SourceSpan s = tokens_.back().span;
            s.column += s.length;
            s.length = 0;
            return s;
        }
        return SourceSpan{1, 1, 0};
    }

    [[noreturn]] void error(const std::string& message) const {
        std::string suffix = done() ? " (at end of input)" : "";
        throw CompileError(ErrorKind::Parse, error_span(), message + suffix);
    }

    const Token& expect(TokenKind kind, const std::string& what) {
        if (done() || peek().kind != kind) {
            error("expected " + what);
        }
        return advance();
    }

    // statement := ident ';' | ident ':' value end | ident '{' stmts '}' [';']
    AstNode parse_statement() {
        if (done() || peek().kind != TokenKind::Identifier) {
            error("expected statement (identifier)");
        }
        const Token& ident = advance();
        if (done()) {
            error("expected ':', '{', or ';' after '" + ident.text + "'");
        }
        switch (peek().kind) {
            case TokenKind::Semicolon:
                advance();
                return AstNode{ReferenceNode{ident.text}, ident.span};
            case TokenKind::Colon: {
                advance();
                auto [value, ended_with_brace] = parse_value();
                finish_statement(ended_with_brace);
                AssignmentNode asg;
                asg.identifier = ident.text;
                asg.values.push_back(std::move(value));
                return AstNode{std::move(asg), ident.span};
            }
            case TokenKind::LBrace: {
                AssignmentNode asg;
                asg.identifier = ident.text;
                asg.values = parse_block();
                finish_statement(/*ended_with_brace=*/true);
                return AstNode{std::move(asg), ident.span};
            }
            default:
                error("expected ':', '{', or ';' after '" + ident.text + "'");
        }
    }

    // The terminating semicolon is optional after a closing brace.
    void finish_statement(bool ended_with_brace) {
        if (!done() && peek().kind == TokenKind::Semicolon) {
            advance();
            return;
        }
        if (!ended_with_brace) {
            error("expected ';' to terminate statement");
        }
    }

    std::vector<AstNode> parse_block() {
        const Token& open = expect(TokenKind::LBrace, "'{'");
        std::vector<AstNode> children;
        while (true) {
            if (done()) {
                throw CompileError(ErrorKind::Parse, open.span, "unbalanced braces: '{' is never closed");
            }
            if (peek().kind == TokenKind::RBrace) {
                advance();
                return children;
            }
            children.push_back(parse_statement());
        }
    }

    // value := ident ':' value | ident '{' stmts '}' | expression
    std::pair<AstNode, bool> parse_value() {
        if (done()) {
            error("expected value after ':'");
        }
        if (peek().kind == TokenKind::Identifier && peek2() != nullptr) {
            TokenKind next = peek2()->kind;
            if (next == TokenKind::Colon) {
                const Token& ident = advance();
                advance();  // ':'
                auto [inner, ended_with_brace] = parse_value();
                AssignmentNode asg;
                asg.identifier = ident.text;
                asg.values.push_back(std::move(inner));
                return {AstNode{std::move(asg), ident.span}, ended_with_brace};
            }
            if (next == TokenKind::LBrace) {
                const Token& ident = advance();
                AssignmentNode asg;
                asg.identifier = ident.text;
                asg.values = parse_block();
                return {AstNode{std::move(asg), ident.span}, true};
            }
        }
        return {parse_expression(), false};
    }

    // expression := additive [cmp additive]
    AstNode parse_expression() {
        AstNode lhs = parse_additive();
        if (!done() && is_comparison(peek().kind)) {
            const Token& op = advance();
            AstNode rhs = parse_additive();
            AssignmentNode asg;
            asg.identifier = lowered_name(op.kind);
            asg.values.push_back(std::move(lhs));
            asg.values.push_back(std::move(rhs));
            return AstNode{std::move(asg), op.span};
        }
        return lhs;
    }

    AstNode parse_additive() {
        AstNode lhs = parse_term();
        while (!done() && (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus)) {
            const Token& op = advance();
            AstNode rhs = parse_term();
            AssignmentNode asg;
            asg.identifier = lowered_name(op.kind);
            asg.values.push_back(std::move(lhs));
            asg.values.push_back(std::move(rhs));
            lhs = AstNode{std::move(asg), op.span};
        }
        return lhs;
    }

    AstNode parse_term() {
        AstNode lhs = parse_factor();
        while (!done() && (peek().kind == TokenKind::Star || peek().kind == TokenKind::Slash)) {
            const Token& op = advance();
            AstNode rhs = parse_factor();
            AssignmentNode asg;
            asg.identifier = lowered_name(op.kind);
            asg.values.push_back(std::move(lhs));
            asg.values.push_back(std::move(rhs));
            lhs = AstNode{std::move(asg), op.span};
        }
        return lhs;
    }

    AstNode parse_factor() {
        if (done()) {
            error("expected value");
        }
        const Token& tok = peek();
        switch (tok.kind) {
            case TokenKind::Integer:
                advance();
                return AstNode{PrimitiveNode{tok.int_value}, tok.span};
            case TokenKind::Decimal:
                advance();
                return AstNode{PrimitiveNode{tok.decimal_value}, tok.span};
            case TokenKind::String:
                advance();
                return AstNode{PrimitiveNode{tok.text}, tok.span};
            case TokenKind::Boolean:
                advance();
                return AstNode{PrimitiveNode{tok.bool_value}, tok.span};
            case TokenKind::Identifier:
                advance();
                return AstNode{ReferenceNode{tok.text}, tok.span};
            case TokenKind::LParen: {
                advance();
                AstNode inner = parse_expression();
                expect(TokenKind::RParen, "')'");
                return inner;
            }
            default:
                error(std::string("expected value, found ") + token_kind_name(tok.kind));
        }
    }
};

}  // namespace

AstNode parse(const std::vector<Token>& tokens) {
    Parser parser(tokens);
    return parser.parse_document();
}

AstNode parse_source(std::string_view source) {
    return parse(tokenize(source));
}

AstNode lower_expression(const std::vector<Token>& expression_tokens) {
    Parser parser(expression_tokens);
    return parser.parse_whole_expression();
}

}  // namespace nano
