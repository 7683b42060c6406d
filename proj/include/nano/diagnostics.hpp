#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nano/source_span.hpp"

namespace nano {

/// Classification of hard compile-time failures.
enum class ErrorKind {
    Lex,
    Parse,
    UnknownIdentifier,
    KindMismatch,
};

/// Thrown by the front end (lexer, parser, translator) when the input
/// cannot be processed further. Always carries the offending span.
class CompileError : public std::runtime_error {
public:
    CompileError(ErrorKind kind, SourceSpan span, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind), span_(span) {}

    ErrorKind kind() const { return kind_; }
    const SourceSpan& span() const { return span_; }

private:
    ErrorKind kind_;
    SourceSpan span_;
};

/// Determination diagnostics: required slots the user omitted
/// (underdetermined) or slots the user bound more than once
/// (overdetermined).
enum class DiagnosticKind {
    Underdetermined,
    Overdetermined,
};

struct Diagnostic {
    DiagnosticKind kind;
    std::string slot_path;
    std::string message;
    SourceSpan span;
};

/// Renders as "path/to/slot: message (line:col)".
std::string render_diagnostic(const Diagnostic& d);

/// Raised when the component library itself is inconsistent (dangling
/// class references, defaults on required slots, ...). A failed audit is
/// a programming error in the registry, not a user error.
class RegistryAuditError : public std::logic_error {
public:
    explicit RegistryAuditError(const std::string& message)
        : std::logic_error("registry audit: " + message) {}
};

}  // namespace nano
