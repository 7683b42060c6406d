#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "nano/predicate.hpp"

namespace nano {

/// Atomic value categories a slot may hold.
enum class PrimitiveKind { Integer, Decimal, String, Boolean, Predicate };

const char* primitive_kind_name(PrimitiveKind kind);

using PrimitiveValue =
    std::variant<std::int64_t, double, std::string, bool, Predicate>;

PrimitiveKind kind_of(const PrimitiveValue& value);

/// Decimal rendering that round-trips through the lexer: fixed notation,
/// always with a fractional part ("1.0", not "1").
std::string decimal_literal(double value);

/// Renders the value exactly as it would appear in source. Strings keep
/// their quotes, predicates render as expressions.
std::string primitive_literal(const PrimitiveValue& value);

bool primitive_equal(const PrimitiveValue& a, const PrimitiveValue& b);

}  // namespace nano
