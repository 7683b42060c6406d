#pragma once

#include <cstddef>

namespace nano {

/// Location of a token or node in the original source text. Lines and
/// columns are 1-based; length is in characters.
struct SourceSpan {
    int line = 1;
    int column = 1;
    int length = 0;

    bool operator==(const SourceSpan&) const = default;
};

}  // namespace nano
