#include "nano/diagnostics.hpp"

#include <sstream>

namespace nano {

std::string render_diagnostic(const Diagnostic& d) {
    std::ostringstream out;
    out << d.slot_path << ": " << d.message << " (" << d.span.line << ":" << d.span.column << ")";
    return out.str();
}

}  // namespace nano
