#pragma once

#include <string>
#include <vector>

#include "nano/registry.hpp"
#include "nano/solver.hpp"

namespace nano {

/// One row of the flattened configuration: a slot path, the rendering of
/// its value (class name, literal, or element roster), and where the
/// binding came from.
struct BindingLine {
    std::string path;
    std::string value;
    std::string provenance;

    bool operator==(const BindingLine&) const = default;
};

std::vector<BindingLine> flatten_bindings(const ConfigNode& root,
                                          const Registry& registry);

/// Renders the solved configuration as fully explicit source, one slot
/// per binding, with the provenance of each in a trailing comment. The
/// output parses, translates and solves back to the same bindings.
std::string explain_text(const ConfigNode& root, const Registry& registry);

/// The same flattened view as a JSON array of
/// {"path", "value", "provenance"} objects.
std::string explain_json(const ConfigNode& root, const Registry& registry);

/// Human-readable dump of the component library itself: classes, slots,
/// default sequences, constraints.
std::string registry_text(const Registry& registry);
std::string registry_json(const Registry& registry);

}  // namespace nano
