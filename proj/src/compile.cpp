#include "nano/compile.hpp"

#include "nano/parser.hpp"

namespace nano {

CompiledModel compile_source(std::string_view source,
                             const Registry& registry) {
    CompiledModel model;
    model.ast = parse_source(source);
    model.translation = translate(model.ast, registry);
    model.determination = check_determination(model.translation, registry);
    if (model.determination.empty())
        model.outcome = interpolate(model.translation, registry);
    return model;
}

}  // namespace nano
