#pragma once

#include <string_view>
#include <vector>

#include "nano/ast.hpp"
#include "nano/diagnostics.hpp"
#include "nano/solver.hpp"
#include "nano/translate.hpp"

namespace nano {

/// Everything the pipeline produced for one source text. Stage errors
/// before translation throw CompileError; later stages report through
/// determination (non-empty) or outcome.failure.
struct CompiledModel {
    AstNode ast;
    TranslationResult translation;
    std::vector<Diagnostic> determination;
    SolverOutcome outcome;

    bool solved() const {
        return determination.empty() && outcome.solved();
    }
};

CompiledModel compile_source(std::string_view source, const Registry& registry);

}  // namespace nano
