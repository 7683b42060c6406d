#include "nano/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "nano/compile.hpp"
#include "nano/explain.hpp"
#include "nano/output.hpp"
#include "nano/registry.hpp"
#include "nano/world.hpp"

namespace nano {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSource = 1;
constexpr int kExitDetermination = 2;
constexpr int kExitUnsolvable = 3;
constexpr int kExitRuntime = 4;
constexpr int kExitUsage = 64;

struct Options {
    std::string source;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    double max_time = 1000.0;
    bool json = false;
};

std::optional<std::string> read_file(const std::string& path) {
    // Directories open as empty streams on some platforms; reject anything
    // that is not a readable regular file instead of compiling "".
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) return std::nullopt;
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

/// Runs the pipeline and reports any failure. Returns kExitOk with a
/// solved model, or the exit code after printing why.
int compile_step(const Options& opt, const Registry& registry,
                 std::ostream& err, CompiledModel& model) {
    const auto source = read_file(opt.source);
    if (!source) {
        err << "error: cannot read '" << opt.source << "'\n";
        return kExitSource;
    }
    try {
        model = compile_source(*source, registry);
    } catch (const CompileError& e) {
        err << "error: " << e.what() << " (" << e.span().line << ":"
            << e.span().column << ")\n";
        return kExitSource;
    }
    if (!model.determination.empty()) {
        for (const Diagnostic& d : model.determination)
            err << render_diagnostic(d) << "\n";
        return kExitDetermination;
    }
    if (!model.outcome.solved()) {
        err << model.outcome.failure->message() << "\n";
        return kExitUnsolvable;
    }
    return kExitOk;
}

int do_check(const Options& opt, const Registry& registry, std::ostream& out,
             std::ostream& err) {
    CompiledModel model;
    const int rc = compile_step(opt, registry, err, model);
    if (rc != kExitOk) return rc;
    if (opt.json) {
        nlohmann::json doc;
        doc["status"] = "ok";
        doc["source"] = opt.source;
        doc["bindings"] = flatten_bindings(*model.outcome.configuration,
                                           registry)
                              .size();
        out << doc.dump(2) << "\n";
    } else {
        out << "ok: " << opt.source << "\n";
    }
    return kExitOk;
}

int do_explain(const Options& opt, const Registry& registry, std::ostream& out,
               std::ostream& err) {
    if (opt.source.empty()) {
        // Without a model the subject is the component library itself.
        out << (opt.json ? registry_json(registry) : registry_text(registry));
        if (opt.json) out << "\n";
        return kExitOk;
    }
    CompiledModel model;
    const int rc = compile_step(opt, registry, err, model);
    if (rc != kExitOk) return rc;
    const ConfigNode& solved = *model.outcome.configuration;
    if (opt.json) {
        out << explain_json(solved, registry) << "\n";
    } else {
        out << explain_text(solved, registry);
    }
    return kExitOk;
}

int do_run(const Options& opt, const Registry& registry, std::ostream& out,
           std::ostream& err) {
    CompiledModel model;
    const int rc = compile_step(opt, registry, err, model);
    if (rc != kExitOk) return rc;
    try {
        World world =
            World::instantiate(*model.outcome.configuration, opt.seed);
        const std::filesystem::path out_dir(opt.out_dir);
        std::filesystem::create_directories(out_dir);
        std::optional<PgmDirectorySink> frames;
        if (world.frames_enabled()) {
            frames.emplace(out_dir,
                           static_cast<int>(world.prototype_count()));
            world.add_sink(&*frames);
        }
        for (;;) {
            const auto next = world.schedule().next_time();
            if (!next || *next > opt.max_time) break;
            const StepResult result = world.step();
            if (result.status != StepStatus::Advanced) break;
        }
        RunSummary summary;
        summary.final_time = world.schedule().clock();
        summary.events_executed = world.stats().events_executed;
        summary.agents_alive = world.alive_count();
        summary.agents_absorbed = world.stats().agents_absorbed;
        std::ofstream summary_file(out_dir / "summary.json");
        summary_file << summary_json(summary) << "\n";
        if (opt.json) {
            out << summary_json(summary) << "\n";
        } else {
            out << summary_text(summary);
        }
        return kExitOk;
    } catch (const CollisionError& e) {
        err << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const ScatterOverflow& e) {
        err << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::invalid_argument& e) {
        // E.g. a lattice declared with degenerate extents (`width: 0;`):
        // syntactically fine, rejected when the world is built.
        err << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"nanoccs: check, explain and run declarative agent models"};
    app.require_subcommand(1);

    Options check_opt;
    Options explain_opt;
    Options run_opt;

    CLI::App* check =
        app.add_subcommand("check", "compile a model and report the verdict");
    check->add_option("source", check_opt.source, "model source file")
        ->required();
    check->add_flag("--json", check_opt.json, "structured output");

    CLI::App* explain = app.add_subcommand(
        "explain",
        "print the fully explicit model; without a file, the library");
    explain->add_option("source", explain_opt.source, "model source file");
    explain->add_flag("--json", explain_opt.json, "structured output");

    CLI::App* run = app.add_subcommand("run", "simulate a model");
    run->add_option("source", run_opt.source, "model source file")->required();
    run->add_option("--seed", run_opt.seed, "random stream key");
    run->add_option("--out", run_opt.out_dir, "output directory")
        ->envname("NANOCCS_OUT");
    run->add_option("--max-time", run_opt.max_time,
                    "stop before events beyond this time");
    run->add_flag("--json", run_opt.json, "structured output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    const Registry registry = seed_registry();
    if (check->parsed()) return do_check(check_opt, registry, out, err);
    if (explain->parsed()) return do_explain(explain_opt, registry, out, err);
    return do_run(run_opt, registry, out, err);
}

}  // namespace nano
