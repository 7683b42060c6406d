// Command-line front end: exit codes for every failure stage, produced
// artifacts, determinism across runs, and the explain views.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "nano/cli.hpp"
#include "nano/explain.hpp"

#include "helpers.hpp"

using namespace nano;

namespace {

struct CliResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    CliResult result;
    result.exit_code = run_cli(args, out, err);
    result.out = std::move(out).str();
    result.err = std::move(err).str();
    return result;
}

std::string model_path(const std::string& name) {
    return (testutil::models_dir() / name).string();
}

std::vector<std::string> frame_files(const std::filesystem::path& dir) {
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("frame_", 0) == 0) names.push_back(name);
    }
    std::sort(names.begin(), names.end());
    return names;
}

/// All frame bytes in one string, for whole-run comparisons.
std::string frame_stream(const std::filesystem::path& dir) {
    std::string all;
    for (const std::string& name : frame_files(dir)) {
        all += name;
        all += testutil::read_file(dir / name);
    }
    return all;
}

std::filesystem::path write_model(const testutil::TempDir& dir,
                                  const std::string& name,
                                  const std::string& text) {
    const std::filesystem::path path = dir.path() / name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("check verdicts and exit codes across the corpus") {
    SUBCASE("well-formed models pass") {
        for (const std::string name :
             {"empty.nano", "single_agent.nano", "hex_arena_absorbing.nano",
              "triangular_walk.nano", "determinism_small.nano",
              "collision_error.nano", "scatter_overflow.nano",
              "diffusion_100_periodic.nano", "diffusion_100_absorbing.nano"}) {
            CAPTURE(name);
            const CliResult result = cli({"check", model_path(name)});
            CHECK(result.exit_code == 0);
            CHECK(result.err.empty());
            CHECK(result.out == "ok: " + model_path(name) + "\n");
        }
    }
    SUBCASE("source-stage failures exit 1") {
        const CliResult syntax = cli({"check", model_path("bad_syntax.nano")});
        CHECK(syntax.exit_code == 1);
        CHECK(syntax.err.find("error:") != std::string::npos);

        const CliResult unknown =
            cli({"check", model_path("unknown_member.nano")});
        CHECK(unknown.exit_code == 1);
        CHECK(unknown.err.find("octagonal") != std::string::npos);

        const CliResult missing = cli({"check", "no_such_file.nano"});
        CHECK(missing.exit_code == 1);
        CHECK(missing.err.find("cannot read") != std::string::npos);

        // A directory must not pass as an empty (all-defaults) model.
        const CliResult directory = cli({"check", testutil::models_dir().string()});
        CHECK(directory.exit_code == 1);
        CHECK(directory.err.find("cannot read") != std::string::npos);
    }
    SUBCASE("determination failures exit 2") {
        const CliResult over = cli({"check", model_path("dup_boundary.nano")});
        CHECK(over.exit_code == 2);
        CHECK(over.err.find("Project/boundary") != std::string::npos);
        CHECK(over.err.find("3:") != std::string::npos);

        const CliResult under =
            cli({"check", model_path("missing_description.nano")});
        CHECK(under.exit_code == 2);
        CHECK(under.err.find("Project/initially[0]/description") !=
              std::string::npos);
    }
    SUBCASE("unsolvable models exit 3 naming the constraint") {
        const CliResult hex =
            cli({"check", model_path("hex_arena_periodic.nano")});
        CHECK(hex.exit_code == 3);
        CHECK(hex.err.find("C1") != std::string::npos);
        CHECK(hex.err.find("Project/boundary") != std::string::npos);

        const CliResult rect =
            cli({"check", model_path("rect_lattice_hex_arena.nano")});
        CHECK(rect.exit_code == 3);
        CHECK(rect.err.find("C2") != std::string::npos);
        CHECK(rect.err.find("Project/arena") != std::string::npos);
    }
    SUBCASE("structured check output") {
        const CliResult result =
            cli({"check", model_path("single_agent.nano"), "--json"});
        REQUIRE(result.exit_code == 0);
        const auto doc = nlohmann::json::parse(result.out);
        CHECK(doc.at("status") == "ok");
        CHECK(doc.at("bindings").get<int>() > 10);
    }
}

TEST_CASE("usage errors exit 64") {
    CHECK(cli({}).exit_code == 64);
    CHECK(cli({"frobnicate"}).exit_code == 64);
    CHECK(cli({"check"}).exit_code == 64);  // missing the source argument
    CHECK(cli({"run", model_path("empty.nano"), "--bogus"}).exit_code == 64);
    const CliResult help = cli({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("check") != std::string::npos);
}

TEST_CASE("run produces frames and a summary") {
    testutil::TempDir out("run_single");
    const CliResult result =
        cli({"run", model_path("single_agent.nano"), "--seed", "7", "--out",
             out.path().string(), "--json"});
    REQUIRE(result.exit_code == 0);
    REQUIRE(result.err.empty());

    const auto doc = nlohmann::json::parse(result.out);
    CHECK(doc.at("final_time").get<double>() == doctest::Approx(100.0));
    CHECK(doc.at("events_executed").get<int>() == 201);
    CHECK(doc.at("agents_alive").get<int>() == 1);
    CHECK(doc.at("agents_absorbed").get<int>() == 0);

    const auto on_disk = nlohmann::json::parse(
        testutil::read_file(out.path() / "summary.json"));
    CHECK(on_disk == doc);

    const auto frames = frame_files(out.path());
    REQUIRE(frames.size() == 101);
    CHECK(frames.front() == "frame_000000.pgm");
    CHECK(frames.back() == "frame_000100.pgm");
    const std::string first = testutil::read_file(out.path() / frames.front());
    CHECK(first.substr(0, 13) == "P5\n32 32\n255\n");
    CHECK(first.size() == 13 + 32 * 32);
}

TEST_CASE("run respects the time horizon") {
    testutil::TempDir out("run_horizon");
    const CliResult result =
        cli({"run", model_path("single_agent.nano"), "--max-time", "5",
             "--out", out.path().string(), "--json"});
    REQUIRE(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.out);
    CHECK(doc.at("final_time").get<double>() == doctest::Approx(5.0));
    // 1 setup + 5 movements (1..5) + 6 observations (0..5).
    CHECK(doc.at("events_executed").get<int>() == 12);
    CHECK(frame_files(out.path()).size() == 6);
}

TEST_CASE("runtime failures exit 4") {
    testutil::TempDir out("run_fail");
    const CliResult collision =
        cli({"run", model_path("collision_error.nano"), "--out",
             out.path().string()});
    CHECK(collision.exit_code == 4);
    CHECK(collision.err.find("runtime error:") != std::string::npos);
    CHECK(collision.err.find("collision") != std::string::npos);

    const CliResult overflow =
        cli({"run", model_path("scatter_overflow.nano"), "--out",
             out.path().string()});
    CHECK(overflow.exit_code == 4);
    CHECK(overflow.err.find("runtime error:") != std::string::npos);

    testutil::TempDir models("degenerate");
    const auto degenerate = write_model(models, "flat.nano",
                                        "geometry: rectangular {\n"
                                        "    width: 0;\n"
                                        "};\n");
    const CliResult flat =
        cli({"run", degenerate.string(), "--out", out.path().string()});
    CHECK(flat.exit_code == 4);
    CHECK(flat.err.find("runtime error:") != std::string::npos);
    CHECK(flat.err.find("positive") != std::string::npos);
}

TEST_CASE("runs are reproducible per seed and differ across seeds") {
    testutil::TempDir first("det_a");
    testutil::TempDir second("det_b");
    testutil::TempDir third("det_c");
    const std::string model = model_path("determinism_small.nano");

    const CliResult a = cli({"run", model, "--seed", "7", "--out",
                             first.path().string(), "--json"});
    const CliResult b = cli({"run", model, "--seed", "7", "--out",
                             second.path().string(), "--json"});
    const CliResult c = cli({"run", model, "--seed", "8", "--out",
                             third.path().string(), "--json"});
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    REQUIRE(c.exit_code == 0);

    CHECK(a.out == b.out);
    CHECK(testutil::read_file(first.path() / "summary.json") ==
          testutil::read_file(second.path() / "summary.json"));
    CHECK(frame_stream(first.path()) == frame_stream(second.path()));
    CHECK(frame_stream(first.path()) != frame_stream(third.path()));
}

TEST_CASE("the output directory falls back to the environment") {
    testutil::TempDir out("env_out");
    REQUIRE(::setenv("NANOCCS_OUT", out.path().string().c_str(), 1) == 0);
    const CliResult result = cli({"run", model_path("empty.nano")});
    ::unsetenv("NANOCCS_OUT");
    REQUIRE(result.exit_code == 0);
    CHECK(std::filesystem::exists(out.path() / "summary.json"));
    CHECK(frame_files(out.path()).size() == 1);
}

TEST_CASE("explain renders every binding with its provenance") {
    const CliResult result = cli({"explain", model_path("single_agent.nano")});
    REQUIRE(result.exit_code == 0);
    CHECK(result.out.find("// default[0]") != std::string::npos);
    CHECK(result.out.find("until: (time >= 100.0);  // user") !=
          std::string::npos);
    CHECK(result.out.find("geometry: rectangular") != std::string::npos);
    CHECK(result.out.find("width: 32;") != std::string::npos);

    SUBCASE("the rendering is fully explicit: it solves back unchanged") {
        const CompiledModel original =
            testutil::compile_model_file("single_agent.nano");
        REQUIRE(original.solved());
        const CompiledModel reparsed = testutil::compile_text(result.out);
        REQUIRE(reparsed.solved());
        const auto before = flatten_bindings(*original.outcome.configuration,
                                             testutil::library());
        const auto after = flatten_bindings(*reparsed.outcome.configuration,
                                            testutil::library());
        REQUIRE(before.size() == after.size());
        for (std::size_t i = 0; i < before.size(); ++i) {
            CAPTURE(before[i].path);
            CHECK(before[i].path == after[i].path);
            // Provenance flips to user on the round trip; the values
            // must not move.
            CHECK(before[i].value == after[i].value);
        }
    }
}

TEST_CASE("explain emits the flattened json view") {
    const CliResult result =
        cli({"explain", model_path("single_agent.nano"), "--json"});
    REQUIRE(result.exit_code == 0);
    const auto rows = nlohmann::json::parse(result.out);
    REQUIRE(rows.is_array());
    bool saw_geometry = false;
    bool saw_until = false;
    for (const auto& row : rows) {
        if (row.at("path") == "Project/geometry") {
            CHECK(row.at("value") == "RectangularLattice");
            CHECK(row.at("provenance") == "default[0]");
            saw_geometry = true;
        }
        if (row.at("path") ==
            "Project/initially[0]/description/do[0]/until") {
            CHECK(row.at("value") == "(time >= 100.0)");
            CHECK(row.at("provenance") == "user");
            saw_until = true;
        }
    }
    CHECK(saw_geometry);
    CHECK(saw_until);
}

TEST_CASE("explain without a model dumps the component library") {
    const CliResult text = cli({"explain"});
    REQUIRE(text.exit_code == 0);
    CHECK(text.out.find("class Project") != std::string::npos);
    CHECK(text.out.find("C1") != std::string::npos);
    CHECK(text.out.find("constraints") != std::string::npos);

    const CliResult json = cli({"explain", "--json"});
    REQUIRE(json.exit_code == 0);
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc.at("root") == "Project");
    // All classes appear, abstract bases included.
    CHECK(doc.at("classes").size() == 25);
    CHECK(doc.at("constraints").size() == 3);
}

TEST_CASE("explain surfaces compile failures with the same exit codes") {
    CHECK(cli({"explain", model_path("bad_syntax.nano")}).exit_code == 1);
    CHECK(cli({"explain", model_path("dup_boundary.nano")}).exit_code == 2);
    CHECK(cli({"explain", model_path("hex_arena_periodic.nano")}).exit_code ==
          3);
}

TEST_CASE("explain of a defaulted model stays fully explicit") {
    const CliResult result = cli({"explain", model_path("empty.nano")});
    REQUIRE(result.exit_code == 0);
    // Every root slot appears even though the source bound none.
    for (const std::string needle :
         {"geometry: rectangular", "boundary: absorbing",
          "arena: rectangular", "initially", "output", "terminate: false"}) {
        CAPTURE(needle);
        CHECK(result.out.find(needle) != std::string::npos);
    }
    const CompiledModel reparsed = testutil::compile_text(result.out);
    CHECK(reparsed.solved());
}
