#include <doctest.h>

#include <string>
#include <vector>

#include "helpers.hpp"
#include "mini_registry.hpp"
#include "nano/compile.hpp"
#include "nano/parser.hpp"
#include "nano/predicate.hpp"
#include "nano/registry.hpp"
#include "nano/solver.hpp"
#include "nano/translate.hpp"

using nano::BoundSlot;
using nano::ComponentClass;
using nano::ComponentSeed;
using nano::ConfigNode;
using nano::DefaultCandidate;
using nano::PartialConfiguration;
using nano::Predicate;
using nano::PrimitiveValue;
using nano::Provenance;
using nano::Registry;
using nano::SlotKind;
using nano::SlotSpec;
using nano::SolverOutcome;
using nano::TranslationResult;

namespace {

SolverOutcome solve_text(const std::string& source) {
    const TranslationResult translation =
        nano::translate(nano::parse_source(source), testutil::library());
    REQUIRE(nano::check_determination(translation, testutil::library()).empty());
    return nano::interpolate(translation, testutil::library());
}

const ConfigNode& component(const ConfigNode& node, const char* slot) {
    return node.at(slot).as_component();
}

std::string provenance(const ConfigNode& node, const char* slot) {
    return node.at(slot).provenance.render();
}

/// Leaf class vocabulary L1..Ln under abstract base "B", plus a root
/// whose slots the caller provides. For handmade backtracking cases.
Registry custom_library(std::vector<SlotSpec> root_slots,
                        std::vector<nano::Constraint> rules, int leaves = 4) {
    Registry reg;
    ComponentClass base;
    base.name = "B";
    base.abstract_base = true;
    reg.add_class(std::move(base));
    for (int i = 1; i <= leaves; ++i) {
        ComponentClass leaf;
        leaf.name = "L" + std::to_string(i);
        leaf.surface_name = "l" + std::to_string(i);
        leaf.parent = "B";
        reg.add_class(std::move(leaf));
    }
    ComponentClass root;
    root.name = "Root";
    root.slots = std::move(root_slots);
    reg.add_class(std::move(root));
    for (auto& rule : rules) reg.add_constraint(std::move(rule));
    reg.set_root("Root");
    reg.finalize();
    return reg;
}

SlotSpec component_slot(std::string name, std::vector<std::string> defaults,
                        std::vector<std::vector<nano::Constraint>> implied = {}) {
    SlotSpec slot;
    slot.name = std::move(name);
    slot.kind = SlotKind::Component;
    slot.expected_class = "B";
    for (std::size_t i = 0; i < defaults.size(); ++i) {
        DefaultCandidate candidate{ComponentSeed{defaults[i], {}}, {}};
        if (i < implied.size()) candidate.implied = implied[i];
        slot.defaults.push_back(std::move(candidate));
    }
    return slot;
}

/// User bindings for the custom library, written directly in the shape
/// translation produces.
TranslationResult user_bindings(
    std::vector<std::pair<std::string, std::string>> bindings) {
    nano::MapObjectNode root;
    root.class_name = "Root";
    for (auto& [slot, cls] : bindings) {
        nano::ObjectNode value;
        value.node = nano::MapObjectNode{cls, {}};
        root.slots.emplace_back(slot, std::move(value));
    }
    TranslationResult result;
    result.root.node = std::move(root);
    return result;
}

}  // namespace

TEST_CASE("an empty model interpolates every slot from its first defaults") {
    const SolverOutcome outcome = solve_text("");
    REQUIRE(outcome.solved());
    const ConfigNode& project = *outcome.configuration;
    CHECK(project.class_name == "Project");
    REQUIRE(project.slots.size() == 6);

    const ConfigNode& geometry = component(project, "geometry");
    CHECK(geometry.class_name == "RectangularLattice");
    CHECK(provenance(project, "geometry") == "default[0]");
    CHECK(std::get<std::int64_t>(geometry.at("width").as_primitive()) == 32);
    CHECK(std::get<std::int64_t>(geometry.at("height").as_primitive()) == 32);
    CHECK(provenance(geometry, "width") == "default[0]");

    CHECK(component(project, "boundary").class_name == "AbsorbingBoundary");
    CHECK(component(project, "arena").class_name == "RectangularArena");
    CHECK(project.at("initially").as_list().empty());
    REQUIRE(project.at("output").as_list().size() == 1);
    CHECK(std::get<ConfigNode>(project.at("output").as_list()[0]).class_name ==
          "ImageSequence");
    const auto& terminate =
        std::get<Predicate>(project.at("terminate").as_primitive());
    CHECK(nano::eval(terminate, 1e9) == false);
}

TEST_CASE("the one-agent listing interpolates to the documented configuration") {
    const SolverOutcome outcome =
        solve_text(testutil::read_model("single_agent.nano"));
    REQUIRE(outcome.solved());
    const ConfigNode& project = *outcome.configuration;

    CHECK(component(project, "geometry").class_name == "RectangularLattice");
    CHECK(component(project, "boundary").class_name == "AbsorbingBoundary");
    CHECK(component(project, "arena").class_name == "RectangularArena");

    CHECK(provenance(project, "initially") == "user");
    REQUIRE(project.at("initially").as_list().size() == 1);
    const ConfigNode& scatter =
        std::get<ConfigNode>(project.at("initially").as_list()[0]);
    CHECK(scatter.class_name == "Scatter");
    CHECK(std::get<std::int64_t>(scatter.at("count").as_primitive()) == 1);
    CHECK(provenance(scatter, "count") == "default[0]");

    const ConfigNode& agent = component(scatter, "description");
    CHECK(provenance(scatter, "description") == "user");
    REQUIRE(agent.at("do").as_list().size() == 1);
    const ConfigNode& behavior =
        std::get<ConfigNode>(agent.at("do").as_list()[0]);

    const ConfigNode& wander = component(behavior, "action");
    CHECK(wander.class_name == "Wander");
    CHECK(component(wander, "destination").class_name == "VacantNeighbors");
    CHECK(provenance(wander, "destination") == "default[0]");
    CHECK(component(wander, "collision").class_name == "IgnoreOccupied");
    CHECK(provenance(wander, "collision") == "default[0]");

    CHECK(provenance(behavior, "every") == "user");
    CHECK(std::get<double>(behavior.at("every").as_primitive()) ==
          doctest::Approx(1.0));
    CHECK(provenance(behavior, "until") == "user");
    const auto& until = std::get<Predicate>(behavior.at("until").as_primitive());
    CHECK(nano::eval(until, 99.0) == false);
    CHECK(nano::eval(until, 100.0) == true);
}

TEST_CASE("user values out-rank defaults and are never reassigned") {
    const SolverOutcome outcome = solve_text("boundary: periodic;");
    REQUIRE(outcome.solved());
    CHECK(component(*outcome.configuration, "boundary").class_name ==
          "PeriodicBoundary");
    CHECK(provenance(*outcome.configuration, "boundary") == "user");
}

TEST_CASE("identical values with different provenance are distinct configurations") {
    const SolverOutcome defaulted = solve_text("");
    const SolverOutcome chosen = solve_text("boundary: absorbing;");
    REQUIRE(defaulted.solved());
    REQUIRE(chosen.solved());
    CHECK(component(*chosen.configuration, "boundary").class_name ==
          "AbsorbingBoundary");
    CHECK_FALSE(nano::config_equal(*defaulted.configuration,
                                   *chosen.configuration));
}

TEST_CASE("interpolation is deterministic") {
    const SolverOutcome a = solve_text(testutil::read_model("single_agent.nano"));
    const SolverOutcome b = solve_text(testutil::read_model("single_agent.nano"));
    REQUIRE(a.solved());
    REQUIRE(b.solved());
    CHECK(nano::config_equal(*a.configuration, *b.configuration));
}

TEST_CASE("a hexagonal arena forces the lattice off the rectangular default") {
    const SolverOutcome outcome = solve_text("arena: hexagonal;");
    REQUIRE(outcome.solved());
    const ConfigNode& project = *outcome.configuration;
    // The first geometry default is rejected through the lattice/arena
    // rule; the solver backtracks to the second.
    CHECK(component(project, "geometry").class_name == "TriangularLattice");
    CHECK(provenance(project, "geometry") == "default[1]");
    CHECK(component(project, "boundary").class_name == "AbsorbingBoundary");
    CHECK(provenance(project, "boundary") == "default[0]");
    CHECK(component(project, "arena").class_name == "HexagonalArena");
    CHECK(provenance(project, "arena") == "user");

    // The shipped variant binds the boundary explicitly as well; the
    // lattice still backs off to the triangular default.
    const SolverOutcome shipped =
        solve_text(testutil::read_model("hex_arena_absorbing.nano"));
    REQUIRE(shipped.solved());
    CHECK(component(*shipped.configuration, "geometry").class_name ==
          "TriangularLattice");
    CHECK(provenance(*shipped.configuration, "boundary") == "user");
}

TEST_CASE("conflicting user values abort as a hard conflict naming the rule") {
    const SolverOutcome outcome =
        solve_text(testutil::read_model("hex_arena_periodic.nano"));
    REQUIRE_FALSE(outcome.solved());
    REQUIRE(outcome.failure.has_value());
    const nano::UnsolvableInfo& failure = *outcome.failure;
    CHECK(failure.hard_conflict);
    CHECK(failure.slot_path == "Project/boundary");
    REQUIRE(failure.violated_constraints.size() == 1);
    CHECK(failure.violated_constraints[0] == "C1");
    const std::string message = failure.message();
    CHECK(message.find("Unsolvable at 'Project/boundary'") != std::string::npos);
    CHECK(message.find("C1") != std::string::npos);
    CHECK(message.find("hexagonal arena") != std::string::npos);
}

TEST_CASE("a rectangular lattice with a hexagonal arena is a hard conflict") {
    const SolverOutcome outcome =
        solve_text(testutil::read_model("rect_lattice_hex_arena.nano"));
    REQUIRE_FALSE(outcome.solved());
    const nano::UnsolvableInfo& failure = *outcome.failure;
    CHECK(failure.hard_conflict);
    CHECK(failure.slot_path == "Project/arena");
    CHECK(failure.violated_constraints ==
          std::vector<std::string>{"C2"});
}

TEST_CASE("slots are visited in declaration order") {
    const TranslationResult translation =
        nano::translate(nano::parse_source(""), testutil::library());
    CHECK(nano::solve_order(translation.root, testutil::library()) ==
          std::vector<std::string>{"geometry", "boundary", "arena", "initially",
                                   "output", "terminate"});
}

TEST_CASE("exhaustion reports the deepest failing slot, first on ties") {
    // Both choices of u forbid the only candidate of v, so v exhausts
    // twice at the same depth and u exhausts once above; the report must
    // carry v with the first elimination.
    const Registry reg = custom_library(
        {component_slot("u", {"L1", "L2"}), component_slot("v", {"L3"})},
        {nano::forbid_when("R1", "Root", "u", "L1", "v", "L3", "L1 blocks L3"),
         nano::forbid_when("R2", "Root", "u", "L2", "v", "L3", "L2 blocks L3")});
    const SolverOutcome outcome = nano::interpolate(user_bindings({}), reg);
    REQUIRE_FALSE(outcome.solved());
    const nano::UnsolvableInfo& failure = *outcome.failure;
    CHECK_FALSE(failure.hard_conflict);
    CHECK(failure.slot_path == "Root/v");
    REQUIRE(failure.tried.size() == 1);
    CHECK(failure.tried[0].label == "L3");
    CHECK(failure.tried[0].violated == std::vector<std::string>{"R1"});
    CHECK(failure.violated_constraints == std::vector<std::string>{"R1"});
    const std::string message = failure.message();
    CHECK(message.find("Unsolvable at 'Root/v'") != std::string::npos);
    CHECK(message.find("every candidate was rejected") != std::string::npos);
    CHECK(message.find("candidate L3: violated R1") != std::string::npos);
}

TEST_CASE("a failure inside a nested instance outranks its parent slot") {
    // Root.s defaults to class N whose own slot w self-contradicts, so
    // the exhaustion happens two levels down at Root/s/w.
    Registry reg;
    ComponentClass base;
    base.name = "B";
    base.abstract_base = true;
    reg.add_class(std::move(base));
    ComponentClass nested;
    nested.name = "N";
    nested.surface_name = "n";
    nested.parent = "B";
    nested.slots.push_back(component_slot("w", {"N2"}));
    reg.add_class(std::move(nested));
    ComponentClass leaf;
    leaf.name = "N2";
    leaf.surface_name = "n2";
    leaf.parent = "B";
    reg.add_class(std::move(leaf));
    ComponentClass root;
    root.name = "Root";
    root.slots.push_back(component_slot("s", {"N"}));
    reg.add_class(std::move(root));
    reg.add_constraint(
        nano::forbid_when("RX", "N", "w", "N2", "w", "N2", "w rejects itself"));
    reg.set_root("Root");
    reg.finalize();

    const SolverOutcome outcome = nano::interpolate(user_bindings({}), reg);
    REQUIRE_FALSE(outcome.solved());
    CHECK(outcome.failure->slot_path == "Root/s/w");
    CHECK(outcome.failure->violated_constraints ==
          std::vector<std::string>{"RX"});
}

TEST_CASE("an implied constraint is retracted with its candidate") {
    // The first candidate of slot a carries a rule that forbids the only
    // candidate of slot b. The solver must abandon the carrier, not
    // declare the model unsolvable.
    const Registry reg = custom_library(
        {component_slot("a", {"L1", "L2"},
                        {{nano::forbid_when("IA", "Root", "a", "L1", "b", "L3",
                                            "carrier blocks L3")}}),
         component_slot("b", {"L3"})},
        {});
    const SolverOutcome outcome = nano::interpolate(user_bindings({}), reg);
    REQUIRE(outcome.solved());
    const ConfigNode& root = *outcome.configuration;
    CHECK(component(root, "a").class_name == "L2");
    CHECK(provenance(root, "a") == "default[1]");
    CHECK(component(root, "b").class_name == "L3");
    CHECK(provenance(root, "b") == "default[0]");
}

TEST_CASE("an implied rule violated by user values alone is still repairable") {
    // Slots b and c are user-fixed; the first candidate of slot a
    // carries a rule those user values violate. Abandoning the carrier
    // repairs the model, so this must not abort as a hard conflict.
    const Registry reg = custom_library(
        {component_slot("a", {"L1", "L2"},
                        {{nano::forbid_when("IB", "Root", "b", "L3", "c", "L4",
                                            "carrier forbids the user pair")}}),
         component_slot("b", {"L1"}), component_slot("c", {"L1"})},
        {});
    const SolverOutcome outcome =
        nano::interpolate(user_bindings({{"b", "L3"}, {"c", "L4"}}), reg);
    REQUIRE(outcome.solved());
    const ConfigNode& root = *outcome.configuration;
    CHECK(component(root, "a").class_name == "L2");
    CHECK(provenance(root, "b") == "user");
    CHECK(provenance(root, "c") == "user");
}

TEST_CASE("an unconditional rule violated by user values alone aborts") {
    const Registry reg = custom_library(
        {component_slot("x", {"L1"}), component_slot("y", {"L2"})},
        {nano::forbid_when("RH", "Root", "x", "L3", "y", "L4",
                           "x=L3 excludes y=L4")});
    const SolverOutcome outcome =
        nano::interpolate(user_bindings({{"x", "L3"}, {"y", "L4"}}), reg);
    REQUIRE_FALSE(outcome.solved());
    CHECK(outcome.failure->hard_conflict);
    CHECK(outcome.failure->slot_path == "Root/y");
    CHECK(outcome.failure->violated_constraints ==
          std::vector<std::string>{"RH"});
    CHECK(outcome.failure->message() ==
          "Unsolvable at 'Root/y': violated RH (x=L3 excludes y=L4)");
}

TEST_CASE("presets bind nested primitive slots with preset provenance") {
    Registry reg;
    ComponentClass base;
    base.name = "B";
    base.abstract_base = true;
    reg.add_class(std::move(base));
    ComponentClass leaf;
    leaf.name = "L";
    leaf.surface_name = "l";
    leaf.parent = "B";
    SlotSpec n;
    n.name = "n";
    n.kind = SlotKind::Primitive;
    n.primitive_kind = nano::PrimitiveKind::Integer;
    n.defaults.push_back(DefaultCandidate{PrimitiveValue{std::int64_t{1}}, {}});
    leaf.slots.push_back(std::move(n));
    reg.add_class(std::move(leaf));
    ComponentClass root;
    root.name = "Root";
    SlotSpec slot;
    slot.name = "s";
    slot.kind = SlotKind::Component;
    slot.expected_class = "B";
    slot.defaults.push_back(DefaultCandidate{
        ComponentSeed{"L", {{"n", PrimitiveValue{std::int64_t{7}}}}}, {}});
    root.slots.push_back(std::move(slot));
    reg.add_class(std::move(root));
    reg.set_root("Root");
    reg.finalize();

    const SolverOutcome outcome = nano::interpolate(user_bindings({}), reg);
    REQUIRE(outcome.solved());
    const ConfigNode& instance = component(*outcome.configuration, "s");
    CHECK(std::get<std::int64_t>(instance.at("n").as_primitive()) == 7);
    CHECK(instance.at("n").provenance.render() == "preset");
    CHECK(instance.at("n").provenance ==
          nano::ProvenanceTag{Provenance::Preset, -1});
}

TEST_CASE("the shallow candidate gate reports violations without binding") {
    const Registry& reg = testutil::library();
    PartialConfiguration cfg(reg);
    cfg.activate_instance("Project", "Project");
    cfg.bind("Project/arena", "HexagonalArena", true);

    const SlotSpec* boundary =
        reg.require_class("Project").find_slot("boundary");
    REQUIRE(boundary != nullptr);
    REQUIRE(boundary->defaults.size() == 2);

    const nano::CandidateVerdict ok = nano::validate_candidate(
        boundary->defaults[0], cfg, "Project", "boundary");
    CHECK(ok.valid);
    CHECK(ok.violated.empty());

    const nano::CandidateVerdict rejected = nano::validate_candidate(
        boundary->defaults[1], cfg, "Project", "boundary");
    CHECK_FALSE(rejected.valid);
    CHECK(rejected.violated == std::vector<std::string>{"C1"});
    // The candidate itself was bound by the probe, not by the user, so
    // backtracking can still repair it: not a hard conflict.
    CHECK_FALSE(rejected.hard);

    // The probe left no trace.
    CHECK(cfg.binding_count() == 1);
    CHECK_FALSE(cfg.binding("Project/boundary").has_value());
}

TEST_CASE("the working state rolls back bindings and activations together") {
    const Registry& reg = testutil::library();
    PartialConfiguration cfg(reg);
    cfg.activate_instance("Project", "Project");
    const auto mark = cfg.mark();
    cfg.bind("Project/arena", "HexagonalArena", false);
    cfg.bind("Project/boundary", "PeriodicBoundary", false);
    CHECK(cfg.violations().size() == 1);
    CHECK(cfg.violations()[0].rule->id == "C1");
    CHECK_FALSE(cfg.violations()[0].hard);  // participants are not user-bound
    cfg.rollback(mark);
    CHECK(cfg.violations().empty());
    CHECK(cfg.binding_count() == 0);
    CHECK_THROWS_AS(cfg.rollback({5, 5}), std::logic_error);
}

TEST_CASE("interpolation refuses undetermined translations") {
    const TranslationResult missing = nano::translate(
        nano::parse_source("initially: scatter { count: 2; };"),
        testutil::library());
    CHECK_FALSE(
        nano::check_determination(missing, testutil::library()).empty());
    CHECK_THROWS_AS(nano::interpolate(missing, testutil::library()),
                    std::logic_error);

    const TranslationResult doubled = nano::translate(
        nano::parse_source(testutil::read_model("dup_boundary.nano")),
        testutil::library());
    CHECK_THROWS_AS(nano::interpolate(doubled, testutil::library()),
                    std::logic_error);
}

TEST_CASE("the solver matches brute-force enumeration on random libraries") {
    const mini::ComparisonResult result =
        mini::compare_against_brute_force(0xC0FFEEu, 80);
    CHECK(result.cases == 80);
    CHECK_MESSAGE(result.mismatches == 0, result.first_mismatch);
}
