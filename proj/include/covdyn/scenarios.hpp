#pragma once

#include "covdyn/attractor.hpp"
#include "covdyn/config.hpp"
#include "covdyn/function_model.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace covdyn {

/// A SystemConfig turned into live objects: space, family, tabulated action and point sets.
struct System {
    SystemConfig config;
    std::shared_ptr<const FunctionSpaceModel> functions; ///< set for function spaces
    std::shared_ptr<const Space> space;
    std::optional<AdmissibleFamily> family;
    std::optional<ActionModel> model;
    double snap_tolerance = 0.0;
    std::vector<Testset> declared_testsets;
    PointSet points_sample;
    std::optional<PointSet> expected_attractor;

    const AdmissibleFamily& fam() const { return *family; }
    const ActionModel& act() const { return *model; }
};

/// Builds every object a config describes.
/// Throws SchemaError for inconsistent fields, SnapToleranceExceeded when an image
/// misses the sample by more than the tolerance, and NestingViolation when filter
/// levels are not nested.
System build_system(const SystemConfig& config);

/// parse_config followed by build_system.
System load_system(const std::string& text);

/// Snap tolerance used when none is configured: half the finest covering radius.
double default_snap_tolerance(const SystemConfig& config);

/// Names of the built-in scenarios, in a fixed order.
const std::vector<std::string>& scenario_names();

/// The config of a built-in scenario; throws UnknownScenario.
SystemConfig builtin_config(std::string_view name);

/// Resolves a point reference (label or coordinates) against a space; throws SchemaError.
PointIndex resolve_point(const Space& space, const PointRef& ref, double tolerance);

struct RunOptions {
    std::optional<std::size_t> max_level;  ///< overrides the config budget
    std::optional<std::size_t> resolution;
    std::optional<std::size_t> cap;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> per_level;
};

/// Applies command-line overrides to a config.
SystemConfig with_overrides(SystemConfig config, const RunOptions& options);

struct ScenarioReport {
    std::string name;
    std::size_t resolution = 0;
    std::string budget;
    std::vector<std::string> testsets;
    PointSet candidate;
    std::string candidate_text;
    AttractorVerdict global;
    AttractorVerdict uniform;
    std::string kind;
    std::vector<Verdict> hypotheses; ///< action associativity, H1..H4
    std::vector<Verdict> taxonomy;
    std::vector<Verdict> uniqueness;
    EquivalenceReport equivalence;
    std::vector<Verdict> consistency; ///< implications that must hold on every system
    std::vector<Verdict> measurements; ///< attraction levels, spread bound, omega of the whole space
    std::vector<Verdict> expectations;
    bool expectations_met = false;
};

/// Runs every verification the system supports and compares against its expectations.
ScenarioReport run_scenario(const System& system);

/// Every sampled pair f, g in each bounded testset satisfies
/// |f(z) - g(z)| <= 2 K |z - x1| + 4 delta1, where U_i is the finest covering in which the
/// testset lies in one star, x1 its first constrained argument and delta1 its radius.
Verdict spread_bound(const System& system, const std::vector<Testset>& testsets, double lipschitz);

} // namespace covdyn
