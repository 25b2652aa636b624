#pragma once

#include "covdyn/dynamics.hpp"
#include "covdyn/function_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace covdyn {

/// A point named by its label or by its coordinates.
using PointRef = std::variant<std::string, std::vector<double>>;

struct FunctionEntry {
    std::string label; ///< empty: the formatted values
    std::vector<double> values;
    friend bool operator==(const FunctionEntry&, const FunctionEntry&) = default;
};

struct SpaceConfig {
    std::string kind = "grid"; ///< grid | points | functions | finite
    // grid: start + (stop - start) i / intervals, intervals = round((stop - start) / step)
    double start = 0.0, stop = 1.0, step = 0.01;
    // points
    std::string metric = "euclidean"; ///< euclidean | sup
    std::vector<std::vector<double>> coords;
    // functions
    std::vector<std::vector<double>> arguments;
    std::size_t value_dim = 1;
    std::vector<FunctionEntry> functions;
    // finite
    std::vector<std::string> labels;
    std::vector<std::vector<std::string>> opens;
    friend bool operator==(const SpaceConfig&, const SpaceConfig&) = default;
};

struct LevelConfig {
    std::vector<std::size_t> args;
    double eps = 1.0;
    friend bool operator==(const LevelConfig&, const LevelConfig&) = default;
};

struct FamilyConfig {
    std::string kind = "metric-chain"; ///< metric-chain | pointwise | finite-all
    double eps0 = 1.0;
    std::size_t depth = 3;
    std::vector<LevelConfig> levels;
    friend bool operator==(const FamilyConfig&, const FamilyConfig&) = default;
};

struct SemigroupConfig {
    std::string kind = "nat-add"; ///< nat-add | nat-mul | real-vector-add | scalar-mul
    std::size_t dim = 1;
    friend bool operator==(const SemigroupConfig&, const SemigroupConfig&) = default;
};

struct FilterConfig {
    std::string kind = "add-tails"; ///< add-tails | mul-tails | coordinate-tails | power-levels | explicit
    std::size_t dim = 1;
    double contraction = 0.5;
    std::vector<double> bases;
    std::vector<std::vector<Element>> levels;
    friend bool operator==(const FilterConfig&, const FilterConfig&) = default;
};

struct ActionConfig {
    std::string kind = "identity"; ///< identity | scale-power | iterate | compose-linear
    double base = 0.5;
    double x0 = 0.0;
    std::vector<double> args;
    friend bool operator==(const ActionConfig&, const ActionConfig&) = default;
};

struct TestsetConfig {
    std::string name;
    bool all = false;                   ///< the whole space
    std::vector<PointRef> points;       ///< explicit members
    std::optional<PointRef> star_center; ///< St[center, U_star_level]
    std::size_t star_level = 0;
    friend bool operator==(const TestsetConfig&, const TestsetConfig&) = default;
};

struct SampleConfig {
    bool all = true;
    std::vector<PointRef> points;
    std::optional<double> max_abs; ///< every coordinate of magnitude at most this
    friend bool operator==(const SampleConfig&, const SampleConfig&) = default;
};

struct ExpectationsConfig {
    std::vector<PointRef> attractor;               ///< empty: use the constructed candidate
    std::string kind;                              ///< both | global-uniform-only | ...; empty: no expectation
    std::vector<std::string> failing_hypotheses;   ///< hypothesis checks expected to fail (e.g. H3)
    std::vector<std::string> failing_taxonomy;     ///< taxonomy checks expected to fail
    std::vector<std::string> converse_hypotheses;  ///< hypotheses the converse direction relies on
    std::optional<Element> eventual_compactness;   ///< declared witness t
    std::optional<std::size_t> attraction_index;   ///< covering index whose attraction level is bounded
    std::optional<std::size_t> attraction_level_max;
    std::optional<double> spread_lipschitz;        ///< assert the bounded-testset spread bound with this K
    friend bool operator==(const ExpectationsConfig&, const ExpectationsConfig&) = default;
};

struct BudgetConfig {
    std::size_t per_level = 32;
    std::size_t max_level = 12;
    std::optional<double> snap_tolerance; ///< default: half the finest star radius
    std::size_t assoc_samples = 6;
    std::size_t cap = 0;                  ///< 0: default cap
    std::size_t random_testsets = 50;
    std::uint64_t seed = 0;
    std::size_t draws_per_level = 4;
    std::optional<std::size_t> resolution;
    std::optional<std::size_t> perturb_depth;
    friend bool operator==(const BudgetConfig&, const BudgetConfig&) = default;
};

/// Plain description of a system; every built-in scenario is one of these.
struct SystemConfig {
    std::string name;
    std::string description;
    SpaceConfig space;
    FamilyConfig family;
    SemigroupConfig semigroup;
    FilterConfig filter;
    ActionConfig action;
    std::vector<TestsetConfig> testsets;
    SampleConfig points_sample;
    ExpectationsConfig expectations;
    BudgetConfig budget;
    friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

/// Parses the JSON config format; throws SchemaError with the offending path.
SystemConfig parse_config(const std::string& text);
SystemConfig read_config_file(const std::string& path);

/// Canonical JSON text (two-space indent, fixed key order); parse_config inverts it.
std::string dump_config(const SystemConfig& config);

std::string format_point_ref(const PointRef& ref);

} // namespace covdyn
