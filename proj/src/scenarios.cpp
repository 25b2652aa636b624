#include "covdyn/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace covdyn {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(Errc::SchemaError, what); }

std::vector<std::vector<double>> grid_coords(const SpaceConfig& c)
{
    const double span = c.stop - c.start;
    const auto intervals = static_cast<std::size_t>(std::llround(span / c.step));
    if (intervals == 0 || intervals > 100'000) schema_error("space: grid must have between 1 and 100000 intervals");
    std::vector<std::vector<double>> out;
    out.reserve(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i)
        out.push_back({c.start + span * static_cast<double>(i) / static_cast<double>(intervals)});
    return out;
}

std::shared_ptr<const FunctionSpaceModel> build_functions(const SpaceConfig& c)
{
    if (c.functions.empty()) schema_error("space: a function space needs functions");
    std::vector<std::vector<double>> values;
    std::vector<std::string> labels;
    for (const auto& f : c.functions) {
        values.push_back(f.values);
        labels.push_back(f.label.empty() ? format_coords(f.values) : f.label);
    }
    try {
        return std::make_shared<const FunctionSpaceModel>(c.arguments, c.value_dim, std::move(values), std::move(labels));
    } catch (const Error& e) {
        schema_error(std::string("space: ") + e.what());
    }
}

std::shared_ptr<const Space> build_space(const SpaceConfig& c)
{
    if (c.kind == "grid") return std::make_shared<const Space>(Space::metric(grid_coords(c), MetricKind::Euclidean));
    if (c.kind == "points") {
        if (c.coords.empty()) schema_error("space: points needs coords");
        return std::make_shared<const Space>(Space::metric(c.coords, parse_metric(c.metric)));
    }
    // finite
    std::vector<PointSet> opens;
    for (const auto& o : c.opens) {
        PointSet s(c.labels.size());
        for (const auto& l : o) {
            const auto it = std::find(c.labels.begin(), c.labels.end(), l);
            if (it == c.labels.end()) schema_error("space: open set names unknown point '" + l + "'");
            s.set(static_cast<std::size_t>(it - c.labels.begin()));
        }
        opens.push_back(std::move(s));
    }
    return std::make_shared<const Space>(Space::finite_topology(c.labels, std::move(opens)));
}

std::vector<PointwiseLevel> pointwise_levels(const FamilyConfig& c)
{
    std::vector<PointwiseLevel> out;
    for (const auto& l : c.levels) out.push_back({l.args, l.eps});
    return out;
}

AdmissibleFamily build_family(const System& s)
{
    const FamilyConfig& c = s.config.family;
    if (c.kind == "metric-chain") {
        if (!s.space->is_metric()) schema_error("family: metric-chain needs a grid or points space");
        return metric_chain_family(*s.space, c.eps0, c.depth);
    }
    if (c.kind == "pointwise") {
        if (!s.functions) schema_error("family: pointwise needs a function space");
        return s.functions->family(pointwise_levels(c));
    }
    if (s.space->geometry() != GeometryKind::FiniteTopology) schema_error("family: finite-all needs a finite space");
    return finite_all_coverings_family(*s.space);
}

Semigroup build_semigroup(const SemigroupConfig& c)
{
    if (c.kind == "nat-add") return Semigroup::nat_add();
    if (c.kind == "nat-mul") return Semigroup::nat_mul();
    if (c.kind == "real-vector-add") return Semigroup::real_vector_add(c.dim);
    return Semigroup::scalar_mul();
}

FilterBasis build_filter(const FilterConfig& c)
{
    if (c.kind == "add-tails") return FilterBasis::add_tails();
    if (c.kind == "mul-tails") return FilterBasis::mul_tails();
    if (c.kind == "coordinate-tails") return FilterBasis::coordinate_tails(c.dim);
    if (c.kind == "power-levels") return FilterBasis::power_levels(c.contraction, c.bases);
    return FilterBasis::explicit_levels(c.dim, c.levels);
}

ActionSpec build_action(const ActionConfig& c)
{
    ActionSpec spec;
    if (c.kind == "identity") spec.kind = ActionKind::Identity;
    else if (c.kind == "scale-power") spec.kind = ActionKind::ScalePower;
    else if (c.kind == "iterate") spec.kind = ActionKind::Iterate;
    else spec.kind = ActionKind::ComposeLinear;
    spec.base = c.base;
    spec.x0 = c.x0;
    spec.args = c.args;
    return spec;
}

PointSet build_testset(const System& s, const TestsetConfig& t)
{
    if (t.all) return s.space->all();
    if (t.star_center) {
        if (t.star_level >= s.fam().size()) schema_error("testset '" + t.name + "': star level out of range");
        return star(s.space->singleton(resolve_point(*s.space, *t.star_center, s.snap_tolerance)), s.fam().at(t.star_level));
    }
    PointSet out = s.space->empty_set();
    for (const auto& p : t.points) out.set(resolve_point(*s.space, p, s.snap_tolerance));
    return out;
}

PointSet build_sample(const System& s)
{
    const SampleConfig& c = s.config.points_sample;
    if (c.all) return s.space->all();
    PointSet out = s.space->empty_set();
    for (const auto& p : c.points) out.set(resolve_point(*s.space, p, s.snap_tolerance));
    if (c.max_abs) {
        if (!s.space->has_coords()) schema_error("points_sample: max_abs needs coordinates");
        for (PointIndex x = 0; x < s.space->size(); ++x) {
            const auto v = s.space->coords(x);
            if (std::all_of(v.begin(), v.end(), [&](double a) { return std::abs(a) <= *c.max_abs; })) out.set(x);
        }
    }
    if (out.none()) schema_error("points_sample: selects no points");
    return out;
}

// ---------------------------------------------------------------------------
// Built-in systems

SystemConfig decay_grid()
{
    SystemConfig c;
    c.name = "decay-grid";
    c.description = "x -> 2^-t x on a 101-point grid of [0, 1]";
    c.space.kind = "grid";
    c.space.step = 0.01;
    c.family = {.kind = "metric-chain", .eps0 = 1.0, .depth = 3, .levels = {}};
    c.semigroup = {"nat-add", 1};
    c.filter.kind = "add-tails";
    c.action = {"scale-power", 0.5, 0.0, {}};
    c.expectations.attractor = {std::vector<double>{0.0}};
    c.expectations.kind = "both";
    c.expectations.attraction_index = 3;
    c.expectations.attraction_level_max = 8;
    c.budget.per_level = 16;
    return c;
}

/// Values 0 and 2^m for m = -7..13 at (1, 1), both components; zero at (0, 0).
SystemConfig exp_decay()
{
    SystemConfig c;
    c.name = "exp-decay";
    c.description = "functions on {(0,0), (1,1)} with values in R^2, t in R_+^2 acting by f(x) -> 2^-t f(x) componentwise";
    c.space.kind = "functions";
    c.space.arguments = {{0.0, 0.0}, {1.0, 1.0}};
    c.space.value_dim = 2;
    std::vector<double> grid{0.0};
    for (int m = -7; m <= 13; ++m) grid.push_back(std::ldexp(1.0, m));
    std::vector<std::vector<double>> listed;
    for (int k = 0; k <= 12; ++k) {
        const double v = std::ldexp(1.0, k + 1);
        c.space.functions.push_back({"f_" + std::to_string(k), {0.0, 0.0, v, v}});
        listed.push_back({0.0, 0.0, v, v});
    }
    c.space.functions.push_back({"i(0)", {0.0, 0.0, 0.0, 0.0}});
    listed.push_back({0.0, 0.0, 0.0, 0.0});
    for (double a : grid)
        for (double b : grid) {
            std::vector<double> v{0.0, 0.0, a, b};
            if (std::find(listed.begin(), listed.end(), v) == listed.end()) c.space.functions.push_back({"", v});
        }
    c.family.kind = "pointwise";
    c.family.levels = {{{0}, 4.0}, {{0, 1}, 1.0}, {{0, 1}, 0.25}, {{0, 1}, 1.0 / 16}, {{0, 1}, 1.0 / 64}};
    c.semigroup = {"real-vector-add", 2};
    c.filter.kind = "coordinate-tails";
    c.filter.dim = 2;
    c.action = {"scale-power", 0.5, 0.0, {}};
    c.testsets = {{.name = "coarse-star", .all = false, .points = {}, .star_center = PointRef{std::string("i(0)")}, .star_level = 0}};
    c.points_sample.all = false;
    c.points_sample.max_abs = 8.0;
    c.expectations.attractor = {std::string("i(0)")};
    c.expectations.kind = "global-uniform-only";
    c.expectations.failing_taxonomy = {"asymptotically_compact"};
    c.expectations.converse_hypotheses = {"asymptotically_compact"};
    return c;
}

/// Affine maps x -> p + 2^-e (x - p) and constants, sampled at -1 and 2.
SystemConfig iterated_contractions()
{
    SystemConfig c;
    c.name = "iterated-contractions";
    c.description = "affine contractions of [0, 1] with fixed points in K = {0, 1/4, 1/2, 3/4, 1}, n acting as the n-th iterate";
    c.space.kind = "functions";
    c.space.arguments = {{-1.0}, {2.0}};
    c.space.value_dim = 1;
    const std::vector<double> fixed{0.0, 0.25, 0.5, 0.75, 1.0};
    for (double p : fixed) c.space.functions.push_back({"i" + format_coords(std::vector<double>{p}), {p, p}});
    for (double p : fixed)
        for (int e = 1; e <= 10; ++e) {
            const double r = std::ldexp(1.0, -e);
            c.space.functions.push_back({"", {p + r * (-1.0 - p), p + r * (2.0 - p)}});
        }
    c.family.kind = "pointwise";
    for (int i = 0; i <= 5; ++i) c.family.levels.push_back({{0, 1}, 10.24 * std::ldexp(1.0, -2 * i)});
    c.semigroup = {"nat-mul", 1};
    c.filter.kind = "mul-tails";
    c.action = {"iterate", 0.5, 0.0, {-1.0, 2.0}};
    for (double p : fixed) c.expectations.attractor.push_back(std::vector<double>{p, p});
    c.expectations.kind = "both";
    c.expectations.failing_hypotheses = {"H3", "H4"};
    c.expectations.attraction_index = 5;
    c.expectations.attraction_level_max = 8;
    return c;
}

/// Maps f: {0, 1} -> [lo, hi] on the 1/8 grid with |f(0) - f(1)| <= 1.
SystemConfig composition(const std::string& name, double x0, double lo, double hi)
{
    SystemConfig c;
    c.name = name;
    c.description = "1-Lipschitz maps on {0, 1}, c acting by f -> x0 + c (f - x0) with c in powers of +-1/2";
    c.space.kind = "functions";
    c.space.arguments = {{0.0}, {1.0}};
    c.space.value_dim = 1;
    const auto steps = static_cast<int>(std::llround((hi - lo) * 8));
    for (int a = 0; a <= steps; ++a)
        for (int b = 0; b <= steps; ++b)
            if (std::abs(a - b) <= 8) c.space.functions.push_back({"", {lo + a / 8.0, lo + b / 8.0}});
    c.family.kind = "pointwise";
    c.family.levels = {{{0, 1}, 4.0}, {{0, 1}, 1.0}, {{0, 1}, 0.25}};
    c.semigroup = {"scalar-mul", 1};
    c.filter.kind = "power-levels";
    c.filter.contraction = 0.5;
    c.filter.bases = {0.5, -0.5};
    c.action = {"compose-linear", 0.5, x0, {}};
    c.expectations.attractor = {std::vector<double>{x0, x0}};
    c.expectations.kind = "both";
    c.expectations.spread_lipschitz = 1.0;
    return c;
}

} // namespace

PointIndex resolve_point(const Space& space, const PointRef& ref, double tolerance)
{
    if (const auto* label = std::get_if<std::string>(&ref)) {
        if (auto p = space.find_label(*label)) return *p;
        schema_error("no point is labelled '" + *label + "'");
    }
    const auto& coords = std::get<std::vector<double>>(ref);
    if (!space.has_coords()) schema_error("point " + format_coords(coords) + " given by coordinates in a space without them");
    const Snap s = space.nearest(coords);
    if (!(s.error <= std::max(tolerance, 1e-12)))
        schema_error("point " + format_coords(coords) + " is not in the space (nearest is " + space.label(s.point) + ")");
    return s.point;
}

double default_snap_tolerance(const SystemConfig& config)
{
    const FamilyConfig& f = config.family;
    if (f.kind == "metric-chain") return std::ldexp(f.eps0, -2 * static_cast<int>(f.depth)) / 2;
    if (f.kind == "pointwise") {
        double finest = std::numeric_limits<double>::infinity();
        for (const auto& l : f.levels)
            if (!l.args.empty()) finest = std::min(finest, l.eps);
        return finest / 2;
    }
    return std::numeric_limits<double>::infinity();
}

System build_system(const SystemConfig& config)
{
    System s;
    s.config = config;
    if (config.space.kind == "functions") {
        s.functions = build_functions(config.space);
        s.space = s.functions->space();
    } else {
        s.space = build_space(config.space);
    }
    s.family.emplace(build_family(s));

    const double limit = default_snap_tolerance(config);
    s.snap_tolerance = config.budget.snap_tolerance.value_or(limit);
    if (s.snap_tolerance > limit) {
        schema_error("budget: snap tolerance " + format_coords(std::vector<double>{s.snap_tolerance}) +
                     " exceeds half the finest covering radius " + format_coords(std::vector<double>{limit}));
    }

    if (config.semigroup.kind == "real-vector-add" && config.filter.dim != config.semigroup.dim)
        schema_error("filter: dimension differs from the semigroup's");
    const ActionOptions options{.per_level = config.budget.per_level,
                                .max_level = config.budget.max_level,
                                .snap_tolerance = s.space->has_coords() ? s.snap_tolerance
                                                                        : std::numeric_limits<double>::infinity(),
                                .assoc_samples = config.budget.assoc_samples};
    s.model.emplace(s.space, build_semigroup(config.semigroup), build_filter(config.filter), build_action(config.action),
                    options);

    for (const auto& t : config.testsets) s.declared_testsets.push_back({t.name, build_testset(s, t)});
    s.points_sample = build_sample(s);
    if (!config.expectations.attractor.empty()) {
        PointSet a = s.space->empty_set();
        for (const auto& p : config.expectations.attractor) a.set(resolve_point(*s.space, p, s.snap_tolerance));
        s.expected_attractor = std::move(a);
    }
    return s;
}

System load_system(const std::string& text) { return build_system(parse_config(text)); }

const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names{"decay-grid", "exp-decay", "iterated-contractions", "composition",
                                                "composition-shifted"};
    return names;
}

SystemConfig builtin_config(std::string_view name)
{
    if (name == "decay-grid") return decay_grid();
    if (name == "exp-decay") return exp_decay();
    if (name == "iterated-contractions") return iterated_contractions();
    if (name == "composition") return composition("composition", 0.0, -1.0, 1.0);
    if (name == "composition-shifted") return composition("composition-shifted", 0.5, -1.0, 2.0);
    throw Error(Errc::UnknownScenario, "unknown scenario '" + std::string(name) + "'");
}

SystemConfig with_overrides(SystemConfig config, const RunOptions& options)
{
    if (options.max_level) config.budget.max_level = *options.max_level;
    if (options.resolution) config.budget.resolution = *options.resolution;
    if (options.cap) config.budget.cap = *options.cap;
    if (options.seed) config.budget.seed = *options.seed;
    if (options.per_level) config.budget.per_level = *options.per_level;
    return config;
}

} // namespace covdyn
