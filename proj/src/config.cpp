#include "covdyn/config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace covdyn {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what)
{
    throw Error(Errc::SchemaError, path + ": " + what);
}

/// Reader over one JSON object that rejects unknown keys.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object()) schema_error(path_, "expected an object");
    }

    ~Section() noexcept(false)
    {
        if (std::uncaught_exceptions()) return;
        for (const auto& [key, _] : j_.items())
            if (!seen_.count(key)) schema_error(path_ + "." + key, "unknown key");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& at(const std::string& key)
    {
        seen_.insert(key);
        if (!j_.contains(key)) schema_error(path_ + "." + key, "missing required key");
        return j_.at(key);
    }

    const json* find(const std::string& key)
    {
        seen_.insert(key);
        return j_.contains(key) ? &j_.at(key) : nullptr;
    }

    std::string sub(const std::string& key) const { return path_ + "." + key; }

    template <class T>
    void read(const std::string& key, T& out)
    {
        if (const json* v = find(key)) out = convert<T>(*v, sub(key));
    }

    template <class T>
    void read(const std::string& key, std::optional<T>& out)
    {
        if (const json* v = find(key)) out = convert<T>(*v, sub(key));
    }

    template <class T>
    static T convert(const json& v, const std::string& path)
    {
        try {
            if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, std::uint64_t>) {
                if (!v.is_number_unsigned()) schema_error(path, "expected a non-negative integer");
            } else if constexpr (std::is_same_v<T, double>) {
                if (!v.is_number()) schema_error(path, "expected a number");
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (!v.is_string()) schema_error(path, "expected a string");
            } else if constexpr (std::is_same_v<T, bool>) {
                if (!v.is_boolean()) schema_error(path, "expected a boolean");
            }
            return v.get<T>();
        } catch (const json::exception& e) {
            schema_error(path, e.what());
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void require_one_of(const std::string& value, std::initializer_list<const char*> options, const std::string& path)
{
    for (const char* o : options)
        if (value == o) return;
    std::string list;
    for (const char* o : options) list += (list.empty() ? "" : ", ") + std::string(o);
    schema_error(path, "'" + value + "' is not one of " + list);
}

PointRef parse_ref(const json& v, const std::string& path)
{
    if (v.is_string()) return v.get<std::string>();
    return Section::convert<std::vector<double>>(v, path);
}

std::vector<PointRef> parse_refs(const json& v, const std::string& path)
{
    if (!v.is_array()) schema_error(path, "expected a list of points");
    std::vector<PointRef> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(parse_ref(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

ojson ref_json(const PointRef& r)
{
    if (const auto* s = std::get_if<std::string>(&r)) return *s;
    return std::get<std::vector<double>>(r);
}

ojson refs_json(const std::vector<PointRef>& rs)
{
    ojson out = ojson::array();
    for (const auto& r : rs) out.push_back(ref_json(r));
    return out;
}

SpaceConfig parse_space(const json& j, const std::string& path)
{
    Section s(j, path);
    SpaceConfig c;
    c.kind = Section::convert<std::string>(s.at("kind"), s.sub("kind"));
    require_one_of(c.kind, {"grid", "points", "functions", "finite"}, s.sub("kind"));
    if (c.kind == "grid") {
        c.start = Section::convert<double>(s.at("start"), s.sub("start"));
        c.stop = Section::convert<double>(s.at("stop"), s.sub("stop"));
        c.step = Section::convert<double>(s.at("step"), s.sub("step"));
        if (!(c.step > 0) || !(c.stop > c.start)) schema_error(path, "grid needs start < stop and a positive step");
    } else if (c.kind == "points") {
        s.read("metric", c.metric);
        require_one_of(c.metric, {"euclidean", "sup"}, s.sub("metric"));
        c.coords = Section::convert<std::vector<std::vector<double>>>(s.at("coords"), s.sub("coords"));
    } else if (c.kind == "functions") {
        c.arguments = Section::convert<std::vector<std::vector<double>>>(s.at("arguments"), s.sub("arguments"));
        s.read("value_dim", c.value_dim);
        const json& fs = s.at("functions");
        if (!fs.is_array()) schema_error(s.sub("functions"), "expected a list");
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const std::string p = s.sub("functions") + "[" + std::to_string(i) + "]";
            FunctionEntry e;
            if (fs[i].is_array()) {
                e.values = Section::convert<std::vector<double>>(fs[i], p);
            } else {
                Section f(fs[i], p);
                f.read("label", e.label);
                e.values = Section::convert<std::vector<double>>(f.at("values"), f.sub("values"));
            }
            c.functions.push_back(std::move(e));
        }
    } else {
        c.labels = Section::convert<std::vector<std::string>>(s.at("labels"), s.sub("labels"));
        c.opens = Section::convert<std::vector<std::vector<std::string>>>(s.at("opens"), s.sub("opens"));
    }
    return c;
}

ojson space_json(const SpaceConfig& c)
{
    ojson j;
    j["kind"] = c.kind;
    if (c.kind == "grid") {
        j["start"] = c.start;
        j["stop"] = c.stop;
        j["step"] = c.step;
    } else if (c.kind == "points") {
        j["metric"] = c.metric;
        j["coords"] = c.coords;
    } else if (c.kind == "functions") {
        j["arguments"] = c.arguments;
        j["value_dim"] = c.value_dim;
        ojson fs = ojson::array();
        for (const auto& f : c.functions) {
            if (f.label.empty()) {
                fs.push_back(f.values);
            } else {
                ojson e;
                e["label"] = f.label;
                e["values"] = f.values;
                fs.push_back(std::move(e));
            }
        }
        j["functions"] = std::move(fs);
    } else {
        j["labels"] = c.labels;
        j["opens"] = c.opens;
    }
    return j;
}

FamilyConfig parse_family(const json& j, const std::string& path)
{
    Section s(j, path);
    FamilyConfig c;
    c.kind = Section::convert<std::string>(s.at("kind"), s.sub("kind"));
    require_one_of(c.kind, {"metric-chain", "pointwise", "finite-all"}, s.sub("kind"));
    if (c.kind == "metric-chain") {
        c.eps0 = Section::convert<double>(s.at("eps0"), s.sub("eps0"));
        c.depth = Section::convert<std::size_t>(s.at("depth"), s.sub("depth"));
    } else if (c.kind == "pointwise") {
        const json& ls = s.at("levels");
        if (!ls.is_array() || ls.empty()) schema_error(s.sub("levels"), "expected a nonempty list");
        for (std::size_t i = 0; i < ls.size(); ++i) {
            Section l(ls[i], s.sub("levels") + "[" + std::to_string(i) + "]");
            LevelConfig lc;
            lc.args = Section::convert<std::vector<std::size_t>>(l.at("args"), l.sub("args"));
            lc.eps = Section::convert<double>(l.at("eps"), l.sub("eps"));
            c.levels.push_back(std::move(lc));
        }
    }
    return c;
}

ojson family_json(const FamilyConfig& c)
{
    ojson j;
    j["kind"] = c.kind;
    if (c.kind == "metric-chain") {
        j["eps0"] = c.eps0;
        j["depth"] = c.depth;
    } else if (c.kind == "pointwise") {
        ojson ls = ojson::array();
        for (const auto& l : c.levels) {
            ojson e;
            e["args"] = l.args;
            e["eps"] = l.eps;
            ls.push_back(std::move(e));
        }
        j["levels"] = std::move(ls);
    }
    return j;
}

SemigroupConfig parse_semigroup(const json& j, const std::string& path)
{
    Section s(j, path);
    SemigroupConfig c;
    c.kind = Section::convert<std::string>(s.at("kind"), s.sub("kind"));
    require_one_of(c.kind, {"nat-add", "nat-mul", "real-vector-add", "scalar-mul"}, s.sub("kind"));
    s.read("dim", c.dim);
    return c;
}

ojson semigroup_json(const SemigroupConfig& c)
{
    ojson j;
    j["kind"] = c.kind;
    j["dim"] = c.dim;
    return j;
}

FilterConfig parse_filter(const json& j, const std::string& path)
{
    Section s(j, path);
    FilterConfig c;
    c.kind = Section::convert<std::string>(s.at("kind"), s.sub("kind"));
    require_one_of(c.kind, {"add-tails", "mul-tails", "coordinate-tails", "power-levels", "explicit"}, s.sub("kind"));
    s.read("dim", c.dim);
    if (c.kind == "power-levels") {
        c.contraction = Section::convert<double>(s.at("contraction"), s.sub("contraction"));
        c.bases = Section::convert<std::vector<double>>(s.at("bases"), s.sub("bases"));
    } else if (c.kind == "explicit") {
        c.levels = Section::convert<std::vector<std::vector<Element>>>(s.at("levels"), s.sub("levels"));
    }
    return c;
}

ojson filter_json(const FilterConfig& c)
{
    ojson j;
    j["kind"] = c.kind;
    j["dim"] = c.dim;
    if (c.kind == "power-levels") {
        j["contraction"] = c.contraction;
        j["bases"] = c.bases;
    } else if (c.kind == "explicit") {
        j["levels"] = c.levels;
    }
    return j;
}

ActionConfig parse_action(const json& j, const std::string& path)
{
    Section s(j, path);
    ActionConfig c;
    c.kind = Section::convert<std::string>(s.at("kind"), s.sub("kind"));
    require_one_of(c.kind, {"identity", "scale-power", "iterate", "compose-linear"}, s.sub("kind"));
    s.read("base", c.base);
    s.read("x0", c.x0);
    s.read("args", c.args);
    return c;
}

ojson action_json(const ActionConfig& c)
{
    ojson j;
    j["kind"] = c.kind;
    j["base"] = c.base;
    j["x0"] = c.x0;
    j["args"] = c.args;
    return j;
}

TestsetConfig parse_testset(const json& j, const std::string& path)
{
    Section s(j, path);
    TestsetConfig c;
    c.name = Section::convert<std::string>(s.at("name"), s.sub("name"));
    s.read("all", c.all);
    if (const json* p = s.find("points")) c.points = parse_refs(*p, s.sub("points"));
    if (const json* st = s.find("star")) {
        Section star(*st, s.sub("star"));
        c.star_center = parse_ref(star.at("center"), star.sub("center"));
        star.read("level", c.star_level);
    }
    const int forms = int(c.all) + int(!c.points.empty()) + int(c.star_center.has_value());
    if (forms != 1) schema_error(path, "a testset is exactly one of all, points or star");
    return c;
}

ojson testset_json(const TestsetConfig& c)
{
    ojson j;
    j["name"] = c.name;
    if (c.all) j["all"] = true;
    if (!c.points.empty()) j["points"] = refs_json(c.points);
    if (c.star_center) {
        ojson st;
        st["center"] = ref_json(*c.star_center);
        st["level"] = c.star_level;
        j["star"] = std::move(st);
    }
    return j;
}

SampleConfig parse_sample(const json& j, const std::string& path)
{
    Section s(j, path);
    SampleConfig c;
    c.all = false;
    s.read("all", c.all);
    if (const json* p = s.find("points")) c.points = parse_refs(*p, s.sub("points"));
    s.read("max_abs", c.max_abs);
    const int forms = int(c.all) + int(!c.points.empty()) + int(c.max_abs.has_value());
    if (forms != 1) schema_error(path, "a points sample is exactly one of all, points or max_abs");
    return c;
}

ojson sample_json(const SampleConfig& c)
{
    ojson j = ojson::object();
    if (c.all) j["all"] = true;
    if (!c.points.empty()) j["points"] = refs_json(c.points);
    if (c.max_abs) j["max_abs"] = *c.max_abs;
    return j;
}

ExpectationsConfig parse_expectations(const json& j, const std::string& path)
{
    Section s(j, path);
    ExpectationsConfig c;
    if (const json* a = s.find("attractor")) c.attractor = parse_refs(*a, s.sub("attractor"));
    s.read("kind", c.kind);
    if (!c.kind.empty())
        require_one_of(c.kind, {"both", "global-only", "global-uniform-only", "neither"}, s.sub("kind"));
    s.read("failing_hypotheses", c.failing_hypotheses);
    s.read("failing_taxonomy", c.failing_taxonomy);
    s.read("converse_hypotheses", c.converse_hypotheses);
    s.read("eventual_compactness", c.eventual_compactness);
    s.read("attraction_index", c.attraction_index);
    s.read("attraction_level_max", c.attraction_level_max);
    s.read("spread_lipschitz", c.spread_lipschitz);
    return c;
}

ojson expectations_json(const ExpectationsConfig& c)
{
    ojson j = ojson::object();
    if (!c.attractor.empty()) j["attractor"] = refs_json(c.attractor);
    if (!c.kind.empty()) j["kind"] = c.kind;
    if (!c.failing_hypotheses.empty()) j["failing_hypotheses"] = c.failing_hypotheses;
    if (!c.failing_taxonomy.empty()) j["failing_taxonomy"] = c.failing_taxonomy;
    if (!c.converse_hypotheses.empty()) j["converse_hypotheses"] = c.converse_hypotheses;
    if (c.eventual_compactness) j["eventual_compactness"] = *c.eventual_compactness;
    if (c.attraction_index) j["attraction_index"] = *c.attraction_index;
    if (c.attraction_level_max) j["attraction_level_max"] = *c.attraction_level_max;
    if (c.spread_lipschitz) j["spread_lipschitz"] = *c.spread_lipschitz;
    return j;
}

BudgetConfig parse_budget(const json& j, const std::string& path)
{
    Section s(j, path);
    BudgetConfig c;
    s.read("per_level", c.per_level);
    s.read("max_level", c.max_level);
    s.read("snap_tolerance", c.snap_tolerance);
    s.read("assoc_samples", c.assoc_samples);
    s.read("cap", c.cap);
    s.read("random_testsets", c.random_testsets);
    s.read("seed", c.seed);
    s.read("draws_per_level", c.draws_per_level);
    s.read("resolution", c.resolution);
    s.read("perturb_depth", c.perturb_depth);
    if (c.per_level == 0) schema_error(s.sub("per_level"), "must be positive");
    return c;
}

ojson budget_json(const BudgetConfig& c)
{
    ojson j;
    j["per_level"] = c.per_level;
    j["max_level"] = c.max_level;
    if (c.snap_tolerance) j["snap_tolerance"] = *c.snap_tolerance;
    j["assoc_samples"] = c.assoc_samples;
    j["cap"] = c.cap;
    j["random_testsets"] = c.random_testsets;
    j["seed"] = c.seed;
    j["draws_per_level"] = c.draws_per_level;
    if (c.resolution) j["resolution"] = *c.resolution;
    if (c.perturb_depth) j["perturb_depth"] = *c.perturb_depth;
    return j;
}

} // namespace

std::string format_point_ref(const PointRef& ref)
{
    if (const auto* s = std::get_if<std::string>(&ref)) return *s;
    return format_coords(std::get<std::vector<double>>(ref));
}

SystemConfig parse_config(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        schema_error("config", e.what());
    }
    Section s(root, "config");
    SystemConfig c;
    c.name = Section::convert<std::string>(s.at("name"), s.sub("name"));
    s.read("description", c.description);
    c.space = parse_space(s.at("space"), s.sub("space"));
    c.family = parse_family(s.at("family"), s.sub("family"));
    c.semigroup = parse_semigroup(s.at("semigroup"), s.sub("semigroup"));
    c.filter = parse_filter(s.at("filter"), s.sub("filter"));
    c.action = parse_action(s.at("action"), s.sub("action"));
    if (const json* ts = s.find("testsets")) {
        if (!ts->is_array()) schema_error(s.sub("testsets"), "expected a list");
        for (std::size_t i = 0; i < ts->size(); ++i)
            c.testsets.push_back(parse_testset((*ts)[i], s.sub("testsets") + "[" + std::to_string(i) + "]"));
    }
    if (const json* p = s.find("points_sample")) c.points_sample = parse_sample(*p, s.sub("points_sample"));
    if (const json* e = s.find("expectations")) c.expectations = parse_expectations(*e, s.sub("expectations"));
    if (const json* b = s.find("budget")) c.budget = parse_budget(*b, s.sub("budget"));
    return c;
}

SystemConfig read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(Errc::SchemaError, "cannot read config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string dump_config(const SystemConfig& c)
{
    ojson j;
    j["name"] = c.name;
    if (!c.description.empty()) j["description"] = c.description;
    j["space"] = space_json(c.space);
    j["family"] = family_json(c.family);
    j["semigroup"] = semigroup_json(c.semigroup);
    j["filter"] = filter_json(c.filter);
    j["action"] = action_json(c.action);
    ojson ts = ojson::array();
    for (const auto& t : c.testsets) ts.push_back(testset_json(t));
    j["testsets"] = std::move(ts);
    j["points_sample"] = sample_json(c.points_sample);
    j["expectations"] = expectations_json(c.expectations);
    j["budget"] = budget_json(c.budget);
    return j.dump(2) + "\n";
}

} // namespace covdyn
