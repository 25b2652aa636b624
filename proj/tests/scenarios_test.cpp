#include "covdyn/scenarios.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace covdyn;

namespace {

Errc code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return Errc::InvalidArgument;
}

} // namespace

TEST(ScenarioTest, UnknownNameIsRejected)
{
    EXPECT_EQ(code_of([] { builtin_config("no-such-system"); }), Errc::UnknownScenario);
    EXPECT_EQ(scenario_names().size(), 5u);
}

TEST(ScenarioTest, CompositionConfigRoundTrips)
{
    const SystemConfig c = builtin_config("composition");
    const std::string text = dump_config(c);
    const System s = load_system(text);
    EXPECT_EQ(s.config, c);
    const System direct = build_system(c);
    ASSERT_EQ(s.space->size(), direct.space->size());
    for (PointIndex x = 0; x < s.space->size(); ++x) EXPECT_EQ(s.space->label(x), direct.space->label(x));
    EXPECT_EQ(s.points_sample, direct.points_sample);
    EXPECT_EQ(s.expected_attractor, direct.expected_attractor);
}

TEST(ScenarioTest, CompositionHas217LipschitzMaps)
{
    const System s = build_system(builtin_config("composition"));
    EXPECT_EQ(s.space->size(), 217u);
    for (PointIndex f = 0; f < s.space->size(); ++f) {
        const auto v = s.space->coords(f);
        EXPECT_LE(std::abs(v[0] - v[1]), 1.0);
    }
}

TEST(ScenarioTest, NonNestedExplicitLevelsAreRejected)
{
    SystemConfig c = builtin_config("decay-grid");
    c.filter.kind = "explicit";
    c.filter.levels = {{{1.0}, {2.0}}, {{3.0}}};
    c.budget.max_level = 1;
    EXPECT_EQ(code_of([&] { build_system(c); }), Errc::NestingViolation);
    c.filter.levels = {{{1.0}, {3.0}}, {{3.0}}};
    EXPECT_NO_THROW(build_system(c));
}

TEST(ScenarioTest, OffGridImagesExceedTheSnapTolerance)
{
    SystemConfig c = builtin_config("decay-grid");
    c.action.base = 0.3;
    c.budget.snap_tolerance = 1e-4;
    EXPECT_EQ(code_of([&] { build_system(c); }), Errc::SnapToleranceExceeded);
}

TEST(ScenarioTest, ToleranceAboveHalfTheFinestRadiusIsASchemaError)
{
    SystemConfig c = builtin_config("decay-grid");
    EXPECT_DOUBLE_EQ(default_snap_tolerance(c), 1.0 / 128);
    c.budget.snap_tolerance = 1.0 / 64;
    EXPECT_EQ(code_of([&] { build_system(c); }), Errc::SchemaError);
}

TEST(ScenarioTest, UnknownPointReferenceIsASchemaError)
{
    SystemConfig c = builtin_config("decay-grid");
    c.expectations.attractor = {std::string("nowhere")};
    EXPECT_EQ(code_of([&] { build_system(c); }), Errc::SchemaError);
    c.expectations.attractor = {std::vector<double>{2.0}};
    EXPECT_EQ(code_of([&] { build_system(c); }), Errc::SchemaError);
}

TEST(ScenarioTest, OverridesReachTheBudget)
{
    const SystemConfig c = with_overrides(builtin_config("decay-grid"), {.max_level = 5, .resolution = 2, .cap = 7, .seed = 9, .per_level = {}});
    EXPECT_EQ(c.budget.max_level, 5u);
    EXPECT_EQ(c.budget.resolution, std::optional<std::size_t>(2));
    EXPECT_EQ(c.budget.cap, 7u);
    EXPECT_EQ(c.budget.seed, 9u);
}

class BuiltinScenario : public ::testing::TestWithParam<std::string> {};

TEST_P(BuiltinScenario, MeetsItsExpectations)
{
    const System s = build_system(builtin_config(GetParam()));
    const ScenarioReport r = run_scenario(s);
    for (const auto& v : r.expectations) EXPECT_TRUE(!v.applicable || v.passed) << v.name << ": " << v.witness;
    for (const auto& v : r.consistency) EXPECT_TRUE(!v.applicable || v.passed) << v.name << ": " << v.witness;
    EXPECT_TRUE(r.expectations_met);
}

INSTANTIATE_TEST_SUITE_P(All, BuiltinScenario, ::testing::ValuesIn(scenario_names()),
                         [](const auto& info) {
                             std::string n = info.param;
                             for (char& ch : n)
                                 if (ch == '-') ch = '_';
                             return n;
                         });

TEST(ScenarioTest, ExpDecayWitnessLandsAtNormTwoRootTwo)
{
    const System s = build_system(builtin_config("exp-decay"));
    const ScenarioReport r = run_scenario(s);
    EXPECT_EQ(r.kind, "global-uniform-only");
    const Verdict* a = find_verdict(r.global.checks, "attracts");
    ASSERT_NE(a, nullptr);
    EXPECT_FALSE(a->passed);
    EXPECT_NE(a->witness.find("sends f_12 to f_0"), std::string::npos) << a->witness;
    const PointIndex f0 = *s.space->find_label("f_0");
    EXPECT_NEAR(value_norm(s.functions->value(f0, 1)), 2 * std::sqrt(2.0), 1e-12);
}

TEST(ScenarioTest, SpreadBoundCatchesAWideTestset)
{
    const System s = build_system(builtin_config("composition"));
    // K = 0 with the coarsest radius still holds; a negative K makes the bound fail off x1.
    const std::vector<Testset> ts{{"all", s.space->all()}};
    EXPECT_TRUE(spread_bound(s, ts, 0.0).passed);
    EXPECT_FALSE(spread_bound(s, ts, -5.0).passed);
}

TEST(ScenarioTest, RunsAreDeterministic)
{
    const System s = build_system(builtin_config("iterated-contractions"));
    const ScenarioReport a = run_scenario(s), b = run_scenario(s);
    EXPECT_EQ(a.candidate, b.candidate);
    ASSERT_EQ(a.taxonomy.size(), b.taxonomy.size());
    for (std::size_t i = 0; i < a.taxonomy.size(); ++i) EXPECT_EQ(a.taxonomy[i].witness, b.taxonomy[i].witness);
    EXPECT_EQ(a.global.checks.back().witness, b.global.checks.back().witness);
}
