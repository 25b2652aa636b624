#include "covdyn/config.hpp"

#include <gtest/gtest.h>

using namespace covdyn;

namespace {

SystemConfig sample_config()
{
    SystemConfig c;
    c.name = "sample";
    c.description = "two functions";
    c.space.kind = "functions";
    c.space.arguments = {{0.0}, {1.0}};
    c.space.functions = {{"f", {0.0, 0.125}}, {"", {0.1, -0.3}}};
    c.family.kind = "pointwise";
    c.family.levels = {{{0, 1}, 0.25}, {{1}, 1.0 / 3.0}};
    c.semigroup = {"scalar-mul", 1};
    c.filter.kind = "explicit";
    c.filter.levels = {{{1.0}, {0.5}}, {{0.5}}};
    c.action = {"compose-linear", 0.5, 0.25, {}};
    TestsetConfig t;
    t.name = "near";
    t.star_center = PointRef{std::vector<double>{0.0, 0.125}};
    t.star_level = 1;
    c.testsets.push_back(t);
    c.points_sample.all = false;
    c.points_sample.max_abs = 2.0;
    c.expectations.attractor = {PointRef{std::string("f")}};
    c.expectations.kind = "both";
    c.expectations.failing_hypotheses = {"H3"};
    c.expectations.spread_lipschitz = 1.0;
    c.budget.snap_tolerance = 0.0625;
    c.budget.seed = 42;
    return c;
}

} // namespace

TEST(Config, DumpParseRoundTrip)
{
    const SystemConfig c = sample_config();
    const std::string text = dump_config(c);
    EXPECT_EQ(parse_config(text), c);
    EXPECT_EQ(dump_config(parse_config(text)), text);
}

TEST(Config, UnknownKeyIsSchemaError)
{
    std::string text = dump_config(sample_config());
    text.replace(text.find("\"seed\""), 6, "\"seeed\"");
    try {
        parse_config(text);
        FAIL() << "expected SchemaError";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::SchemaError);
        EXPECT_NE(std::string(e.what()).find("config.budget.seeed"), std::string::npos) << e.what();
    }
}

TEST(Config, MissingAndMistypedFields)
{
    EXPECT_THROW(parse_config("{}"), Error);
    EXPECT_THROW(parse_config("not json"), Error);
    const std::string base = R"({"name":"x","space":{"kind":"grid","start":0,"stop":1,"step":0.1},
        "family":{"kind":"metric-chain","eps0":1,"depth":2},"semigroup":{"kind":"nat-add"},
        "filter":{"kind":"add-tails"},"action":{"kind":"identity"}})";
    EXPECT_NO_THROW(parse_config(base));
    std::string bad_kind = base;
    bad_kind.replace(bad_kind.find("nat-add"), 7, "nat-sub");
    EXPECT_THROW(parse_config(bad_kind), Error);
    std::string bad_type = base;
    bad_type.replace(bad_type.find("\"depth\":2"), 9, "\"depth\":-2");
    EXPECT_THROW(parse_config(bad_type), Error);
}

TEST(Config, MissingFileIsSchemaError)
{
    try {
        read_config_file("/nonexistent/config.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::SchemaError);
    }
}
