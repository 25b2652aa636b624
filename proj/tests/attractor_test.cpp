#include "covdyn/attractor.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <memory>

using namespace covdyn;
using covdyn::testing::unit_grid;

namespace {

struct Decay {
    std::shared_ptr<const Space> space = std::make_shared<const Space>(unit_grid(100));
    ActionModel model{space, Semigroup::nat_add(), FilterBasis::add_tails(),
                      {.kind = ActionKind::ScalePower, .base = 0.5, .x0 = 0, .args = {}},
                      {.per_level = 16, .max_level = 12, .snap_tolerance = 1.0 / 128}};
    AdmissibleFamily family = metric_chain_family(*space, 1.0, 3);
};

} // namespace

TEST(AttractorTest, StandardTestsetsAreBoundedAndSeeded)
{
    Decay d;
    auto a = standard_testsets(*d.space, d.family, {{"far", d.space->singleton(100)}}, 42);
    auto b = standard_testsets(*d.space, d.family, {{"far", d.space->singleton(100)}}, 42);
    ASSERT_EQ(a.size(), 52u);
    EXPECT_EQ(a[0].name, "whole-space");
    EXPECT_EQ(a[1].name, "far");
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_TRUE(is_bounded(a[i].points, d.family));
        EXPECT_EQ(a[i].points, b[i].points);
    }
    auto c = standard_testsets(*d.space, d.family, {}, 43);
    bool differs = false;
    for (std::size_t i = 1; i < c.size(); ++i) differs |= c[i].points != a[i + 1].points;
    EXPECT_TRUE(differs);
}

TEST(AttractorTest, DecayCandidateIsOrigin)
{
    Decay d;
    std::vector<Testset> singles;
    for (PointIndex x : {10u, 55u, 100u}) singles.push_back({"p" + std::to_string(x), d.space->singleton(x)});
    const PointSet cand = construct_candidate(d.model, d.family, singles);
    EXPECT_TRUE(equal_at_resolution(cand, d.space->singleton(0), d.family, 3));

    const auto testsets = standard_testsets(*d.space, d.family, {}, 1);
    auto g = verify_global(d.model, d.family, d.space->singleton(0), testsets);
    for (const auto& c : g.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.witness;
    auto u = verify_uniform(d.model, d.family, d.space->singleton(0), d.space->all());
    for (const auto& c : u.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.witness;
    EXPECT_EQ(classify(g, u), AttractorKind::Both);
    EXPECT_EQ(attractor_kind_name(classify(g, u)), "both");
}

TEST(AttractorTest, EmptyCandidateFailsNonempty)
{
    Decay d;
    auto g = verify_global(d.model, d.family, d.space->empty_set(), {{"all", d.space->all()}});
    EXPECT_FALSE(find_verdict(g.checks, "nonempty")->passed);
    EXPECT_FALSE(g.passed());
}

TEST(AttractorTest, MissingJPointIsReported)
{
    Decay d;
    // J(1/2) = {0}, which the far end {1} does not reach at resolution.
    auto u = verify_uniform(d.model, d.family, d.space->singleton(100), d.space->singleton(50));
    const Verdict* c = find_verdict(u.checks, "J_contained");
    EXPECT_FALSE(c->passed);
    EXPECT_NE(c->witness.find("(0)"), std::string::npos) << c->witness;
}

TEST(AttractorTest, UnboundedTestsetIsRejected)
{
    Decay d;
    auto fine = metric_chain_family(*d.space, 0.05, 2);
    try {
        construct_candidate(d.model, fine, {{"ends", make_set(d.space->size(), {0, 100})}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::UnboundedTestset);
    }
}

TEST(AttractorTest, UniquenessAndInvariantSets)
{
    Decay d;
    const PointSet a1 = construct_candidate(d.model, d.family, {{"all", d.space->all()}});
    const PointSet a2 = construct_candidate(d.model, d.family, {{"one", d.space->singleton(100)}});
    auto fixed = sampled_fixed_points(d.model);
    ASSERT_EQ(fixed.size(), 1u);
    EXPECT_TRUE(fixed[0].test(0));
    auto rep = check_uniqueness(d.model, d.family, a1, a2, fixed);
    for (const auto& v : rep) EXPECT_TRUE(v.passed) << v.name << ": " << v.witness;

    // Negative control: a wrong attractor misses the invariant fixed point.
    auto bad = check_uniqueness(d.model, d.family, d.space->singleton(100), a2, fixed);
    EXPECT_FALSE(find_verdict(bad, "candidates_coincide")->passed);
    EXPECT_FALSE(find_verdict(bad, "contains_invariant_sets")->passed);
}

TEST(AttractorTest, EquivalenceBookkeeping)
{
    AttractorVerdict pass{PointSet(1), {{"x", true, true, ""}}};
    AttractorVerdict fail{PointSet(1), {{"x", false, true, ""}}};
    std::vector<Verdict> hyps{{"H3", true, true, ""}, {"asymptotically_compact", false, true, "escapes"}};

    auto ok = check_equivalence(pass, pass, hyps, {"H3"});
    EXPECT_TRUE(ok.consistent());
    EXPECT_TRUE(find_verdict(ok.checks, "converse")->applicable);

    auto counter = check_equivalence(fail, pass, hyps, {"H3", "asymptotically_compact"});
    EXPECT_TRUE(counter.consistent());
    EXPECT_FALSE(find_verdict(counter.checks, "forward")->applicable);
    EXPECT_FALSE(find_verdict(counter.checks, "converse")->applicable);
    ASSERT_EQ(counter.failing_hypotheses.size(), 1u);
    EXPECT_EQ(counter.failing_hypotheses[0], "asymptotically_compact");

    auto broken = check_equivalence(pass, fail, hyps, {});
    EXPECT_FALSE(broken.consistent());
}
