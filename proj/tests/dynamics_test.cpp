#include "covdyn/dynamics.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <memory>

using namespace covdyn;
using covdyn::testing::unit_grid;

namespace {

/// t x = 2^-t x on the grid of step 1/100, snapped within half a grid step.
ActionModel decay_model(std::size_t max_level = 12)
{
    auto space = std::make_shared<const Space>(unit_grid(100));
    return ActionModel(space, Semigroup::nat_add(), FilterBasis::add_tails(),
                       {.kind = ActionKind::ScalePower, .base = 0.5, .x0 = 0, .args = {}},
                       {.per_level = 16, .max_level = max_level, .snap_tolerance = 1.0 / 128});
}

} // namespace

TEST(SemigroupTest, CompositionAndQuotients)
{
    auto add = Semigroup::nat_add();
    EXPECT_EQ(add.compose({2}, {3}), Element{5});
    EXPECT_EQ(*add.right_quotient({5}, {3}), Element{2});
    EXPECT_FALSE(add.right_quotient({2}, {3}));

    auto mul = Semigroup::nat_mul();
    EXPECT_FALSE(mul.in_carrier({0}));
    EXPECT_EQ(*mul.right_quotient({12}, {4}), Element{3});
    EXPECT_FALSE(mul.right_quotient({7}, {2}));

    auto vec = Semigroup::real_vector_add(2);
    EXPECT_EQ(vec.compose({1, 2}, {0.5, 0}), (Element{1.5, 2}));
    EXPECT_FALSE(vec.in_carrier({1}));

    auto sc = Semigroup::scalar_mul();
    EXPECT_EQ(*sc.right_quotient({0}, {0}), Element{0});
    EXPECT_FALSE(sc.right_quotient({1}, {0}));
}

TEST(FilterTest, DrawsAreNestedMembers)
{
    for (const auto& f : {FilterBasis::add_tails(), FilterBasis::mul_tails(), FilterBasis::coordinate_tails(2),
                          FilterBasis::power_levels(0.5, {0.5, -0.25})})
        for (std::size_t k = 0; k < 6; ++k)
            for (const auto& e : f.draws(k, 10)) {
                EXPECT_TRUE(f.contains(k, e)) << filter_name(f.kind()) << " level " << k;
                if (k > 0) {
                    EXPECT_TRUE(f.contains(k - 1, e));
                }
            }
}

TEST(FilterTest, PowerLevelsRespectSign)
{
    auto f = FilterBasis::power_levels(0.5, {-0.5});
    EXPECT_TRUE(f.contains(2, {0.25}));
    EXPECT_FALSE(f.contains(2, {-0.25})); // a negative power needs an odd exponent >= 3
    EXPECT_TRUE(f.contains(2, {-0.125}));
    EXPECT_FALSE(f.contains(1, {0.75}));
    EXPECT_TRUE(f.contains(0, {1.0}));
    EXPECT_THROW(FilterBasis::power_levels(0.5, {0.75}), Error);
}

TEST(FilterTest, CoordinateTailsStartOnTheDiagonal)
{
    auto d = FilterBasis::coordinate_tails(2).draws(3, 3);
    EXPECT_EQ(d[0], (Element{3, 3}));
    EXPECT_EQ(d[1], (Element{3, 4}));
    EXPECT_EQ(d[2], (Element{4, 4}));
}

TEST(ActionTest, DecayIsAssociativeWithinSnapping)
{
    auto m = decay_model();
    EXPECT_TRUE(m.associativity().passed);
    EXPECT_LE(m.max_snap_error(), 0.005 + 1e-12);
    EXPECT_EQ(m.image(m.level_draws(1).front(), 100), 50u);
}

TEST(ActionTest, SnapToleranceIsEnforced)
{
    auto space = std::make_shared<const Space>(unit_grid(100));
    try {
        ActionModel(space, Semigroup::nat_add(), FilterBasis::add_tails(), {.kind = ActionKind::ScalePower, .base = 0.3, .x0 = 0, .args = {}},
                    {.per_level = 4, .max_level = 2, .snap_tolerance = 1e-6});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::SnapToleranceExceeded);
    }
}

TEST(ActionTest, IterateActsAsNthPower)
{
    // Points are the affine maps z -> 2^-e z + 1 - 2^-e (fixed point 1) sampled at z = 0 and 1;
    // the n-th iterate of the map with exponent e is the map with exponent n e.
    std::vector<std::vector<double>> maps;
    for (int e = 1; e <= 9; ++e) maps.push_back({1.0 - std::ldexp(1.0, -e), 1.0});
    auto space = std::make_shared<const Space>(Space::metric(maps, MetricKind::Euclidean));
    ActionModel m(space, Semigroup::nat_mul(), FilterBasis::mul_tails(),
                  {.kind = ActionKind::Iterate, .base = 0.5, .x0 = 0, .args = {0, 1}},
                  {.per_level = 3, .max_level = 1});
    EXPECT_EQ(m.image(m.level_draws(1)[1], 0), 1u);
    EXPECT_EQ(m.image(m.level_draws(1)[2], 0), 2u);
    EXPECT_EQ(m.image(m.level_draws(1)[2], 2), 8u);
}

TEST(LimitTest, DecayAbsorptionLevel)
{
    auto m = decay_model();
    const auto& s = m.space();
    EXPECT_EQ(absorbs(m, s.ball(0, 0.1), s.singleton(100)), std::optional<std::size_t>(4));
}

TEST(LimitTest, DecayOmegaIsOrigin)
{
    auto m = decay_model();
    auto fam = metric_chain_family(m.space(), 1.0, 3);
    auto w = omega_limit(m, m.space().singleton(100), fam);
    EXPECT_TRUE(w.points.test(0));
    EXPECT_TRUE(equal_at_resolution(w.points, m.space().singleton(0), fam, 3));
    EXPECT_EQ(w.witnesses.size(), w.points.count());

    auto j = prolongational_limit(m, 100, fam);
    EXPECT_TRUE(equal_at_resolution(j.points, m.space().singleton(0), fam, 3));
}

TEST(LimitTest, AttractionAndItsSequenceForm)
{
    auto m = decay_model();
    auto fam = metric_chain_family(m.space(), 1.0, 3);
    const auto& s = m.space();
    auto yes = attracts(m, s.singleton(0), s.all(), fam);
    EXPECT_TRUE(yes.attracts);
    EXPECT_TRUE(yes.formulations_agree);
    for (const auto& lvl : yes.level) EXPECT_TRUE(lvl.has_value());

    auto no = attracts(m, s.singleton(100), s.singleton(100), fam);
    EXPECT_FALSE(no.attracts);
    EXPECT_TRUE(no.formulations_agree);
    ASSERT_TRUE(no.failure.has_value());
    EXPECT_FALSE(star(s.singleton(100), fam.at(no.failure->index)).test(no.failure->image));
}

TEST(HypothesisTest, AdditiveTailsSatisfyAll)
{
    auto m = decay_model(6);
    for (const auto& v : check_hypotheses(m)) EXPECT_TRUE(v.passed) << v.name << ": " << v.witness;
}

TEST(HypothesisTest, MultiplicativeTailsFailDivisibility)
{
    auto space = std::make_shared<const Space>(unit_grid(4));
    ActionModel m(space, Semigroup::nat_mul(), FilterBasis::mul_tails(), {}, {.per_level = 4, .max_level = 3});
    auto hs = check_hypotheses(m);
    EXPECT_TRUE(find_verdict(hs, "H1")->passed);
    EXPECT_TRUE(find_verdict(hs, "H2")->passed);
    const Verdict* h3 = find_verdict(hs, "H3");
    EXPECT_FALSE(h3->passed);
    EXPECT_NE(h3->witness.find("s=(2)"), std::string::npos) << h3->witness;
}

TEST(TaxonomyTest, DecayIsDissipativeAndCompact)
{
    auto m = decay_model();
    auto fam = metric_chain_family(m.space(), 1.0, 3);
    const auto& s = m.space();
    auto vs = check_dissipativity(m, fam, {s.all(), s.singleton(100)}, s.all());
    for (const auto& v : vs)
        if (v.applicable) {
            EXPECT_TRUE(v.passed) << v.name << ": " << v.witness;
        }
    EXPECT_FALSE(find_verdict(vs, "eventually_compact")->applicable);
}
