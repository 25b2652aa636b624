#include "covdyn/covering.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace covdyn;
using covdyn::testing::all_topologies;
using covdyn::testing::set_from_mask;
using covdyn::testing::unit_grid;

namespace {

Space sierpinski()
{
    return Space::finite_topology({"a", "b"}, {set_from_mask(2, 0), set_from_mask(2, 1), set_from_mask(2, 3)});
}

Space discrete(std::size_t n)
{
    std::vector<std::string> labels;
    std::vector<PointSet> opens;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
    for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) opens.push_back(set_from_mask(n, m));
    return Space::finite_topology(labels, opens);
}

} // namespace

TEST(CoveringTest, StarOfPointAndSet)
{
    auto s = Space::metric({{0.0}, {1.0}, {2.0}, {3.0}}, MetricKind::Euclidean);
    Covering u(s, {make_set(4, {0, 1}), make_set(4, {1, 2}), make_set(4, {3})});
    EXPECT_EQ(star(s.singleton(1), u), make_set(4, {0, 1, 2}));
    EXPECT_EQ(star(s.singleton(3), u), make_set(4, {3}));
    EXPECT_EQ(star(make_set(4, {0, 3}), u), make_set(4, {0, 1, 3}));
}

TEST(CoveringTest, RejectsNonCovering)
{
    auto s = Space::metric({{0.0}, {1.0}}, MetricKind::Euclidean);
    try {
        Covering u(s, {make_set(2, {0})});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotACovering);
    }
}

TEST(CoveringTest, StarIsUnionOfPointStarsAndMonotone)
{
    auto s = unit_grid(20);
    auto fam = metric_chain_family(s, 0.5, 2);
    for (const auto& u : fam.coverings())
        for (std::size_t mask = 1; mask < 200; mask += 7) {
            PointSet y = set_from_mask(s.size(), mask * 2654435761u % (1u << 21));
            if (y.none()) continue;
            PointSet via_points(s.size());
            for_each_point(y, [&](PointIndex p) { via_points |= u.point_star(p); });
            // Direct definition: members meeting y.
            PointSet direct(s.size());
            for (const auto& m : u.members())
                if (m.intersects(y)) direct |= m;
            EXPECT_EQ(star(y, u), direct);
            EXPECT_EQ(via_points, direct);
            PointSet z = y;
            z.set(0);
            EXPECT_TRUE(star(y, u).is_subset_of(star(z, u)));
        }
}

TEST(CoveringTest, MetricChainDoubleRefinesByDistanceOracle)
{
    auto s = unit_grid(100);
    auto fam = metric_chain_family(s, 1.0, 5);
    ASSERT_EQ(fam.size(), 6u);
    // Independent oracle on distances: two intersecting fine balls fit in a coarse ball.
    for (std::size_t i = 1; i < fam.size(); ++i) {
        const double r = std::ldexp(1.0, -2 * static_cast<int>(i));
        const double big = 4.0 * r;
        bool oracle = true;
        for (PointIndex a = 0; a < s.size() && oracle; ++a)
            for (PointIndex b = a; b < s.size() && oracle; ++b) {
                const PointSet ua = s.ball(a, r) | s.ball(b, r);
                if (!s.ball(a, r).intersects(s.ball(b, r))) continue;
                bool fits = false;
                for (PointIndex c = 0; c < s.size() && !fits; ++c) {
                    bool inside = true;
                    for_each_point(ua, [&](PointIndex p) { inside = inside && s.distance(c, p) < big; });
                    fits = inside;
                }
                oracle = fits;
            }
        EXPECT_TRUE(oracle) << "level " << i;
        EXPECT_TRUE(fam.double_refines(i, i - 1));
        EXPECT_TRUE(double_refines(fam.at(i), fam.at(i - 1)));
    }
}

TEST(CoveringTest, DepthZeroAndOnePointChains)
{
    auto s = unit_grid(10);
    auto fam = metric_chain_family(s, 4.0, 0);
    ASSERT_EQ(fam.size(), 1u);
    EXPECT_EQ(fam.at(0).point_star(0), s.all());

    auto one = Space::metric({{0.5}}, MetricKind::Euclidean);
    auto f1 = metric_chain_family(one, 1.0, 4);
    for (const auto& u : f1.coverings()) EXPECT_EQ(u.members().size(), 1u);
}

TEST(CoveringTest, InvalidEpsilonIsDegenerate)
{
    auto s = unit_grid(4);
    try {
        metric_chain_family(s, 0.0, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DegenerateChain);
    }
}

TEST(CoveringTest, NRefinesAlongChain)
{
    auto s = unit_grid(40);
    auto fam = metric_chain_family(s, 1.0, 4);
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t n = 1; i + n < fam.size(); ++n)
            EXPECT_TRUE(n_refines(fam.at(i + n), fam.at(i), static_cast<unsigned>(n), fam.coverings())) << i << "," << n;
}

TEST(CoveringTest, NRefinesWithEmptyPoolNeedsDirectStep)
{
    auto s = unit_grid(40);
    auto fam = metric_chain_family(s, 1.0, 2);
    EXPECT_FALSE(n_refines(fam.at(0), fam.at(2), 2, {}));
    EXPECT_TRUE(n_refines(fam.at(2), fam.at(0), 1, {}));
}

TEST(CoveringTest, RefinementRelationsOnAllSmallTopologies)
{
    for (std::size_t n = 1; n <= 3; ++n)
        for (const auto& sp : all_topologies(n)) {
            auto covs = enumerate_open_coverings(sp);
            for (const auto& a : covs) {
                EXPECT_TRUE(refines(a, a));
                for (const auto& b : covs) {
                    if (double_refines(a, b)) {
                        EXPECT_TRUE(refines(a, b));
                    }
                    if (!refines(a, b)) continue;
                    for (const auto& c : covs) {
                        if (refines(b, c)) {
                            EXPECT_TRUE(refines(a, c));
                        }
                    }
                }
            }
        }
}

TEST(CoveringTest, AllCoveringsOfDiscreteTwoPointSpace)
{
    auto s = discrete(2);
    auto fam = finite_all_coverings_family(s);
    EXPECT_EQ(fam.size(), 5u); // subsets of {a},{b},{a,b} that cover
    EXPECT_TRUE(verify_admissible(fam, s).all_passed());
    Covering finest(s, {set_from_mask(2, 1), set_from_mask(2, 2)});
    bool present = false;
    for (const auto& u : fam.coverings()) present = present || u == finest;
    EXPECT_TRUE(present);
}

TEST(CoveringTest, SierpinskiCoverings)
{
    auto s = sierpinski();
    auto fam = finite_all_coverings_family(s);
    EXPECT_EQ(fam.size(), 2u);
    for (const auto& u : fam.coverings()) {
        EXPECT_TRUE(u.members().back() == s.all());
        EXPECT_EQ(u.point_star(1), s.all());
    }
    EXPECT_EQ(closure(s.singleton(0), fam), s.all());
    EXPECT_EQ(closure(s.singleton(0), fam), s.topological_closure(s.singleton(0)));
}

TEST(CoveringTest, OnePointSpaceHasSingleCovering)
{
    auto s = discrete(1);
    EXPECT_EQ(finite_all_coverings_family(s).size(), 1u);
}

TEST(CoveringTest, TooManyOpens)
{
    // A chain topology on 13 points has 14 opens.
    std::vector<std::string> labels;
    std::vector<PointSet> opens;
    for (std::size_t i = 0; i < 13; ++i) labels.push_back("p" + std::to_string(i));
    for (std::size_t k = 0; k <= 13; ++k) opens.push_back(set_from_mask(13, (std::size_t{1} << k) - 1));
    auto s = Space::finite_topology(labels, opens);
    try {
        finite_all_coverings_family(s);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::TooManyOpens);
    }
}

TEST(CoveringTest, MetricChainIsAdmissible)
{
    auto s = unit_grid(100);
    auto fam = metric_chain_family(s, 1.0, 5);
    auto rep = verify_admissible(fam, s);
    for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.witness;
}

TEST(CoveringTest, TruncatedChainFailsStarSeparation)
{
    auto s = unit_grid(100);
    auto fam = metric_chain_family(s, 1.0, 0);
    auto rep = verify_admissible(fam, s);
    const auto* c = rep.find("star_separation");
    ASSERT_NE(c, nullptr);
    EXPECT_FALSE(c->passed);
    EXPECT_FALSE(c->witness.empty());
}

TEST(CoveringTest, ClosureOnGrid)
{
    auto s = unit_grid(100);
    auto fam = metric_chain_family(s, 1.0, 5);
    EXPECT_EQ(closure(s.singleton(37), fam), s.singleton(37));
    EXPECT_EQ(closure(s.all(), fam), s.all());
    try {
        closure(s.empty_set(), fam);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::EmptyInput);
    }
}

TEST(CoveringTest, ClosureMatchesTopologyOnAdmissibleFiniteSpaces)
{
    for (std::size_t n = 1; n <= 3; ++n)
        for (const auto& sp : all_topologies(n)) {
            auto fam = finite_all_coverings_family(sp);
            const bool admissible = verify_admissible(fam, sp).all_passed();
            for (std::size_t m = 1; m < (std::size_t{1} << n); ++m) {
                PointSet y = set_from_mask(n, m);
                PointSet c = closure(y, fam);
                EXPECT_TRUE(y.is_subset_of(c));
                if (admissible) {
                    EXPECT_EQ(closure(c, fam), c);
                    EXPECT_EQ(c, sp.topological_closure(y));
                }
                for (std::size_t m2 = 1; m2 < (std::size_t{1} << n); ++m2) {
                    if ((m & m2) == m) {
                        EXPECT_TRUE(c.is_subset_of(closure(set_from_mask(n, m2), fam)));
                    }
                }
            }
        }
}

TEST(CoveringTest, RepleteClosure)
{
    auto s = discrete(2);
    auto all = finite_all_coverings_family(s);
    EXPECT_EQ(replete_closure(all, s).size(), all.size());

    Covering finest(s, {set_from_mask(2, 1), set_from_mask(2, 2)});
    auto single = AdmissibleFamily::finite({finest});
    auto rep = replete_closure(single, s);
    EXPECT_EQ(rep.size(), 5u);
    EXPECT_TRUE(verify_admissible(rep, s).all_passed());

    auto one = discrete(1);
    auto f1 = finite_all_coverings_family(one);
    EXPECT_EQ(replete_closure(f1, one).size(), 1u);
}

TEST(CoveringTest, RepleteClosureRejectsChains)
{
    auto s = unit_grid(4);
    try {
        replete_closure(metric_chain_family(s, 1.0, 1), s);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ChainKindUnsupported);
    }
}
