#include "covdyn/space.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace covdyn;
using covdyn::testing::set_from_mask;

TEST(SpaceTest, ThreePointLine)
{
    auto s = Space::metric({{0.0}, {1.0}, {2.0}}, MetricKind::Euclidean);
    EXPECT_EQ(s.size(), 3u);
    EXPECT_TRUE(s.is_metric());
    EXPECT_DOUBLE_EQ(s.distance(0, 2), 2.0);
}

TEST(SpaceTest, GridHas101Points)
{
    auto s = covdyn::testing::unit_grid(100);
    EXPECT_EQ(s.size(), 101u);
}

TEST(SpaceTest, DuplicateCoordinatesRejected)
{
    try {
        Space::metric({{0.0, 0.0}, {0.0, 0.0}}, MetricKind::Euclidean);
        FAIL() << "expected DuplicatePoint";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DuplicatePoint);
    }
}

TEST(SpaceTest, BallIsStrict)
{
    auto s = Space::metric({{0.0}, {1.0}, {2.0}}, MetricKind::Euclidean);
    EXPECT_EQ(s.ball(0, 1.5), make_set(3, {0, 1}));
    EXPECT_EQ(s.ball(0, 1.0), make_set(3, {0})); // the point at exactly radius 1 is excluded
    EXPECT_EQ(s.ball(1, 10.0), s.all());
    EXPECT_EQ(s.ball(2, 0.5), s.singleton(2));
}

TEST(SpaceTest, BallOnFiniteTopologyThrows)
{
    auto s = Space::finite_topology({"a", "b"}, {set_from_mask(2, 0), set_from_mask(2, 1), set_from_mask(2, 3)});
    try {
        s.ball(0, 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotMetricSpace);
    }
}

TEST(SpaceTest, BallsAreMonotoneInRadius)
{
    auto s = covdyn::testing::unit_grid(150);
    const std::vector<double> radii{0.001, 0.0066, 0.01, 0.05, 0.2, 0.7, 2.0};
    for (PointIndex x = 0; x < s.size(); ++x)
        for (std::size_t i = 0; i + 1 < radii.size(); ++i)
            EXPECT_TRUE(s.ball(x, radii[i]).is_subset_of(s.ball(x, radii[i + 1])));
}

TEST(SpaceTest, SupMetric)
{
    auto s = Space::metric({{0.0, 0.0}, {3.0, 1.0}}, MetricKind::Sup);
    EXPECT_DOUBLE_EQ(s.distance(0, 1), 3.0);
}

TEST(SpaceTest, SierpinskiTopologyIsValid)
{
    auto s = Space::finite_topology({"a", "b"}, {set_from_mask(2, 0), set_from_mask(2, 1), set_from_mask(2, 3)});
    EXPECT_EQ(s.opens().size(), 3u);
    EXPECT_FALSE(s.is_hausdorff());
    EXPECT_EQ(s.topological_closure(s.singleton(0)), s.all());
    EXPECT_EQ(s.topological_closure(s.singleton(1)), s.singleton(1));
}

TEST(SpaceTest, DiscreteTopologyIsValid)
{
    std::vector<PointSet> opens;
    for (std::size_t m = 0; m < 8; ++m) opens.push_back(set_from_mask(3, m));
    auto s = Space::finite_topology({"a", "b", "c"}, opens);
    EXPECT_TRUE(s.is_hausdorff());
}

TEST(SpaceTest, MissingFullSetRejected)
{
    try {
        Space::finite_topology({"a", "b"}, {set_from_mask(2, 0), set_from_mask(2, 1)});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::MissingEmptyOrFull);
    }
}

TEST(SpaceTest, ValidationAcceptsExactlyLatticeFamilies)
{
    // Brute force over every family of subsets of a 3-point set containing the empty and full set.
    const std::size_t n = 3;
    int accepted = 0;
    for (std::size_t pick = 0; pick < 64; ++pick) {
        std::vector<std::size_t> fam{0, 7};
        for (std::size_t b = 0; b < 6; ++b)
            if (pick >> b & 1) fam.push_back(b + 1);
        bool closed = true;
        for (auto a : fam)
            for (auto b : fam) {
                closed = closed && std::find(fam.begin(), fam.end(), a | b) != fam.end();
                closed = closed && std::find(fam.begin(), fam.end(), a & b) != fam.end();
            }
        std::vector<PointSet> opens;
        for (auto m : fam) opens.push_back(set_from_mask(n, m));
        bool ok = true;
        try {
            Space::finite_topology({"a", "b", "c"}, opens);
        } catch (const Error& e) {
            ok = false;
            EXPECT_TRUE(e.code() == Errc::NotClosedUnderUnion || e.code() == Errc::NotClosedUnderIntersection);
        }
        EXPECT_EQ(ok, closed) << "family mask " << pick;
        accepted += ok;
    }
    EXPECT_EQ(accepted, 29); // the number of topologies on three labeled points
}

TEST(SpaceTest, NearestSnapsInSupNorm)
{
    auto s = covdyn::testing::unit_grid(10);
    const std::vector<double> q{0.33};
    auto snap = s.nearest(q);
    EXPECT_EQ(snap.point, 3u);
    EXPECT_NEAR(snap.error, 0.03, 1e-12);
    EXPECT_EQ(s.nearest(std::vector<double>{-0.0}).point, 0u);
}

TEST(SpaceTest, TopologyEnumerationMatchesKnownCounts)
{
    // Labeled topologies on 1..4 points: 1, 4, 29, 355.
    const std::vector<std::size_t> expected{1, 4, 29, 355};
    for (std::size_t n = 1; n <= 4; ++n) EXPECT_EQ(all_finite_topologies(n).size(), expected[n - 1]) << n;
}
