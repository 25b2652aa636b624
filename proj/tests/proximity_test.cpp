#include "covdyn/proximity.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace covdyn;
using covdyn::testing::all_topologies;
using covdyn::testing::unit_grid;

namespace {

/// Largest level at which some sample center lies strictly within the level radius of both points.
long brute_threshold(const Space& s, PointIndex x, PointIndex y, double eps0, std::size_t depth)
{
    long t = -1;
    for (std::size_t i = 0; i <= depth; ++i) {
        const double r = std::ldexp(eps0, -2 * static_cast<int>(i));
        bool shared = false;
        for (PointIndex c = 0; c < s.size() && !shared; ++c) shared = s.distance(c, x) < r && s.distance(c, y) < r;
        if (!shared) break;
        t = static_cast<long>(i);
    }
    return t == static_cast<long>(depth) ? PColl::infinity : t;
}

} // namespace

TEST(ProximityTest, OrderExtremes)
{
    auto s = unit_grid(20);
    auto fam = metric_chain_family(s, 1.0, 3);
    auto o = PColl::full(fam);
    auto none = PColl::none(fam);
    for (long t = -1; t <= 3; ++t) {
        auto e = PColl::from_threshold(fam, t);
        EXPECT_TRUE(precedes(o, e));
        EXPECT_TRUE(precedes(e, none));
        EXPECT_TRUE(precedes(e, e));
    }
    EXPECT_EQ(o.threshold(), PColl::infinity);
    EXPECT_EQ(none.threshold(), -1);
    EXPECT_EQ(PColl::from_threshold(fam, 3), o); // the full chain is canonically infinite
}

TEST(ProximityTest, FamilyMismatch)
{
    auto s = unit_grid(20);
    auto f1 = metric_chain_family(s, 1.0, 2);
    auto f2 = metric_chain_family(s, 1.0, 2);
    try {
        precedes(PColl::full(f1), PColl::full(f2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::FamilyMismatch);
    }
}

TEST(ProximityTest, NOpOnChain)
{
    auto s = unit_grid(100);
    // No level has a member equal to the whole space, so no level double-refines itself.
    auto fam = metric_chain_family(s, 0.5, 3);
    for (unsigned n = 1; n <= 3; ++n) {
        EXPECT_EQ(n_op(PColl::full(fam), n), PColl::full(fam));
        EXPECT_TRUE(n_op(PColl::none(fam), n).is_empty());
        for (long t = 0; t < 3; ++t) {
            const long expect = t >= static_cast<long>(n) ? t - static_cast<long>(n) : -1;
            EXPECT_EQ(n_op(PColl::from_threshold(fam, t), n).threshold(), expect) << "t=" << t << " n=" << n;
        }
    }
}

TEST(ProximityTest, NOpIsOrderPreserving)
{
    for (const auto& sp : all_topologies(3)) {
        auto fam = finite_all_coverings_family(sp);
        // Collections generated by rho are hereditary; compare all pairs of them.
        std::vector<PColl> cs;
        for (PointIndex x = 0; x < 3; ++x)
            for (PointIndex y = 0; y < 3; ++y) cs.push_back(rho(x, y, fam));
        for (const auto& e : cs)
            for (const auto& d : cs) {
                if (precedes(e, d)) {
                    EXPECT_TRUE(precedes(n_op(e, 1), n_op(d, 1)));
                }
            }
    }
}

TEST(ProximityTest, ConvergenceExamples)
{
    auto s = unit_grid(10);
    auto fam = metric_chain_family(s, 1.0, 3);
    std::vector<PColl> constant_o(4, PColl::full(fam));
    EXPECT_TRUE(converges_to_O(constant_o));

    std::vector<PColl> rising;
    for (long t = 0; t <= 3; ++t) rising.push_back(PColl::from_threshold(fam, t));
    EXPECT_TRUE(converges_to_O(rising));
    auto trace = convergence_trace(rising);
    ASSERT_TRUE(trace.settle[3].has_value());
    EXPECT_EQ(*trace.settle[3], 3u);
    EXPECT_EQ(*trace.settle[0], 0u);

    std::vector<PColl> stuck(5, PColl::from_threshold(fam, 0));
    EXPECT_FALSE(converges_to_O(stuck));
}

TEST(ProximityTest, RhoOnGridMatchesBruteForce)
{
    auto s = unit_grid(100);
    const std::size_t depth = 6;
    auto fam = metric_chain_family(s, 1.0, depth);
    auto x = s.find(std::vector<double>{0.0}).value();
    auto y = s.find(std::vector<double>{0.1}).value();
    EXPECT_EQ(rho(x, y, fam).threshold(), brute_threshold(s, x, y, 1.0, depth));
    EXPECT_EQ(rho(x, y, fam).threshold(), 2);
    for (PointIndex a = 0; a < s.size(); a += 7)
        for (PointIndex b = 0; b < s.size(); b += 5)
            EXPECT_EQ(rho(a, b, fam).threshold(), brute_threshold(s, a, b, 1.0, depth)) << a << "," << b;
}

TEST(ProximityTest, RhoSymmetricAndReflexive)
{
    auto s = unit_grid(59);
    auto fam = metric_chain_family(s, 1.0, 4);
    for (PointIndex a = 0; a < s.size(); ++a) {
        EXPECT_TRUE(rho(a, a, fam).is_full());
        for (PointIndex b = 0; b < s.size(); ++b) EXPECT_EQ(rho(a, b, fam), rho(b, a, fam));
    }
}

TEST(ProximityTest, DistinctPointsInHausdorffSpaces)
{
    for (const auto& sp : all_topologies(3)) {
        if (!sp.is_hausdorff()) continue;
        auto fam = finite_all_coverings_family(sp);
        for (PointIndex a = 0; a < 3; ++a)
            for (PointIndex b = 0; b < 3; ++b) EXPECT_EQ(rho(a, b, fam).is_full(), a == b);
    }
}

TEST(ProximityTest, TriangleLikeBound)
{
    auto s = unit_grid(29);
    auto fam = metric_chain_family(s, 1.0, 4);
    for (PointIndex x = 0; x < s.size(); ++x)
        for (PointIndex y = 0; y < s.size(); ++y)
            for (PointIndex z = 0; z < s.size(); ++z)
                ASSERT_TRUE(precedes(rho(x, y, fam), n_op(rho(x, z, fam) & rho(z, y, fam), 1)));
}

TEST(ProximityTest, PointSetAndSemiExamples)
{
    auto s = unit_grid(100);
    auto fam = metric_chain_family(s, 1.0, 6);
    const PointSet a = make_set(s.size(), {10, 20, 30});
    EXPECT_TRUE(rho_point_set(20, a, fam).is_full());
    EXPECT_TRUE(rho_semi(a, make_set(s.size(), {10, 30}), fam).is_full());

    const PointSet zero = s.singleton(0);
    const PointSet b = make_set(s.size(), {0, 100});
    EXPECT_EQ(rho_semi(zero, b, fam), rho(100, 0, fam));
    EXPECT_EQ(rho_semi(zero, b, fam).threshold(), brute_threshold(s, 100, 0, 1.0, 6));
}

TEST(ProximityTest, EmptyArgumentsThrow)
{
    auto s = unit_grid(5);
    auto fam = metric_chain_family(s, 1.0, 1);
    try {
        rho_semi(s.empty_set(), s.all(), fam);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::EmptyInput);
    }
}

TEST(ProximityTest, ClosureCharacterisations)
{
    auto s = unit_grid(30);
    auto fam = metric_chain_family(s, 1.0, 3); // finest stars hold neighbours, so closures grow
    const PointSet a = make_set(s.size(), {3, 4, 17});
    const PointSet cls = closure(a, fam);
    for (PointIndex x = 0; x < s.size(); ++x) {
        EXPECT_EQ(rho_point_set(x, a, fam).is_full(), cls.test(x));
        EXPECT_EQ(rho_point_set(x, cls, fam), rho_point_set(x, a, fam));
    }
    EXPECT_TRUE(rho_semi(a, cls, fam).is_full());
    EXPECT_FALSE(rho_semi(a, make_set(s.size(), {3, 25}), fam).is_full());
}

TEST(ProximityTest, MonotoneInTheSet)
{
    auto s = unit_grid(30);
    auto fam = metric_chain_family(s, 1.0, 3);
    const PointSet a = make_set(s.size(), {5});
    const PointSet b = make_set(s.size(), {5, 12, 29});
    for (PointIndex x = 0; x < s.size(); ++x) EXPECT_TRUE(precedes(rho_point_set(x, b, fam), rho_point_set(x, a, fam)));
}

TEST(ProximityTest, HereditaryCheckOnFiniteFamilies)
{
    auto sp = all_topologies(2).back();
    auto fam = finite_all_coverings_family(sp);
    // Keeping only a fine covering while dropping the coarse one violates upward heredity.
    std::optional<std::size_t> finest = fam.finest();
    ASSERT_TRUE(finest.has_value());
    IndexSet bits(fam.size());
    bits.set(*finest);
    if (fam.size() > 1) {
        try {
            PColl::from_indices(fam, bits);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::NotUpwardHereditary);
        }
    }
}
