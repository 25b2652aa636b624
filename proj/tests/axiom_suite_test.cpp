#include "covdyn/axiom_suite.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace covdyn;
using covdyn::testing::all_topologies;
using covdyn::testing::unit_grid;

TEST(AxiomSuiteTest, GridPassesAllButTheUnionLaw)
{
    const Space s = unit_grid(100);
    const auto fam = metric_chain_family(s, 1.0, 6);
    const auto vs = run_axiom_suite(s, fam);
    ASSERT_EQ(vs.size(), 18u);
    for (const auto& v : vs) {
        EXPECT_TRUE(v.applicable) << v.name;
        if (v.name == "P9-3") {
            EXPECT_FALSE(v.passed) << v.witness;
        } else {
            EXPECT_TRUE(v.passed) << v.name << ": " << v.witness;
        }
    }
}

TEST(AxiomSuiteTest, BrokenSymmetryFailsP1Item1)
{
    const Space s = unit_grid(20);
    const auto fam = metric_chain_family(s, 1.0, 3);
    AxiomSuiteOptions o;
    o.rho = asymmetric_rho(fam);
    const auto vs = run_axiom_suite(s, fam, o);
    const Verdict* p = find_verdict(vs, "P1-1");
    ASSERT_NE(p, nullptr);
    EXPECT_FALSE(p->passed);
    EXPECT_NE(p->witness.find("rho(y,x)"), std::string::npos) << p->witness;
    EXPECT_TRUE(find_verdict(vs, "P1-2")->passed);
}

TEST(AxiomSuiteTest, FiniteTopologiesNeverFailAnApplicableItemButTheUnionLaw)
{
    std::size_t admissible = 0;
    for (std::size_t n = 1; n <= 3; ++n)
        for (const auto& sp : all_topologies(n)) {
            const auto fam = finite_all_coverings_family(sp);
            const auto vs = run_axiom_suite(sp, fam);
            if (vs.front().passed) ++admissible;
            for (const auto& v : vs) {
                if (v.applicable && v.name != "P9-3" && v.name != "admissible") {
                    EXPECT_TRUE(v.passed) << v.name << ": " << v.witness;
                }
            }
        }
    EXPECT_GE(admissible, 3u);
}

TEST(AxiomSuiteTest, SierpinskiSpaceIsNotAdmissible)
{
    PointSet a(2);
    a.set(0);
    const Space sp = Space::finite_topology({"a", "b"}, {PointSet(2), a, full_set(2)});
    const auto vs = run_axiom_suite(sp, finite_all_coverings_family(sp));
    EXPECT_FALSE(vs.front().passed);
    for (std::size_t i = 1; i < vs.size(); ++i) EXPECT_FALSE(vs[i].applicable) << vs[i].name;
}

TEST(AxiomSuiteTest, CantorKuratowskiSweepSeparatesControls)
{
    const Space s = unit_grid(100);
    const auto fam = metric_chain_family(s, 1.0, 6);
    const auto sw = cantor_kuratowski_sweep(s, fam);
    EXPECT_EQ(sw.holds, 100u);
    EXPECT_EQ(sw.negative_controls, 100u);
    EXPECT_EQ(sw.negative_controls_not_met, 100u);
    EXPECT_EQ(sw.violated, 0u);
}
