#include "covdyn/function_model.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace covdyn;

namespace {

/// Lipschitz-1 maps on {0, 1} with values on the 1/4 grid in [-1, 1].
FunctionSpaceModel lipschitz_model()
{
    std::vector<std::vector<double>> values;
    for (int a = -4; a <= 4; ++a)
        for (int b = -4; b <= 4; ++b)
            if (std::abs(a - b) <= 4) values.push_back({a / 4.0, b / 4.0});
    return FunctionSpaceModel({{0.0}, {1.0}}, 1, std::move(values));
}

} // namespace

TEST(FunctionModelTest, StarFormulaMatchesMemberEnumeration)
{
    auto m = lipschitz_model();
    const std::vector<PointwiseLevel> levels{{{0}, 2.0}, {{0, 1}, 0.5}, {{0, 1}, 0.125}, {{1}, 0.3}};
    for (const auto& level : levels) {
        const Covering u = m.covering(level);
        for (PointIndex f = 0; f < m.function_count(); ++f)
            for (PointIndex g = 0; g < m.function_count(); ++g)
                EXPECT_EQ(u.point_star(g).test(f), m.in_star(f, g, level)) << "eps " << level.eps;
    }
}

TEST(FunctionModelTest, ChainOfShrinkingLevels)
{
    auto m = lipschitz_model();
    auto fam = m.family({{{0}, 4.0}, {{0, 1}, 1.0}, {{0, 1}, 0.25}});
    EXPECT_EQ(fam.size(), 3u);
    EXPECT_EQ(fam.at(0).size(), 1u); // every value lies in one ball of radius 4
    EXPECT_EQ(m.value(0, 1).size(), 1u);
    EXPECT_THROW(m.family({{{0, 1}, 0.25}, {{0}, 4.0}}), Error);
}

TEST(FunctionModelTest, ValidatesShapes)
{
    EXPECT_THROW(FunctionSpaceModel({{0.0}}, 1, {{1.0, 2.0}}), Error);
    EXPECT_THROW(FunctionSpaceModel({{0.0}}, 1, {}), Error);
    EXPECT_DOUBLE_EQ(value_norm(std::vector<double>{2.0, 2.0}), 2.0 * std::sqrt(2.0));
}
