#pragma once

#include "covdyn/covering.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace covdyn::testing {

/// Points 0, step, 2*step, ..., 1 on the real line.
inline Space unit_grid(std::size_t intervals)
{
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i <= intervals; ++i) pts.push_back({static_cast<double>(i) / static_cast<double>(intervals)});
    return Space::metric(std::move(pts), MetricKind::Euclidean);
}

inline PointSet set_from_mask(std::size_t n, std::size_t mask)
{
    PointSet s(n);
    for (std::size_t b = 0; b < n; ++b)
        if (mask >> b & 1) s.set(b);
    return s;
}

inline std::vector<Space> all_topologies(std::size_t n) { return all_finite_topologies(n); }

} // namespace covdyn::testing
