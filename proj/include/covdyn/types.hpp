#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace covdyn {

using PointIndex = std::size_t;

/// Subset of a finite point set, one bit per point.
using PointSet = boost::dynamic_bitset<>;

/// Subset of the coverings of a family, one bit per covering index.
using IndexSet = boost::dynamic_bitset<>;

inline PointSet make_set(std::size_t n, std::initializer_list<PointIndex> points)
{
    PointSet s(n);
    for (PointIndex p : points) s.set(p);
    return s;
}

inline PointSet make_set(std::size_t n, std::span<const PointIndex> points)
{
    PointSet s(n);
    for (PointIndex p : points) s.set(p);
    return s;
}

inline PointSet full_set(std::size_t n)
{
    PointSet s(n);
    s.set();
    return s;
}

inline std::vector<PointIndex> elements_of(const PointSet& s)
{
    std::vector<PointIndex> out;
    out.reserve(s.count());
    for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) out.push_back(i);
    return out;
}

template <class F>
void for_each_point(const PointSet& s, F&& f)
{
    for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) f(static_cast<PointIndex>(i));
}

} // namespace covdyn
