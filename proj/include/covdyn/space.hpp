#pragma once

#include "covdyn/error.hpp"
#include "covdyn/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace covdyn {

enum class MetricKind { Euclidean, Sup };
enum class GeometryKind { Metric, FiniteTopology, Sampled };

std::string_view metric_name(MetricKind kind) noexcept;
MetricKind parse_metric(std::string_view name);

/// Result of mapping an arbitrary coordinate vector onto the nearest sample point.
struct Snap {
    PointIndex point = 0;
    double error = 0.0; // sup-norm distance between requested and stored coordinates
};

/// A finite discretized phase space.
///
/// Three geometries are supported:
///  - Metric: points carry coordinates and a validated distance (euclidean or sup).
///  - FiniteTopology: points are opaque labels with an explicit lattice of open sets.
///  - Sampled: points carry coordinates but no metric; used for function-space
///    models whose uniformity comes entirely from the covering family.
///
/// For Metric and Sampled geometries every subset is open (the sample topology is
/// discrete). Spaces are immutable after construction.
class Space {
public:
    static Space metric(std::vector<std::vector<double>> coords, MetricKind kind);
    static Space finite_topology(std::vector<std::string> labels, std::vector<PointSet> opens);
    static Space sampled(std::vector<std::vector<double>> coords, std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    GeometryKind geometry() const noexcept { return geometry_; }
    bool is_metric() const noexcept { return geometry_ == GeometryKind::Metric; }
    MetricKind metric_kind() const;

    /// Identity token shared by copies; spaces built separately never share one.
    std::uint64_t token() const noexcept { return token_; }

    const std::string& label(PointIndex p) const { return labels_.at(p); }
    std::optional<PointIndex> find_label(std::string_view label) const;
    std::span<const double> coords(PointIndex p) const;
    bool has_coords() const noexcept { return !coords_.empty(); }

    double distance(PointIndex a, PointIndex b) const;

    /// Open ball {y : d(center, y) < radius}.
    PointSet ball(PointIndex center, double radius) const;

    PointSet empty_set() const { return PointSet(size()); }
    PointSet all() const { return full_set(size()); }
    PointSet singleton(PointIndex p) const;

    bool is_open(const PointSet& s) const;
    const std::vector<PointSet>& opens() const; // FiniteTopology only

    /// Topological closure; the identity on discrete sample topologies.
    PointSet topological_closure(const PointSet& s) const;
    bool is_hausdorff() const;

    /// Exact coordinate lookup.
    std::optional<PointIndex> find(std::span<const double> coords) const;

    /// Nearest stored point in the sup norm over coordinates.
    Snap nearest(std::span<const double> coords) const;

private:
    Space() = default;
    void index_coordinates();

    GeometryKind geometry_ = GeometryKind::Sampled;
    MetricKind metric_ = MetricKind::Euclidean;
    std::uint64_t token_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::vector<double>> coords_;
    std::vector<PointSet> opens_;
    std::unordered_map<std::string, PointIndex> by_coords_;
};

std::string format_coords(std::span<const double> coords);

/// Every topology on n labeled points a, b, c, ... (brute force; n <= 4).
std::vector<Space> all_finite_topologies(std::size_t n);

} // namespace covdyn
