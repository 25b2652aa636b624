#include "covdyn/space.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstring>
#include <limits>
#include <set>
#include <sstream>

namespace covdyn {

namespace {

std::uint64_t next_token()
{
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

std::string coord_key(std::span<const double> coords)
{
    std::string key;
    key.reserve(coords.size() * sizeof(double));
    for (double v : coords) {
        if (v == 0.0) v = 0.0; // fold -0.0
        char buf[sizeof(double)];
        std::memcpy(buf, &v, sizeof(double));
        key.append(buf, sizeof(double));
    }
    return key;
}

double raw_distance(MetricKind kind, std::span<const double> a, std::span<const double> b)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (kind == MetricKind::Sup)
            acc = std::max(acc, d);
        else
            acc += d * d;
    }
    return kind == MetricKind::Sup ? acc : std::sqrt(acc);
}

} // namespace

std::string_view errc_name(Errc code) noexcept
{
    switch (code) {
    case Errc::MetricAxiomViolation: return "MetricAxiomViolation";
    case Errc::DuplicatePoint: return "DuplicatePoint";
    case Errc::NotMetricSpace: return "NotMetricSpace";
    case Errc::NotClosedUnderUnion: return "NotClosedUnderUnion";
    case Errc::NotClosedUnderIntersection: return "NotClosedUnderIntersection";
    case Errc::MissingEmptyOrFull: return "MissingEmptyOrFull";
    case Errc::NotACovering: return "NotACovering";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::SpaceMismatch: return "SpaceMismatch";
    case Errc::DegenerateChain: return "DegenerateChain";
    case Errc::TooManyOpens: return "TooManyOpens";
    case Errc::ChainKindUnsupported: return "ChainKindUnsupported";
    case Errc::FamilyMismatch: return "FamilyMismatch";
    case Errc::NotUpwardHereditary: return "NotUpwardHereditary";
    case Errc::NotDecreasing: return "NotDecreasing";
    case Errc::NotClosed: return "NotClosed";
    case Errc::UnboundedTestset: return "UnboundedTestset";
    case Errc::UnknownTestset: return "UnknownTestset";
    case Errc::UnknownScenario: return "UnknownScenario";
    case Errc::SchemaError: return "SchemaError";
    case Errc::SnapToleranceExceeded: return "SnapToleranceExceeded";
    case Errc::NestingViolation: return "NestingViolation";
    case Errc::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

std::string_view metric_name(MetricKind kind) noexcept
{
    return kind == MetricKind::Sup ? "sup" : "euclidean";
}

MetricKind parse_metric(std::string_view name)
{
    if (name == "euclidean") return MetricKind::Euclidean;
    if (name == "sup") return MetricKind::Sup;
    throw Error(Errc::InvalidArgument, "unknown metric '" + std::string(name) + "'");
}

std::string format_coords(std::span<const double> coords)
{
    // Shortest text that reads back to the same double, so labels are exact and readable.
    std::string out = "(";
    char buf[32];
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) out += ',';
        const auto r = std::to_chars(buf, buf + sizeof buf, coords[i]);
        out.append(buf, r.ptr);
    }
    return out + ")";
}

Space Space::metric(std::vector<std::vector<double>> coords, MetricKind kind)
{
    if (coords.empty()) throw Error(Errc::EmptyInput, "metric space needs at least one point");
    const std::size_t dim = coords.front().size();
    for (const auto& c : coords) {
        if (c.size() != dim) throw Error(Errc::InvalidArgument, "points have differing dimensions");
        for (double v : c)
            if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "non-finite coordinate");
    }

    Space s;
    s.geometry_ = GeometryKind::Metric;
    s.metric_ = kind;
    s.token_ = next_token();
    s.coords_ = std::move(coords);
    s.labels_.reserve(s.coords_.size());
    for (const auto& c : s.coords_) s.labels_.push_back(format_coords(c));
    s.index_coordinates();

    // Symmetry and identity hold by construction of the distance; the triangle
    // inequality is checked on every triple to guard against rounding surprises.
    const std::size_t n = s.size();
    std::vector<double> d(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) d[a * n + b] = raw_distance(kind, s.coords_[a], s.coords_[b]);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (d[a * n + b] != d[b * n + a])
                throw Error(Errc::MetricAxiomViolation, "symmetry fails for pair " + s.labels_[a] + ", " + s.labels_[b]);
            if (d[a * n + b] <= 0.0)
                throw Error(Errc::MetricAxiomViolation, "zero distance between " + s.labels_[a] + " and " + s.labels_[b]);
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                const double lhs = d[a * n + c];
                const double rhs = d[a * n + b] + d[b * n + c];
                if (lhs > rhs * (1.0 + 1e-12) + 1e-300)
                    throw Error(Errc::MetricAxiomViolation, "triangle inequality fails for " + s.labels_[a] + ", " +
                                                                 s.labels_[b] + ", " + s.labels_[c]);
            }
    return s;
}

Space Space::finite_topology(std::vector<std::string> labels, std::vector<PointSet> opens)
{
    if (labels.empty()) throw Error(Errc::EmptyInput, "finite topology needs at least one point");
    {
        std::set<std::string> seen(labels.begin(), labels.end());
        if (seen.size() != labels.size()) throw Error(Errc::DuplicatePoint, "repeated point label");
    }
    const std::size_t n = labels.size();
    for (const auto& o : opens)
        if (o.size() != n) throw Error(Errc::InvalidArgument, "open set has wrong universe size");

    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());

    const PointSet empty(n);
    const PointSet full = full_set(n);
    auto has = [&](const PointSet& s) { return std::binary_search(opens.begin(), opens.end(), s); };
    if (!has(empty) || !has(full)) throw Error(Errc::MissingEmptyOrFull, "opens must contain the empty set and the whole space");

    auto describe = [&](const PointSet& s) {
        std::string out = "{";
        bool first = true;
        for_each_point(s, [&](PointIndex p) {
            if (!first) out += ',';
            out += labels[p];
            first = false;
        });
        return out + "}";
    };
    for (std::size_t i = 0; i < opens.size(); ++i)
        for (std::size_t j = i + 1; j < opens.size(); ++j) {
            if (!has(opens[i] | opens[j]))
                throw Error(Errc::NotClosedUnderUnion, describe(opens[i]) + " u " + describe(opens[j]));
            if (!has(opens[i] & opens[j]))
                throw Error(Errc::NotClosedUnderIntersection, describe(opens[i]) + " n " + describe(opens[j]));
        }

    Space s;
    s.geometry_ = GeometryKind::FiniteTopology;
    s.token_ = next_token();
    s.labels_ = std::move(labels);
    s.opens_ = std::move(opens);
    return s;
}

Space Space::sampled(std::vector<std::vector<double>> coords, std::vector<std::string> labels)
{
    if (coords.empty()) throw Error(Errc::EmptyInput, "sampled space needs at least one point");
    if (!labels.empty() && labels.size() != coords.size())
        throw Error(Errc::InvalidArgument, "label count does not match point count");
    Space s;
    s.geometry_ = GeometryKind::Sampled;
    s.token_ = next_token();
    s.coords_ = std::move(coords);
    if (labels.empty())
        for (const auto& c : s.coords_) labels.push_back(format_coords(c));
    s.labels_ = std::move(labels);
    s.index_coordinates();
    return s;
}

void Space::index_coordinates()
{
    by_coords_.clear();
    for (PointIndex p = 0; p < coords_.size(); ++p) {
        auto [it, inserted] = by_coords_.emplace(coord_key(coords_[p]), p);
        if (!inserted) throw Error(Errc::DuplicatePoint, "coordinates " + format_coords(coords_[p]) + " repeated");
    }
}

MetricKind Space::metric_kind() const
{
    if (!is_metric()) throw Error(Errc::NotMetricSpace, "space has no metric");
    return metric_;
}

std::optional<PointIndex> Space::find_label(std::string_view label) const
{
    for (PointIndex p = 0; p < labels_.size(); ++p)
        if (labels_[p] == label) return p;
    return std::nullopt;
}

std::span<const double> Space::coords(PointIndex p) const
{
    if (coords_.empty()) throw Error(Errc::InvalidArgument, "space has no coordinates");
    return coords_.at(p);
}

double Space::distance(PointIndex a, PointIndex b) const
{
    if (!is_metric()) throw Error(Errc::NotMetricSpace, "distance requested on a non-metric space");
    return raw_distance(metric_, coords_.at(a), coords_.at(b));
}

PointSet Space::ball(PointIndex center, double radius) const
{
    if (!is_metric()) throw Error(Errc::NotMetricSpace, "ball requested on a non-metric space");
    if (!(radius > 0.0)) throw Error(Errc::InvalidArgument, "ball radius must be positive");
    PointSet out(size());
    for (PointIndex y = 0; y < size(); ++y)
        if (distance(center, y) < radius) out.set(y);
    return out;
}

PointSet Space::singleton(PointIndex p) const
{
    PointSet s(size());
    s.set(p);
    return s;
}

bool Space::is_open(const PointSet& s) const
{
    if (geometry_ != GeometryKind::FiniteTopology) return true;
    return std::binary_search(opens_.begin(), opens_.end(), s);
}

const std::vector<PointSet>& Space::opens() const
{
    if (geometry_ != GeometryKind::FiniteTopology) throw Error(Errc::InvalidArgument, "explicit opens only exist for finite topologies");
    return opens_;
}

PointSet Space::topological_closure(const PointSet& s) const
{
    if (geometry_ != GeometryKind::FiniteTopology) return s;
    PointSet outside(size());
    for (const auto& o : opens_)
        if (!o.intersects(s)) outside |= o;
    return ~outside;
}

bool Space::is_hausdorff() const
{
    if (geometry_ != GeometryKind::FiniteTopology) return true;
    for (PointIndex x = 0; x < size(); ++x)
        for (PointIndex y = x + 1; y < size(); ++y) {
            bool separated = false;
            for (const auto& u : opens_) {
                if (!u.test(x) || u.test(y)) continue;
                for (const auto& v : opens_)
                    if (v.test(y) && !v.intersects(u)) {
                        separated = true;
                        break;
                    }
                if (separated) break;
            }
            if (!separated) return false;
        }
    return true;
}

std::optional<PointIndex> Space::find(std::span<const double> coords) const
{
    auto it = by_coords_.find(coord_key(coords));
    if (it == by_coords_.end()) return std::nullopt;
    return it->second;
}

Snap Space::nearest(std::span<const double> coords) const
{
    if (coords_.empty()) throw Error(Errc::InvalidArgument, "space has no coordinates");
    if (auto exact = find(coords)) return {*exact, 0.0};
    Snap best{0, std::numeric_limits<double>::infinity()};
    for (PointIndex p = 0; p < coords_.size(); ++p) {
        const auto& c = coords_[p];
        if (c.size() != coords.size()) throw Error(Errc::InvalidArgument, "coordinate dimension mismatch");
        double err = 0.0;
        for (std::size_t i = 0; i < c.size() && err < best.error; ++i) err = std::max(err, std::abs(c[i] - coords[i]));
        if (err < best.error) best = {p, err};
    }
    return best;
}

std::vector<Space> all_finite_topologies(std::size_t n)
{
    if (n > 4) throw Error(Errc::InvalidArgument, "topology enumeration is limited to 4 points");
    const std::size_t full = (std::size_t{1} << n) - 1;
    std::vector<std::size_t> middle;
    for (std::size_t s = 1; s < full; ++s) middle.push_back(s);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));

    std::vector<Space> out;
    for (std::size_t pick = 0; pick < (std::size_t{1} << middle.size()); ++pick) {
        std::vector<std::size_t> fam{0, full};
        for (std::size_t b = 0; b < middle.size(); ++b)
            if (pick >> b & 1) fam.push_back(middle[b]);
        const auto has = [&](std::size_t s) { return std::find(fam.begin(), fam.end(), s) != fam.end(); };
        bool closed = true;
        for (std::size_t a : fam)
            for (std::size_t b : fam)
                if (!has(a | b) || !has(a & b)) closed = false;
        if (!closed) continue;
        std::vector<PointSet> opens;
        for (std::size_t s : fam) {
            PointSet o(n);
            for (std::size_t b = 0; b < n; ++b)
                if (s >> b & 1) o.set(b);
            opens.push_back(std::move(o));
        }
        out.push_back(Space::finite_topology(labels, std::move(opens)));
    }
    return out;
}

} // namespace covdyn
