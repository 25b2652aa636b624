#include "covdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace covdyn {

namespace {

bool is_integral(double v)
{
    return std::isfinite(v) && v == std::floor(v);
}

void require_dim(const Element& e, std::size_t dim)
{
    if (e.size() != dim) throw Error(Errc::InvalidArgument, "element " + format_element(e) + " has the wrong dimension");
}

} // namespace

std::string format_element(const Element& e)
{
    return format_coords(e);
}

std::string_view semigroup_name(SemigroupKind kind) noexcept
{
    switch (kind) {
    case SemigroupKind::NatAdd: return "nat-add";
    case SemigroupKind::NatMul: return "nat-mul";
    case SemigroupKind::RealVectorAdd: return "real-vector-add";
    case SemigroupKind::ScalarMul: return "scalar-mul";
    }
    return "unknown";
}

std::string_view filter_name(FilterKind kind) noexcept
{
    switch (kind) {
    case FilterKind::AddTails: return "add-tails";
    case FilterKind::MulTails: return "mul-tails";
    case FilterKind::CoordinateTails: return "coordinate-tails";
    case FilterKind::PowerLevels: return "power-levels";
    case FilterKind::Explicit: return "explicit";
    }
    return "unknown";
}

std::string_view action_name(ActionKind kind) noexcept
{
    switch (kind) {
    case ActionKind::Identity: return "identity";
    case ActionKind::ScalePower: return "scale-power";
    case ActionKind::Iterate: return "iterate";
    case ActionKind::ComposeLinear: return "compose-linear";
    }
    return "unknown";
}

bool Semigroup::in_carrier(const Element& e) const
{
    if (e.size() != dim_) return false;
    switch (kind_) {
    case SemigroupKind::NatAdd: return is_integral(e[0]) && e[0] >= 0;
    case SemigroupKind::NatMul: return is_integral(e[0]) && e[0] >= 1;
    case SemigroupKind::RealVectorAdd:
        return std::all_of(e.begin(), e.end(), [](double v) { return std::isfinite(v) && v >= 0; });
    case SemigroupKind::ScalarMul: return std::isfinite(e[0]);
    }
    return false;
}

Element Semigroup::compose(const Element& a, const Element& b) const
{
    require_dim(a, dim_);
    require_dim(b, dim_);
    Element out(dim_);
    const bool multiplicative = kind_ == SemigroupKind::NatMul || kind_ == SemigroupKind::ScalarMul;
    for (std::size_t i = 0; i < dim_; ++i) out[i] = multiplicative ? a[i] * b[i] : a[i] + b[i];
    return out;
}

std::optional<Element> Semigroup::right_quotient(const Element& b, const Element& s) const
{
    require_dim(b, dim_);
    require_dim(s, dim_);
    Element a(dim_);
    switch (kind_) {
    case SemigroupKind::NatAdd:
    case SemigroupKind::RealVectorAdd:
        for (std::size_t i = 0; i < dim_; ++i) a[i] = b[i] - s[i];
        break;
    case SemigroupKind::NatMul:
        if (std::fmod(b[0], s[0]) != 0.0) return std::nullopt;
        a[0] = b[0] / s[0];
        break;
    case SemigroupKind::ScalarMul:
        if (s[0] == 0.0) {
            if (b[0] != 0.0) return std::nullopt;
            a[0] = 0.0;
        } else {
            a[0] = b[0] / s[0];
        }
        break;
    }
    if (!in_carrier(a)) return std::nullopt;
    return a;
}

std::optional<Element> Semigroup::left_quotient(const Element& b, const Element& s) const
{
    // Every carrier here is commutative.
    return right_quotient(b, s);
}

FilterBasis FilterBasis::power_levels(double contraction, std::vector<double> bases)
{
    if (!(contraction > 0.0 && contraction < 1.0)) throw Error(Errc::InvalidArgument, "contraction must lie in (0, 1)");
    if (bases.empty()) throw Error(Errc::InvalidArgument, "power levels need at least one base");
    for (double c : bases)
        if (c == 0.0 || std::abs(c) > contraction * (1 + 1e-12))
            throw Error(Errc::InvalidArgument, "base " + std::to_string(c) + " is not a nonzero contraction within the bound");
    FilterBasis f(FilterKind::PowerLevels, 1);
    f.contraction_ = contraction;
    f.bases_ = std::move(bases);
    return f;
}

FilterBasis FilterBasis::explicit_levels(std::size_t dim, std::vector<std::vector<Element>> levels)
{
    if (dim == 0 || levels.empty()) throw Error(Errc::InvalidArgument, "explicit filter needs a dimension and levels");
    for (const auto& level : levels) {
        if (level.empty()) throw Error(Errc::InvalidArgument, "explicit filter levels must be nonempty");
        for (const auto& e : level) require_dim(e, dim);
    }
    FilterBasis f(FilterKind::Explicit, dim);
    f.levels_ = std::move(levels);
    return f;
}

bool FilterBasis::contains(std::size_t level, const Element& e) const
{
    if (e.size() != dim_) return false;
    const double k = static_cast<double>(level);
    switch (kind_) {
    case FilterKind::AddTails: return is_integral(e[0]) && e[0] >= k;
    case FilterKind::MulTails: return is_integral(e[0]) && e[0] >= std::max(1.0, k);
    case FilterKind::CoordinateTails:
        return std::all_of(e.begin(), e.end(), [&](double v) { return std::isfinite(v) && v >= k; });
    case FilterKind::PowerLevels: {
        const double d = e[0];
        if (!std::isfinite(d)) return false;
        if (level == 0 && d == 1.0) return true; // T^0, the identity
        if (d == 0.0) return true;
        const std::size_t m = std::max<std::size_t>(level, 1);
        // d = c^j with |c| <= L and j >= m; a negative d needs an odd exponent.
        const std::size_t j = (d > 0 || m % 2 == 1) ? m : m + 1;
        return std::abs(d) <= std::pow(contraction_, static_cast<double>(j)) * (1 + 1e-12);
    }
    case FilterKind::Explicit:
        return level < levels_.size() && std::find(levels_[level].begin(), levels_[level].end(), e) != levels_[level].end();
    }
    return false;
}

std::vector<Element> FilterBasis::draws(std::size_t level, std::size_t count) const
{
    if (kind_ == FilterKind::Explicit) {
        if (level >= levels_.size()) return {};
        const auto& l = levels_[level];
        return {l.begin(), l.begin() + static_cast<std::ptrdiff_t>(std::min(count, l.size()))};
    }
    std::vector<Element> out;
    out.reserve(count);
    const double k = static_cast<double>(level);
    for (std::size_t i = 0; i < count; ++i) {
        switch (kind_) {
        case FilterKind::AddTails: out.push_back({k + static_cast<double>(i)}); break;
        case FilterKind::MulTails: out.push_back({std::max(1.0, k) + static_cast<double>(i)}); break;
        case FilterKind::CoordinateTails: {
            // Near-diagonal lattice points, starting on the diagonal (k, ..., k).
            Element e(dim_);
            for (std::size_t d = 0; d < dim_; ++d) e[d] = k + static_cast<double>((i + d) / dim_);
            out.push_back(std::move(e));
            break;
        }
        case FilterKind::PowerLevels: {
            if (level == 0 && i == 0) {
                out.push_back({1.0});
                break;
            }
            const std::size_t slot = level == 0 ? i - 1 : i;
            const std::size_t nb = bases_.size();
            const double c = bases_[slot % nb];
            const std::size_t j = std::max<std::size_t>(level, 1) + slot / nb;
            out.push_back({std::pow(c, static_cast<double>(j))});
            break;
        }
        case FilterKind::Explicit: break;
        }
    }
    return out;
}

std::optional<long> FilterBasis::integer_floor(std::size_t level) const
{
    if (kind_ == FilterKind::AddTails) return static_cast<long>(level);
    if (kind_ == FilterKind::MulTails) return std::max<long>(1, static_cast<long>(level));
    return std::nullopt;
}

ActionModel::ActionModel(std::shared_ptr<const Space> space, Semigroup semigroup, FilterBasis filter, ActionSpec spec,
                         ActionOptions options)
    : space_(std::move(space)), semigroup_(semigroup), filter_(std::move(filter)), spec_(std::move(spec)),
      options_(options)
{
    if (!space_) throw Error(Errc::InvalidArgument, "action needs a space");
    if (options_.per_level == 0) throw Error(Errc::InvalidArgument, "per-level sample budget must be positive");
    if (spec_.kind != ActionKind::Identity && !space_->has_coords())
        throw Error(Errc::InvalidArgument, "only the identity action is available on spaces without coordinates");
    if (filter_.dim() != semigroup_.dim()) throw Error(Errc::InvalidArgument, "filter and semigroup dimensions differ");
    if (spec_.kind == ActionKind::Iterate) {
        if (spec_.args.size() < 2) throw Error(Errc::InvalidArgument, "iterate action needs at least two sample arguments");
        if (space_->coords(0).size() != spec_.args.size())
            throw Error(Errc::InvalidArgument, "iterate action: point coordinates must be the values at the arguments");
    }

    std::map<Element, std::size_t> ids;
    level_draws_.resize(options_.max_level + 1);
    for (std::size_t k = 0; k <= options_.max_level; ++k) {
        auto draws = filter_.draws(k, options_.per_level);
        if (draws.empty()) throw Error(Errc::InvalidArgument, "filter has no elements at level " + std::to_string(k));
        for (auto& e : draws) {
            if (!semigroup_.in_carrier(e))
                throw Error(Errc::InvalidArgument, "sampled element " + format_element(e) + " lies outside the semigroup");
            if (!filter_.contains(k, e) || (k > 0 && !filter_.contains(k - 1, e))) {
                std::ostringstream os;
                os << "element " << format_element(e) << " drawn at level " << k << " breaks the nesting of the levels";
                throw Error(Errc::NestingViolation, os.str());
            }
            auto [it, inserted] = ids.emplace(e, elements_.size());
            if (inserted) elements_.push_back(e);
            level_draws_[k].push_back(it->second);
        }
    }
    tail_elements_.resize(options_.max_level + 1);
    for (std::size_t k = options_.max_level + 1; k-- > 0;) {
        std::vector<std::size_t> ids_k = level_draws_[k];
        if (k < options_.max_level) ids_k.insert(ids_k.end(), tail_elements_[k + 1].begin(), tail_elements_[k + 1].end());
        std::sort(ids_k.begin(), ids_k.end());
        ids_k.erase(std::unique(ids_k.begin(), ids_k.end()), ids_k.end());
        tail_elements_[k] = std::move(ids_k);
    }
    images_.reserve(elements_.size());
    for (const auto& e : elements_) images_.push_back(apply_all(e));
    for (const auto& e : elements_) {
        double worst = 0.0;
        for (PointIndex x = 0; x < space_->size(); ++x) apply_snapped(e, x, worst);
        max_snap_error_ = std::max(max_snap_error_, worst);
    }
}

std::vector<double> ActionModel::act(const Element& e, std::span<const double> coords) const
{
    std::vector<double> out(coords.begin(), coords.end());
    switch (spec_.kind) {
    case ActionKind::Identity: break;
    case ActionKind::ScalePower:
        for (std::size_t c = 0; c < out.size(); ++c) out[c] *= std::pow(spec_.base, e[c % e.size()]);
        break;
    case ActionKind::ComposeLinear:
        for (auto& v : out) v = spec_.x0 + e[0] * (v - spec_.x0);
        break;
    case ActionKind::Iterate: {
        const auto& z = spec_.args;
        const double a = (coords[1] - coords[0]) / (z[1] - z[0]);
        const double b = coords[0] - a * z[0];
        const double n = e[0];
        const double an = std::pow(a, n);
        const double shift = a == 1.0 ? n * b : b * (an - 1.0) / (a - 1.0);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = an * z[i] + shift;
        break;
    }
    }
    return out;
}

PointIndex ActionModel::apply_snapped(const Element& e, PointIndex x, double& worst) const
{
    if (spec_.kind == ActionKind::Identity) return x;
    const auto target = act(e, space_->coords(x));
    const Snap snap = space_->nearest(target);
    if (snap.error > options_.snap_tolerance) {
        std::ostringstream os;
        os << "element " << format_element(e) << " sends " << space_->label(x) << " to " << format_coords(target)
           << ", " << snap.error << " away from the nearest sample point (tolerance " << options_.snap_tolerance << ")";
        throw Error(Errc::SnapToleranceExceeded, os.str());
    }
    worst = std::max(worst, snap.error);
    return snap.point;
}

std::vector<PointIndex> ActionModel::apply_all(const Element& e) const
{
    if (!semigroup_.in_carrier(e)) throw Error(Errc::InvalidArgument, "element " + format_element(e) + " lies outside the semigroup");
    std::vector<PointIndex> out(space_->size());
    double worst = 0.0;
    for (PointIndex x = 0; x < space_->size(); ++x) out[x] = apply_snapped(e, x, worst);
    return out;
}

Verdict ActionModel::associativity() const
{
    Verdict v{"action_associativity", true, true, {}};
    const auto& base = level_draws_.front();
    const std::size_t m = std::min(options_.assoc_samples, base.size());
    const bool exact = !space_->has_coords() || !std::isfinite(options_.snap_tolerance);
    const double slack = exact ? 0.0 : 2.0 * options_.snap_tolerance + 1e-12;
    double worst = 0.0;
    for (std::size_t a = 0; a < m && v.passed; ++a)
        for (std::size_t b = 0; b < m && v.passed; ++b) {
            const auto& s = elements_[base[a]];
            const auto& t = elements_[base[b]];
            const auto direct = apply_all(semigroup_.compose(s, t));
            for (PointIndex x = 0; x < space_->size(); ++x) {
                const PointIndex stepwise = images_[base[a]][images_[base[b]][x]];
                double gap = 0.0;
                if (stepwise != direct[x]) {
                    if (exact) {
                        gap = std::numeric_limits<double>::infinity();
                    } else {
                        const auto p = space_->coords(stepwise);
                        const auto q = space_->coords(direct[x]);
                        for (std::size_t c = 0; c < p.size(); ++c) gap = std::max(gap, std::abs(p[c] - q[c]));
                    }
                }
                worst = std::max(worst, gap);
                if (gap > slack) {
                    v.passed = false;
                    std::ostringstream os;
                    os << "s=" << format_element(s) << " t=" << format_element(t) << " x=" << space_->label(x)
                       << ": s(tx) and (st)x differ by " << gap;
                    v.witness = os.str();
                    break;
                }
            }
        }
    if (v.passed) {
        std::ostringstream os;
        os << m * m << " element pairs on every point; largest discrepancy " << worst;
        v.witness = os.str();
    }
    return v;
}

} // namespace covdyn
