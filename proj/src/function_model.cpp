#include "covdyn/function_model.hpp"

#include <algorithm>
#include <cmath>

namespace covdyn {

namespace {

constexpr std::size_t max_members = 500'000;

double gap(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

} // namespace

double value_norm(std::span<const double> v)
{
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

FunctionSpaceModel::FunctionSpaceModel(std::vector<std::vector<double>> arguments, std::size_t value_dim,
                                       std::vector<std::vector<double>> values, std::vector<std::string> labels)
    : arguments_(std::move(arguments)), value_dim_(value_dim)
{
    if (arguments_.empty() || value_dim_ == 0) throw Error(Errc::InvalidArgument, "function model needs arguments and values");
    if (values.empty()) throw Error(Errc::EmptyInput, "function model needs at least one function");
    for (const auto& v : values)
        if (v.size() != arguments_.size() * value_dim_)
            throw Error(Errc::InvalidArgument, "function values " + format_coords(v) + " do not match the argument grid");
    space_ = std::make_shared<const Space>(Space::sampled(std::move(values), std::move(labels)));

    centers_.resize(arguments_.size());
    for (std::size_t a = 0; a < arguments_.size(); ++a) {
        auto& c = centers_[a];
        for (PointIndex f = 0; f < space_->size(); ++f) {
            const auto v = value(f, a);
            c.emplace_back(v.begin(), v.end());
        }
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
}

std::span<const double> FunctionSpaceModel::value(PointIndex f, std::size_t arg) const
{
    return space_->coords(f).subspan(arg * value_dim_, value_dim_);
}

Covering FunctionSpaceModel::covering(const PointwiseLevel& level) const
{
    if (!(level.eps > 0.0) || !std::isfinite(level.eps)) throw Error(Errc::InvalidArgument, "level radius must be positive");
    const std::size_t n = space_->size();
    if (level.args.empty()) return Covering(*space_, {space_->all()});

    // Per constrained argument, the functions inside each center's ball.
    std::vector<std::vector<PointSet>> balls;
    std::size_t product = 1;
    for (std::size_t a : level.args) {
        if (a >= arguments_.size()) throw Error(Errc::InvalidArgument, "constrained argument out of range");
        std::vector<PointSet> per;
        for (const auto& c : centers_[a]) {
            PointSet s(n);
            for (PointIndex f = 0; f < n; ++f)
                if (gap(value(f, a), c) < level.eps) s.set(f);
            if (std::find(per.begin(), per.end(), s) == per.end()) per.push_back(std::move(s));
        }
        product = std::min(product * per.size(), max_members + 1);
        balls.push_back(std::move(per));
    }
    if (product > max_members) throw Error(Errc::InvalidArgument, "pointwise covering has too many members");

    std::vector<PointSet> partial{space_->all()};
    for (const auto& per : balls) {
        std::vector<PointSet> next;
        for (const auto& p : partial)
            for (const auto& b : per) {
                PointSet m = p & b;
                if (m.any()) next.push_back(std::move(m));
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        partial = std::move(next);
    }
    return Covering(*space_, std::move(partial));
}

AdmissibleFamily FunctionSpaceModel::family(const std::vector<PointwiseLevel>& levels) const
{
    if (levels.empty()) throw Error(Errc::EmptyInput, "a family needs at least one level");
    std::vector<Covering> cs;
    cs.reserve(levels.size());
    for (const auto& l : levels) cs.push_back(covering(l));
    return AdmissibleFamily::chain(std::move(cs));
}

bool FunctionSpaceModel::in_star(PointIndex f, PointIndex g, const PointwiseLevel& level) const
{
    for (std::size_t a : level.args) {
        const auto fv = value(f, a), gv = value(g, a);
        const bool shared = std::any_of(centers_[a].begin(), centers_[a].end(), [&](const std::vector<double>& c) {
            return gap(fv, c) < level.eps && gap(gv, c) < level.eps;
        });
        if (!shared) return false;
    }
    return true;
}

} // namespace covdyn
