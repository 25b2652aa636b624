#include "covdyn/dynamics.hpp"

#include <algorithm>
#include <sstream>

namespace covdyn {

namespace {

void require_nonempty(const PointSet& y, const char* what)
{
    if (y.none()) throw Error(Errc::EmptyInput, std::string(what) + " needs a nonempty set");
}

void require_family(const ActionModel& model, const AdmissibleFamily& family)
{
    if (family.universe() != model.space().size())
        throw Error(Errc::SpaceMismatch, "family and action live on different spaces");
}

/// Points reached from y by the given elements.
PointSet image_set(const ActionModel& model, const std::vector<std::size_t>& ids, const PointSet& y)
{
    PointSet out(model.space().size());
    for (std::size_t id : ids) {
        const auto& img = model.images(id);
        for_each_point(y, [&](PointIndex x) { out.set(img[x]); });
    }
    return out;
}

} // namespace

std::size_t default_resolution(const AdmissibleFamily& family)
{
    if (auto f = family.finest()) return *f;
    return family.size() - 1;
}

bool contained_at_resolution(const PointSet& b, const PointSet& a, const AdmissibleFamily& family, std::size_t r)
{
    if (b.none()) return true;
    if (a.none()) return false;
    return b.is_subset_of(star(a, family.at(r)));
}

bool equal_at_resolution(const PointSet& a, const PointSet& b, const AdmissibleFamily& family, std::size_t r)
{
    return contained_at_resolution(a, b, family, r) && contained_at_resolution(b, a, family, r);
}

PointSet orbit(const ActionModel& model, std::size_t level, const PointSet& y)
{
    return image_set(model, model.tail_elements(level), y);
}

std::vector<std::size_t> divergent_sequence(const ActionModel& model, std::size_t per_level)
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k <= model.max_level(); ++k) {
        const auto& draws = model.level_draws(k);
        for (std::size_t j = 0; j < std::min(per_level, draws.size()); ++j) out.push_back(draws[j]);
    }
    return out;
}

LimitSetReport omega_limit(const ActionModel& model, const PointSet& y, const AdmissibleFamily& family,
                           std::optional<std::size_t> resolution)
{
    require_nonempty(y, "omega limit");
    require_family(model, family);
    const std::size_t r = resolution.value_or(default_resolution(family));
    const Covering& u = family.at(r);
    const std::size_t top = model.max_level();
    // Orbits shrink with the level, so the intersection over the sampled levels is the last one.
    LimitSetReport rep;
    rep.resolution = r;
    rep.truncation = top;
    rep.points = star(orbit(model, top, y), u);
    for_each_point(rep.points, [&](PointIndex p) {
        for (std::size_t id : model.tail_elements(top)) {
            const auto& img = model.images(id);
            for (auto x = y.find_first(); x != PointSet::npos; x = y.find_next(x))
                if (u.point_star(img[x]).test(p)) {
                    rep.witnesses.push_back({p, id, x, img[x]});
                    return;
                }
        }
    });
    return rep;
}

LimitSetReport prolongational_limit(const ActionModel& model, PointIndex x, const AdmissibleFamily& family,
                                    std::optional<std::size_t> resolution, std::optional<std::size_t> perturb_depth)
{
    return prolongational_limit(model, model.space().singleton(x), family, resolution, perturb_depth);
}

LimitSetReport prolongational_limit(const ActionModel& model, const PointSet& y, const AdmissibleFamily& family,
                                    std::optional<std::size_t> resolution, std::optional<std::size_t> perturb_depth)
{
    require_nonempty(y, "prolongational limit");
    require_family(model, family);
    const std::size_t r = resolution.value_or(default_resolution(family));
    const std::size_t pd = std::min(perturb_depth.value_or(r), family.size() - 1);
    const Covering& u = family.at(r);
    const std::size_t top = model.max_level();

    LimitSetReport rep;
    rep.resolution = r;
    rep.truncation = top;
    rep.points = PointSet(model.space().size());
    for_each_point(y, [&](PointIndex x) {
        PointSet acc = full_set(model.space().size());
        for (std::size_t k = 0; k <= top && acc.any(); ++k) {
            const PointSet near = family.at(std::min(k, pd)).point_star(x);
            acc &= star(orbit(model, k, near), u);
        }
        if (acc.none()) return;
        const PointSet near = family.at(std::min(top, pd)).point_star(x);
        for_each_point(acc, [&](PointIndex p) {
            if (rep.points.test(p)) return;
            rep.points.set(p);
            for (std::size_t id : model.tail_elements(top)) {
                const auto& img = model.images(id);
                for (auto s = near.find_first(); s != PointSet::npos; s = near.find_next(s))
                    if (u.point_star(img[s]).test(p)) {
                        rep.witnesses.push_back({p, id, s, img[s]});
                        return;
                    }
            }
        });
    });
    std::sort(rep.witnesses.begin(), rep.witnesses.end(),
              [](const LimitWitness& a, const LimitWitness& b) { return a.point < b.point; });
    return rep;
}

AttractionReport attracts(const ActionModel& model, const PointSet& y, const PointSet& z, const AdmissibleFamily& family)
{
    require_nonempty(y, "attraction");
    require_nonempty(z, "attraction");
    require_family(model, family);
    const std::size_t top = model.max_level();
    std::vector<PointSet> orbits;
    orbits.reserve(top + 1);
    for (std::size_t k = 0; k <= top; ++k) orbits.push_back(orbit(model, k, z));

    AttractionReport rep;
    rep.attracts = true;
    rep.level.resize(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        const PointSet target = star(y, family.at(i));
        for (std::size_t k = 0; k <= top; ++k)
            if (orbits[k].is_subset_of(target)) {
                rep.level[i] = k;
                break;
            }
        if (rep.level[i] || !rep.attracts) continue;
        rep.attracts = false;
        // Canonical witness: the last level's draws in draw order, sources in index order.
        for (std::size_t id : model.level_draws(top)) {
            const auto& img = model.images(id);
            for (auto x = z.find_first(); x != PointSet::npos; x = z.find_next(x))
                if (!target.test(img[x])) {
                    rep.failure = AttractionFailure{i, id, x, img[x]};
                    break;
                }
            if (rep.failure) break;
        }
    }

    // Sequence formulation: per level, the draw whose image of Z is least attracted.
    for (std::size_t k = 0; k <= top; ++k) {
        std::optional<PColl> worst;
        for (std::size_t id : model.level_draws(k)) {
            PColl e = rho_semi(y, image_set(model, {id}, z), family);
            if (!worst || e.indices().count() < worst->indices().count()) worst = std::move(e);
        }
        rep.sequence_trace.push_back(*worst);
    }
    rep.sequence_converges = converges_to_O(rep.sequence_trace);
    rep.formulations_agree = rep.sequence_converges == rep.attracts;
    return rep;
}

std::optional<std::size_t> absorbs(const ActionModel& model, const PointSet& y, const PointSet& z)
{
    require_nonempty(z, "absorption");
    for (std::size_t k = 0; k <= model.max_level(); ++k)
        if (orbit(model, k, z).is_subset_of(y)) return k;
    return std::nullopt;
}

} // namespace covdyn
