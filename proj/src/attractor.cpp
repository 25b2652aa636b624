#include "covdyn/attractor.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace covdyn {

namespace {

std::size_t resolution_of(const AdmissibleFamily& family, const AttractorOptions& options)
{
    const std::size_t r = options.resolution.value_or(default_resolution(family));
    if (r >= family.size()) throw Error(Errc::InvalidArgument, "resolution " + std::to_string(r) + " is out of range");
    return r;
}

PointSet apply_to(const ActionModel& model, std::size_t id, const PointSet& y)
{
    PointSet out(y.size());
    const auto& img = model.images(id);
    for_each_point(y, [&](PointIndex x) { out.set(img[x]); });
    return out;
}

Verdict compact_check(const AdmissibleFamily& family, const PointSet& candidate, const AttractorOptions& options)
{
    Verdict v{"compact", false, true, {}};
    if (candidate.none()) {
        v.witness = "empty candidate";
        return v;
    }
    const PColl a = alpha(candidate, family, options.search);
    v.passed = a.is_full();
    v.witness = "alpha = " + a.to_string();
    return v;
}

Verdict invariant_check(const ActionModel& model, const AdmissibleFamily& family, const PointSet& candidate,
                        std::size_t r, const AttractorOptions& options)
{
    Verdict v{"invariant", true, true, {}};
    if (candidate.none()) {
        v.passed = false;
        v.witness = "empty candidate";
        return v;
    }
    const auto& draws = model.level_draws(0);
    const std::size_t m = std::min(options.invariance_samples, draws.size());
    for (std::size_t j = 0; j < m; ++j) {
        const PointSet image = apply_to(model, draws[j], candidate);
        if (!equal_at_resolution(image, candidate, family, r)) {
            v.passed = false;
            v.witness = "s=" + format_element(model.element(draws[j])) + " maps the candidate to " +
                        describe_set(model.space(), image);
            return v;
        }
    }
    v.witness = "sA = A at resolution " + std::to_string(r) + " for " + std::to_string(m) + " sampled s";
    return v;
}

} // namespace

std::string describe_set(const Space& space, const PointSet& y, std::size_t limit)
{
    std::ostringstream os;
    os << '{';
    std::size_t shown = 0;
    for (auto x = y.find_first(); x != PointSet::npos; x = y.find_next(x)) {
        if (shown) os << ", ";
        if (shown == limit) {
            os << "... " << y.count() - limit << " more";
            break;
        }
        os << space.label(x);
        ++shown;
    }
    os << '}';
    return os.str();
}

std::vector<Testset> standard_testsets(const Space& space, const AdmissibleFamily& family,
                                       const std::vector<Testset>& declared, std::uint64_t seed,
                                       std::size_t random_count)
{
    std::vector<Testset> out;
    if (is_bounded(space.all(), family)) out.push_back({"whole-space", space.all()});
    for (const auto& t : declared) out.push_back(t);
    // Any subset of one covering member is bounded.
    const auto& members = family.at(0).members();
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < random_count; ++i) {
        const auto pool = elements_of(members[rng() % members.size()]);
        const std::size_t size = 1 + rng() % std::min<std::size_t>(8, pool.size());
        PointSet pts(space.size());
        while (pts.count() < size) pts.set(pool[rng() % pool.size()]);
        out.push_back({"random-" + std::to_string(i), std::move(pts)});
    }
    return out;
}

std::string_view attractor_kind_name(AttractorKind kind) noexcept
{
    switch (kind) {
    case AttractorKind::Both: return "both";
    case AttractorKind::GlobalOnly: return "global-only";
    case AttractorKind::UniformOnly: return "global-uniform-only";
    case AttractorKind::Neither: return "neither";
    }
    return "unknown";
}

AttractorKind classify(const AttractorVerdict& global, const AttractorVerdict& uniform)
{
    if (global.passed()) return uniform.passed() ? AttractorKind::Both : AttractorKind::GlobalOnly;
    return uniform.passed() ? AttractorKind::UniformOnly : AttractorKind::Neither;
}

PointSet construct_candidate(const ActionModel& model, const AdmissibleFamily& family,
                             const std::vector<Testset>& testsets, const AttractorOptions& options)
{
    const std::size_t r = resolution_of(family, options);
    PointSet out(model.space().size());
    for (const auto& t : testsets) {
        if (t.points.none() || !is_bounded(t.points, family))
            throw Error(Errc::UnboundedTestset, "testset '" + t.name + "' is empty or unbounded");
        out |= omega_limit(model, t.points, family, r).points;
    }
    return out;
}

AttractorVerdict verify_global(const ActionModel& model, const AdmissibleFamily& family, const PointSet& candidate,
                               const std::vector<Testset>& testsets, const AttractorOptions& options)
{
    const std::size_t r = resolution_of(family, options);
    AttractorVerdict out{candidate, {}};
    const bool nonempty = candidate.any();
    out.checks.push_back({"nonempty", nonempty, true, nonempty ? std::to_string(candidate.count()) + " points" : "empty candidate"});

    Verdict closed{"closed", false, true, "empty candidate"};
    if (nonempty) {
        const PointSet cls = closure(candidate, family);
        closed.passed = equal_at_resolution(cls, candidate, family, r);
        closed.witness = closed.passed ? "closure agrees at resolution " + std::to_string(r)
                                       : "closure adds " + describe_set(model.space(), cls - candidate);
    }
    out.checks.push_back(std::move(closed));
    out.checks.push_back(compact_check(family, candidate, options));
    out.checks.push_back(invariant_check(model, family, candidate, r, options));

    Verdict att{"attracts", nonempty, true, nonempty ? "" : "empty candidate"};
    if (nonempty) {
        for (const auto& t : testsets) {
            const auto rep = attracts(model, candidate, t.points, family);
            if (rep.attracts) continue;
            att.passed = false;
            std::ostringstream os;
            const auto& f = *rep.failure;
            os << "testset '" << t.name << "': t=" << format_element(model.element(f.element)) << " sends "
               << model.space().label(f.source) << " to " << model.space().label(f.image) << ", outside St[A, U_"
               << f.index << "]";
            att.witness = os.str();
            break;
        }
        if (att.passed) att.witness = "all " + std::to_string(testsets.size()) + " testsets attracted";
    }
    out.checks.push_back(std::move(att));
    return out;
}

AttractorVerdict verify_uniform(const ActionModel& model, const AdmissibleFamily& family, const PointSet& candidate,
                                const PointSet& points_sample, const AttractorOptions& options)
{
    const std::size_t r = resolution_of(family, options);
    AttractorVerdict out{candidate, {}};
    out.checks.push_back(compact_check(family, candidate, options));
    out.checks.push_back(invariant_check(model, family, candidate, r, options));

    Verdict nonempty{"J_nonempty", true, true, {}};
    Verdict contained{"J_contained", candidate.any(), true, candidate.any() ? "" : "empty candidate"};
    for_each_point(points_sample, [&](PointIndex x) {
        if (!nonempty.passed && !contained.passed) return;
        const auto j = prolongational_limit(model, x, family, r, options.perturb_depth);
        if (j.points.none()) {
            if (nonempty.passed) nonempty.witness = "J(" + model.space().label(x) + ") is empty";
            nonempty.passed = false;
            return;
        }
        if (contained.passed && !contained_at_resolution(j.points, candidate, family, r)) {
            contained.passed = false;
            const PointSet outside = j.points - star(candidate, family.at(r));
            contained.witness = "J(" + model.space().label(x) + ") reaches " + describe_set(model.space(), outside);
        }
    });
    const std::string count = std::to_string(points_sample.count()) + " sampled points";
    if (nonempty.passed) nonempty.witness = count;
    if (contained.passed && candidate.any()) contained.witness = count + " at resolution " + std::to_string(r);
    out.checks.push_back(std::move(nonempty));
    out.checks.push_back(std::move(contained));
    return out;
}

std::vector<PointSet> sampled_fixed_points(const ActionModel& model)
{
    std::vector<PointSet> out;
    const auto& ids = model.tail_elements(0);
    for (PointIndex x = 0; x < model.space().size(); ++x)
        if (std::all_of(ids.begin(), ids.end(), [&](std::size_t id) { return model.image(id, x) == x; }))
            out.push_back(model.space().singleton(x));
    return out;
}

std::vector<Verdict> check_uniqueness(const ActionModel& model, const AdmissibleFamily& family, const PointSet& a1,
                                      const PointSet& a2, const std::vector<PointSet>& invariant_sets,
                                      const AttractorOptions& options)
{
    const std::size_t r = resolution_of(family, options);
    std::vector<Verdict> out;
    const bool same = equal_at_resolution(a1, a2, family, r);
    out.push_back({"candidates_coincide", same, true,
                   same ? "equal at resolution " + std::to_string(r)
                        : describe_set(model.space(), a1) + " vs " + describe_set(model.space(), a2)});

    Verdict contains{"contains_invariant_sets", true, true, {}};
    std::size_t used = 0, skipped = 0;
    for (std::size_t i = 0; i < invariant_sets.size(); ++i) {
        const PointSet& b = invariant_sets[i];
        const bool eligible = b.any() && is_bounded(b, family) &&
                              invariant_check(model, family, b, r, options).passed;
        if (!eligible) {
            ++skipped;
            continue;
        }
        ++used;
        if (contains.passed && !contained_at_resolution(b, a1, family, r)) {
            contains.passed = false;
            contains.witness = "bounded invariant set " + std::to_string(i) + " " + describe_set(model.space(), b) +
                               " is not inside the attractor";
        }
    }
    if (contains.passed)
        contains.witness = std::to_string(used) + " bounded invariant sets inside, " + std::to_string(skipped) + " skipped";
    out.push_back(std::move(contains));
    return out;
}

EquivalenceReport check_equivalence(const AttractorVerdict& global, const AttractorVerdict& uniform,
                                    const std::vector<Verdict>& hypotheses, const std::vector<std::string>& declared)
{
    EquivalenceReport rep;
    Verdict forward{"forward", uniform.passed(), global.passed(), {}};
    forward.witness = !global.passed()         ? "global check fails; nothing to assert"
                      : uniform.passed()       ? "global and uniform both pass"
                                               : "global passes but uniform fails";
    rep.checks.push_back(std::move(forward));

    for (const auto& name : declared) {
        const Verdict* h = find_verdict(hypotheses, name);
        if (!h || !h->applicable || !h->passed) rep.failing_hypotheses.push_back(name);
    }
    Verdict converse{"converse", true, rep.failing_hypotheses.empty(), {}};
    if (!converse.applicable) {
        std::string names;
        for (const auto& n : rep.failing_hypotheses) names += (names.empty() ? "" : ", ") + n;
        converse.witness = "not asserted: hypothesis failed: " + names;
    } else {
        converse.passed = !uniform.passed() || global.passed();
        converse.witness = converse.passed ? "uniform => global holds" : "uniform passes but global fails";
    }
    rep.checks.push_back(std::move(converse));
    return rep;
}

} // namespace covdyn
