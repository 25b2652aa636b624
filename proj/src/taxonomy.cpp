#include "covdyn/dynamics.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace covdyn {

namespace {

/// The elements of B = A_m that the hypothesis checks quantify over.
std::vector<Element> level_members(const ActionModel& model, std::size_t m, const HypothesisOptions& options)
{
    const FilterBasis& f = model.filter();
    if (auto lo = f.integer_floor(m)) {
        std::vector<Element> out;
        for (long b = *lo; b <= options.enumeration_bound; ++b) out.push_back({static_cast<double>(b)});
        return out;
    }
    return f.draws(m, std::max<std::size_t>(model.options().per_level, 64));
}

using Relation = std::function<bool(const Element& s, const Element& b, std::size_t k)>;

Verdict check_one(const ActionModel& model, const HypothesisOptions& options, const std::string& name,
                  const std::string& law, const Relation& holds)
{
    const FilterBasis& f = model.filter();
    const auto s_draws = f.draws(0, options.s_samples);
    Verdict v{name, true, true, {}};
    std::vector<std::string> certificate;
    for (const auto& s : s_draws) {
        for (std::size_t k = 0; k <= model.max_level(); ++k) {
            std::optional<std::size_t> found;
            Element counter;
            std::size_t counter_level = 0;
            for (std::size_t m = 0; m <= options.witness_levels && !found; ++m) {
                bool ok = true;
                for (const auto& b : level_members(model, m, options))
                    if (!holds(s, b, k)) {
                        ok = false;
                        counter = b;
                        counter_level = m;
                        break;
                    }
                if (ok) found = m;
            }
            if (!found) {
                std::ostringstream os;
                os << law << " fails for s=" << format_element(s) << ", A=A_" << k << ": every B=A_m (m<="
                   << options.witness_levels << ") has a counterexample, e.g. b=" << format_element(counter)
                   << " in A_" << counter_level;
                v.passed = false;
                v.witness = os.str();
                return v;
            }
            if (k == model.max_level())
                certificate.push_back("s=" + format_element(s) + ": A_" + std::to_string(k) + " <- B=A_" + std::to_string(*found));
        }
    }
    std::string joined;
    for (const auto& c : certificate) joined += (joined.empty() ? "" : "; ") + c;
    v.witness = law + " for every sampled s and A_0..A_" + std::to_string(model.max_level()) + " (" + joined + ")";
    return v;
}

} // namespace

std::vector<Verdict> check_hypotheses(const ActionModel& model, const HypothesisOptions& options)
{
    const Semigroup& g = model.semigroup();
    const FilterBasis& f = model.filter();
    std::vector<Verdict> out;
    out.push_back(check_one(model, options, "H1", "sB in A", [&](const Element& s, const Element& b, std::size_t k) {
        return f.contains(k, g.compose(s, b));
    }));
    out.push_back(check_one(model, options, "H2", "Bs in A", [&](const Element& s, const Element& b, std::size_t k) {
        return f.contains(k, g.compose(b, s));
    }));
    out.push_back(check_one(model, options, "H3", "B in As", [&](const Element& s, const Element& b, std::size_t k) {
        auto a = g.right_quotient(b, s);
        return a && f.contains(k, *a);
    }));
    out.push_back(check_one(model, options, "H4", "B in sA", [&](const Element& s, const Element& b, std::size_t k) {
        auto a = g.left_quotient(b, s);
        return a && f.contains(k, *a);
    }));
    return out;
}

std::vector<std::pair<std::size_t, PointIndex>> escaping_sequence(const ActionModel& model, const PointSet& testset,
                                                                  const Covering& u, std::size_t draws_per_level)
{
    if (testset.none()) throw Error(Errc::EmptyInput, "escaping sequence needs a nonempty testset");
    std::vector<std::pair<std::size_t, PointIndex>> seq;
    PointSet reached(model.space().size()); // double star of the images chosen so far
    for (std::size_t k = 0; k <= model.max_level(); ++k) {
        const auto& draws = model.level_draws(k);
        for (std::size_t j = 0; j < draws_per_level; ++j) {
            std::optional<std::pair<std::size_t, PointIndex>> pick;
            for (std::size_t id : draws) {
                const auto& img = model.images(id);
                for (auto x = testset.find_first(); x != PointSet::npos; x = testset.find_next(x))
                    if (!reached.test(img[x])) {
                        pick = {id, x};
                        break;
                    }
                if (pick) break;
            }
            if (!pick) pick = {draws.front(), testset.find_first()};
            const PointIndex y = model.image(pick->first, pick->second);
            reached |= star(u.point_star(y), u);
            seq.push_back(*pick);
        }
    }
    return seq;
}

std::vector<Verdict> check_dissipativity(const ActionModel& model, const AdmissibleFamily& family,
                                         const std::vector<PointSet>& testsets, const PointSet& points_sample,
                                         const TaxonomyOptions& options)
{
    if (testsets.empty()) throw Error(Errc::EmptyInput, "dissipativity needs at least one testset");
    const std::size_t r = options.resolution.value_or(default_resolution(family));
    const Covering& u = family.at(r);
    const std::size_t n = model.space().size();
    const std::size_t top = model.max_level();
    const std::size_t cap = options.search.cap ? options.search.cap : default_cap(n);
    std::vector<Verdict> out;

    {
        Verdict v{"eventually_bounded", true, true, {}};
        for (std::size_t t = 0; t < testsets.size() && v.passed; ++t) {
            bool some = false;
            for (std::size_t k = 0; k <= top && !some; ++k) some = is_bounded(orbit(model, k, testsets[t]), family);
            if (!some) {
                v.passed = false;
                v.witness = "testset " + std::to_string(t) + ": no sampled level has a bounded orbit";
            }
        }
        if (v.passed) v.witness = "every testset has a bounded orbit at some level";
        out.push_back(std::move(v));
    }

    PointSet d(n);
    std::string d_origin;
    if (options.dissipative_set) {
        d = *options.dissipative_set;
        d_origin = "declared set";
    } else {
        for (const auto& t : testsets) d |= omega_limit(model, t, family, r).points;
        if (d.any()) d = star(d, family.at(0));
        d_origin = "coarse star of the testset limit sets";
    }

    {
        Verdict v{"bounded_dissipative", true, true, {}};
        if (d.none() || !is_bounded(d, family)) {
            v.passed = false;
            v.witness = "candidate absorbing set (" + d_origin + ") is empty or unbounded";
        } else {
            for (std::size_t t = 0; t < testsets.size() && v.passed; ++t)
                if (!absorbs(model, d, testsets[t])) {
                    v.passed = false;
                    v.witness = "testset " + std::to_string(t) + " is not absorbed by the " + d_origin;
                }
            if (v.passed) v.witness = "the " + d_origin + " (" + std::to_string(d.count()) + " points) absorbs every testset";
        }
        out.push_back(std::move(v));
    }

    {
        Verdict v{"point_dissipative", true, true, {}};
        if (d.none()) {
            v.passed = false;
            v.witness = "no candidate absorbing set";
        } else {
            for_each_point(points_sample, [&](PointIndex x) {
                if (v.passed && !absorbs(model, d, model.space().singleton(x))) {
                    v.passed = false;
                    v.witness = "point " + model.space().label(x) + " is not absorbed by the " + d_origin;
                }
            });
            if (v.passed) v.witness = std::to_string(points_sample.count()) + " sampled points absorbed";
        }
        out.push_back(std::move(v));
    }

    {
        Verdict v{"asymptotically_compact", true, true, {}};
        for (std::size_t t = 0; t < testsets.size() && v.passed; ++t) {
            const auto seq = escaping_sequence(model, testsets[t], u, options.draws_per_level);
            std::vector<PointIndex> terms;
            for (const auto& [id, x] : seq) terms.push_back(model.image(id, x));
            const std::size_t tail = std::max<std::size_t>(2, terms.size() / 4);
            const std::span<const PointIndex> last(terms.data() + terms.size() - tail, tail);
            if (!cluster_center(last, u, 2)) {
                v.passed = false;
                std::ostringstream os;
                os << "testset " << t << ": the last " << tail << " terms of an escaping sequence are pairwise"
                   << " star-separated at resolution " << r << ", e.g. t=" << format_element(model.element(seq.back().first))
                   << " sends " << model.space().label(seq.back().second) << " to " << model.space().label(last.back());
                v.witness = os.str();
            }
        }
        if (v.passed) v.witness = "every escaping sequence clusters at resolution " + std::to_string(r);
        out.push_back(std::move(v));
    }

    {
        Verdict v{"limit_compact", true, true, {}};
        for (std::size_t t = 0; t < testsets.size() && v.passed; ++t) {
            const PColl g = member_alpha(orbit(model, top, testsets[t]), family, options.search);
            if (!g.is_full()) {
                v.passed = false;
                v.witness = "testset " + std::to_string(t) + ": the level-" + std::to_string(top) +
                            " orbit needs more than " + std::to_string(cap) + " members beyond " + g.to_string();
            }
        }
        if (v.passed) v.witness = "late orbits are coverable by at most " + std::to_string(cap) + " members at every index";
        out.push_back(std::move(v));
    }

    {
        Verdict v{"eventually_compact", false, options.eventual_compactness.has_value(), {}};
        if (options.eventual_compactness) {
            v.passed = true;
            const auto images = model.apply_all(*options.eventual_compactness);
            for (std::size_t t = 0; t < testsets.size() && v.passed; ++t) {
                PointSet img(n);
                for_each_point(testsets[t], [&](PointIndex x) { img.set(images[x]); });
                if (!alpha(closure(img, family), family, options.search).is_full()) {
                    v.passed = false;
                    v.witness = "testset " + std::to_string(t) + ": image under " +
                                format_element(*options.eventual_compactness) + " is not compact";
                }
            }
            if (v.passed) v.witness = "t=" + format_element(*options.eventual_compactness) + " maps every testset into a compact set";
        } else {
            v.witness = "not declared";
        }
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace covdyn
