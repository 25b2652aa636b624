#include "covdyn/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace covdyn {

namespace {

Verdict implication(std::string name, bool premise, bool conclusion, const std::string& what)
{
    if (!premise) return {std::move(name), true, false, "premise not met"};
    return {std::move(name), conclusion, true, conclusion ? what + " holds" : what + " is violated"};
}

bool verdict_passed(const std::vector<Verdict>& vs, const std::string& name)
{
    const Verdict* v = find_verdict(vs, name);
    return v && v->applicable && v->passed;
}

std::vector<std::string> failing_names(const std::vector<Verdict>& vs, std::initializer_list<std::string_view> among = {})
{
    std::vector<std::string> out;
    for (const auto& v : vs) {
        if (!v.applicable || v.passed) continue;
        if (among.size() && std::find(among.begin(), among.end(), v.name) == among.end()) continue;
        out.push_back(v.name);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string join(const std::vector<std::string>& xs)
{
    std::string out = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
    return out + "}";
}

Verdict expect_names(std::string name, std::vector<std::string> expected, const std::vector<std::string>& actual)
{
    std::sort(expected.begin(), expected.end());
    const bool ok = expected == actual;
    return {std::move(name), ok, true, "expected " + join(expected) + ", observed " + join(actual)};
}

/// Two candidates built from disjoint halves of the same data, for systems where only one construction applies.
std::pair<PointSet, PointSet> halves(const std::vector<Testset>& ts, const ActionModel& m, const AdmissibleFamily& fam,
                                     const AttractorOptions& opts)
{
    std::vector<Testset> a, b;
    for (std::size_t i = 0; i < ts.size(); ++i) (i % 2 ? b : a).push_back(ts[i]);
    if (b.empty()) b = a;
    return {construct_candidate(m, fam, a, opts), construct_candidate(m, fam, b, opts)};
}

PointSet prolongational_half(const System& s, std::size_t parity, std::size_t r, std::optional<std::size_t> pd)
{
    PointSet sample = s.space->empty_set();
    std::size_t i = 0;
    for_each_point(s.points_sample, [&](PointIndex x) {
        if (i++ % 2 == parity) sample.set(x);
    });
    if (sample.none()) sample = s.points_sample;
    return prolongational_limit(s.act(), sample, s.fam(), r, pd).points;
}

} // namespace

Verdict spread_bound(const System& system, const std::vector<Testset>& testsets, double lipschitz)
{
    Verdict v{"spread_bound", true, true, {}};
    if (!system.functions || system.config.family.kind != "pointwise") {
        v.applicable = false;
        v.witness = "needs a function space with a pointwise family";
        return v;
    }
    const FunctionSpaceModel& fm = *system.functions;
    const auto levels = system.config.family.levels;
    const Space& space = *system.space;
    std::size_t pairs = 0, used = 0;
    for (const auto& t : testsets) {
        // The finest constrained level at which the testset lies in a single star.
        std::optional<std::size_t> level;
        for (std::size_t i = levels.size(); i-- > 0 && !level;) {
            if (levels[i].args.empty()) continue;
            const PointwiseLevel pl{levels[i].args, levels[i].eps};
            for (PointIndex x = 0; x < space.size() && !level; ++x) {
                bool inside = true;
                for_each_point(t.points, [&](PointIndex f) { inside = inside && fm.in_star(f, x, pl); });
                if (inside) level = i;
            }
        }
        if (!level) continue;
        ++used;
        const std::size_t x1 = levels[*level].args.front();
        const double delta = levels[*level].eps;
        const auto& args = fm.arguments();
        const auto elems = elements_of(t.points);
        for (std::size_t a = 0; a < elems.size() && v.passed; ++a)
            for (std::size_t b = a + 1; b < elems.size() && v.passed; ++b) {
                ++pairs;
                for (std::size_t z = 0; z < args.size(); ++z) {
                    std::vector<double> diff(fm.value_dim()), dz(args[z].size());
                    const auto fv = fm.value(elems[a], z), gv = fm.value(elems[b], z);
                    for (std::size_t d = 0; d < diff.size(); ++d) diff[d] = fv[d] - gv[d];
                    for (std::size_t d = 0; d < dz.size(); ++d) dz[d] = args[z][d] - args[x1][d];
                    const double lhs = value_norm(diff);
                    const double rhs = 2 * lipschitz * value_norm(dz) + 4 * delta;
                    if (lhs > rhs + 1e-12) {
                        v.passed = false;
                        std::ostringstream os;
                        os.precision(17);
                        os << "testset '" << t.name << "': |f(z) - g(z)| = " << lhs << " > " << rhs << " for f="
                           << space.label(elems[a]) << ", g=" << space.label(elems[b]) << ", z=" << format_coords(args[z])
                           << " (level " << *level << ")";
                        v.witness = os.str();
                        break;
                    }
                }
            }
        if (!v.passed) break;
    }
    if (v.passed)
        v.witness = std::to_string(pairs) + " pairs in " + std::to_string(used) + " bounded testsets within 2K|z - x1| + 4 delta1";
    return v;
}

ScenarioReport run_scenario(const System& s)
{
    const SystemConfig& cfg = s.config;
    const ActionModel& m = s.act();
    const AdmissibleFamily& fam = s.fam();
    const Space& space = *s.space;

    ScenarioReport rep;
    rep.name = cfg.name;
    rep.resolution = cfg.budget.resolution.value_or(default_resolution(fam));
    if (rep.resolution >= fam.size())
        throw Error(Errc::InvalidArgument, "resolution " + std::to_string(rep.resolution) + " exceeds the family depth");

    AttractorOptions opts;
    opts.resolution = rep.resolution;
    opts.search.cap = cfg.budget.cap;
    opts.perturb_depth = cfg.budget.perturb_depth;
    const std::size_t cap = cfg.budget.cap ? cfg.budget.cap : default_cap(space.size());

    const auto testsets = standard_testsets(space, fam, s.declared_testsets, cfg.budget.seed, cfg.budget.random_testsets);
    for (const auto& t : testsets) rep.testsets.push_back(t.name);
    {
        std::ostringstream os;
        os << "per_level=" << cfg.budget.per_level << " max_level=" << cfg.budget.max_level << " cap=" << cap
           << " testsets=" << testsets.size() << " seed=" << cfg.budget.seed;
        rep.budget = os.str();
    }

    const PointSet omega_candidate = construct_candidate(m, fam, testsets, opts);
    const PointSet j_candidate = prolongational_limit(m, s.points_sample, fam, rep.resolution, opts.perturb_depth).points;
    rep.candidate = s.expected_attractor.value_or(omega_candidate);
    rep.candidate_text = describe_set(space, rep.candidate, 12);

    rep.global = verify_global(m, fam, rep.candidate, testsets, opts);
    rep.uniform = verify_uniform(m, fam, rep.candidate, s.points_sample, opts);
    const AttractorKind kind = classify(rep.global, rep.uniform);
    rep.kind = std::string(attractor_kind_name(kind));

    rep.hypotheses.push_back(m.associativity());
    for (auto& h : check_hypotheses(m)) rep.hypotheses.push_back(std::move(h));

    std::vector<PointSet> testset_points;
    for (const auto& t : testsets) testset_points.push_back(t.points);
    TaxonomyOptions tax;
    tax.search = opts.search;
    tax.resolution = rep.resolution;
    tax.eventual_compactness = cfg.expectations.eventual_compactness;
    tax.draws_per_level = cfg.budget.draws_per_level;
    rep.taxonomy = check_dissipativity(m, fam, testset_points, s.points_sample, tax);

    // Two independently built candidates: limit sets of testsets against prolongational limits,
    // or halves of the data when only one construction is backed by a passing verification.
    PointSet a1 = omega_candidate, a2 = j_candidate;
    if (kind == AttractorKind::GlobalOnly) {
        std::tie(a1, a2) = halves(testsets, m, fam, opts);
    } else if (kind == AttractorKind::UniformOnly) {
        a1 = prolongational_half(s, 0, rep.resolution, opts.perturb_depth);
        a2 = prolongational_half(s, 1, rep.resolution, opts.perturb_depth);
    }
    std::vector<PointSet> invariant_sets = sampled_fixed_points(m);
    for (const auto& t : testsets) invariant_sets.push_back(omega_limit(m, t.points, fam, rep.resolution).points);
    rep.uniqueness = check_uniqueness(m, fam, a1, a2, invariant_sets, opts);

    rep.equivalence = check_equivalence(rep.global, rep.uniform, rep.taxonomy, cfg.expectations.converse_hypotheses);

    // Attraction per testset, reused for the formulation check and the attraction levels.
    bool agree = true;
    std::string disagreement;
    std::optional<std::size_t> worst_level;
    bool level_known = true;
    std::string level_witness;
    const std::size_t index = cfg.expectations.attraction_index.value_or(rep.resolution);
    for (const auto& t : testsets) {
        const auto att = attracts(m, rep.candidate, t.points, fam);
        if (!att.formulations_agree && agree) {
            agree = false;
            disagreement = "testset '" + t.name + "': covering and sequence formulations disagree";
        }
        if (index < att.level.size()) {
            if (!att.level[index]) {
                if (level_known) level_witness = "testset '" + t.name + "' is never inside St[A, U_" + std::to_string(index) + "]";
                level_known = false;
            } else if (!worst_level || *att.level[index] > *worst_level) {
                worst_level = att.level[index];
            }
        }
    }

    const bool ac = verdict_passed(rep.taxonomy, "asymptotically_compact");
    rep.consistency.push_back(implication("global_implies_uniform", rep.global.passed(), rep.uniform.passed(),
                                          "global attractor => uniform attractor"));
    rep.consistency.push_back(implication(
        "global_implies_dissipative", rep.global.passed(),
        verdict_passed(rep.taxonomy, "eventually_bounded") && verdict_passed(rep.taxonomy, "bounded_dissipative") && ac,
        "global attractor => eventually bounded, bounded dissipative and asymptotically compact"));
    rep.consistency.push_back(implication("asymptotic_implies_limit_compact", ac, verdict_passed(rep.taxonomy, "limit_compact"),
                                          "asymptotically compact => limit compact"));
    rep.consistency.push_back({"attraction_formulations_agree", agree, true,
                               agree ? "covering and sequence formulations agree on " + std::to_string(testsets.size()) + " testsets"
                                     : disagreement});
    {
        const Verdict* c = find_verdict(rep.uniqueness, "candidates_coincide");
        Verdict v{"independent_candidates_coincide", c && c->passed, kind != AttractorKind::Neither,
                  c ? c->witness : "missing"};
        if (!v.applicable) {
            v.passed = true;
            v.witness = "no attractor verified";
        }
        rep.consistency.push_back(std::move(v));
    }

    {
        Verdict v{"attraction_level", level_known, true, {}};
        if (level_known) {
            v.witness = "level " + (worst_level ? std::to_string(*worst_level) : std::string("-")) + " at index " +
                        std::to_string(index);
            if (cfg.expectations.attraction_level_max && worst_level) {
                v.passed = *worst_level <= *cfg.expectations.attraction_level_max;
                v.witness += " (bound " + std::to_string(*cfg.expectations.attraction_level_max) + ")";
            }
        } else {
            v.witness = level_witness;
        }
        rep.measurements.push_back(std::move(v));
    }
    if (is_bounded(space.all(), fam)) {
        const PointSet w = omega_limit(m, space.all(), fam, rep.resolution).points;
        const bool eq = equal_at_resolution(w, rep.candidate, fam, rep.resolution);
        rep.measurements.push_back({"omega_whole_space", eq, true,
                                    "omega(X) = " + describe_set(space, w) + (eq ? " equals" : " differs from") +
                                        " the candidate at resolution " + std::to_string(rep.resolution)});
    } else {
        rep.measurements.push_back({"omega_whole_space", true, false, "the space is unbounded"});
    }
    if (cfg.expectations.spread_lipschitz)
        rep.measurements.push_back(spread_bound(s, testsets, *cfg.expectations.spread_lipschitz));

    const ExpectationsConfig& ex = cfg.expectations;
    if (s.expected_attractor) {
        const PointSet& built = kind == AttractorKind::UniformOnly ? j_candidate : omega_candidate;
        const bool eq = equal_at_resolution(built, *s.expected_attractor, fam, rep.resolution);
        rep.expectations.push_back({"attractor", eq, true,
                                    "constructed " + describe_set(space, built) + (eq ? " equals " : " differs from ") +
                                        describe_set(space, *s.expected_attractor)});
    }
    if (!ex.kind.empty())
        rep.expectations.push_back({"kind", ex.kind == rep.kind, true, "expected " + ex.kind + ", observed " + rep.kind});
    rep.expectations.push_back(
        expect_names("failing_hypotheses", ex.failing_hypotheses, failing_names(rep.hypotheses)));
    rep.expectations.push_back(expect_names("failing_taxonomy", ex.failing_taxonomy, failing_names(rep.taxonomy)));
    rep.expectations.push_back({"equivalence", rep.equivalence.consistent(), true,
                                rep.equivalence.consistent() ? "forward and converse directions hold where applicable"
                                                             : "an equivalence direction fails"});
    if (ex.attraction_level_max) rep.expectations.push_back(*find_verdict(rep.measurements, "attraction_level"));
    if (ex.spread_lipschitz) rep.expectations.push_back(*find_verdict(rep.measurements, "spread_bound"));
    rep.expectations.push_back({"consistency", all_passed(rep.consistency), true,
                                all_passed(rep.consistency) ? "every implication holds" : "an implication is violated"});
    rep.expectations_met = all_passed(rep.expectations);
    return rep;
}

} // namespace covdyn
