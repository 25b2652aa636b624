#include "covdyn/covering.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

namespace covdyn {

namespace {

std::uint64_t next_family_token()
{
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
}

std::string describe(const PointSet& s, const Space& space)
{
    std::string out = "{";
    bool first = true;
    for_each_point(s, [&](PointIndex p) {
        if (!first) out += ',';
        out += space.label(p);
        first = false;
    });
    return out + "}";
}

void require_same_space(const Covering& a, const Covering& b)
{
    if (a.space_token() != b.space_token()) throw Error(Errc::SpaceMismatch, "coverings belong to different spaces");
}

} // namespace

Covering::Covering(const Space& space, std::vector<PointSet> members)
    : universe_(space.size()), space_token_(space.token())
{
    if (members.empty()) throw Error(Errc::EmptyInput, "covering has no members");
    PointSet covered(universe_);
    for (const auto& m : members) {
        if (m.size() != universe_) throw Error(Errc::SpaceMismatch, "member has wrong universe size");
        if (!space.is_open(m)) throw Error(Errc::NotACovering, "member " + describe(m, space) + " is not open");
        covered |= m;
    }
    if (!covered.all()) throw Error(Errc::NotACovering, "points " + describe(~covered, space) + " are not covered");

    members.erase(std::remove_if(members.begin(), members.end(), [](const PointSet& m) { return m.none(); }),
                  members.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    members_ = std::move(members);

    point_stars_.assign(universe_, PointSet(universe_));
    incidence_.assign(universe_, {});
    for (std::size_t i = 0; i < members_.size(); ++i)
        for_each_point(members_[i], [&](PointIndex p) {
            point_stars_[p] |= members_[i];
            incidence_[p].push_back(i);
        });
}

bool Covering::is_discrete() const
{
    for (PointIndex p = 0; p < universe_; ++p)
        if (point_stars_[p].count() != 1) return false;
    return true;
}

PointSet star(const PointSet& y, const Covering& u)
{
    if (y.size() != u.universe()) throw Error(Errc::SpaceMismatch, "set and covering have different universes");
    PointSet out(u.universe());
    for_each_point(y, [&](PointIndex p) { out |= u.point_star(p); });
    return out;
}

bool refines(const Covering& v, const Covering& u)
{
    require_same_space(v, u);
    for (const auto& a : v.members())
        if (std::none_of(u.members().begin(), u.members().end(), [&](const PointSet& b) { return a.is_subset_of(b); }))
            return false;
    return true;
}

bool double_refines(const Covering& v, const Covering& u)
{
    require_same_space(v, u);
    const auto& vm = v.members();
    const auto& um = u.members();
    // For each member of v, the members of u that contain it.
    std::vector<std::vector<std::size_t>> hosts(vm.size());
    for (std::size_t a = 0; a < vm.size(); ++a) {
        for (std::size_t b = 0; b < um.size(); ++b)
            if (vm[a].is_subset_of(um[b])) hosts[a].push_back(b);
        if (hosts[a].empty()) return false;
    }
    for (std::size_t a = 0; a < vm.size(); ++a)
        for (std::size_t b = a + 1; b < vm.size(); ++b) {
            if (!vm[a].intersects(vm[b])) continue;
            const bool fits = std::any_of(hosts[a].begin(), hosts[a].end(),
                                          [&](std::size_t h) { return vm[b].is_subset_of(um[h]); });
            if (!fits) return false;
        }
    return true;
}

bool n_refines(const Covering& v, const Covering& u, unsigned n, std::span<const Covering> pool)
{
    if (n == 0) throw Error(Errc::InvalidArgument, "n-refinement needs n >= 1");
    if (n == 1) return double_refines(v, u);
    // reach[w]: v reaches pool[w] through some number of double-refinement steps.
    std::vector<bool> reach(pool.size());
    for (std::size_t w = 0; w < pool.size(); ++w) reach[w] = double_refines(v, pool[w]);
    for (unsigned step = 2; step < n; ++step) {
        std::vector<bool> next(pool.size(), false);
        for (std::size_t w = 0; w < pool.size(); ++w) {
            if (!reach[w]) continue;
            for (std::size_t x = 0; x < pool.size(); ++x)
                if (!next[x] && double_refines(pool[w], pool[x])) next[x] = true;
        }
        reach = std::move(next);
    }
    for (std::size_t w = 0; w < pool.size(); ++w)
        if (reach[w] && double_refines(pool[w], u)) return true;
    return false;
}

AdmissibleFamily AdmissibleFamily::chain(std::vector<Covering> levels)
{
    if (levels.empty()) throw Error(Errc::EmptyInput, "chain has no levels");
    AdmissibleFamily f;
    f.kind_ = FamilyKind::Chain;
    f.token_ = next_family_token();
    f.coverings_ = std::move(levels);
    for (const auto& c : f.coverings_) require_same_space(c, f.coverings_.front());
    f.compute_relations();
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
        if (!f.double_refines(i + 1, i)) {
            std::ostringstream os;
            os << "level " << i + 1 << " does not double-refine level " << i;
            throw Error(Errc::DegenerateChain, os.str());
        }
    return f;
}

AdmissibleFamily AdmissibleFamily::finite(std::vector<Covering> coverings)
{
    if (coverings.empty()) throw Error(Errc::EmptyInput, "family has no coverings");
    AdmissibleFamily f;
    f.kind_ = FamilyKind::Finite;
    f.token_ = next_family_token();
    f.coverings_ = std::move(coverings);
    for (const auto& c : f.coverings_) require_same_space(c, f.coverings_.front());
    f.compute_relations();
    return f;
}

void AdmissibleFamily::compute_relations()
{
    const std::size_t m = size();
    refines_.assign(m * m, false);
    double_refines_.assign(m * m, false);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            refines_[i * m + j] = covdyn::refines(coverings_[i], coverings_[j]);
            if (refines_[i * m + j]) double_refines_[i * m + j] = covdyn::double_refines(coverings_[i], coverings_[j]);
        }
}

std::optional<std::size_t> AdmissibleFamily::finest() const
{
    if (is_chain()) return depth();
    for (std::size_t i = 0; i < size(); ++i) {
        bool all = true;
        for (std::size_t j = 0; j < size() && all; ++j) all = refines(i, j);
        if (all) return i;
    }
    return std::nullopt;
}

AdmissibleFamily metric_chain_family(const Space& space, double eps0, std::size_t depth)
{
    if (!space.is_metric()) throw Error(Errc::NotMetricSpace, "metric chain needs a metric space");
    if (!std::isfinite(eps0) || eps0 <= 0.0) throw Error(Errc::DegenerateChain, "eps0 must be positive and finite");
    std::vector<Covering> levels;
    levels.reserve(depth + 1);
    for (std::size_t i = 0; i <= depth; ++i) {
        const double r = std::ldexp(eps0, -2 * static_cast<int>(i));
        if (r <= 0.0) throw Error(Errc::DegenerateChain, "radius underflows at level " + std::to_string(i));
        std::vector<PointSet> balls;
        balls.reserve(space.size());
        for (PointIndex x = 0; x < space.size(); ++x) balls.push_back(space.ball(x, r));
        levels.emplace_back(space, std::move(balls));
    }
    return AdmissibleFamily::chain(std::move(levels));
}

std::vector<Covering> enumerate_open_coverings(const Space& space)
{
    if (space.geometry() != GeometryKind::FiniteTopology)
        throw Error(Errc::InvalidArgument, "open coverings can only be enumerated on finite topologies");
    const auto& opens = space.opens();
    if (opens.size() > 12) throw Error(Errc::TooManyOpens, std::to_string(opens.size()) + " opens exceed the limit of 12");
    std::vector<PointSet> nonempty;
    for (const auto& o : opens)
        if (o.any()) nonempty.push_back(o);

    std::vector<Covering> out;
    const std::size_t k = nonempty.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        PointSet u(space.size());
        std::vector<PointSet> members;
        for (std::size_t b = 0; b < k; ++b)
            if (mask >> b & 1) {
                u |= nonempty[b];
                members.push_back(nonempty[b]);
            }
        if (u.all()) out.emplace_back(space, std::move(members));
    }
    return out;
}

AdmissibleFamily finite_all_coverings_family(const Space& space)
{
    return AdmissibleFamily::finite(enumerate_open_coverings(space));
}

bool AxiomReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck* AxiomReport::find(std::string_view name) const
{
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

AxiomReport verify_admissible(const AdmissibleFamily& family, const Space& space, const AdmissibilityProbe& probe)
{
    if (family.space_token() != space.token()) throw Error(Errc::SpaceMismatch, "family does not belong to this space");
    const std::size_t m = family.size();
    const std::size_t n = space.size();
    AxiomReport report;

    {
        // Chains: the finest stored level is exempt, its refinements lie past the truncation.
        AxiomCheck c{"double_refinement", true, {}};
        const std::size_t limit = family.is_chain() ? m - 1 : m;
        for (std::size_t i = 0; i < limit && c.passed; ++i) {
            bool found = false;
            for (std::size_t j = 0; j < m && !found; ++j) found = family.double_refines(j, i);
            if (!found) {
                c.passed = false;
                c.witness = "covering " + std::to_string(i) + " has no double refinement in the family";
            }
        }
        report.checks.push_back(std::move(c));
    }

    {
        AxiomCheck c{"star_separation", true, {}};
        std::vector<PointSet> opens;
        if (probe.opens)
            opens = *probe.opens;
        else if (space.geometry() == GeometryKind::FiniteTopology)
            opens = space.opens();
        else
            for (PointIndex p = 0; p < n; ++p) opens.push_back(space.singleton(p));

        std::vector<PointSet> compacta;
        if (space.geometry() == GeometryKind::FiniteTopology && n <= 12) {
            // Every subset of a finite space is compact.
            for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
                PointSet k(n);
                for (std::size_t b = 0; b < n; ++b)
                    if (mask >> b & 1) k.set(b);
                compacta.push_back(std::move(k));
            }
        } else {
            for (PointIndex p = 0; p < n; ++p) compacta.push_back(space.singleton(p));
        }
        compacta.insert(compacta.end(), probe.compacta.begin(), probe.compacta.end());

        for (const auto& k : compacta) {
            if (k.size() != n) throw Error(Errc::SpaceMismatch, "probe compactum has wrong universe size");
            for (const auto& y : opens) {
                if (!k.is_subset_of(y)) continue;
                bool found = false;
                for (std::size_t i = 0; i < m && !found; ++i) found = star(k, family.at(i)).is_subset_of(y);
                if (!found) {
                    c.passed = false;
                    c.witness = "no star of " + describe(k, space) + " fits inside open " + describe(y, space);
                    break;
                }
            }
            if (!c.passed) break;
        }
        report.checks.push_back(std::move(c));
    }

    {
        AxiomCheck c{"common_refinement", true, {}};
        for (std::size_t i = 0; i < m && c.passed; ++i)
            for (std::size_t j = i + 1; j < m && c.passed; ++j) {
                bool found = false;
                for (std::size_t k = 0; k < m && !found; ++k) found = family.refines(k, i) && family.refines(k, j);
                if (!found) {
                    c.passed = false;
                    c.witness = "coverings " + std::to_string(i) + " and " + std::to_string(j) + " have no common refinement";
                }
            }
        report.checks.push_back(std::move(c));
    }

    {
        AxiomCheck c{"stars_exhaust", true, {}};
        for (PointIndex x = 0; x < n && c.passed; ++x) {
            PointSet u(n);
            for (std::size_t i = 0; i < m; ++i) u |= family.at(i).point_star(x);
            if (!u.all()) {
                c.passed = false;
                c.witness = "stars of " + space.label(x) + " miss " + describe(~u, space);
            }
        }
        report.checks.push_back(std::move(c));
    }

    {
        // Chains: pairs involving the coarsest level are exempt, its coarsenings lie before the truncation.
        AxiomCheck c{"common_double_coarsening", true, {}};
        for (std::size_t i = 0; i < m && c.passed; ++i)
            for (std::size_t j = i; j < m && c.passed; ++j) {
                bool found = false;
                if (family.is_chain())
                    found = i == 0 || (family.double_refines(i, i - 1) && family.double_refines(j, i - 1));
                else
                    for (std::size_t k = 0; k < m && !found; ++k)
                        found = family.double_refines(i, k) && family.double_refines(j, k);
                if (!found) {
                    c.passed = false;
                    c.witness = "coverings " + std::to_string(i) + " and " + std::to_string(j) +
                                " have no common double coarsening";
                }
            }
        report.checks.push_back(std::move(c));
    }
    return report;
}

PointSet closure(const PointSet& y, const AdmissibleFamily& family)
{
    if (y.size() != family.universe()) throw Error(Errc::SpaceMismatch, "set and family have different universes");
    if (y.none()) throw Error(Errc::EmptyInput, "closure of the empty set requested");
    PointSet out = full_set(family.universe());
    for (const auto& u : family.coverings()) out &= star(y, u);
    return out;
}

AdmissibleFamily replete_closure(const AdmissibleFamily& family, const Space& space)
{
    if (family.is_chain()) throw Error(Errc::ChainKindUnsupported, "replete closure is defined for finite families only");
    if (family.space_token() != space.token()) throw Error(Errc::SpaceMismatch, "family does not belong to this space");
    std::vector<Covering> out(family.coverings().begin(), family.coverings().end());
    for (auto& v : enumerate_open_coverings(space)) {
        if (std::find(out.begin(), out.end(), v) != out.end()) continue;
        const bool coarsened = std::any_of(family.coverings().begin(), family.coverings().end(),
                                           [&](const Covering& u) { return refines(u, v); });
        if (coarsened) out.push_back(std::move(v));
    }
    return AdmissibleFamily::finite(std::move(out));
}

} // namespace covdyn
