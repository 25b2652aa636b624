#include "covdyn/compactness.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace covdyn {

namespace {

struct CoverProblem {
    std::vector<PointSet> pieces;                    // candidate pieces restricted to y, dominance-pruned
    std::vector<PointIndex> points;                  // elements of y
    std::vector<std::vector<std::size_t>> incident;  // per element of y (by position in points), covering pieces
};

CoverProblem build_problem(const PointSet& y, const Covering& u, CoverKind kind)
{
    CoverProblem p;
    std::vector<PointSet> raw;
    if (kind == CoverKind::Stars) {
        for (PointIndex c = 0; c < u.universe(); ++c) {
            PointSet s = u.point_star(c) & y;
            if (s.any()) raw.push_back(std::move(s));
        }
    } else {
        for (const auto& m : u.members()) {
            PointSet s = m & y;
            if (s.any()) raw.push_back(std::move(s));
        }
    }
    std::sort(raw.begin(), raw.end(), [](const PointSet& a, const PointSet& b) {
        const auto ca = a.count(), cb = b.count();
        return ca != cb ? ca > cb : a < b;
    });
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    for (auto& s : raw) {
        const bool dominated =
            std::any_of(p.pieces.begin(), p.pieces.end(), [&](const PointSet& kept) { return s.is_subset_of(kept); });
        if (!dominated) p.pieces.push_back(std::move(s));
    }
    p.points = elements_of(y);
    std::vector<std::size_t> position(y.size(), 0);
    for (std::size_t i = 0; i < p.points.size(); ++i) position[p.points[i]] = i;
    p.incident.assign(p.points.size(), {});
    for (std::size_t k = 0; k < p.pieces.size(); ++k)
        for_each_point(p.pieces[k], [&](PointIndex x) { p.incident[position[x]].push_back(k); });
    return p;
}

std::size_t greedy_cover(const CoverProblem& p, const PointSet& y)
{
    PointSet uncovered = y;
    std::size_t used = 0;
    while (uncovered.any()) {
        std::size_t best = 0, best_gain = 0;
        for (std::size_t k = 0; k < p.pieces.size(); ++k) {
            const std::size_t gain = (p.pieces[k] & uncovered).count();
            if (gain > best_gain) {
                best_gain = gain;
                best = k;
            }
        }
        uncovered -= p.pieces[best];
        ++used;
    }
    return used;
}

/// Points no two of which share a piece; any cover needs at least this many pieces.
std::size_t packing_bound(const CoverProblem& p)
{
    std::vector<std::size_t> order(p.points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p.incident[a].size() < p.incident[b].size(); });
    std::vector<bool> taken(p.pieces.size(), false);
    std::size_t packed = 0;
    for (std::size_t i : order) {
        const auto& inc = p.incident[i];
        if (std::any_of(inc.begin(), inc.end(), [&](std::size_t k) { return taken[k]; })) continue;
        for (std::size_t k : inc) taken[k] = true;
        ++packed;
    }
    return packed;
}

class ExactSearch {
public:
    ExactSearch(const CoverProblem& p, std::size_t budget) : p_(p), budget_(budget) {}

    bool coverable(const PointSet& uncovered, std::size_t remaining)
    {
        if (uncovered.none()) return true;
        if (remaining == 0) return false;
        if (++nodes_ > budget_) throw Error(Errc::SearchBudgetExceeded, "exact cover search exceeded its node budget");
        // Branch on the uncovered point with the fewest covering pieces.
        std::size_t pick = 0, fewest = SIZE_MAX;
        for (std::size_t i = 0; i < p_.points.size(); ++i) {
            if (!uncovered.test(p_.points[i])) continue;
            if (p_.incident[i].size() < fewest) {
                fewest = p_.incident[i].size();
                pick = i;
            }
        }
        for (std::size_t k : p_.incident[pick])
            if (coverable(uncovered - p_.pieces[k], remaining - 1)) return true;
        return false;
    }

private:
    const CoverProblem& p_;
    std::size_t budget_;
    std::size_t nodes_ = 0;
};

void require_nonempty(const PointSet& y, const AdmissibleFamily& family)
{
    if (y.size() != family.universe()) throw Error(Errc::SpaceMismatch, "set and family have different universes");
    if (y.none()) throw Error(Errc::EmptyInput, "empty set");
}

PColl measure(const PointSet& y, const AdmissibleFamily& family, const CoverSearch& search, CoverKind kind)
{
    require_nonempty(y, family);
    const std::size_t cap = search.cap ? search.cap : default_cap(family.universe());
    IndexSet bits(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (min_cover_within(y, family.at(i), kind, cap, search.node_budget)) {
            bits.set(i);
        } else if (family.is_chain()) {
            break; // finer levels need at least as many pieces
        }
    }
    return PColl::from_indices(family, std::move(bits));
}

} // namespace

std::size_t default_cap(std::size_t universe)
{
    return std::max<std::size_t>(1, (universe + 3) / 4);
}

std::optional<std::size_t> min_cover_within(const PointSet& y, const Covering& u, CoverKind kind, std::size_t cap,
                                            std::size_t node_budget)
{
    if (y.size() != u.universe()) throw Error(Errc::SpaceMismatch, "set and covering have different universes");
    if (y.none()) return 0;
    if (cap == 0) return std::nullopt;
    const CoverProblem p = build_problem(y, u, kind);
    const std::size_t greedy = greedy_cover(p, y);
    if (greedy <= cap) return greedy;
    if (packing_bound(p) > cap) return std::nullopt;
    ExactSearch search(p, node_budget);
    if (search.coverable(y, cap)) return cap;
    return std::nullopt;
}

bool is_bounded(const PointSet& y, const AdmissibleFamily& family)
{
    require_nonempty(y, family);
    for (const auto& u : family.coverings()) {
        bool related = true;
        for (auto x = y.find_first(); x != PointSet::npos && related; x = y.find_next(x))
            related = y.is_subset_of(u.point_star(x));
        if (related) return true;
    }
    return false;
}

bool is_totally_bounded(const PointSet& y, const AdmissibleFamily& family)
{
    require_nonempty(y, family);
    // On a finite space the stars of the points of Y always form a finite cover.
    for (const auto& u : family.coverings())
        if (!y.is_subset_of(star(y, u))) return false;
    return true;
}

PColl alpha(const PointSet& y, const AdmissibleFamily& family, const CoverSearch& search)
{
    return measure(y, family, search, CoverKind::Stars);
}

PColl member_alpha(const PointSet& y, const AdmissibleFamily& family, const CoverSearch& search)
{
    return measure(y, family, search, CoverKind::Members);
}

bool is_cauchy(std::span<const PointIndex> seq, const AdmissibleFamily& family)
{
    if (seq.empty()) throw Error(Errc::EmptyInput, "empty sequence");
    const std::size_t last_start = seq.size() / 2;
    for (const auto& u : family.coverings()) {
        bool found = false;
        for (std::size_t k0 = 0; k0 <= last_start && !found; ++k0) {
            bool ok = true;
            for (std::size_t a = k0; a < seq.size() && ok; ++a)
                for (std::size_t b = a + 1; b < seq.size() && ok; ++b) ok = u.point_star(seq[a]).test(seq[b]);
            found = ok;
        }
        if (!found) return false;
    }
    return true;
}

std::optional<PointIndex> cluster_center(std::span<const PointIndex> terms, const Covering& u, std::size_t min_hits)
{
    for (PointIndex c = 0; c < u.universe(); ++c) {
        const auto& s = u.point_star(c);
        std::size_t hits = 0;
        for (PointIndex t : terms) hits += s.test(t);
        if (hits >= min_hits) return c;
    }
    return std::nullopt;
}

CantorKuratowskiReport cantor_kuratowski_check(std::span<const PointSet> chain, const AdmissibleFamily& family,
                                               const CoverSearch& search)
{
    if (chain.empty()) throw Error(Errc::EmptyInput, "empty chain");
    for (std::size_t k = 0; k < chain.size(); ++k) {
        require_nonempty(chain[k], family);
        if (closure(chain[k], family) != chain[k]) throw Error(Errc::NotClosed, "set " + std::to_string(k) + " is not closed");
        if (k > 0 && !chain[k].is_subset_of(chain[k - 1]))
            throw Error(Errc::NotDecreasing, "set " + std::to_string(k) + " is not inside its predecessor");
    }

    CantorKuratowskiReport r;
    for (const auto& f : chain) r.alpha_trace.push_back(alpha(f, family, search));
    r.hypothesis_met = converges_to_O(r.alpha_trace);
    r.intersection = chain.front();
    for (const auto& f : chain) r.intersection &= f;
    if (!r.hypothesis_met) {
        r.verdict = "hypothesis not met";
        return r;
    }
    r.intersection_compact = r.intersection.any() && alpha(r.intersection, family, search).is_full();
    r.conclusion_holds = r.intersection.any() && r.intersection_compact;
    r.verdict = r.conclusion_holds ? "holds" : "violated";
    return r;
}

} // namespace covdyn
