#pragma once

#include "covdyn/proximity.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace covdyn {

/// Default cardinality cap standing in for "finite" star covers: ⌈n/4⌉.
std::size_t default_cap(std::size_t universe);

enum class CoverKind {
    Stars,   ///< covers by point stars St[c, U], c anywhere in the space
    Members, ///< covers by members of U
};

struct CoverSearch {
    std::size_t cap = 0;                ///< 0 selects default_cap
    std::size_t node_budget = 2'000'000; ///< exact-search nodes before SearchBudgetExceeded
};

/// Size of some cover of y by at most cap pieces (stars or members of u), if one exists.
/// The decision is exact: a greedy cover certifies "yes", a disjoint packing
/// certifies "no", and a depth-first search settles the gap.
std::optional<std::size_t> min_cover_within(const PointSet& y, const Covering& u, CoverKind kind, std::size_t cap,
                                            std::size_t node_budget = 2'000'000);

bool is_bounded(const PointSet& y, const AdmissibleFamily& family);
bool is_totally_bounded(const PointSet& y, const AdmissibleFamily& family);

/// α(Y): the coverings under which Y admits a cover by at most cap point stars.
PColl alpha(const PointSet& y, const AdmissibleFamily& family, const CoverSearch& search = {});

/// Member-cover variant of α (at most cap covering members); houses both γ and β.
PColl member_alpha(const PointSet& y, const AdmissibleFamily& family, const CoverSearch& search = {});

/// Every covering admits a tail (starting no later than halfway) whose terms are pairwise ρ-related.
bool is_cauchy(std::span<const PointIndex> seq, const AdmissibleFamily& family);

/// A point whose star under u holds at least min_hits of the terms, if any.
std::optional<PointIndex> cluster_center(std::span<const PointIndex> terms, const Covering& u, std::size_t min_hits);

struct CantorKuratowskiReport {
    bool hypothesis_met = false; ///< α(F_k) → O along the chain
    bool conclusion_holds = false;
    std::string verdict;         ///< "holds", "violated" or "hypothesis not met"
    PointSet intersection;
    bool intersection_compact = false;
    std::vector<PColl> alpha_trace;
};

/// Checks that a decreasing chain of nonempty closed sets with α(F_k) → O has a
/// nonempty compact intersection. When α does not converge, no claim is made.
CantorKuratowskiReport cantor_kuratowski_check(std::span<const PointSet> chain, const AdmissibleFamily& family,
                                               const CoverSearch& search = {});

} // namespace covdyn
