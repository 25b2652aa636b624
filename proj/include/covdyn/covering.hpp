#pragma once

#include "covdyn/space.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace covdyn {

/// A finite open covering of a Space, stored as explicit member sets.
///
/// Members are deduplicated and kept in a canonical order, so two coverings with
/// the same member sets compare equal. Point stars St[x, U] are cached at
/// construction because every proximity computation goes through them.
class Covering {
public:
    Covering(const Space& space, std::vector<PointSet> members);

    std::size_t universe() const noexcept { return universe_; }
    std::uint64_t space_token() const noexcept { return space_token_; }
    const std::vector<PointSet>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }

    /// St[x, U]: union of the members containing x.
    const PointSet& point_star(PointIndex x) const { return point_stars_.at(x); }

    /// Indices of the members containing x.
    const std::vector<std::size_t>& members_at(PointIndex x) const { return incidence_.at(x); }

    bool is_discrete() const;

    friend bool operator==(const Covering& a, const Covering& b)
    {
        return a.space_token_ == b.space_token_ && a.members_ == b.members_;
    }

private:
    std::size_t universe_ = 0;
    std::uint64_t space_token_ = 0;
    std::vector<PointSet> members_;
    std::vector<PointSet> point_stars_;
    std::vector<std::vector<std::size_t>> incidence_;
};

/// St[Y, U] = union of members of U that meet Y.
PointSet star(const PointSet& y, const Covering& u);

/// Every member of v lies inside some member of u.
bool refines(const Covering& v, const Covering& u);

/// Any two intersecting members of v fit jointly inside one member of u.
bool double_refines(const Covering& v, const Covering& u);

/// v double-refines u through n successive steps whose intermediate coverings
/// are taken from pool. n = 1 is plain double refinement.
bool n_refines(const Covering& v, const Covering& u, unsigned n, std::span<const Covering> pool);

enum class FamilyKind { Chain, Finite };

/// An indexed family of open coverings of one Space.
///
/// Chain families model the truncation U_0, U_1, ..., U_depth of an infinite
/// chain in which each level double-refines its predecessor. The refinements of
/// the finest stored level are understood to lie beyond the truncation.
/// Finite families are arbitrary finite collections, directed by refinement.
class AdmissibleFamily {
public:
    static AdmissibleFamily chain(std::vector<Covering> levels);
    static AdmissibleFamily finite(std::vector<Covering> coverings);

    FamilyKind kind() const noexcept { return kind_; }
    bool is_chain() const noexcept { return kind_ == FamilyKind::Chain; }
    std::size_t size() const noexcept { return coverings_.size(); }
    std::size_t depth() const noexcept { return coverings_.size() - 1; }
    const Covering& at(std::size_t i) const { return coverings_.at(i); }
    std::span<const Covering> coverings() const noexcept { return coverings_; }
    std::size_t universe() const noexcept { return coverings_.front().universe(); }
    std::uint64_t space_token() const noexcept { return coverings_.front().space_token(); }
    std::uint64_t token() const noexcept { return token_; }

    /// U_i refines U_j.
    bool refines(std::size_t i, std::size_t j) const { return refines_.at(i * size() + j); }
    /// U_i double-refines U_j.
    bool double_refines(std::size_t i, std::size_t j) const { return double_refines_.at(i * size() + j); }

    /// Index of a covering that refines every other member; for chains the last level.
    std::optional<std::size_t> finest() const;

private:
    AdmissibleFamily() = default;
    void compute_relations();

    FamilyKind kind_ = FamilyKind::Chain;
    std::uint64_t token_ = 0;
    std::vector<Covering> coverings_;
    std::vector<bool> refines_;
    std::vector<bool> double_refines_;
};

/// Chain of ball coverings with radii eps0 * 4^-i, i = 0..depth, centered at every sample point.
AdmissibleFamily metric_chain_family(const Space& space, double eps0, std::size_t depth);

/// Every open covering of a finite topology (at most 12 opens).
AdmissibleFamily finite_all_coverings_family(const Space& space);

struct AxiomCheck {
    std::string name;
    bool passed = true;
    std::string witness;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    bool all_passed() const;
    const AxiomCheck* find(std::string_view name) const;
};

struct AdmissibilityProbe {
    /// Opens tested by the star-basis axiom. Defaults: all opens of a finite
    /// topology, otherwise the singletons of the sample topology.
    std::optional<std::vector<PointSet>> opens;
    /// Extra compact sets for the star-separation axiom (singletons always included).
    std::vector<PointSet> compacta;
};

/// Checks the admissibility axioms (double refinement, star separation, common
/// refinement) and both repleteness conditions, with a witness for each failure.
AxiomReport verify_admissible(const AdmissibleFamily& family, const Space& space, const AdmissibilityProbe& probe = {});

/// cls(Y) as the intersection of St[Y, U] over the family.
PointSet closure(const PointSet& y, const AdmissibleFamily& family);

/// Adds every open covering coarsened by some member of a Finite family.
AdmissibleFamily replete_closure(const AdmissibleFamily& family, const Space& space);

/// All open coverings of a finite topology, in a canonical order.
std::vector<Covering> enumerate_open_coverings(const Space& space);

} // namespace covdyn
