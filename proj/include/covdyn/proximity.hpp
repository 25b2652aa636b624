#pragma once

#include "covdyn/covering.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace covdyn {

/// An upward-hereditary collection of coverings from one family.
///
/// Ordered by reverse inclusion: the whole family O is the least element and the
/// empty collection the greatest. For chain families the collection is always a
/// prefix {U_i : i <= threshold}; the full chain is canonically threshold = infinity.
class PColl {
public:
    static constexpr long infinity = std::numeric_limits<long>::max();

    static PColl full(const AdmissibleFamily& family);
    static PColl none(const AdmissibleFamily& family);
    static PColl from_threshold(const AdmissibleFamily& family, long threshold);
    /// Throws NotUpwardHereditary if the set is not closed under coarsening.
    static PColl from_indices(const AdmissibleFamily& family, IndexSet indices);

    const AdmissibleFamily& family() const noexcept { return *family_; }
    const IndexSet& indices() const noexcept { return bits_; }
    bool contains(std::size_t i) const { return bits_.test(i); }
    bool is_full() const { return bits_.all(); }
    bool is_empty() const { return bits_.none(); }

    /// Chain families only: -1 for the empty collection, infinity for the whole chain.
    long threshold() const;

    std::string to_string() const;

    friend bool operator==(const PColl& a, const PColl& b)
    {
        return a.family_->token() == b.family_->token() && a.bits_ == b.bits_;
    }
    friend PColl operator&(const PColl& a, const PColl& b);
    friend PColl operator|(const PColl& a, const PColl& b);

private:
    PColl(const AdmissibleFamily& family, IndexSet bits) : family_(&family), bits_(std::move(bits)) {}

    const AdmissibleFamily* family_;
    IndexSet bits_;
};

/// E1 ≺ E2, i.e. E1 ⊇ E2 as collections.
bool precedes(const PColl& e1, const PColl& e2);

/// nE: the coverings reached from a member of E by n double-refinement steps within the family.
PColl n_op(const PColl& e, unsigned n);

struct ConvergenceTrace {
    bool converges = false;
    /// Per covering index, the least position from which every term contains it.
    std::vector<std::optional<std::size_t>> settle;
};

/// Convergence to O of a finite sequence, read literally on its truncation.
ConvergenceTrace convergence_trace(std::span<const PColl> seq);
bool converges_to_O(std::span<const PColl> seq);

/// ρ(x, y): the coverings whose star at x reaches y.
PColl rho(PointIndex x, PointIndex y, const AdmissibleFamily& family);

using RhoFn = std::function<PColl(PointIndex, PointIndex)>;

/// The default ρ bound to a family, for APIs that accept an injectable ρ.
RhoFn rho_of(const AdmissibleFamily& family);

/// ρ(x, A) = union of ρ(x, a) over a in A.
PColl rho_point_set(PointIndex x, const PointSet& a, const AdmissibleFamily& family);
PColl rho_point_set(PointIndex x, const PointSet& a, const AdmissibleFamily& family, const RhoFn& rho_fn);

/// ρ_A(B) = intersection over b in B of ρ(b, A).
PColl rho_semi(const PointSet& a, const PointSet& b, const AdmissibleFamily& family);
PColl rho_semi(const PointSet& a, const PointSet& b, const AdmissibleFamily& family, const RhoFn& rho_fn);

} // namespace covdyn
