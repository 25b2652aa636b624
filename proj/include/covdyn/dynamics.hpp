#pragma once

#include "covdyn/compactness.hpp"
#include "covdyn/verdict.hpp"

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace covdyn {

/// A semigroup element; integers are stored as exact doubles.
using Element = std::vector<double>;

std::string format_element(const Element& e);

enum class SemigroupKind {
    NatAdd,        ///< (N, +), identity 0
    NatMul,        ///< (N \ {0}, *)
    RealVectorAdd, ///< (R_+^d, +)
    ScalarMul,     ///< linear maps x -> c x under composition, i.e. (R, *)
};

class Semigroup {
public:
    static Semigroup nat_add() { return Semigroup(SemigroupKind::NatAdd, 1); }
    static Semigroup nat_mul() { return Semigroup(SemigroupKind::NatMul, 1); }
    static Semigroup real_vector_add(std::size_t dim) { return Semigroup(SemigroupKind::RealVectorAdd, dim); }
    static Semigroup scalar_mul() { return Semigroup(SemigroupKind::ScalarMul, 1); }

    SemigroupKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return dim_; }
    bool is_integer() const noexcept { return kind_ == SemigroupKind::NatAdd || kind_ == SemigroupKind::NatMul; }

    bool in_carrier(const Element& e) const;
    Element compose(const Element& a, const Element& b) const;
    /// a with compose(a, s) = b, if the carrier holds one.
    std::optional<Element> right_quotient(const Element& b, const Element& s) const;
    /// a with compose(s, a) = b, if the carrier holds one.
    std::optional<Element> left_quotient(const Element& b, const Element& s) const;

private:
    Semigroup(SemigroupKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}
    SemigroupKind kind_;
    std::size_t dim_;
};

std::string_view semigroup_name(SemigroupKind kind) noexcept;

enum class FilterKind {
    AddTails,        ///< A_k = {t >= k} in (N, +)
    MulTails,        ///< A_k = {n >= max(1, k)} in (N \ {0}, *)
    CoordinateTails, ///< A_k = {t : t_i >= k for all i}
    PowerLevels,     ///< A_k = {c^j : |c| <= L, j >= k} in (R, *)
    Explicit,        ///< finitely many listed elements per level
};

/// A nested chain A_0 ⊇ A_1 ⊇ ... of semigroup subsets, given by membership and a sampler.
class FilterBasis {
public:
    static FilterBasis add_tails() { return FilterBasis(FilterKind::AddTails, 1); }
    static FilterBasis mul_tails() { return FilterBasis(FilterKind::MulTails, 1); }
    static FilterBasis coordinate_tails(std::size_t dim) { return FilterBasis(FilterKind::CoordinateTails, dim); }
    static FilterBasis power_levels(double contraction, std::vector<double> bases);
    /// Levels given as explicit element lists; nesting is checked when an action samples them.
    static FilterBasis explicit_levels(std::size_t dim, std::vector<std::vector<Element>> levels);

    FilterKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return dim_; }
    double contraction() const noexcept { return contraction_; }
    const std::vector<double>& bases() const noexcept { return bases_; }
    const std::vector<std::vector<Element>>& levels() const noexcept { return levels_; }

    bool contains(std::size_t level, const Element& e) const;
    /// The first count elements of A_level in a fixed deterministic order.
    std::vector<Element> draws(std::size_t level, std::size_t count) const;
    /// For integer bases, the least element of A_level (the start of an exhaustive enumeration).
    std::optional<long> integer_floor(std::size_t level) const;

private:
    FilterBasis(FilterKind kind, std::size_t dim) : kind_(kind), dim_(dim) {}
    FilterKind kind_;
    std::size_t dim_;
    double contraction_ = 0.5;
    std::vector<double> bases_;
    std::vector<std::vector<Element>> levels_;
};

std::string_view filter_name(FilterKind kind) noexcept;

enum class ActionKind {
    Identity,
    ScalePower,    ///< coordinate c scaled by base^(t_(c mod dim t))
    Iterate,       ///< points are affine maps sampled on args; n acts as the n-th iterate
    ComposeLinear, ///< c acts on every value by v -> x0 + c (v - x0)
};

std::string_view action_name(ActionKind kind) noexcept;

struct ActionSpec {
    ActionKind kind = ActionKind::Identity;
    double base = 0.5;
    double x0 = 0.0;
    std::vector<double> args; ///< sample arguments of the affine maps (Iterate only)
};

struct ActionOptions {
    std::size_t per_level = 32;
    std::size_t max_level = 12;
    double snap_tolerance = std::numeric_limits<double>::infinity();
    std::size_t assoc_samples = 6;
};

/// A semigroup action on a Space with a filter basis, tabulated on the sampled elements.
///
/// Every element drawn at levels 0..max_level is applied to every point once at
/// construction; images are snapped to the nearest sample point and the snap
/// error is checked against the tolerance. Filter nesting is verified on the draws.
class ActionModel {
public:
    ActionModel(std::shared_ptr<const Space> space, Semigroup semigroup, FilterBasis filter, ActionSpec spec,
                ActionOptions options = {});

    const Space& space() const noexcept { return *space_; }
    const Semigroup& semigroup() const noexcept { return semigroup_; }
    const FilterBasis& filter() const noexcept { return filter_; }
    const ActionSpec& spec() const noexcept { return spec_; }
    const ActionOptions& options() const noexcept { return options_; }
    std::size_t max_level() const noexcept { return options_.max_level; }

    std::size_t element_count() const noexcept { return elements_.size(); }
    const Element& element(std::size_t id) const { return elements_.at(id); }
    /// Element ids drawn at one level, in draw order.
    const std::vector<std::size_t>& level_draws(std::size_t level) const { return level_draws_.at(level); }
    /// Element ids drawn at this level or any later one (the sample of A_level used by orbits).
    const std::vector<std::size_t>& tail_elements(std::size_t level) const { return tail_elements_.at(level); }

    PointIndex image(std::size_t element_id, PointIndex x) const { return images_.at(element_id).at(x); }
    const std::vector<PointIndex>& images(std::size_t element_id) const { return images_.at(element_id); }

    /// Images of every point under an arbitrary carrier element, snapped; checks the tolerance.
    std::vector<PointIndex> apply_all(const Element& e) const;

    double max_snap_error() const noexcept { return max_snap_error_; }

    /// s(tx) = (st)x on sampled triples, up to twice the snap tolerance.
    Verdict associativity() const;

private:
    std::vector<double> act(const Element& e, std::span<const double> coords) const;
    PointIndex apply_snapped(const Element& e, PointIndex x, double& worst) const;

    std::shared_ptr<const Space> space_;
    Semigroup semigroup_;
    FilterBasis filter_;
    ActionSpec spec_;
    ActionOptions options_;
    std::vector<Element> elements_;
    std::vector<std::vector<PointIndex>> images_;
    std::vector<std::vector<std::size_t>> level_draws_;
    std::vector<std::vector<std::size_t>> tail_elements_;
    double max_snap_error_ = 0.0;
};

/// The covering index used when none is requested: a chain's finest level, or a finite family's finest member.
std::size_t default_resolution(const AdmissibleFamily& family);

/// b ⊆ St[a, U_r].
bool contained_at_resolution(const PointSet& b, const PointSet& a, const AdmissibleFamily& family, std::size_t r);
/// Mutual star containment at index r (both semi-proximities equal O at that index).
bool equal_at_resolution(const PointSet& a, const PointSet& b, const AdmissibleFamily& family, std::size_t r);

/// AY for A = A_level, evaluated on the sampled elements.
PointSet orbit(const ActionModel& model, std::size_t level, const PointSet& y);

/// Element ids forming an F-divergent sequence: per_level draws from each level in turn.
std::vector<std::size_t> divergent_sequence(const ActionModel& model, std::size_t per_level);

struct LimitWitness {
    PointIndex point = 0;
    std::size_t element = 0;
    PointIndex source = 0;
    PointIndex image = 0;
};

struct LimitSetReport {
    PointSet points;
    std::size_t resolution = 0;
    std::size_t truncation = 0;
    std::vector<LimitWitness> witnesses;
};

/// ω(Y, F) at resolution r: the intersection over levels of St[AY, U_r].
LimitSetReport omega_limit(const ActionModel& model, const PointSet& y, const AdmissibleFamily& family,
                           std::optional<std::size_t> resolution = {});

/// J(x, F): limit points of t x' for divergent t and x' in shrinking stars of x
/// (perturbation stars stop shrinking at perturb_depth).
LimitSetReport prolongational_limit(const ActionModel& model, PointIndex x, const AdmissibleFamily& family,
                                    std::optional<std::size_t> resolution = {},
                                    std::optional<std::size_t> perturb_depth = {});

/// J(Y, F) as the union of J(x, F) over x in Y.
LimitSetReport prolongational_limit(const ActionModel& model, const PointSet& y, const AdmissibleFamily& family,
                                    std::optional<std::size_t> resolution = {},
                                    std::optional<std::size_t> perturb_depth = {});

struct AttractionFailure {
    std::size_t index = 0; ///< covering index whose star is escaped
    std::size_t element = 0;
    PointIndex source = 0;
    PointIndex image = 0;
};

struct AttractionReport {
    bool attracts = false;
    /// Per covering index, the least level whose orbit of Z lies in St[Y, U_i].
    std::vector<std::optional<std::size_t>> level;
    std::optional<AttractionFailure> failure;
    /// The sequence formulation: ρ_Y(t_k Z) → O along an adversarial divergent sequence.
    bool sequence_converges = false;
    bool formulations_agree = false;
    std::vector<PColl> sequence_trace;
};

AttractionReport attracts(const ActionModel& model, const PointSet& y, const PointSet& z, const AdmissibleFamily& family);

/// Least level whose orbit of Z lies inside Y.
std::optional<std::size_t> absorbs(const ActionModel& model, const PointSet& y, const PointSet& z);

struct HypothesisOptions {
    std::size_t s_samples = 8;       ///< elements s drawn from A_0
    std::size_t witness_levels = 64; ///< levels searched for B
    long enumeration_bound = 1000;   ///< integer semigroups: B enumerated exhaustively up to this value
};

/// H1: sB ⊆ A, H2: Bs ⊆ A, H3: B ⊆ As, H4: B ⊆ sA, each "for every s and A there is B".
std::vector<Verdict> check_hypotheses(const ActionModel& model, const HypothesisOptions& options = {});

struct TaxonomyOptions {
    CoverSearch search;
    std::optional<std::size_t> resolution;
    std::optional<PointSet> dissipative_set;    ///< declared D; otherwise built from ω-limits
    std::optional<Element> eventual_compactness; ///< declared witness t, if the system claims it
    std::size_t draws_per_level = 4;            ///< length of the adversarial sequences per level
};

/// Eventual boundedness, bounded/point dissipativity, asymptotic, limit and eventual compactness.
std::vector<Verdict> check_dissipativity(const ActionModel& model, const AdmissibleFamily& family,
                                         const std::vector<PointSet>& testsets, const PointSet& points_sample,
                                         const TaxonomyOptions& options = {});

/// The adversarial sequence used by the asymptotic-compactness check, as (element, source) pairs.
std::vector<std::pair<std::size_t, PointIndex>> escaping_sequence(const ActionModel& model, const PointSet& testset,
                                                                  const Covering& u, std::size_t draws_per_level);

} // namespace covdyn
