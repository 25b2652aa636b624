#pragma once

#include "covdyn/dynamics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace covdyn {

/// "{a, b, ... n more}" with at most limit labels.
std::string describe_set(const Space& space, const PointSet& y, std::size_t limit = 6);

/// A named bounded point set over which "attracts every bounded subset" is verified.
struct Testset {
    std::string name;
    PointSet points;
};

/// The whole space when it is bounded, the declared witness sets, then random_count
/// random subsets of U_0 members (always bounded), drawn from a seeded generator.
std::vector<Testset> standard_testsets(const Space& space, const AdmissibleFamily& family,
                                       const std::vector<Testset>& declared, std::uint64_t seed,
                                       std::size_t random_count = 50);

struct AttractorOptions {
    std::optional<std::size_t> resolution;  ///< defaults to the family's finest index
    CoverSearch search;                     ///< cap for the compactness checks
    std::size_t invariance_samples = 8;     ///< elements of A_0 used by the invariance check
    std::optional<std::size_t> perturb_depth; ///< passed to prolongational_limit
};

enum class AttractorKind { Both, GlobalOnly, UniformOnly, Neither };

/// "both", "global-only", "global-uniform-only" or "neither".
std::string_view attractor_kind_name(AttractorKind kind) noexcept;

struct AttractorVerdict {
    PointSet candidate;
    std::vector<Verdict> checks;
    bool passed() const { return all_passed(checks); }
};

AttractorKind classify(const AttractorVerdict& global, const AttractorVerdict& uniform);

/// The union of ω(Y) over the testsets; throws UnboundedTestset.
PointSet construct_candidate(const ActionModel& model, const AdmissibleFamily& family,
                             const std::vector<Testset>& testsets, const AttractorOptions& options = {});

/// nonempty, closed, compact, invariant and attracts (every testset).
AttractorVerdict verify_global(const ActionModel& model, const AdmissibleFamily& family, const PointSet& candidate,
                               const std::vector<Testset>& testsets, const AttractorOptions& options = {});

/// compact, invariant, and J(x) nonempty and inside the candidate for every sampled x.
AttractorVerdict verify_uniform(const ActionModel& model, const AdmissibleFamily& family, const PointSet& candidate,
                                const PointSet& points_sample, const AttractorOptions& options = {});

/// Points fixed by every sampled element of A_0, as singletons.
std::vector<PointSet> sampled_fixed_points(const ActionModel& model);

/// a1 = a2 at resolution, and every supplied bounded invariant set lies in a1.
/// Supplied sets that are unbounded or not invariant at resolution are skipped and listed.
std::vector<Verdict> check_uniqueness(const ActionModel& model, const AdmissibleFamily& family, const PointSet& a1,
                                      const PointSet& a2, const std::vector<PointSet>& invariant_sets,
                                      const AttractorOptions& options = {});

struct EquivalenceReport {
    std::vector<Verdict> checks; ///< "forward" (global => uniform) and "converse" (uniform => global)
    std::vector<std::string> failing_hypotheses;
    bool consistent() const { return all_passed(checks); }
};

/// Forward direction wherever the global check passes; the converse only where every
/// declared hypothesis (looked up by name in `hypotheses`) passes.
EquivalenceReport check_equivalence(const AttractorVerdict& global, const AttractorVerdict& uniform,
                                    const std::vector<Verdict>& hypotheses, const std::vector<std::string>& declared);

} // namespace covdyn
