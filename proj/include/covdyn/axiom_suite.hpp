#pragma once

#include "covdyn/compactness.hpp"
#include "covdyn/proximity.hpp"
#include "covdyn/verdict.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace covdyn {

struct AxiomSuiteOptions {
    RhoFn rho;                      ///< empty: ρ of the family; set to inject a mutated ρ
    CoverSearch search;             ///< cap for α and its member-cover variant
    std::uint64_t seed = 0;
    std::size_t random_sets = 200;  ///< samples for the R4, P9 and R5 properties
    std::size_t bounded_sets = 100; ///< samples for R1 and R2
    std::size_t ck_positive = 100;
    std::size_t ck_negative = 100;
};

struct CantorKuratowskiSweep {
    std::size_t holds = 0;
    std::size_t hypothesis_not_met = 0;
    std::size_t violated = 0;
    std::size_t negative_controls = 0;         ///< chains built to miss the hypothesis
    std::size_t negative_controls_not_met = 0; ///< of those, how many reported "hypothesis not met"
    std::string first_violation;
};

/// Positive chains (closures of shrinking stars around random centers) and negative controls
/// (spread sets checked with cap 1), each run through cantor_kuratowski_check.
CantorKuratowskiSweep cantor_kuratowski_sweep(const Space& space, const AdmissibleFamily& family,
                                              const AxiomSuiteOptions& options = {});

/// Property checks named P1-1..P1-5, R4-1..R4-4, R5, P9-1..P9-4, cantor-kuratowski, R1 and R2.
std::vector<Verdict> run_axiom_suite(const Space& space, const AdmissibleFamily& family,
                                     const AxiomSuiteOptions& options = {});

/// ρ with the arguments of one pair swapped in one direction only; breaks symmetry for negative controls.
RhoFn asymmetric_rho(const AdmissibleFamily& family);

} // namespace covdyn
