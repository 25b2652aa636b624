#pragma once

#include "covdyn/covering.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace covdyn {

/// One covering of the pointwise-convergence base: balls of radius eps around
/// the listed arguments, no constraint anywhere else.
struct PointwiseLevel {
    std::vector<std::size_t> args; ///< indices into the argument grid
    double eps = 1.0;
};

/// A finite set of maps G -> R^d on a finite argument grid G.
///
/// Each function is a point of a Sampled space whose coordinates are its values
/// at the arguments, concatenated. Covering members are products of open
/// Euclidean balls, one per constrained argument, centered at the values the
/// sampled functions take there; unconstrained arguments are left free.
class FunctionSpaceModel {
public:
    FunctionSpaceModel(std::vector<std::vector<double>> arguments, std::size_t value_dim,
                       std::vector<std::vector<double>> values, std::vector<std::string> labels = {});

    const std::shared_ptr<const Space>& space() const noexcept { return space_; }
    const std::vector<std::vector<double>>& arguments() const noexcept { return arguments_; }
    std::size_t value_dim() const noexcept { return value_dim_; }
    std::size_t function_count() const noexcept { return space_->size(); }

    /// f(arguments[arg]).
    std::span<const double> value(PointIndex f, std::size_t arg) const;

    /// The distinct values taken at one argument, in lexicographic order.
    const std::vector<std::vector<double>>& centers(std::size_t arg) const { return centers_.at(arg); }

    Covering covering(const PointwiseLevel& level) const;
    AdmissibleFamily family(const std::vector<PointwiseLevel>& levels) const;

    /// f ∈ St[g, U]: at every constrained argument some center lies within eps of both values.
    bool in_star(PointIndex f, PointIndex g, const PointwiseLevel& level) const;

private:
    std::vector<std::vector<double>> arguments_;
    std::size_t value_dim_;
    std::shared_ptr<const Space> space_;
    std::vector<std::vector<std::vector<double>>> centers_;
};

/// Euclidean norm of a value vector.
double value_norm(std::span<const double> v);

} // namespace covdyn
