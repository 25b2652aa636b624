#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace covdyn {

enum class Errc {
    MetricAxiomViolation,
    DuplicatePoint,
    NotMetricSpace,
    NotClosedUnderUnion,
    NotClosedUnderIntersection,
    MissingEmptyOrFull,
    NotACovering,
    EmptyInput,
    SpaceMismatch,
    DegenerateChain,
    TooManyOpens,
    ChainKindUnsupported,
    FamilyMismatch,
    NotUpwardHereditary,
    NotDecreasing,
    NotClosed,
    UnboundedTestset,
    UnknownTestset,
    UnknownScenario,
    SchemaError,
    SnapToleranceExceeded,
    NestingViolation,
    SearchBudgetExceeded,
    InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

/// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace covdyn
