#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace drbsde {

/// Node address on the lattice: time level i, node index k (0 <= k <= i).
struct NodeRef {
    std::size_t level = 0;
    std::size_t node = 0;
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad call arguments: empty schedules, unknown catalog names, p <= 1, ...
struct InvalidArgumentError : Error {
    using Error::Error;
};

/// Problem data violates barrier order or terminal compatibility.
struct InfeasibleProblemError : Error {
    InfeasibleProblemError(std::string what, NodeRef where)
        : Error(std::move(what)), where(where) {}
    NodeRef where;
};

/// dt * A_norm >= 1: the implicit node map is not contractive at this step size.
struct StepTooCoarseError : Error {
    using Error::Error;
};

/// Bracket expansion for the implicit node solve gave up (64 doublings).
struct GeneratorGrowthError : Error {
    using Error::Error;
};

/// infconv regularization asked for without the growth metadata it needs.
struct InsufficientMetadataError : Error {
    using Error::Error;
};

/// A solver-side ordering assertion failed (signals a bug or dt too coarse).
struct MonotonicityViolationError : Error {
    MonotonicityViolationError(std::string what, NodeRef where, double defect)
        : Error(std::move(what)), where(where), defect(defect) {}
    NodeRef where;
    double defect = 0.0;
};

/// Three-scheme sandwich Y_i <= Y_iii <= Y_ii failed at a node.
struct SandwichViolationError : Error {
    SandwichViolationError(std::string what, NodeRef where, double defect)
        : Error(std::move(what)), where(where), defect(defect) {}
    NodeRef where;
    double defect = 0.0;
};

/// Penalization limits disagree beyond tolerance.
struct LimitDisagreementError : Error {
    LimitDisagreementError(std::string what, double gap)
        : Error(std::move(what)), gap(gap) {}
    double gap = 0.0;
};

/// Independent solution routes disagree beyond tolerance.
struct UniquenessViolationError : Error {
    UniquenessViolationError(std::string what, double gap)
        : Error(std::move(what)), gap(gap) {}
    double gap = 0.0;
};

/// comparison_harness was handed inputs that are not actually ordered.
struct ComparisonSetupError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace drbsde
