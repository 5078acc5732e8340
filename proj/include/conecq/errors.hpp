#pragma once

#include <stdexcept>
#include <string>

namespace conecq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape/arity mismatch between operands.
struct DimensionError : Error {
    using Error::Error;
};

// A combinatorial budget (face count, pattern count) was exhausted.  Checkers
// catch this and degrade to UNKNOWN; it is not a soundness problem.
struct CapacityError : Error {
    using Error::Error;
};

// An operation needing exact data met a numeric-only (oracle) function atom.
struct CapabilityError : Error {
    using Error::Error;
};

// A point that was required to lie in a set does not.
struct InfeasibleError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

// Two results that a proven implication says must agree, disagree.  This is
// never reconciled silently.
struct InconsistencyError : Error {
    using Error::Error;
};

} // namespace conecq
