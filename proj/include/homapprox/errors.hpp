#pragma once

#include <stdexcept>
#include <string>

namespace homapprox {

// Base class for all engine errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A stated operation precondition does not hold (bad input, unmet hypothesis).
struct PreconditionError : Error {
    using Error::Error;
};

// A verified equivalence failed on concrete data: either the input is
// corrupted or the engine has a bug. Never swallowed; the CLI maps this to a
// dedicated exit code.
struct TheoremViolation : Error {
    using Error::Error;
};

} // namespace homapprox
