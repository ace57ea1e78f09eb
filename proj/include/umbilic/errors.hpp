#ifndef UMBILIC_ERRORS_HPP
#define UMBILIC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace umb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed expression or surface file. Carries the byte offset of the first
// offending character and the token classes that would have been accepted.
struct ParseError : Error {
    std::size_t offset;
    std::vector<std::string> expected;

    ParseError(const std::string& msg, std::size_t off, std::vector<std::string> exp = {})
        : Error(msg), offset(off), expected(std::move(exp)) {}
};

// Evaluation left the function's domain (log of a non-positive value, division
// by zero, non-integer power of a non-positive base, non-finite intermediate).
struct EvalError : Error {
    using Error::Error;
};

// Parameter point outside the declared rectangle, or a degenerate rectangle.
struct DomainError : Error {
    using Error::Error;
};

// The differential dropped rank: EG - F^2 below tolerance.
struct RankError : Error {
    using Error::Error;
};

// A field came too close to zero on a sampling loop (an umbilic or other
// singularity lies on or numerically near the loop).
struct DegenerateLoopError : Error {
    using Error::Error;
};

// Angle tracking failed to produce a valid unwrapping within the sample cap,
// or a winding refused to snap to a half-integer.
struct NonConvergenceError : Error {
    double largest_step;

    NonConvergenceError(const std::string& msg, double step)
        : Error(msg), largest_step(step) {}
};

// |traceless shape| below threshold on a whole grid cell: the umbilic locus
// is a curve or region, not a point.
struct NonIsolatedUmbilicError : Error {
    using Error::Error;
};

// Unknown gallery name, invalid parameter, bad CLI input, violated operation
// precondition.
struct InvalidInputError : Error {
    using Error::Error;
};

}  // namespace umb

#endif
