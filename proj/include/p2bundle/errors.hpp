#pragma once

#include <stdexcept>
#include <string>

namespace p2b {

// Base class of everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad field configuration (non-prime modulus, modulus out of range, ...).
struct FieldError : Error {
    using Error::Error;
};

// Invalid scheme data, or constrained sampling ran out of retries.
struct SchemeError : Error {
    using Error::Error;
};

// Inconsistent Hilbert data while solving for a free resolution, or an
// operation that needs a non-empty scheme was called on the empty one.
struct IdealError : Error {
    using Error::Error;
};

// No resolution template matches a degree <= 5 scheme. Must never happen;
// if it does, a sampled instance falsifies the ten-case classification.
struct ClassificationError : Error {
    using Error::Error;
};

struct InvalidC1 : Error {
    using Error::Error;
};

// r is not the least twist with a section for the given data.
struct MinimalityViolation : Error {
    using Error::Error;
};

// The Cayley-Bacharach condition fails, so no locally free extension
// realizes the requested data.
struct LocalFreenessViolation : Error {
    using Error::Error;
};

// A user-supplied cohomology window clips nonzero h^1 at its boundary.
struct WindowTooSmall : Error {
    using Error::Error;
};

// Two independent routes to the same invariant disagree. Falsification
// alarm; must never trigger.
struct OracleMismatch : Error {
    using Error::Error;
};

// The h^1 support of a bundle is not an interval. Falsification alarm.
struct ConnectednessViolation : Error {
    using Error::Error;
};

// A verifier entry point was called outside its stated hypotheses.
struct PreconditionViolation : Error {
    using Error::Error;
};

}  // namespace p2b
