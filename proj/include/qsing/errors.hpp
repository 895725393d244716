#pragma once

#include <stdexcept>
#include <string>

namespace qsing {

// Structural misuse: bad conductor, dimension mismatch, invalid indices.
struct InvalidConductor : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

// Arithmetic would leave the configured conductor range.
struct ConductorCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A closure, sweep or series computation passed its configured bound.
// CLI maps this to exit code 2.
struct BoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A direct computation disagreed with a closed-form table value.  This is
// surfaced, never swallowed: it signals either a transcription bug here or
// an erratum in the source tables.
struct TableMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qsing
