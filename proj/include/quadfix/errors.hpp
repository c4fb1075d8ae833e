#pragma once

// Error types thrown by the library. Usage-level errors derive from
// std::invalid_argument, computation failures from std::runtime_error.

#include <stdexcept>

namespace quadfix {

struct EmptyPartition : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BoundExceeded : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotSquare : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotNilpotent : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct MissingAssignment : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BadShape : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularMatrix : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TooManyVariables : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotExactDivision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WitnessNotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace quadfix
