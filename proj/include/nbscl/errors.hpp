#pragma once

#include <stdexcept>

namespace nbscl {

// Construction-time and usage errors raised by the library. Decode failures
// of the algebraic decoders are not errors (they return empty optionals).

struct NonPrimitivePolynomial : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegreeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

struct LengthMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Singular : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RankDeficient : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotBijective : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidDimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionUnreachable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotACodeword : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndexNotFrozen : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace nbscl
