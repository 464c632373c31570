#pragma once

#include <stdexcept>
#include <string>

namespace isolab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input or unmet precondition.
struct InvalidInput : Error {
    using Error::Error;
};

// Needed root of unity is not in Q(zeta_m).
struct FieldTooSmall : InvalidInput {
    using InvalidInput::InvalidInput;
};

// Random search exhausted its budget without certificate or disproof.
struct Inconclusive : Error {
    using Error::Error;
};

// Two independent computations disagree, or a proven identity failed.
struct InternalInconsistency : Error {
    using Error::Error;
};

struct ExpectationMismatch : Error {
    using Error::Error;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int mismatch = 2;
inline constexpr int inconclusive = 3;
inline constexpr int inconsistency = 4;
}  // namespace exit_code

}  // namespace isolab
