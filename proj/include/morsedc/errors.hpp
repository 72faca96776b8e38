#pragma once

#include <stdexcept>

namespace morsedc {

/// A request would materialize more data than the configured cap allows.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An index points past the last configured block of a finite gap sequence.
/// The message always names the largest usable index.
struct HorizonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace morsedc
