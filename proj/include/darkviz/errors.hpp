#pragma once

#include <stdexcept>
#include <string>

namespace darkviz {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File could not be read, decoded, or written.
struct IoError : Error {
    using Error::Error;
};

/// Invalid option values (weights, annealing parameters, hex colors).
struct ConfigError : Error {
    using Error::Error;
};

/// Background masking left no foreground pixels.
struct AllBackgroundError : Error {
    using Error::Error;
};

/// Label map or mask does not match the image geometry.
struct DimensionMismatchError : Error {
    using Error::Error;
};

}  // namespace darkviz
