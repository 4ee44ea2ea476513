#pragma once

#include <stdexcept>
#include <string>

namespace rmhd {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridMismatch : Error {
    using Error::Error;
};
struct NonFinite : Error {
    using Error::Error;
};
struct MeanNotZero : Error {
    using Error::Error;
};
struct FloorViolation : Error {
    using Error::Error;
};
struct DensityFloorBreach : Error {
    using Error::Error;
};
struct CflViolation : Error {
    using Error::Error;
};
struct PresetInvalid : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

// Configuration errors, kept distinct so the CLI can map them to exit code 1.
struct ConfigError : Error {
    using Error::Error;
};
struct ParseError : ConfigError {
    using ConfigError::ConfigError;
};
struct SchemaError : ConfigError {
    using ConfigError::ConfigError;
};
struct BoundsError : ConfigError {
    using ConfigError::ConfigError;
};

}  // namespace rmhd
