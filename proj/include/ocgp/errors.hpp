#pragma once

#include <stdexcept>
#include <string>

namespace ocgp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// geometry
struct NonUnitQuaternion : Error {
    using Error::Error;
};
struct NotARotation : Error {
    using Error::Error;
};

// gp
struct DimensionMismatch : Error {
    using Error::Error;
};
struct NotPositiveDefinite : Error {
    using Error::Error;
};

// object_model
struct UnknownObject : Error {
    using Error::Error;
};
struct MissingPose : Error {
    using Error::Error;
};

// sim
struct OutOfBounds : Error {
    using Error::Error;
};
struct StepTooLarge : Error {
    using Error::Error;
};

// cli
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace ocgp
