#pragma once

#include <stdexcept>
#include <string>

#include "lidskii/types.hpp"

namespace lidskii {

// Base of everything the library throws on purpose. The CLI maps
// ConfigError to exit code 2 and the rest to 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct InsufficientDataError : Error {
    using Error::Error;
};

struct GridTooCoarseError : Error {
    using Error::Error;
};

// lambda hit (or came too close to) a characteristic number
struct PoleError : Error {
    PoleError(const std::string& what, cplx pole) : Error(what), pole(pole) {}
    cplx pole;
};

struct SingularBasisError : Error {
    SingularBasisError(const std::string& what, double cond) : Error(what), condition(cond) {}
    double condition;
};

// a characteristic number whose weight exp(-phi^alpha(lambda) t) does not decay
struct NonDecayingError : Error {
    NonDecayingError(const std::string& what, cplx offending) : Error(what), offending(offending) {}
    cplx offending;
};

// adaptive routine gave up; carries the best estimate it had
struct ToleranceError : Error {
    ToleranceError(const std::string& what, double estimate, double error)
        : Error(what), estimate(estimate), error(error) {}
    double estimate;
    double error;
};

struct TruncationError : Error {
    using Error::Error;
};

}  // namespace lidskii
