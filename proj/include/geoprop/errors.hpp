#pragma once

#include <stdexcept>
#include <string>

namespace geoprop {

/// Base class for all library errors. Everything recoverable throws one of
/// the derived types below so callers (and the CLI exit-code mapping) can
/// distinguish validation failures from I/O.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParallelLeaves : Error {
    using Error::Error;
};
struct NotTransversal : Error {
    using Error::Error;
};
struct GridMismatch : Error {
    using Error::Error;
};
struct ZeroNorm : Error {
    using Error::Error;
};
struct ModeTooHigh : Error {
    using Error::Error;
};
struct EmptyTargetGrid : Error {
    using Error::Error;
};
struct NonpositiveScale : Error {
    using Error::Error;
};
struct AliasingRisk : Error {
    using Error::Error;
};
struct ZeroTime : Error {
    using Error::Error;
};
struct SingularTime : Error {
    using Error::Error;
};
struct TimeOutOfDomain : Error {
    using Error::Error;
};
struct TooFewFrames : Error {
    using Error::Error;
};
struct EmptyTestset : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};

}  // namespace geoprop
