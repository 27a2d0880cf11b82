#ifndef DQPT_ERRORS_HPP
#define DQPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dqpt {

// Base class for all computation errors thrown by the library.
struct DqptError : std::runtime_error {
    explicit DqptError(const std::string& msg) : std::runtime_error(msg) {}
};

// Eigenvalue below the degeneracy floor or numerically coalescing
// eigenvectors (exceptional point).
struct DegeneracyError : DqptError {
    explicit DegeneracyError(const std::string& msg) : DqptError(msg) {}
};

// Biorthogonal self-norm vanished where a normalized quantity was requested.
struct ZeroNormError : DqptError {
    explicit ZeroNormError(const std::string& msg) : DqptError(msg) {}
};

// Total phase of a (numerically) zero amplitude requested; happens exactly
// at critical (k, t) points.
struct UndefinedPhaseError : DqptError {
    explicit UndefinedPhaseError(const std::string& msg) : DqptError(msg) {}
};

// Winding sum encountered a near-pi phase step that survived one grid doubling.
struct GridTooCoarseError : DqptError {
    explicit GridTooCoarseError(const std::string& msg) : DqptError(msg) {}
};

// artanh argument within the exclusion window of +-1 in the Fisher-zero formula.
struct BranchPointError : DqptError {
    explicit BranchPointError(const std::string& msg) : DqptError(msg) {}
};

// Invalid run configuration.
struct ConfigError : DqptError {
    explicit ConfigError(const std::string& msg) : DqptError(msg) {}
};

}  // namespace dqpt

#endif
