#pragma once

#include <stdexcept>
#include <string>

namespace efimovkit {

// Base for every precondition or mathematical-domain failure raised by the
// library. The CLI maps anything derived from DomainError to exit code 2.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Argument sits on a pole of the gamma function.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

// Bracket endpoints do not straddle a root.
class NoSignChangeError : public DomainError {
public:
    using DomainError::DomainError;
};

class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, int iteration_cap)
        : std::runtime_error(what), iteration_cap_(iteration_cap) {}

    int iteration_cap() const noexcept { return iteration_cap_; }

private:
    int iteration_cap_;
};

// Dipole strength at or below the critical value 1/4.
class SubcriticalError : public DomainError {
public:
    using DomainError::DomainError;
};

// Requested scattering length cannot be produced on the requested branch.
class UnreachableTargetError : public DomainError {
public:
    using DomainError::DomainError;
};

// Curve has no interior extremum to anchor a resonance fit.
class DegenerateCurveError : public DomainError {
public:
    using DomainError::DomainError;
};

// Energy grid too short or not strictly increasing.
class GridError : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace efimovkit
