#pragma once

#include <stdexcept>
#include <string>

namespace rwlab {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Lattice point (x, t) with x + t odd; unreachable by a +/-1 walk.
class ParityMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

/// Point outside the light cone |x| <= V t (or its open interior, where required).
class OutOfCone : public DomainError {
public:
    using DomainError::DomainError;
};

/// Finite-difference stencil would leave the region where the kernel is smooth.
class StencilOutOfDomain : public DomainError {
public:
    using DomainError::DomainError;
};

/// Correction function requested where the gradient vanishes (0/0).
class DegenerateGradient : public DomainError {
public:
    using DomainError::DomainError;
};

/// Power-law fit rejected its input.
class FitError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnknownMetric : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Internal invariant violation: an extremum search found a non-unimodal profile.
class SearchFailure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rwlab
