#pragma once

#include <stdexcept>
#include <string>

namespace elkies {

/// Precondition or mathematical-domain violation (even modulus, singular
/// curve, Hasse violation, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A configured size or work budget would be exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace elkies
