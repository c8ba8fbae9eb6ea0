#pragma once

#include <stdexcept>
#include <string>

namespace spinxfer {

/// Invalid experiment or structural parameters (chain length, basis size,
/// vector lengths that do not match the chain).
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Arguments outside an operation's domain: states that are not in the
/// basis, mismatched bases, invalid site indices.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A numerical precondition failed (non-Hermitian input, invalid density
/// matrix, no exact revival).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace spinxfer
