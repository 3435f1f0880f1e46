#pragma once

#include <stdexcept>
#include <string>

namespace gcay {

// Bad arguments from the caller: wrong moduli, n < 2, inconsistent sizes.
class UsageError : public std::invalid_argument {
public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// The operation is mathematically undefined (or deliberately refused) for
// the given input, e.g. a field norm outside the field case.
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A floating-point result failed its own consistency check.
class NumericalFailure : public std::runtime_error {
public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

// Work or memory budget exceeded.
class ResourceError : public std::length_error {
public:
  explicit ResourceError(const std::string& what) : std::length_error(what) {}
};

// Input that cannot produce a meaningful object (empty connection set).
class DegenerateInput : public std::runtime_error {
public:
  explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

// Report destination could not be written.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gcay
