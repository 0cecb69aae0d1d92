#pragma once

#include <stdexcept>
#include <string>

namespace cayley_ising {

// Argument outside an operation's domain (non-positive kernel input,
// unreduced word, disconnected vertex set, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Requested work exceeds a configured enumeration cap.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Parameters fall outside the phase region an operation requires.
class RegionError : public std::runtime_error {
 public:
  explicit RegionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cayley_ising
