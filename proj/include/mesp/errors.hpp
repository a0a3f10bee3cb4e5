#pragma once

#include <stdexcept>
#include <string>

namespace mesp {

// Malformed input: bad edge lists, loops, duplicate edges, unparsable files.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Input is well formed but outside the problem domain (e.g. a disconnected graph).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A configured size cap was exceeded.
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

// A solve ran past its deadline.
class Timeout : public std::runtime_error {
 public:
  explicit Timeout(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mesp
