#pragma once

#include <stdexcept>
#include <string>

namespace vdc {

// Input outside the mathematical domain of an operation (exit status 1).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Memory, size or iteration budget exceeded (exit status 2).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Integer overflow of a derived quantity such as d*N+1.
class RangeError : public ResourceError {
 public:
  explicit RangeError(const std::string& what) : ResourceError(what) {}
};

}  // namespace vdc
