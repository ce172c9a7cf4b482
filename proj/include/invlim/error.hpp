#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace invlim {

// Base class for every error raised by the library. The CLI maps each
// subclass to its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed partition blocks: overlap, gap, empty block, bad rgs.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Ground-set sizes of two operands disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A coarsening map was requested for a pair that is not comparable.
class OrderError : public Error {
 public:
  using Error::Error;
};

// A point lies outside {0, ..., n-1}.
class PointError : public Error {
 public:
  using Error::Error;
};

class EmptyGroundSetError : public Error {
 public:
  EmptyGroundSetError() : Error("ground set must be nonempty (n >= 1)") {}
};

// A size ceiling was exceeded and no override was given.
class ResourceGuardError : public Error {
 public:
  using Error::Error;
};

// An operation was called with a violated precondition.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Raised when a mathematically guaranteed property fails. Always a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace invlim
