#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kmoment {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedField : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A formula produced a value that cannot be right (non-integral moment,
// duplicate group element, ...).
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

struct Budget {
  // Inner-loop iterations allowed to a single brute-force computation.
  std::uint64_t iterations = 100'000'000;
  // Matrices a single enumeration may materialize.
  std::uint64_t stored_matrices = 10'000'000;

  void require_iterations(std::uint64_t needed, const std::string& what) const;
  void require_matrices(std::uint64_t needed, const std::string& what) const;
};

}  // namespace kmoment
