#pragma once

#include <stdexcept>
#include <string>

namespace bethe {

// Base class for all domain errors raised by the library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised by exact linear solvers when the system has no unique solution.
// Carries the rank found by elimination.
class SingularSystemError : public Error {
  public:
    SingularSystemError(const std::string& what, int rank)
        : Error(what), rank_(rank) {}
    int rank() const noexcept { return rank_; }

  private:
    int rank_;
};

// Raised when a computation reaches a state the library's own invariants
// rule out (e.g. Hamiltonians failing to commute).
class InternalConsistencyError : public std::logic_error {
  public:
    explicit InternalConsistencyError(const std::string& what)
        : std::logic_error(what) {}
};

}  // namespace bethe
