#pragma once

#include <stdexcept>

namespace saturex {

// Two independent computations of the same quantity disagreed. Always a bug
// or a violated numeric assumption inside this library, never bad user input.
class InternalInconsistency : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A converged result failed its independent a-posteriori check.
class CertificationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An iterative solver hit its iteration cap without meeting its tolerance.
class ConvergenceFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace saturex
