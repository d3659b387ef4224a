#pragma once

#include <stdexcept>
#include <string>

namespace steerkit {

// Thrown when an operation's documented precondition fails. Carries the name of
// the violated invariant and the measured magnitude of the violation so callers
// (and the CLI) can report exactly what was out of range.
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(std::string invariant, const std::string& detail, double magnitude)
      : std::runtime_error("precondition violated [" + invariant + "]: " + detail +
                           " (measured " + std::to_string(magnitude) + ")"),
        invariant_(std::move(invariant)),
        magnitude_(magnitude) {}

  const std::string& invariant() const { return invariant_; }
  double magnitude() const { return magnitude_; }

 private:
  std::string invariant_;
  double magnitude_;
};

}  // namespace steerkit
