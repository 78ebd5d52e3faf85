#pragma once

#include <stdexcept>
#include <string>

namespace mns {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidSpec : Error {
  using Error::Error;
};
struct InvalidResolution : Error {
  using Error::Error;
};
struct InvalidArguments : Error {
  using Error::Error;
};
struct RejectedInput : Error {
  using Error::Error;
};
struct UnsupportedInput : Error {
  using Error::Error;
};

/// Iterative solve did not reach the requested residual.
struct ProjectionFailure : Error {
  ProjectionFailure(const std::string& msg, double res)
      : Error(msg), residual(res) {}
  double residual;
};

struct StepFailure : Error {
  StepFailure(const std::string& msg, double res) : Error(msg), residual(res) {}
  double residual;
};

}  // namespace mns
