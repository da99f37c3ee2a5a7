#pragma once

#include <stdexcept>
#include <string>

namespace kmns {

// Common base so callers can catch every engine-originated failure at once.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Metric determinant vanished (or nearly so) at an evaluation point.
class singular_metric_error : public error {
 public:
  using error::error;
};

// Metric eigenvalue pattern is not one positive / three negative.
class signature_error : public error {
 public:
  using error::error;
};

// Evaluation point left the chart's validity region (horizon, coordinate
// axis, negative radius, ...).
class chart_domain_error : public error {
 public:
  using error::error;
};

// A limit/extrapolation procedure failed to converge.
class convergence_error : public error {
 public:
  using error::error;
};

// Bad user input: unknown scenario, malformed JSON, invalid CLI arguments.
class config_error : public error {
 public:
  using error::error;
};

}  // namespace kmns
