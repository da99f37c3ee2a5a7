#pragma once

// Residual reports and their machine-readable serializations.  Output is
// deterministic to the byte: fixed key order, fixed %.17g number formatting,
// fixed-order compensated summation for the mean.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kmns/geometry.hpp"
#include "kmns/komar.hpp"

namespace kmns {

enum class CheckStatus {
  kOk,
  kGaugeViolated,      // a precondition gauge test failed; check degraded
  kPostulateViolated,  // an input postulate does not hold on this scenario
  kIdentityGap,        // the two sides evaluated honestly disagree
  kError,              // the check could not be evaluated
};
std::string_view to_string(CheckStatus s);

struct PointResidual {
  Point coords{};
  double residual = 0.0;
};

struct ResidualReport {
  std::string check_id;
  std::string scenario;
  std::string killing_field;  // empty when the check has no generator input
  CheckStatus status = CheckStatus::kOk;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  // ordered extra scalars (emitted in insertion order)
  std::vector<std::pair<std::string, double>> aux;
  // per-radius estimates for surface-integral checks; empty otherwise
  std::vector<RadiusEstimate> extrapolation;
  std::vector<PointResidual> per_point;

  // store the samples and derive max/mean (compensated, fixed order)
  void set_points(std::vector<PointResidual> pts);
};

// serialize; "17 significant digits, '.' decimal separator" applies to both
std::string to_json(const std::vector<ResidualReport>& reports);
std::string to_csv(const std::vector<ResidualReport>& reports);

// throws config_error when the path cannot be opened or written
void write_file(const std::string& path, const std::string& content);

}  // namespace kmns
