#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "quat.hpp"

namespace nested {

/**
 * @brief Named residuals of one check at one point, with a pass flag.
 *
 * `pass` is set by the producing check. Rank checks report no residuals.
 */
struct VerificationReport
{
  std::string check_name;
  std::optional<GroupPointd> point;
  std::map<std::string, double> residuals;
  bool pass = true;
  double tolerance = 0.0;
  /// Non-residual facts (ranks, witnesses, flags).
  nlohmann::json details = nlohmann::json::object();

  double max_residual() const;
};

nlohmann::json to_json(const VerificationReport & r);

/// Concatenation of per-point reports with an aggregate verdict.
struct ReportSet
{
  std::string suite;
  std::vector<VerificationReport> reports;

  bool pass() const;
  /// Max over all reports of the named residual (0 if absent everywhere).
  double max_residual(const std::string & name) const;
  void append(ReportSet other);
  void append(VerificationReport r) { reports.push_back(std::move(r)); }
};

nlohmann::json to_json(const ReportSet & s);

}  // namespace nested
