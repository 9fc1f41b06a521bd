#include "nested/report.hpp"

#include <algorithm>

#include "nested/serialize.hpp"

namespace nested {

double VerificationReport::max_residual() const
{
  double m = 0.0;
  for (const auto & [name, value] : residuals) { m = std::max(m, value); }
  return m;
}

nlohmann::json to_json(const VerificationReport & r)
{
  nlohmann::json j;
  j["check-name"] = r.check_name;
  j["point"]      = r.point ? to_json(*r.point) : nlohmann::json(nullptr);
  j["residuals"]  = nlohmann::json::object();
  for (const auto & [name, value] : r.residuals) { j["residuals"][name] = value; }
  j["pass"]      = r.pass;
  j["tolerance"] = r.tolerance;
  if (!r.details.empty()) { j["details"] = r.details; }
  return j;
}

bool ReportSet::pass() const
{
  return std::all_of(reports.begin(), reports.end(), [](const auto & r) { return r.pass; });
}

double ReportSet::max_residual(const std::string & name) const
{
  double m = 0.0;
  for (const auto & r : reports) {
    if (auto it = r.residuals.find(name); it != r.residuals.end()) { m = std::max(m, it->second); }
  }
  return m;
}

void ReportSet::append(ReportSet other)
{
  for (auto & r : other.reports) { reports.push_back(std::move(r)); }
}

nlohmann::json to_json(const ReportSet & s)
{
  nlohmann::json j;
  j["suite"]   = s.suite;
  j["pass"]    = s.pass();
  j["count"]   = s.reports.size();
  j["reports"] = nlohmann::json::array();
  for (const auto & r : s.reports) { j["reports"].push_back(to_json(r)); }
  return j;
}

}  // namespace nested
