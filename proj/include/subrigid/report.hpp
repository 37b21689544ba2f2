#pragma once

#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "subrigid/rigidity.hpp"
#include "subrigid/spec.hpp"

namespace subrigid {

struct RunOptions {
  std::string command;
  std::string word;
  std::size_t max_m = 0;  // 0 selects the default cap
  std::string csv_path;
  std::size_t n = 20;
  std::string delta;
  std::string eps;
  unsigned depth = 0;  // 0 picks a depth giving at least 10^6 letters
  std::optional<Mode> mode;
};

/// Exact values as "p/q" strings, floats as numbers.
nlohmann::json scalar_json(const Scalar& x);
nlohmann::json rate_report_json(const RateReport& r);
nlohmann::json certificate_json(const Certificate& c);
nlohmann::json construction_json(const RateConstruction& c);

/// Runs one command. The JSON report is returned; a short human summary is
/// written to `summary`. `spec` may be null only for "approx".
nlohmann::json run_command(const SubstitutionSpec* spec, const RunOptions& opts, std::ostream& summary);

}  // namespace subrigid
