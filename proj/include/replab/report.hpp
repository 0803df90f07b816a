#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace replab {

struct ReportRow {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  bool exact = false;
  std::optional<double> reference;  // target value when the statistic has one
};

// Output of one experiment run. Everything except wall_time is a function of
// (experiment, params, seed, workers); wall_time never reaches output files.
struct ExperimentReport {
  std::string experiment;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::uint64_t seed = 0;
  int workers = 1;
  std::vector<ReportRow> rows;
  std::vector<std::string> notes;
  double wall_time = 0.0;

  const ReportRow& row(const std::string& name) const;  // throws ParameterError if absent
};

inline constexpr int kReportSchemaVersion = 1;

std::string library_version();
nlohmann::ordered_json report_to_json(const ExperimentReport& r);
std::string report_to_csv(const ExperimentReport& r);
// Shortest round-trip decimal ("%.17g").
std::string format_double(double x);
// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace replab
