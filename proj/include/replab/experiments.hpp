#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "replab/report.hpp"

namespace replab {

enum class ParamKind { integer, integer_list, real, boolean, text };

struct ParamSpec {
  std::string key;
  ParamKind kind = ParamKind::integer;
  nlohmann::ordered_json fallback;  // null: optional with no default
  std::string help;
};

struct ExperimentConfig {
  std::string experiment;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();  // only keys the user set
  std::uint64_t seed = 1;
  int workers = 1;
  std::string output;            // empty: nothing written
  std::string format = "json";   // json | csv
};

struct ExperimentInfo {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
  // Receives the resolved parameters (defaults filled, m derived from d).
  std::function<ExperimentReport(const nlohmann::ordered_json& params, std::uint64_t seed, int workers)> body;
};

const std::vector<ExperimentInfo>& list_experiments();
const ExperimentInfo& find_experiment(const std::string& name);  // ParameterError if unknown

// Defaults filled in, types checked, unknown keys rejected. Graph experiments
// take exactly one of m and d; d becomes m = ceil(d n / 2) per n.
nlohmann::ordered_json resolve_params(const ExperimentInfo& info, const nlohmann::ordered_json& given);

// Runs the experiment and, if config.output is set, writes the report atomically.
ExperimentReport run(const ExperimentConfig& config);
std::string render(const ExperimentReport& report, const std::string& format);

std::uint64_t edges_for_degree(double d, int n);  // ceil(d n / 2)

}  // namespace replab
