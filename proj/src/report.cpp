#include "replab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "replab/errors.hpp"

namespace replab {

const ReportRow& ExperimentReport::row(const std::string& name) const {
  for (const auto& r : rows)
    if (r.name == name) return r;
  throw ParameterError("report has no row named " + name);
}

std::string library_version() { return REPLAB_VERSION; }

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {
// JSON has no inf/nan; those go out as strings.
nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}
}  // namespace

nlohmann::ordered_json report_to_json(const ExperimentReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchemaVersion;
  j["experiment"] = r.experiment;
  j["version"] = library_version();
  j["seed"] = r.seed;
  j["workers"] = r.workers;
  j["params"] = r.params;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json x;
    x["name"] = row.name;
    x["estimate"] = number(row.estimate);
    x["stderr"] = number(row.std_error);
    x["n_samples"] = row.n_samples;
    x["exact"] = row.exact;
    x["reference"] = row.reference ? number(*row.reference) : nlohmann::ordered_json();
    rows.push_back(std::move(x));
  }
  j["rows"] = std::move(rows);
  j["notes"] = r.notes;
  return j;
}

std::string report_to_csv(const ExperimentReport& r) {
  std::ostringstream out;
  out << "experiment,name,estimate,stderr,n_samples,exact,reference,seed,workers,version\n";
  for (const auto& row : r.rows) {
    out << csv_field(r.experiment) << ',' << csv_field(row.name) << ',' << format_double(row.estimate) << ','
        << format_double(row.std_error) << ',' << row.n_samples << ',' << (row.exact ? 1 : 0) << ','
        << (row.reference ? format_double(*row.reference) : "") << ',' << r.seed << ',' << r.workers << ','
        << library_version() << '\n';
  }
  return out.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ParameterError("cannot open " + tmp.string() + " for writing");
    f << contents;
    f.flush();
    if (!f) throw ParameterError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ParameterError("cannot move output into place at " + path + ": " + ec.message());
  }
}

}  // namespace replab
