#include "dopkit/report.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dopkit/version.hpp"

namespace dopkit {

void Report::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size())
    throw std::logic_error("report row width " + std::to_string(row.size()) +
                           " does not match " + std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(row));
}

std::string Report::to_tsv() const {
  std::ostringstream os;
  os << "# dopkit " << version() << "\n";
  os << "# command: " << command << "\n";
  for (const auto& [k, v] : config) os << "# config " << k << ": " << v << "\n";
  for (const std::string& n : notes) os << "# note: " << n << "\n";
  for (size_t i = 0; i < columns.size(); ++i) os << (i ? "\t" : "") << columns[i];
  os << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
    os << "\n";
  }
  return os.str();
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "dopkit-report/1";
  j["version"] = version();
  j["command"] = command;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = std::move(cfg);
  j["columns"] = columns;
  j["rows"] = rows;
  j["notes"] = notes;
  return j.dump(2) + "\n";
}

std::string Report::render(const std::string& format) const {
  if (format == "tsv") return to_tsv();
  if (format == "json") return to_json();
  throw std::invalid_argument("unknown report format '" + format + "' (expected tsv or json)");
}

}  // namespace dopkit
