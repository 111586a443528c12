// Tabular result reports with deterministic TSV and JSON renderings.
// Every report embeds the tool version and an echo of the run
// configuration, so results are reproducible from the file alone.
#ifndef DOPKIT_REPORT_HPP
#define DOPKIT_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

namespace dopkit {

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // ordered key/value echo
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;

  void add_config(const std::string& key, const std::string& value) { config.push_back({key, value}); }
  void add_config(const std::string& key, long value) { config.push_back({key, std::to_string(value)}); }
  void add_row(std::vector<std::string> row);
  void add_note(const std::string& note) { notes.push_back(note); }

  std::string to_tsv() const;
  std::string to_json() const;
  // format is "tsv" or "json"
  std::string render(const std::string& format) const;
};

}  // namespace dopkit

#endif
