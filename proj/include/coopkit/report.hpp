#pragma once

// Verification reports: one entry per checked instance.

#include <string>
#include <vector>

#include <json.hpp>

namespace coopkit {

enum class Status { Pass, Fail, Excluded };

std::string to_string(Status s);

struct ReportEntry {
  std::string check;     // e.g. "coassociativity"
  std::string instance;  // e.g. a chain encoding
  Status status = Status::Pass;
  std::string witness;   // first differing entry, or why the instance was excluded
};

struct Report {
  std::string subject;
  std::vector<ReportEntry> entries;

  void add(std::string check, std::string instance, Status status, std::string witness = {});
  void add(ReportEntry e) { entries.push_back(std::move(e)); }
  void append(const Report& other);
  bool passed() const;  // no Fail entries
  int count(Status s) const;
  int count(const std::string& check, Status s) const;
  const ReportEntry* first_failure() const;

  nlohmann::json to_json() const;
  /// One line per check with counts, then one line per failure.
  std::string to_text() const;
};

}  // namespace coopkit
