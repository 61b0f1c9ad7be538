#include "coopkit/report.hpp"

#include <array>
#include <map>
#include <sstream>

namespace coopkit {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Excluded: return "excluded";
  }
  return "?";
}

void Report::add(std::string check, std::string instance, Status status, std::string witness) {
  entries.push_back({std::move(check), std::move(instance), status, std::move(witness)});
}

void Report::append(const Report& other) { entries.insert(entries.end(), other.entries.begin(), other.entries.end()); }

bool Report::passed() const { return count(Status::Fail) == 0; }

int Report::count(Status s) const {
  int n = 0;
  for (const auto& e : entries) n += e.status == s;
  return n;
}

int Report::count(const std::string& check, Status s) const {
  int n = 0;
  for (const auto& e : entries) n += (e.status == s && e.check == check);
  return n;
}

const ReportEntry* Report::first_failure() const {
  for (const auto& e : entries)
    if (e.status == Status::Fail) return &e;
  return nullptr;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["subject"] = subject;
  j["passed"] = passed();
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json x{{"check", e.check}, {"instance", e.instance}, {"status", to_string(e.status)}};
    if (!e.witness.empty()) x["witness"] = e.witness;
    j["entries"].push_back(std::move(x));
  }
  return j;
}

std::string Report::to_text() const {
  std::ostringstream out;
  if (!subject.empty()) out << subject << "\n";
  std::vector<std::string> order;
  std::map<std::string, std::array<int, 3>> counts;
  for (const auto& e : entries) {
    if (!counts.count(e.check)) order.push_back(e.check);
    counts[e.check][static_cast<int>(e.status)]++;
  }
  for (const auto& c : order) {
    const auto& k = counts[c];
    out << "  " << c << ": " << k[0] << " pass, " << k[1] << " fail, " << k[2] << " excluded\n";
  }
  for (const auto& e : entries) {
    if (e.status != Status::Fail) continue;
    out << "  FAIL " << e.check << " " << e.instance;
    if (!e.witness.empty()) out << " (" << e.witness << ")";
    out << "\n";
  }
  out << (passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace coopkit
