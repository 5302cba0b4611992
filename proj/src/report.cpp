#include "molscope/report.hpp"

#include <algorithm>
#include <cstdio>

namespace molscope {
namespace {

std::string show(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
    return buf;
  }
  return v.dump();
}

std::string layout(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (width.size() <= c) width.push_back(0);
      width[c] = std::max(width[c], r[c].size());
    }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      line += r[c];
      if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace

ReportDocument::ReportDocument(std::string command) {
  doc_["command"] = std::move(command);
  doc_["params"] = Json::object();
  doc_["results"] = Json::array();
}

void ReportDocument::param(const std::string& key, Json value) { doc_["params"][key] = std::move(value); }

void ReportDocument::count(const std::string& name, const CountValue& value, bool exact,
                           const std::string& provenance) {
  doc_["results"].push_back({{"name", name},
                             {"value", value.to_string()},
                             {"unit", exact ? "exact count" : "count lower bound"},
                             {"exact", exact},
                             {"provenance", provenance}});
}

void ReportDocument::nats(const std::string& name, double value, const std::string& provenance,
                          bool asymptotic) {
  Json entry{{"name", name}, {"value", value}, {"unit", "nats"}, {"provenance", provenance}};
  if (asymptotic) entry["asymptotic_reference"] = true;
  doc_["results"].push_back(std::move(entry));
}

void ReportDocument::check(const std::string& name, const std::string& lhs, const std::string& relation,
                           const std::string& rhs, bool holds) {
  if (!doc_.contains("checks")) doc_["checks"] = Json::array();
  doc_["checks"].push_back(
      {{"name", name}, {"lhs", lhs}, {"relation", relation}, {"rhs", rhs}, {"holds", holds}});
}

void ReportDocument::note(const std::string& key, Json value) {
  if (!doc_.contains("notes")) doc_["notes"] = Json::object();
  doc_["notes"][key] = std::move(value);
}

void ReportDocument::timing(const std::string& name, double seconds) {
  if (!timings_on_) return;
  if (!doc_.contains("timings")) doc_["timings"] = Json::object();
  doc_["timings"][name] = seconds;
}

bool ReportDocument::all_checks_hold() const {
  if (!doc_.contains("checks")) return true;
  return std::all_of(doc_["checks"].begin(), doc_["checks"].end(),
                     [](const Json& c) { return c["holds"].get<bool>(); });
}

std::string ReportDocument::render(ReportFormat format) const {
  if (format == ReportFormat::Structured) return doc_.dump(2) + "\n";
  return to_table();
}

std::string ReportDocument::to_table() const {
  std::string out = doc_["command"].get<std::string>();
  for (const auto& [k, v] : doc_["params"].items()) out += "  " + k + "=" + show(v);
  out += "\n";

  if (!doc_["results"].empty()) {
    std::vector<std::vector<std::string>> rows{{"name", "value", "unit", "provenance"}};
    for (const auto& r : doc_["results"]) {
      std::string value = show(r["value"]);
      if (r.contains("exact") && !r["exact"].get<bool>()) value = ">= " + value;
      std::string unit = r["unit"].get<std::string>();
      if (r.contains("asymptotic_reference")) unit += " (asymptotic)";
      rows.push_back({r["name"].get<std::string>(), value, unit, r["provenance"].get<std::string>()});
    }
    out += "\n" + layout(rows);
  }
  if (doc_.contains("checks")) {
    std::vector<std::vector<std::string>> rows{{"check", "lhs", "", "rhs", "holds"}};
    for (const auto& c : doc_["checks"])
      rows.push_back({c["name"].get<std::string>(), c["lhs"].get<std::string>(),
                      c["relation"].get<std::string>(), c["rhs"].get<std::string>(),
                      c["holds"].get<bool>() ? "yes" : "NO"});
    out += "\n" + layout(rows);
  }
  if (doc_.contains("notes")) {
    out += "\n";
    for (const auto& [k, v] : doc_["notes"].items()) out += k + ": " + show(v) + "\n";
  }
  if (doc_.contains("timings")) {
    out += "\n";
    for (const auto& [k, v] : doc_["timings"].items()) out += "time " + k + ": " + show(v) + " s\n";
  }
  return out;
}

}  // namespace molscope
