#pragma once

// Run reports: one document per command, rendered as an aligned table or a
// single JSON object. Counts are decimal strings; bounds are numbers in nats.

#include <string>
#include <vector>

#include <json.hpp>

#include "molscope/count_value.hpp"

namespace molscope {

using Json = nlohmann::ordered_json;

enum class ReportFormat { Table, Structured };

class ReportDocument {
 public:
  explicit ReportDocument(std::string command);

  void param(const std::string& key, Json value);
  /// An enumerated count; an early stop makes it a lower bound.
  void count(const std::string& name, const CountValue& value, bool exact, const std::string& provenance);
  void nats(const std::string& name, double value, const std::string& provenance, bool asymptotic = false);
  /// A named inequality with both sides shown as text.
  void check(const std::string& name, const std::string& lhs, const std::string& relation,
             const std::string& rhs, bool holds);
  void note(const std::string& key, Json value);
  /// Recorded only when timings are enabled.
  void timing(const std::string& name, double seconds);
  void enable_timings(bool on) { timings_on_ = on; }

  bool all_checks_hold() const;
  const Json& json() const { return doc_; }

  std::string render(ReportFormat format) const;

 private:
  std::string to_table() const;

  Json doc_;
  bool timings_on_ = false;
};

}  // namespace molscope
