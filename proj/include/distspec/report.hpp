#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "distspec/lemma_checks.hpp"

#ifndef DISTSPEC_VERSION
#define DISTSPEC_VERSION "0.0.0"
#endif

namespace distspec {

inline constexpr const char* kVersion = DISTSPEC_VERSION;

/// One row of a report. Every suite fills the same columns so that the CSV
/// table has a fixed header.
struct Record {
  std::string suite;
  std::string instance;
  std::string verdict;  // pass, fail, inconclusive, match, mismatch, ok
  double rho = std::numeric_limits<double>::quiet_NaN();
  double margin = std::numeric_limits<double>::infinity();
  std::size_t relations = 0;
  std::string detail;
};

inline Record to_record(const std::string& suite, const LemmaOutcome& o) {
  return {suite, o.instance, to_string(o.verdict), o.rho, o.margin, o.relations, o.detail};
}

/// Fixed 12-significant-digit rendering shared by JSON and CSV.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct Report {
  std::string command;
  double tolerance = kDefaultTolerance;
  std::vector<Record> records;
  /// Command-specific payload (spectrum, argmax member, ...).
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  std::map<std::string, std::size_t> summary() const {
    std::map<std::string, std::size_t> out;
    for (const auto& r : records) ++out[r.verdict];
    return out;
  }

  bool failed() const {
    for (const auto& r : records)
      if (r.verdict == "fail" || r.verdict == "mismatch") return true;
    return false;
  }
};

namespace detail {

// Non-finite values become strings: JSON has no spelling for them.
inline nlohmann::ordered_json json_number(double x) {
  if (!std::isfinite(x)) return format_number(x);
  return std::stod(format_number(x));
}

}  // namespace detail

/// Recursively rounds every floating-point value to 12 significant digits.
inline nlohmann::ordered_json rounded(const nlohmann::ordered_json& j) {
  if (j.is_number_float()) return detail::json_number(j.get<double>());
  if (j.is_array() || j.is_object()) {
    auto out = j;
    for (auto& v : out) v = rounded(v);
    return out;
  }
  return j;
}

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["version"] = kVersion;
  j["tolerance"] = {{"power_iteration", detail::json_number(r.tolerance)},
                    {"guard_band", "10 * residual"},
                    {"identity", "100 * residual"}};
  for (auto it = r.extra.begin(); it != r.extra.end(); ++it) j[it.key()] = rounded(it.value());
  auto records = nlohmann::ordered_json::array();
  for (const auto& rec : r.records) {
    records.push_back({{"suite", rec.suite},
                       {"instance", rec.instance},
                       {"verdict", rec.verdict},
                       {"rho", detail::json_number(rec.rho)},
                       {"margin", detail::json_number(rec.margin)},
                       {"relations", rec.relations},
                       {"detail", rec.detail}});
  }
  j["records"] = std::move(records);
  nlohmann::ordered_json summary;
  summary["total"] = r.records.size();
  for (const auto& [verdict, count] : r.summary()) summary[verdict] = count;
  j["summary"] = std::move(summary);
  return j;
}

inline void write_json(std::ostream& out, const Report& r) { out << to_json(r).dump(2) << '\n'; }

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Per-instance table only.
inline void write_csv(std::ostream& out, const Report& r) {
  out << "suite,instance,verdict,rho,margin,relations,detail\n";
  for (const auto& rec : r.records) {
    out << detail::csv_field(rec.suite) << ',' << detail::csv_field(rec.instance) << ',' << rec.verdict << ','
        << format_number(rec.rho) << ',' << format_number(rec.margin) << ',' << rec.relations << ','
        << detail::csv_field(rec.detail) << '\n';
  }
}

}  // namespace distspec
