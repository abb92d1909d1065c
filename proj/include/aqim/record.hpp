#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace aqim {

using json = nlohmann::ordered_json;

enum class Verdict { equal_within_tol, bound_respected, bound_violated, informational };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::equal_within_tol: return "equal_within_tol";
    case Verdict::bound_respected: return "bound_respected";
    case Verdict::bound_violated: return "bound_violated";
    case Verdict::informational: return "informational";
  }
  return "?";
}

inline Verdict verdict_from_string(const std::string& s) {
  for (auto v : {Verdict::equal_within_tol, Verdict::bound_respected, Verdict::bound_violated,
                 Verdict::informational})
    if (s == to_string(v)) return v;
  throw std::invalid_argument("unknown verdict: " + s);
}

/// A named closed-form value with the parameters it was evaluated at.
/// log_space marks quantities (tail bounds) whose linear value would
/// underflow a double.
struct BoundValue {
  std::string id;
  json params = json::object();
  double value = 0.0;
  bool log_space = false;
};

inline json to_json(const BoundValue& b) {
  json j;
  j["id"] = b.id;
  j["params"] = b.params;
  j["value"] = b.value;
  j["log_space"] = b.log_space;
  return j;
}

/// One comparison of an empirical estimate against an analytic value,
/// replayable from (name, params, seed).
struct ExperimentRecord {
  std::string name;
  json params = json::object();  // effective inputs, including the comparison target id
  std::uint64_t seed = 0;
  std::int64_t samples = 0;
  double empirical = 0.0;
  double std_error = 0.0;
  double analytic = 0.0;
  Verdict verdict = Verdict::informational;
  double wall_time_ms = 0.0;
};

/// Shortest round-trip decimal form of a double; keeps serialized output
/// byte-stable and parseable.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string param_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  return v.dump();
}

}  // namespace detail

/// CSV with the fixed column order
/// name, <param columns>, seed, samples, empirical, se, analytic, verdict, wall_time_ms.
/// Param columns are the union of keys over the records in first-seen order;
/// a param whose key collides with one of the fixed columns is emitted as
/// param_<key>. Timing is emitted as 0 unless include_timing is set, so
/// identical configs serialize byte-identically.
inline std::string emit_csv(const std::vector<ExperimentRecord>& records,
                            bool include_timing = false) {
  if (records.empty()) throw std::invalid_argument("emit_csv: empty record list");
  static const std::vector<std::string> fixed = {"name",     "seed",    "samples",
                                                 "empirical", "se",      "analytic",
                                                 "verdict",  "wall_time_ms"};
  std::vector<std::string> param_keys;
  for (const auto& r : records)
    for (const auto& [key, value] : r.params.items()) {
      if (std::find(param_keys.begin(), param_keys.end(), key) == param_keys.end())
        param_keys.push_back(key);
    }
  std::ostringstream out;
  out << "name";
  for (const auto& k : param_keys) {
    const bool collides = std::find(fixed.begin(), fixed.end(), k) != fixed.end();
    out << ',' << detail::csv_escape(collides ? "param_" + k : k);
  }
  out << ",seed,samples,empirical,se,analytic,verdict,wall_time_ms\n";
  for (const auto& r : records) {
    out << detail::csv_escape(r.name);
    for (const auto& k : param_keys) {
      out << ',';
      if (r.params.contains(k)) out << detail::csv_escape(detail::param_cell(r.params.at(k)));
    }
    out << ',' << r.seed << ',' << r.samples << ',' << format_double(r.empirical) << ','
        << format_double(r.std_error) << ',' << format_double(r.analytic) << ','
        << to_string(r.verdict) << ','
        << format_double(include_timing ? r.wall_time_ms : 0.0) << '\n';
  }
  return out.str();
}

inline json record_to_json(const ExperimentRecord& r, bool include_timing = false) {
  json j;
  j["name"] = r.name;
  j["params"] = r.params;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["empirical"] = r.empirical;
  j["std_error"] = r.std_error;
  j["analytic"] = r.analytic;
  j["verdict"] = to_string(r.verdict);
  j["wall_time_ms"] = include_timing ? r.wall_time_ms : 0.0;
  return j;
}

inline std::string emit_json(const std::vector<ExperimentRecord>& records,
                             bool include_timing = false) {
  if (records.empty()) throw std::invalid_argument("emit_json: empty record list");
  json arr = json::array();
  for (const auto& r : records) arr.push_back(record_to_json(r, include_timing));
  return arr.dump(2) + "\n";
}

inline ExperimentRecord record_from_json(const json& j) {
  ExperimentRecord r;
  r.name = j.at("name").get<std::string>();
  r.params = j.at("params");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.samples = j.at("samples").get<std::int64_t>();
  r.empirical = j.at("empirical").get<double>();
  r.std_error = j.at("std_error").get<double>();
  r.analytic = j.at("analytic").get<double>();
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.wall_time_ms = j.at("wall_time_ms").get<double>();
  return r;
}

inline std::vector<ExperimentRecord> parse_json_records(const std::string& text) {
  const json arr = json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("parse_json_records: expected an array");
  std::vector<ExperimentRecord> out;
  for (const auto& j : arr) out.push_back(record_from_json(j));
  return out;
}

/// Exit-code policy: 0 when every verdict is clean, 2 when any bound was
/// violated.
inline int exit_code_for(const std::vector<ExperimentRecord>& records) {
  for (const auto& r : records)
    if (r.verdict == Verdict::bound_violated) return 2;
  return 0;
}

}  // namespace aqim
