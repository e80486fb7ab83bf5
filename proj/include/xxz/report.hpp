#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "xxz/common.hpp"
#include "xxz/config.hpp"

namespace xxz {

inline constexpr const char* kToolVersion = "1.0.0";

/// Complex values are serialized as two-element [re, im] arrays.
template <class Real>
nlohmann::ordered_json complex_json(const Cplx<Real>& v) {
  return nlohmann::ordered_json::array({double(v.real()), double(v.imag())});
}

template <class Real>
nlohmann::ordered_json complex_list_json(const CVec<Real>& vs) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& v : vs) arr.push_back(complex_json(v));
  return arr;
}

/// Residual-like magnitudes are reported as fixed-width scientific strings so
/// that reports are byte-identical across runs.
template <class Real>
std::string residual_string(Real v) {
  return format_sci17(double(v));
}

inline nlohmann::ordered_json tolerances_json(const Tolerances& t) {
  nlohmann::ordered_json j;
  j["residual"] = t.residual;
  j["compare"] = t.compare;
  j["pole_gap"] = t.pole_gap;
  j["min_rcond"] = t.min_rcond;
  return j;
}

/// Common envelope of every report: tool version, the command that produced
/// it, the seed actually used, the precision lane, the pinned tolerances, and
/// an echo of the configuration document.
inline nlohmann::ordered_json report_envelope(const std::string& command,
                                              const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["version"] = kToolVersion;
  j["command"] = command;
  j["seed"] = cfg.seed;
  j["rng"] = "mt19937_64";
  j["precision"] = cfg.precision;
  j["tolerances"] = tolerances_json(cfg.tol);
  j["config"] = cfg.raw.is_null() ? nlohmann::ordered_json::object() : cfg.raw;
  return j;
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
  bool needs = s.find_first_of(",\"\n") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

inline std::string csv_scalar(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline void csv_flatten_into(const nlohmann::ordered_json& v, const std::string& prefix,
                             std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
      csv_flatten_into(it.value(), key, rows);
    }
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i)
      csv_flatten_into(v[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, csv_scalar(v));
  }
}

}  // namespace detail

/// key,value flattening of an arbitrary report (dotted object paths, indexed
/// array entries).  Used for every command except the sweep table.
inline std::string csv_flatten(const nlohmann::ordered_json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  detail::csv_flatten_into(report, "", rows);
  std::string out = "key,value\n";
  for (const auto& [k, val] : rows)
    out += detail::csv_escape(k) + "," + detail::csv_escape(val) + "\n";
  return out;
}

/// Rectangular CSV with an explicit header row; used by the sweep command.
inline std::string csv_table(const std::vector<std::string>& header,
                             const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i)
    out += (i ? "," : "") + detail::csv_escape(header[i]);
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out += (i ? "," : "") + detail::csv_escape(row[i]);
    out += "\n";
  }
  return out;
}

}  // namespace xxz
