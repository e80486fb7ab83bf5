#pragma once

#include <complex>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "xxz/combinatorial.hpp"
#include "xxz/model.hpp"

namespace xxz {

/// Raised for malformed or inconsistent run configuration; the command-line
/// driver maps it to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Declarative description of a run.  Unset spectral data is drawn from the
/// seeded generator when the run is materialized.
struct RunConfig {
  int N = 4;
  int n = 2;
  std::optional<std::complex<double>> q;      // explicit value, if given
  std::string q_special;                      // "cbrt1" | "cbrt1_conj" | ""
  std::optional<std::complex<double>> kappa;  // explicit value, if given
  bool kappa_is_q2 = false;
  std::vector<std::complex<double>> z;  // empty: draw N distinct values
  std::uint64_t seed = 1;
  int trials = 10;
  int site = -1;  // -1: all sites
  std::string precision = "double";
  std::string command;                // optional echo of the subcommand
  std::vector<std::string> methods;   // command-specific method selection
  std::string out;                    // output path ("" = stdout)
  std::string format = "json";
  Tolerances tol{};
  nlohmann::ordered_json raw;  // the parsed document, echoed into reports
};

namespace detail {

inline std::complex<double> parse_complex(const nlohmann::json& v, const std::string& key) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError("field '" + key + "' must be a number or a [re, im] pair");
}

inline void require_int(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("field '" + key + "' must be an integer");
}

}  // namespace detail

/// Parse and validate a configuration document.  Unknown keys are rejected so
/// that typos fail loudly instead of silently running defaults.
inline RunConfig parse_config(const nlohmann::ordered_json& doc) {
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  RunConfig cfg;
  cfg.raw = doc;
  static const std::vector<std::string> known = {
      "N",    "n",      "q",    "kappa", "z",         "seed",       "trials",
      "site", "precision", "tolerances", "command", "methods", "out", "format"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool ok = false;
    for (const auto& k : known) ok = ok || (it.key() == k);
    if (!ok) throw ConfigError("unknown configuration key '" + it.key() + "'");
  }
  if (doc.contains("N")) {
    detail::require_int(doc["N"], "N");
    cfg.N = doc["N"].get<int>();
  }
  if (doc.contains("n")) {
    detail::require_int(doc["n"], "n");
    cfg.n = doc["n"].get<int>();
  } else {
    cfg.n = cfg.N / 2;
  }
  if (cfg.N < 1 || cfg.N > 30) throw ConfigError("N must lie in [1, 30]");
  if (cfg.n < 0 || cfg.n > cfg.N) throw ConfigError("n must lie in [0, N]");
  if (doc.contains("q")) {
    const auto& v = doc["q"];
    if (v.is_string()) {
      std::string s = v.get<std::string>();
      if (s != "cbrt1" && s != "cbrt1_conj")
        throw ConfigError("string value of 'q' must be \"cbrt1\" or \"cbrt1_conj\"");
      cfg.q_special = s;
    } else {
      cfg.q = detail::parse_complex(v, "q");
      if (std::abs(*cfg.q) == 0.0) throw ConfigError("q must be nonzero");
      if (std::abs(*cfg.q * *cfg.q - 1.0) < 1e-12)
        throw ConfigError("q^2 must differ from 1");
    }
  }
  if (doc.contains("kappa")) {
    const auto& v = doc["kappa"];
    if (v.is_string()) {
      if (v.get<std::string>() != "q2")
        throw ConfigError("string value of 'kappa' must be \"q2\"");
      cfg.kappa_is_q2 = true;
    } else {
      cfg.kappa = detail::parse_complex(v, "kappa");
      if (std::abs(*cfg.kappa) == 0.0) throw ConfigError("kappa must be nonzero");
    }
  }
  if (doc.contains("z")) {
    if (!doc["z"].is_array()) throw ConfigError("field 'z' must be an array");
    for (const auto& v : doc["z"]) cfg.z.push_back(detail::parse_complex(v, "z"));
    if (int(cfg.z.size()) != cfg.N)
      throw ConfigError("field 'z' must list exactly N inhomogeneities");
  }
  if (doc.contains("seed")) {
    detail::require_int(doc["seed"], "seed");
    if (doc["seed"].get<long long>() < 0) throw ConfigError("seed must be nonnegative");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("trials")) {
    detail::require_int(doc["trials"], "trials");
    cfg.trials = doc["trials"].get<int>();
    if (cfg.trials < 1 || cfg.trials > 10000) throw ConfigError("trials must lie in [1, 10000]");
  }
  if (doc.contains("site")) {
    detail::require_int(doc["site"], "site");
    cfg.site = doc["site"].get<int>();
    if (cfg.site < -1 || cfg.site >= cfg.N)
      throw ConfigError("site must be -1 (all) or a site index in [0, N)");
  }
  if (doc.contains("precision")) {
    if (!doc["precision"].is_string()) throw ConfigError("field 'precision' must be a string");
    cfg.precision = doc["precision"].get<std::string>();
    if (cfg.precision != "double" && cfg.precision != "extended")
      throw ConfigError("precision must be \"double\" or \"extended\"");
  }
  if (doc.contains("command")) {
    if (!doc["command"].is_string()) throw ConfigError("field 'command' must be a string");
    cfg.command = doc["command"].get<std::string>();
    static const std::vector<std::string> cmds = {"solve-bethe", "scalar-product",
                                                  "verify-identities", "norm",
                                                  "sigma-z", "sweep"};
    bool ok = false;
    for (const auto& c : cmds) ok = ok || (c == cfg.command);
    if (!ok) throw ConfigError("unknown command '" + cfg.command + "'");
  }
  if (doc.contains("methods")) {
    if (!doc["methods"].is_array()) throw ConfigError("field 'methods' must be an array");
    for (const auto& v : doc["methods"]) {
      if (!v.is_string()) throw ConfigError("entries of 'methods' must be strings");
      cfg.methods.push_back(v.get<std::string>());
    }
  }
  if (doc.contains("out")) {
    if (!doc["out"].is_string()) throw ConfigError("field 'out' must be a string");
    cfg.out = doc["out"].get<std::string>();
  }
  if (doc.contains("format")) {
    if (!doc["format"].is_string()) throw ConfigError("field 'format' must be a string");
    cfg.format = doc["format"].get<std::string>();
    if (cfg.format != "json" && cfg.format != "csv")
      throw ConfigError("format must be \"json\" or \"csv\"");
  }
  if (doc.contains("tolerances")) {
    const auto& t = doc["tolerances"];
    if (!t.is_object()) throw ConfigError("field 'tolerances' must be an object");
    for (auto it = t.begin(); it != t.end(); ++it) {
      if (!it.value().is_number())
        throw ConfigError("tolerance '" + it.key() + "' must be a number");
      double v = it.value().get<double>();
      if (!(v > 0)) throw ConfigError("tolerance '" + it.key() + "' must be positive");
      if (it.key() == "residual")
        cfg.tol.residual = v;
      else if (it.key() == "compare")
        cfg.tol.compare = v;
      else if (it.key() == "pole_gap")
        cfg.tol.pole_gap = v;
      else if (it.key() == "min_rcond")
        cfg.tol.min_rcond = v;
      else
        throw ConfigError("unknown tolerance '" + it.key() + "'");
    }
  }
  if (!cfg.q_special.empty()) {
    if (cfg.N != 2 * cfg.n)
      throw ConfigError("the cube-root point requires N = 2n");
    if (cfg.kappa && !cfg.kappa_is_q2)
      throw ConfigError("the cube-root point fixes kappa = q^2; drop 'kappa' or set it to \"q2\"");
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("configuration is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

/// Fill in every unspecified spectral datum from the seeded generator and
/// return concrete model parameters at the requested scalar type.
template <class Real>
ModelParams<Real> materialize_params(const RunConfig& cfg, RandomDraw& rng) {
  Cplx<Real> q;
  if (!cfg.q_special.empty()) {
    q = cube_root_q<Real>(cfg.q_special == "cbrt1_conj");
  } else if (cfg.q) {
    q = Cplx<Real>(Real(cfg.q->real()), Real(cfg.q->imag()));
  } else {
    q = rng.annulus<Real>(Real(0.7), Real(1.4));
  }
  Cplx<Real> kappa;
  if (cfg.kappa_is_q2 || !cfg.q_special.empty()) {
    kappa = q * q;
  } else if (cfg.kappa) {
    kappa = Cplx<Real>(Real(cfg.kappa->real()), Real(cfg.kappa->imag()));
  } else {
    kappa = rng.annulus<Real>(Real(0.5), Real(2.0));
  }
  CVec<Real> z;
  if (!cfg.z.empty()) {
    for (const auto& v : cfg.z) z.push_back({Real(v.real()), Real(v.imag())});
  } else {
    z = rng.distinct_annulus<Real>(cfg.N, Real(0.5), Real(2.0), Real(0.05));
  }
  Tolerances tol = cfg.tol;
  return ModelParams<Real>(cfg.N, cfg.n, q, kappa, z, tol);
}

}  // namespace xxz
