#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xxz/report.hpp"
#include "xxz/verify.hpp"

namespace {

using nlohmann::ordered_json;

template <class Real>
ordered_json model_json(const xxz::ModelParams<Real>& p) {
  ordered_json j;
  j["N"] = p.N;
  j["n"] = p.n;
  j["q"] = xxz::complex_json(p.q);
  j["kappa"] = xxz::complex_json(p.kappa);
  j["z"] = xxz::complex_list_json(p.z);
  return j;
}

ordered_json checks_json(const std::vector<xxz::IdentityCheck>& rows) {
  auto arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json c;
    c["name"] = r.name;
    c["residual"] = xxz::format_sci17(r.residual);
    c["tolerance"] = xxz::format_sci17(r.tolerance);
    c["pass"] = r.pass;
    arr.push_back(c);
  }
  return arr;
}

bool all_pass(const std::vector<xxz::IdentityCheck>& rows) {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

void add_check(std::vector<xxz::IdentityCheck>& rows, const std::string& name,
               double residual, double tolerance) {
  rows.push_back({name, residual, tolerance, residual <= tolerance});
}

/// Site-independence of the ratio a_m / b_m: max relative deviation from the
/// mean ratio over all sites with a usable denominator.
template <class Real>
double proportionality_spread(const xxz::CVec<Real>& a, const xxz::CVec<Real>& b) {
  Real scale = xxz::max_abs(b);
  std::vector<xxz::Cplx<Real>> ratios;
  for (std::size_t m = 0; m < a.size(); ++m)
    if (std::abs(b[m]) > Real(1e-12) * scale) ratios.push_back(a[m] / b[m]);
  if (ratios.size() < 2) return 0.0;
  xxz::Cplx<Real> mean(Real(0));
  for (const auto& r : ratios) mean += r;
  mean /= Real(ratios.size());
  Real worst = 0;
  for (const auto& r : ratios)
    worst = std::max(worst, std::abs(r - mean) / std::abs(mean));
  return double(worst);
}

template <class Real>
bool cmd_solve(const xxz::RunConfig& cfg, xxz::RandomDraw& rng, ordered_json& report) {
  xxz::ModelParams<Real> p = xxz::materialize_params<Real>(cfg, rng);
  report["model"] = model_json(p);
  std::optional<xxz::BetheRoots<Real>> sol = xxz::solve_roots_auto(p, rng);
  if (!sol) {
    report["converged"] = false;
    report["message"] = "no admissible root set found";
    return false;
  }
  report["roots"] = xxz::complex_list_json(sol->roots);
  report["bethe_residual"] = xxz::residual_string(double(sol->residual));
  report["method"] = sol->diag.method;
  report["iterations"] = sol->diag.iterations;
  report["converged"] = sol->diag.converged;
  return sol->diag.converged && double(sol->residual) <= 1e-9;
}

template <class Real>
bool cmd_scalar_product(const xxz::RunConfig& cfg, xxz::RandomDraw& rng,
                        ordered_json& report) {
  xxz::ModelParams<Real> p = xxz::materialize_params<Real>(cfg, rng);
  report["model"] = model_json(p);
  std::vector<std::string> methods;
  for (const auto& m : cfg.methods) {
    std::string name = m;
    if (name == "slavnov_omega") name = "slavnov";
    if (name == "slavnov_c") name = "kernel";
    if (name == "oracle") {
      if (p.N > 12)
        throw xxz::ConfigError("the oracle method requires N <= 12");
    } else if (name == "closed_form") {
      if (!xxz::at_cube_root_point(p))
        throw xxz::ConfigError("the closed_form method requires the cube-root point");
    } else if (name != "slavnov" && name != "kernel" && name != "symmetric") {
      throw xxz::ConfigError("unknown scalar-product method '" + m + "'");
    }
    methods.push_back(name);
  }
  if (methods.empty()) {
    if (p.N <= 10) methods.push_back("oracle");
    methods.push_back("slavnov");
    methods.push_back("kernel");
    methods.push_back("symmetric");
    if (xxz::at_cube_root_point(p)) methods.push_back("closed_form");
  }
  auto has = [&](const std::string& name) {
    for (const auto& m : methods)
      if (m == name) return true;
    return false;
  };
  std::optional<xxz::BetheRoots<Real>> sol = xxz::solve_roots_auto(p, rng);
  if (!sol) {
    report["message"] = "no admissible root set found";
    return false;
  }
  const xxz::CVec<Real>& zetas = sol->roots;
  report["roots"] = xxz::complex_list_json(zetas);
  report["bethe_residual"] = xxz::residual_string(double(sol->residual));
  double w_oracle = 0, w_kernel = 0, w_sym = 0;
  xxz::CondTracker<Real> trk;
  xxz::CVec<Real> closed_vals, closed_refs;
  auto trials = ordered_json::array();
  for (int t = 0; t < cfg.trials; ++t) {
    xxz::CVec<Real> mus = rng.distinct_annulus<Real>(p.n, 0.5, 2.0, 0.05);
    ordered_json row;
    row["trial"] = t;
    row["mu"] = xxz::complex_list_json(mus);
    ordered_json vals;
    xxz::Cplx<Real> v_slavnov{}, v_kernel{}, v_sym{}, v_oracle{}, v_closed{};
    if (has("slavnov")) {
      v_slavnov = xxz::slavnov_omega(p, mus, zetas, &trk);
      vals["slavnov"] = xxz::complex_json(v_slavnov);
    }
    if (has("kernel")) {
      v_kernel = xxz::slavnov_c(p, mus, zetas, &trk);
      vals["kernel"] = xxz::complex_json(v_kernel);
    }
    if (has("symmetric")) {
      v_sym = xxz::scalar_product_symmetric_route(p, mus, zetas, &trk);
      vals["symmetric"] = xxz::complex_json(v_sym);
    }
    if (has("oracle")) {
      v_oracle = xxz::scalar_product_direct(p, xxz::as_points(mus), xxz::as_points(zetas));
      vals["oracle"] = xxz::complex_json(v_oracle);
    }
    if (has("closed_form")) {
      v_closed = xxz::closed_form_scalar_product(p, mus, zetas);
      vals["closed_form"] = xxz::complex_json(v_closed);
    }
    row["values"] = vals;
    trials.push_back(row);
    xxz::Cplx<Real> ref = has("slavnov") ? v_slavnov : (has("kernel") ? v_kernel : v_oracle);
    if (has("oracle") && has("slavnov"))
      w_oracle = std::max(w_oracle, double(xxz::rel_err(v_oracle, v_slavnov)));
    if (has("kernel") && has("slavnov"))
      w_kernel = std::max(w_kernel, double(xxz::rel_err(v_kernel, v_slavnov)));
    if (has("symmetric"))
      w_sym = std::max(w_sym, double(xxz::rel_err(v_sym, ref)));
    if (has("closed_form")) {
      closed_vals.push_back(v_closed);
      closed_refs.push_back(ref);
    }
  }
  report["trials"] = trials;
  report["rcond"] = xxz::residual_string(double(trk.worst));
  std::vector<xxz::IdentityCheck> rows;
  if (has("oracle") && has("slavnov"))
    add_check(rows, "oracle_vs_slavnov", w_oracle, 1e-8);
  if (has("kernel") && has("slavnov"))
    add_check(rows, "kernel_vs_derivative_form", w_kernel, 1e-10);
  if (has("symmetric")) add_check(rows, "symmetric_route", w_sym, 1e-9);
  if (has("closed_form")) {
    xxz::Cplx<Real> mean(Real(0));
    int used = 0;
    for (std::size_t i = 0; i < closed_vals.size(); ++i)
      if (std::abs(closed_refs[i]) > Real(0)) {
        mean += closed_vals[i] / closed_refs[i];
        ++used;
      }
    if (used > 0) mean /= Real(used);
    report["calibration"]["closed_form_over_reference"] = xxz::complex_json(mean);
    add_check(rows, "closed_form_proportionality",
              proportionality_spread(closed_vals, closed_refs), 1e-8);
  }
  report["checks"] = checks_json(rows);
  return all_pass(rows);
}

template <class Real>
bool cmd_verify(const xxz::RunConfig& cfg, xxz::RandomDraw& rng, ordered_json& report) {
  xxz::ModelParams<Real> p = xxz::materialize_params<Real>(cfg, rng);
  report["model"] = model_json(p);
  std::vector<xxz::IdentityCheck> rows = xxz::identity_battery(p, rng, cfg.trials);
  report["checks"] = checks_json(rows);
  return all_pass(rows);
}

template <class Real>
bool cmd_norm(const xxz::RunConfig& cfg, xxz::RandomDraw& rng, ordered_json& report) {
  xxz::ModelParams<Real> p = xxz::materialize_params<Real>(cfg, rng);
  report["model"] = model_json(p);
  std::optional<xxz::BetheRoots<Real>> sol = xxz::solve_roots_auto(p, rng);
  if (!sol) {
    report["message"] = "no admissible root set found";
    return false;
  }
  const xxz::CVec<Real>& zetas = sol->roots;
  report["roots"] = xxz::complex_list_json(zetas);
  report["bethe_residual"] = xxz::residual_string(double(sol->residual));
  ordered_json vals;
  std::vector<xxz::IdentityCheck> rows;
  xxz::CondTracker<Real> trk;
  xxz::Cplx<Real> kernel = xxz::norm_raw(p, zetas, &trk);
  vals["kernel"] = xxz::complex_json(kernel);
  if (p.N <= 10) {
    xxz::Cplx<Real> oracle =
        xxz::scalar_product_direct(p, xxz::as_points(zetas), xxz::as_points(zetas));
    vals["oracle"] = xxz::complex_json(oracle);
    add_check(rows, "kernel_vs_oracle", double(xxz::rel_err(kernel, oracle)), 1e-8);
  }
  if (xxz::at_cube_root_point(p)) {
    xxz::Cplx<Real> closed = xxz::norm_closed_form(p);
    xxz::Cplx<Real> root_form = xxz::norm_root_form(p, zetas);
    vals["closed_form"] = xxz::complex_json(closed);
    vals["root_form"] = xxz::complex_json(root_form);
    add_check(rows, "closed_vs_kernel", double(xxz::rel_err(closed, kernel)), 1e-8);
    add_check(rows, "root_form_vs_closed", double(xxz::rel_err(root_form, closed)), 1e-9);
    add_check(rows, "root_identity",
              double(xxz::norm_root_identity_residual(p, zetas)), 1e-10);
    add_check(rows, "q_product_identity", double(xxz::q_product_residual(p, zetas)),
              1e-10);
  }
  report["values"] = vals;
  report["rcond"] = xxz::residual_string(double(trk.worst));
  report["checks"] = checks_json(rows);
  return all_pass(rows);
}

template <class Real>
bool cmd_sigma_z(const xxz::RunConfig& cfg, xxz::RandomDraw& rng, ordered_json& report) {
  xxz::ModelParams<Real> p = xxz::materialize_params<Real>(cfg, rng);
  report["model"] = model_json(p);
  std::optional<xxz::BetheRoots<Real>> sol = xxz::solve_roots_auto(p, rng);
  if (!sol) {
    report["message"] = "no admissible root set found";
    return false;
  }
  const xxz::CVec<Real>& zetas = sol->roots;
  report["roots"] = xxz::complex_list_json(zetas);
  report["bethe_residual"] = xxz::residual_string(double(sol->residual));
  const bool comb = xxz::at_cube_root_point(p);
  xxz::CondTracker<Real> trk;
  xxz::CVec<Real> kernel_sum = xxz::sigma_z_root_sum(p, zetas, &trk);
  xxz::CVec<Real> single_det = xxz::sigma_z_single_det(p, zetas, &trk);
  std::optional<xxz::CVec<Real>> oracle, symmetrized, g_fac, comb_det;
  if (p.N <= 10) oracle = xxz::sigma_z_direct(p, zetas).site_values;
  if (comb) {
    symmetrized = xxz::sigma_z_symmetrized(p, &trk);
    g_fac = xxz::sigma_z_g_factor(p, zetas);
    comb_det = xxz::sigma_z_comb_det(p, zetas, &trk);
  }
  auto sites = ordered_json::array();
  for (int m = 0; m < p.N; ++m) {
    ordered_json row;
    row["site"] = m;
    ordered_json vals;
    vals["kernel_sum"] = xxz::complex_json(kernel_sum[m]);
    vals["single_det"] = xxz::complex_json(single_det[m]);
    if (oracle) vals["oracle"] = xxz::complex_json((*oracle)[m]);
    if (symmetrized) vals["root_free"] = xxz::complex_json((*symmetrized)[m]);
    if (g_fac) vals["resummation_factor"] = xxz::complex_json((*g_fac)[m]);
    if (comb_det) vals["alternant"] = xxz::complex_json((*comb_det)[m]);
    row["values"] = vals;
    sites.push_back(row);
  }
  report["sites"] = sites;
  if (cfg.site >= 0) report["selected_site"] = sites[cfg.site];
  std::vector<xxz::IdentityCheck> rows;
  {
    double w = 0;
    for (int m = 0; m < p.N; ++m)
      w = std::max(w, double(xxz::rel_err(single_det[m], kernel_sum[m])));
    add_check(rows, "single_det_vs_kernel", w, 1e-7);
  }
  if (oracle) {
    double w = 0;
    for (int m = 0; m < p.N; ++m)
      w = std::max(w, double(xxz::rel_err((*oracle)[m], kernel_sum[m])));
    add_check(rows, "oracle_vs_kernel", w, 1e-7);
  }
  {
    xxz::Cplx<Real> sum(Real(0));
    for (int m = 0; m < p.N; ++m) sum += kernel_sum[m];
    add_check(rows, "site_sum",
              double(std::abs(sum - xxz::Cplx<Real>(Real(p.N - 2 * p.n))) / Real(p.N)),
              1e-10);
  }
  if (symmetrized) {
    double w = 0;
    for (int m = 0; m < p.N; ++m)
      w = std::max(w, double(xxz::rel_err((*symmetrized)[m], kernel_sum[m])));
    add_check(rows, "root_free_vs_kernel", w, 1e-7);
  }
  if (g_fac)
    add_check(rows, "resummation_proportionality",
              proportionality_spread(*g_fac, kernel_sum), 1e-7);
  if (comb_det)
    add_check(rows, "alternant_proportionality",
              proportionality_spread(*comb_det, kernel_sum), 1e-7);
  report["rcond"] = xxz::residual_string(double(trk.worst));
  report["checks"] = checks_json(rows);
  return all_pass(rows);
}

template <class Real>
bool cmd_sweep(const xxz::RunConfig& cfg, xxz::RandomDraw& rng, ordered_json& report,
               std::string* csv_out) {
  if (!cfg.z.empty())
    throw xxz::ConfigError("sweep draws its own inhomogeneities; remove 'z'");
  xxz::ModelParams<Real> p0 = xxz::materialize_params<Real>(cfg, rng);
  report["model"] = model_json(p0);
  bool solved_all = true;
  std::vector<xxz::Cplx<Real>> ratios;
  std::string reference = p0.N <= 10 ? "oracle"
                          : xxz::at_cube_root_point(p0) ? "closed_form"
                                                        : "none";
  auto draws = ordered_json::array();
  std::vector<std::vector<std::string>> csv_rows;
  for (int t = 0; t < cfg.trials; ++t) {
    xxz::ModelParams<Real> p =
        (t == 0) ? p0
                 : xxz::ModelParams<Real>(p0.N, p0.n, p0.q, p0.kappa,
                                          rng.distinct_annulus<Real>(p0.N, 0.5, 2.0, 0.05),
                                          p0.tol);
    ordered_json row;
    row["trial"] = t;
    row["z"] = xxz::complex_list_json(p.z);
    std::optional<xxz::BetheRoots<Real>> sol = xxz::solve_roots_auto(p, rng);
    if (!sol) {
      row["converged"] = false;
      draws.push_back(row);
      csv_rows.push_back({std::to_string(t), "", "", "", "", "", "", ""});
      solved_all = false;
      continue;
    }
    xxz::Cplx<Real> kernel = xxz::norm_raw(p, sol->roots);
    row["bethe_residual"] = xxz::residual_string(double(sol->residual));
    row["norm_kernel"] = xxz::complex_json(kernel);
    std::vector<std::string> crow = {std::to_string(t),
                                     xxz::format_sci17(double(sol->residual)),
                                     xxz::format_g17(double(kernel.real())),
                                     xxz::format_g17(double(kernel.imag()))};
    if (reference != "none") {
      xxz::Cplx<Real> ref =
          reference == "oracle"
              ? xxz::scalar_product_direct(p, xxz::as_points(sol->roots),
                                           xxz::as_points(sol->roots))
              : xxz::norm_closed_form(p);
      xxz::Cplx<Real> ratio = kernel / ref;
      ratios.push_back(ratio);
      row["norm_reference"] = xxz::complex_json(ref);
      row["ratio"] = xxz::complex_json(ratio);
      crow.push_back(xxz::format_g17(double(ref.real())));
      crow.push_back(xxz::format_g17(double(ref.imag())));
      crow.push_back(xxz::format_g17(double(ratio.real())));
      crow.push_back(xxz::format_g17(double(ratio.imag())));
    } else {
      crow.insert(crow.end(), {"", "", "", ""});
    }
    draws.push_back(row);
    csv_rows.push_back(crow);
  }
  report["draws"] = draws;
  report["reference"] = reference;
  double spread = 0;
  if (ratios.size() >= 2) {
    xxz::Cplx<Real> mean(Real(0));
    for (const auto& r : ratios) mean += r;
    mean /= Real(ratios.size());
    for (const auto& r : ratios)
      spread = std::max(spread, double(std::abs(r - mean) / std::abs(mean)));
  }
  report["ratio_spread"] = xxz::format_sci17(spread);
  csv_rows.push_back({"spread", xxz::format_sci17(spread), "", "", "", "", "", ""});
  *csv_out = xxz::csv_table({"trial", "bethe_residual", "norm_kernel_re", "norm_kernel_im",
                             "norm_reference_re", "norm_reference_im", "ratio_re",
                             "ratio_im"},
                            csv_rows);
  bool pass = solved_all && (reference == "none" || spread <= 1e-8);
  return pass;
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open output path '" << out_path << "'" << std::endl;
    return 1;
  }
  f << text;
  return 0;
}

template <class Real>
int run_command(const std::string& command, const xxz::RunConfig& cfg) {
  xxz::RandomDraw rng(cfg.seed);
  ordered_json report = xxz::report_envelope(command, cfg);
  std::string sweep_csv;
  bool pass = false;
  try {
    if (command == "solve-bethe")
      pass = cmd_solve<Real>(cfg, rng, report);
    else if (command == "scalar-product")
      pass = cmd_scalar_product<Real>(cfg, rng, report);
    else if (command == "verify-identities")
      pass = cmd_verify<Real>(cfg, rng, report);
    else if (command == "norm")
      pass = cmd_norm<Real>(cfg, rng, report);
    else if (command == "sigma-z")
      pass = cmd_sigma_z<Real>(cfg, rng, report);
    else if (command == "sweep")
      pass = cmd_sweep<Real>(cfg, rng, report, &sweep_csv);
    else
      throw xxz::ConfigError("unknown command '" + command + "'");
  } catch (const xxz::ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    report["error"] = e.what();
    pass = false;
  }
  report["pass"] = pass;
  std::string text;
  if (cfg.format == "csv")
    text = (command == "sweep") ? sweep_csv : xxz::csv_flatten(report);
  else
    text = report.dump(2) + "\n";
  if (write_output(text, cfg.out) != 0) return 3;
  return pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numeric toolkit for the twisted inhomogeneous six-vertex spin chain"};
  app.set_version_flag("--version", xxz::kToolVersion);
  app.require_subcommand(1);
  std::string config_path, out, format, precision;
  long long seed = 0;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"solve-bethe", "Solve the Bethe system and report the roots"},
      {"scalar-product", "Cross-check scalar-product evaluations over random spectral points"},
      {"verify-identities", "Run the full identity battery and report residuals"},
      {"norm", "Evaluate the state norm by every available route"},
      {"sigma-z", "Evaluate the longitudinal one-point function by every available route"},
      {"sweep", "Repeat the norm comparison over random inhomogeneity draws"}};
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "Path to a JSON configuration file");
    sub->add_option("--seed", seed, "Random-generator seed")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out", out, "Write the report to this path instead of stdout");
    sub->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--precision", precision, "Floating-point lane")
        ->check(CLI::IsMember({"double", "extended"}));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    xxz::RunConfig cfg = config_path.empty()
                             ? xxz::parse_config(nlohmann::ordered_json::object())
                             : xxz::load_config(config_path);
    if (sub->count("--seed") > 0) cfg.seed = std::uint64_t(seed);
    if (sub->count("--out") > 0) cfg.out = out;
    if (sub->count("--format") > 0) cfg.format = format;
    if (sub->count("--precision") > 0) cfg.precision = precision;
    if (!cfg.command.empty() && cfg.command != command)
      throw xxz::ConfigError("config names command '" + cfg.command +
                             "' but the invocation asked for '" + command + "'");
    if (cfg.precision == "extended") return run_command<long double>(command, cfg);
    return run_command<double>(command, cfg);
  } catch (const xxz::ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  }
}
