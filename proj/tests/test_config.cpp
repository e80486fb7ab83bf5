#include "test_support.hpp"

using json = nlohmann::ordered_json;

TEST_CASE("defaults and basic parsing") {
  xxz::RunConfig cfg = xxz::parse_config(json::object());
  CHECK(cfg.N == 4);
  CHECK(cfg.n == 2);
  CHECK_FALSE(cfg.q.has_value());
  CHECK(cfg.seed == 1);
  CHECK(cfg.trials == 10);
  CHECK(cfg.site == -1);
  CHECK(cfg.precision == "double");
  CHECK(cfg.format == "json");

  xxz::RunConfig c2 = xxz::parse_config(json::parse(R"({"N": 6})"));
  CHECK(c2.N == 6);
  CHECK(c2.n == 3);  // n defaults to N/2
}

TEST_CASE("unknown keys and malformed values fail loudly") {
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"M": 4})")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"N": "four"})")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"([1, 2])")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"q": "cbrt2"})")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"q": [1.0]})")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"kappa": 0})")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"q": 1.0})")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"format": "xml"})")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"precision": "half"})")),
                  xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"command": "dance"})")),
                  xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"tolerances": {"rtol": 1e-9}})")),
                  xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"tolerances": {"residual": -1}})")),
                  xxz::ConfigError);
}

TEST_CASE("range validation") {
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"N": 0})")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"N": 31})")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"N": 4, "n": 5})")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"n": -1})")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"seed": -3})")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"trials": 0})")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"site": 4})")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"site": -2})")), xxz::ConfigError);
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"N": 3, "z": [1.0, 2.0]})")),
                  xxz::ConfigError);
}

TEST_CASE("special-coupling constraints") {
  CHECK_THROWS_AS(xxz::parse_config(json::parse(R"({"N": 4, "n": 1, "q": "cbrt1"})")),
                  xxz::ConfigError);
  CHECK_THROWS_AS(
      xxz::parse_config(json::parse(R"({"N": 4, "q": "cbrt1", "kappa": 2.0})")),
      xxz::ConfigError);
  xxz::RunConfig ok =
      xxz::parse_config(json::parse(R"({"N": 4, "q": "cbrt1", "kappa": "q2"})"));
  CHECK(ok.q_special == "cbrt1");
  CHECK(ok.kappa_is_q2);

  xxz::RandomDraw rng(ok.seed);
  xxz::ModelParams<double> p = xxz::materialize_params<double>(ok, rng);
  CHECK(xxz::at_cube_root_point(p));

  xxz::RunConfig conj = xxz::parse_config(json::parse(R"({"N": 2, "q": "cbrt1_conj"})"));
  xxz::RandomDraw rng2(conj.seed);
  xxz::ModelParams<double> pc = xxz::materialize_params<double>(conj, rng2);
  CHECK(xxz::at_cube_root_point(pc));
  CHECK(std::abs(pc.q - std::conj(p.q)) < 1e-15);
}

TEST_CASE("explicit spectral data is honored") {
  json doc = json::parse(
      R"({"N": 2, "n": 1, "q": [0.9, 0.1], "kappa": 1.25, "z": [[1.0, 0.0], [0.0, 2.0]], "seed": 7})");
  xxz::RunConfig cfg = xxz::parse_config(doc);
  xxz::RandomDraw rng(cfg.seed);
  xxz::ModelParams<double> p = xxz::materialize_params<double>(cfg, rng);
  CHECK(std::abs(p.q - ts::C(0.9, 0.1)) < 1e-15);
  CHECK(std::abs(p.kappa - ts::C(1.25)) < 1e-15);
  REQUIRE(int(p.z.size()) == 2);
  CHECK(std::abs(p.z[0] - ts::C(1.0)) < 1e-15);
  CHECK(std::abs(p.z[1] - ts::C(0.0, 2.0)) < 1e-15);
}

TEST_CASE("materialization is deterministic in the seed") {
  json doc = json::parse(R"({"N": 4, "seed": 11})");
  xxz::RunConfig cfg = xxz::parse_config(doc);
  xxz::RandomDraw r1(cfg.seed), r2(cfg.seed), r3(cfg.seed + 1);
  xxz::ModelParams<double> a = xxz::materialize_params<double>(cfg, r1);
  xxz::ModelParams<double> b = xxz::materialize_params<double>(cfg, r2);
  xxz::ModelParams<double> c = xxz::materialize_params<double>(cfg, r3);
  CHECK(a.q == b.q);
  CHECK(a.kappa == b.kappa);
  CHECK(a.z == b.z);
  CHECK(a.q != c.q);
}

TEST_CASE("tolerance overrides reach the model") {
  json doc = json::parse(R"({"tolerances": {"residual": 1e-7, "pole_gap": 1e-5}})");
  xxz::RunConfig cfg = xxz::parse_config(doc);
  CHECK(cfg.tol.residual == 1e-7);
  CHECK(cfg.tol.pole_gap == 1e-5);
  CHECK(cfg.tol.min_rcond == 1e-13);  // untouched default
}

TEST_CASE("report envelope shape and determinism") {
  json doc = json::parse(R"({"N": 4, "seed": 3})");
  xxz::RunConfig cfg = xxz::parse_config(doc);
  json env1 = xxz::report_envelope("scalar-product", cfg);
  json env2 = xxz::report_envelope("scalar-product", cfg);
  CHECK(env1 == env2);
  CHECK(env1["version"] == xxz::kToolVersion);
  CHECK(env1["command"] == "scalar-product");
  CHECK(env1["seed"] == 3);
  CHECK(env1["config"]["N"] == 4);
  CHECK(env1.contains("tolerances"));

  // deterministic residual formatting
  CHECK(xxz::residual_string(1.5e-10) == xxz::residual_string(1.5e-10));
  std::string s = xxz::residual_string(0.0);
  CHECK_FALSE(s.empty());
}

TEST_CASE("csv flattening") {
  json rep;
  rep["a"] = 1;
  rep["b"]["c"] = "x,y";
  rep["d"] = json::array({1.5, 2.5});
  std::string flat = xxz::csv_flatten(rep);
  CHECK(flat.find("key,value") == 0);
  CHECK(flat.find("b.c,\"x,y\"") != std::string::npos);
  CHECK(flat.find("d[0],1.5") != std::string::npos);

  std::string tab = xxz::csv_table({"h1", "h2"}, {{"1", "2"}, {"3", "4"}});
  CHECK(tab == "h1,h2\n1,2\n3,4\n");
}

TEST_CASE("config files load with parse errors mapped to ConfigError") {
  std::string path = "test_config_tmp.json";
  {
    std::ofstream out(path);
    out << R"({"N": 4, "seed": 5})";
  }
  xxz::RunConfig cfg = xxz::load_config(path);
  CHECK(cfg.N == 4);
  CHECK(cfg.seed == 5);
  {
    std::ofstream out(path);
    out << R"({"N": 4,)";
  }
  CHECK_THROWS_AS(xxz::load_config(path), xxz::ConfigError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(xxz::load_config(path), xxz::ConfigError);
}
