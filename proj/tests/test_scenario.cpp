#include <catch2/catch_amalgamated.hpp>

#include "irsdeploy/experiments.hpp"
#include "irsdeploy/scenario.hpp"

using namespace irsdeploy;

TEST_CASE("empty config yields the stock defaults") {
  const ScenarioConfig sc = parse_scenario("");
  CHECK(sc.p_b_dbm == 20.0);
  CHECK(sc.p_i_dbm == 8.0);
  CHECK(sc.noise0_dbm == -80.0);
  CHECK(sc.noise_r_dbm == -80.0);
  CHECK(sc.beta_ref_db == -43.0);
  CHECK(sc.exp_bi == 2.0);
  const PowerConfig cfg = sc.power();
  CHECK(cfg.p_b == Catch::Approx(0.1).epsilon(1e-12));
  CHECK(cfg.p_i == Catch::Approx(6.30957e-3).epsilon(1e-5));
}

TEST_CASE("explicit keys override the defaults") {
  const ScenarioConfig sc = parse_scenario("p_b_dbm = 30\n# comment\nn_total = 128\n");
  CHECK(sc.power().p_b == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(sc.n_total == 128);
  CHECK(sc.p_i_dbm == 8.0);
}

TEST_CASE("comments and blank lines are ignored") {
  const ScenarioConfig sc = parse_scenario("\n   \n# full line comment\nL = 120 # trailing\n");
  CHECK(sc.length == 120.0);
}

TEST_CASE("malformed lines carry their line number") {
  CHECK_THROWS_WITH(parse_scenario("p_b_dbm = 20\nnot a pair\n"),
                    Catch::Matchers::ContainsSubstring("line 2"));
  CHECK_THROWS_WITH(parse_scenario("p_b_dbm = abc\n"),
                    Catch::Matchers::ContainsSubstring("line 1"));
}

TEST_CASE("unknown keys are rejected") {
  CHECK_THROWS_WITH(parse_scenario("p_bee_dbm = 20\n"),
                    Catch::Matchers::ContainsSubstring("unknown key"));
}

TEST_CASE("invariant violations are reported as validation errors") {
  CHECK_THROWS_AS(parse_scenario("n_total = 0\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("n_p = 10\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("n_total = 20\nn_p = 5\nn_a = 5\n"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("scheme = fancy\n"), ScenarioError);
}

TEST_CASE("explicit coordinates replace the distance overrides") {
  const ScenarioConfig sc = parse_scenario("x_bi = 30\n");
  const SingleIrsGeometry g = sc.single_geometry();
  CHECK(g.d_bi() == Catch::Approx(std::hypot(30.0, 10.0)).epsilon(1e-12));
}

TEST_CASE("number formatting is locale-independent with 12 significant digits") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(6.30957344480193e-3) == "0.0063095734448");
  CHECK(format_number(123456789012.0) == "123456789012");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("csv rows follow the fixed schema") {
  CsvRow r;
  r.sweep_value = 100;
  r.scheme = "bapu";
  r.n_p = 67;
  r.n_a = 33;
  r.x_star_m = 5.0;
  r.snr_linear = 1234.5;
  r.rate = 10.25;
  r.oracle_rate = 10.25;
  r.assumptions_ok = 1;
  CHECK(format_row(r) == "100,bapu,67,33,5,1234.5,10.25,10.25,1");
  CHECK(std::string(csv_header()) ==
        "sweep_value,scheme,n_p,n_a,x_star_m,snr_linear,rate_bps_hz,oracle_rate_bps_hz,"
        "assumptions_ok");
}

TEST_CASE("evaluate rows are deterministic") {
  const ScenarioConfig sc = parse_scenario("n_total = 100\n");
  const auto a = format_csv(rows_evaluate(sc));
  const auto b = format_csv(rows_evaluate(sc));
  CHECK(a == b);
  CHECK(a.find("\r") == std::string::npos);
}

TEST_CASE("allocate rows reproduce the stock hundred-element split") {
  const ScenarioConfig sc = parse_scenario("n_total = 100\nscheme = bapu\n");
  const auto rows = rows_allocate(sc);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].scheme == "bapu");
  CHECK(rows[0].n_p == 67);
  CHECK(rows[0].n_a == 33);
  CHECK(rows[0].rate == Catch::Approx(rows[0].oracle_rate).margin(1e-6));
}

TEST_CASE("sweep rows keep input order and one row per scheme per point") {
  const ScenarioConfig sc = parse_scenario("n_total = 60\n");
  const auto rows = rows_sweep(sc, SweepKey::p_i_dbm, 0.0, 10.0, 3);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0].sweep_value == 0.0);
  CHECK(rows[3].sweep_value == 5.0);
  CHECK(rows[6].sweep_value == 10.0);
  CHECK(rows[0].scheme == "bhu");
  CHECK(rows[1].scheme == "bapu");
  CHECK(rows[2].scheme == "bpau");
}

TEST_CASE("evaluate oracle column matches the closed form") {
  const ScenarioConfig sc = parse_scenario("n_total = 80\n");
  for (const auto& r : rows_evaluate(sc))
    CHECK(r.oracle_rate == Catch::Approx(r.rate).epsilon(1e-9));
}

TEST_CASE("placement-equality crossing shows up in the placement rows") {
  ScenarioConfig sc = parse_scenario("n_total = 700\nn_p = 500\nn_a = 200\np_i_dbm = 20\n");
  const auto rows = rows_place(sc, 0.5);
  double bapu = -1.0, bpau = -2.0;
  for (const auto& r : rows) {
    if (r.scheme == "bapu") bapu = r.rate;
    if (r.scheme == "bpau") bpau = r.rate;
  }
  CHECK(bapu == Catch::Approx(bpau).epsilon(1e-9));
}

TEST_CASE("figure reproduction emits the advertised series") {
  const ScenarioConfig base = parse_scenario("");
  const auto fig3 = rows_reproduce(base, "fig3", 0.5);
  REQUIRE(!fig3.empty());
  // the first block is the hundred-element allocation
  CHECK(fig3[0].sweep_value == 100.0);
  bool found = false;
  for (const auto& r : fig3)
    if (r.sweep_value == 100.0 && r.scheme == "bapu") {
      CHECK(r.n_p == 67);
      CHECK(r.n_a == 33);
      found = true;
    }
  CHECK(found);
  CHECK_THROWS_AS(rows_reproduce(base, "fig99", 0.5), ScenarioError);
}

TEST_CASE("placement figure series equalize the two orders at the matched power") {
  const ScenarioConfig base = parse_scenario("");
  const auto rows = rows_reproduce(base, "fig6", 0.5);
  double bapu = -1.0, bpau = -2.0;
  for (const auto& r : rows)
    if (r.sweep_value == 20.0) {
      if (r.scheme == "bapu") bapu = r.rate;
      if (r.scheme == "bpau") bpau = r.rate;
    }
  CHECK(bapu == Catch::Approx(bpau).epsilon(1e-9));
}

TEST_CASE("element sweeps re-optimize the split per point") {
  const ScenarioConfig sc = parse_scenario("");
  const auto rows = rows_sweep(sc, SweepKey::n, 100, 200, 2);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows)
    if (r.scheme == "bapu" && r.sweep_value == 100.0) CHECK(r.n_p == 67);
}

TEST_CASE("inside-reference-distance geometries are rejected") {
  PowerConfig cfg;
  cfg.beta_ref = 1.0;
  DoubleIrsGeometry geom;
  geom.length = 10.0;
  geom.x_b = 4.6;
  geom.x_u = 4.9;  // half-meter gap at unit reference gain
  CHECK_THROWS_AS(gains_from_geometry(geom, cfg), std::domain_error);
}
