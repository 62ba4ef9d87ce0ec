#include <catch2/catch_amalgamated.hpp>

#include "irsdeploy/allocation.hpp"
#include "irsdeploy/rng.hpp"
#include "irsdeploy/units.hpp"

using namespace irsdeploy;

namespace {

PathGains stock_single() {
  PowerConfig cfg;
  SingleIrsGeometry geom;
  geom.length = 90.0;
  geom.override_d_bi = 80.0;
  geom.override_d_iu = 50.0;
  return gains_from_geometry(geom, cfg);
}

PathGains stock_double() {
  PowerConfig cfg;
  return gains_from_geometry(DoubleIrsGeometry{}, cfg);
}

double cubic_residual(double c_cub, double c_lin, double n, double x) {
  return -c_cub * x * x * x - 3.0 * c_lin * x + 2.0 * n * c_lin;
}

struct RandomDouble {
  PowerConfig cfg;
  PathGains gains;
  int n;
};

RandomDouble draw(SplitMix64& rng) {
  RandomDouble rc;
  rc.cfg.p_b = dbm_to_watts(rng.uniform(5.0, 30.0));
  rc.cfg.p_i = dbm_to_watts(rng.uniform(-5.0, 20.0));
  rc.cfg.sigma0_sq = dbm_to_watts(rng.uniform(-90.0, -70.0));
  rc.cfg.sigma_r_sq = dbm_to_watts(rng.uniform(-90.0, -70.0));
  rc.gains = PathGains::double_irs(db_to_linear(rng.uniform(-120.0, -40.0)),
                                   db_to_linear(rng.uniform(-120.0, -40.0)),
                                   db_to_linear(rng.uniform(-120.0, -40.0)));
  rc.gains.beta_bi_sq = db_to_linear(rng.uniform(-120.0, -40.0));
  rc.gains.beta_iu_sq = db_to_linear(rng.uniform(-120.0, -40.0));
  rc.n = 2 + static_cast<int>(rng.next_u64() % 499);
  return rc;
}

}  // namespace

TEST_CASE("cubic solver degenerate and limiting cases") {
  CHECK(solve_allocation_cubic(0.0, 1.0, 99.0) == Catch::Approx(2.0 * 99.0 / 3.0));
  // dominant cubic coefficient pushes the root to zero
  CHECK(solve_allocation_cubic(1e12, 1.0, 100.0) < 1e-3);
}

TEST_CASE("cubic solver meets the residual tolerance and stays in range") {
  // coefficient ratios drawn across (and past) the range the link constants
  // produce; far outside it the residual target stops being representable
  SplitMix64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const double c_lin = std::pow(10.0, rng.uniform(-25.0, 2.0));
    const double ratio = std::pow(10.0, rng.uniform(-25.0, 3.0));
    const double c_cub = c_lin * ratio;
    const double n = rng.uniform(2.0, 1e5);
    const double x = solve_allocation_cubic(c_cub, c_lin, n);
    CHECK(x > 0.0);
    CHECK(x <= 2.0 * n / 3.0 + 1e-9 * n);
    CHECK(std::fabs(cubic_residual(c_cub, c_lin, n, x)) <= 1e-9 * (2.0 * n * c_lin));
  }
}

TEST_CASE("cubic root grows with the element budget") {
  double prev = 0.0;
  for (double n : {100.0, 1000.0, 10000.0, 100000.0}) {
    const double x = solve_allocation_cubic(1e-8, 1.0, n);
    CHECK(x > prev);
    prev = x;
  }
}

TEST_CASE("the allocation polynomials decrease over the feasible range") {
  SplitMix64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const RandomDouble rc = draw(rng);
    const DerivedConstants c3 = derived_constants(Scheme::bapu, rc.cfg, rc.gains);
    const DerivedConstants c7 = derived_constants(Scheme::bpau, rc.cfg, rc.gains);
    for (auto [cc, cl] : {std::pair{c3.c3, c3.c4}, std::pair{c7.c7, c7.c8}}) {
      double prev = cubic_residual(cc, cl, rc.n, 0.0);
      CHECK(prev > 0.0);
      bool decreasing = true;
      for (int k = 1; k <= 64; ++k) {
        const double x = rc.n * k / 64.0;
        const double v = cubic_residual(cc, cl, rc.n, x);
        if (v >= prev) decreasing = false;
        prev = v;
      }
      CHECK(decreasing);
      CHECK(prev < 0.0);  // sign change across [0, N]
    }
  }
}

TEST_CASE("single-surface optimum keeps one passive element while the budget dominates") {
  PowerConfig cfg;
  const PathGains g = stock_single();
  // threshold at the stock gains is ~1.99e6, so any practical N is below it
  CHECK(bhu_active_threshold(cfg, g) == Catch::Approx(1.9889e6).epsilon(1e-3));
  const RelaxedSplit s = optimal_split_bhu(cfg, g, 600);
  CHECK(s.n_a == Catch::Approx(599.0));
  CHECK(s.n_p == Catch::Approx(1.0));
  const ElementSplit exact = exhaustive_split(Scheme::bhu, cfg, g, 600);
  CHECK(exact.n_p == 1);
  CHECK(exact.n_a == 599);
}

TEST_CASE("single-surface optimum switches branches above the threshold") {
  PowerConfig cfg;
  PathGains g = stock_single();
  cfg.p_i = dbm_to_watts(-40.0);  // weak budget so the threshold drops to ~31.5
  const double thr = bhu_active_threshold(cfg, g);
  REQUIRE(thr < 100.0);
  const RelaxedSplit s = optimal_split_bhu(cfg, g, 100);
  CHECK(s.n_a == Catch::Approx(thr).epsilon(1e-12));
  CHECK(s.n_p == Catch::Approx(100.0 - thr).epsilon(1e-12));
  // infinite budget forces the all-active branch
  cfg.p_i = 1e9;
  const RelaxedSplit s2 = optimal_split_bhu(cfg, g, 100);
  CHECK(s2.n_a == Catch::Approx(99.0));
}

TEST_CASE("stock allocation splits for the two-surface schemes") {
  PowerConfig cfg;
  const PathGains g = stock_double();
  // forward order, N = 100: two-thirds rule rounds to 67 passive
  ElementSplit s = optimal_split_rounded(Scheme::bapu, cfg, g, 100);
  CHECK(s.n_p == 67);
  CHECK(s.n_a == 33);
  CHECK(exhaustive_split(Scheme::bapu, cfg, g, 100).n_p == 67);
  // reverse order, N = 100
  s = optimal_split_rounded(Scheme::bpau, cfg, g, 100);
  CHECK(s.n_p == 67);
  CHECK(s.n_a == 33);
  CHECK(exhaustive_split(Scheme::bpau, cfg, g, 100).n_p == 67);
  // reverse order, N = 600: noise saturation pulls the root below 2N/3
  s = optimal_split_rounded(Scheme::bpau, cfg, g, 600);
  CHECK(s.n_p == 397);
  CHECK(s.n_a == 203);
  CHECK(exhaustive_split(Scheme::bpau, cfg, g, 600).n_p == 397);
  // forward order, N = 600: saturation is negligible at these gains and the
  // optimum stays at the two-thirds point
  s = optimal_split_rounded(Scheme::bapu, cfg, g, 600);
  CHECK(s.n_p == 400);
  CHECK(s.n_a == 200);
  CHECK(exhaustive_split(Scheme::bapu, cfg, g, 600).n_p == 400);
}

TEST_CASE("weak-saturation regime recovers the two-thirds rule") {
  PowerConfig cfg;
  PathGains g = stock_double();
  g.beta_i_sq *= 1e-3;
  const RelaxedSplit s = optimal_split_bapu(cfg, g, 300);
  CHECK(s.n_p == Catch::Approx(200.0).epsilon(1e-4));
}

TEST_CASE("the two cubic users coincide under the power/noise/gain swap") {
  PowerConfig cfg;
  cfg.p_b = 0.2;
  cfg.p_i = 0.01;
  cfg.sigma0_sq = 2e-11;
  cfg.sigma_r_sq = 5e-12;
  PathGains g = stock_double();
  g.beta_u_sq = 3.0 * g.beta_b_sq;
  PowerConfig swapped = cfg;
  std::swap(swapped.p_b, swapped.p_i);
  std::swap(swapped.sigma0_sq, swapped.sigma_r_sq);
  PathGains g_swapped = g;
  std::swap(g_swapped.beta_b_sq, g_swapped.beta_u_sq);
  const DerivedConstants ca = derived_constants(Scheme::bapu, cfg, g);
  const DerivedConstants cb = derived_constants(Scheme::bpau, swapped, g_swapped);
  REQUIRE(cb.c7 == Catch::Approx(ca.c3).epsilon(1e-14));
  REQUIRE(cb.c8 == Catch::Approx(ca.c4).epsilon(1e-14));
  CHECK(optimal_split_bpau(swapped, g_swapped, 500).n_p ==
        Catch::Approx(optimal_split_bapu(cfg, g, 500).n_p).epsilon(1e-12));
}

TEST_CASE("reverse-order active share approaches one as the budget grows") {
  PowerConfig cfg;
  const PathGains g = stock_double();
  double prev_fraction = 1.0;
  for (int n : {1000, 10000, 100000}) {
    const RelaxedSplit s = optimal_split_bpau(cfg, g, n);
    const double frac = s.n_p / n;
    CHECK(frac < prev_fraction);
    prev_fraction = frac;
  }
}

TEST_CASE("round_split inspects both integer neighbors") {
  PowerConfig cfg;
  const PathGains g = stock_double();
  RelaxedSplit relaxed;
  relaxed.n_p = 66.6;
  relaxed.n_a = 33.4;
  const ElementSplit s = round_split(Scheme::bapu, relaxed, cfg, g, 100);
  CHECK((s.n_p == 66 || s.n_p == 67));
  const double v = snr_core(Scheme::bapu, cfg, g, s.n_p, s.n_a);
  CHECK(v >= snr_core(Scheme::bapu, cfg, g, 66, 34));
  CHECK(v >= snr_core(Scheme::bapu, cfg, g, 67, 33));
}

TEST_CASE("round_split keeps integral input and clips tiny passive counts") {
  PowerConfig cfg;
  const PathGains g = stock_double();
  RelaxedSplit relaxed;
  relaxed.n_p = 42.0;
  relaxed.n_a = 58.0;
  CHECK(round_split(Scheme::bapu, relaxed, cfg, g, 100).n_p == 42);
  relaxed.n_p = 0.3;
  relaxed.n_a = 99.7;
  CHECK(round_split(Scheme::bapu, relaxed, cfg, g, 100).n_p == 1);
}

TEST_CASE("exhaustive search with two elements has one candidate") {
  PowerConfig cfg;
  const PathGains g = stock_double();
  const ElementSplit s = exhaustive_split(Scheme::bapu, cfg, g, 2);
  CHECK(s.n_p == 1);
  CHECK(s.n_a == 1);
}

TEST_CASE("rounded closed form matches exhaustive search to rate tolerance") {
  SplitMix64 rng(99);
  for (int i = 0; i < 334; ++i) {
    const RandomDouble rc = draw(rng);
    for (Scheme s : {Scheme::bhu, Scheme::bapu, Scheme::bpau}) {
      const ElementSplit rounded = optimal_split_rounded(s, rc.cfg, rc.gains, rc.n);
      const ElementSplit exact = exhaustive_split(s, rc.cfg, rc.gains, rc.n);
      const double r1 = rate_from_snr(snr_core(s, rc.cfg, rc.gains, rounded.n_p, rounded.n_a));
      const double r2 = rate_from_snr(snr_core(s, rc.cfg, rc.gains, exact.n_p, exact.n_a));
      CHECK(r1 >= r2 - 1e-6);
    }
  }
}

TEST_CASE("relaxed single-surface objective never beats the claimed optimum") {
  SplitMix64 rng(123);
  for (int i = 0; i < 100; ++i) {
    const RandomDouble rc = draw(rng);
    const RelaxedSplit opt = optimal_split_bhu(rc.cfg, rc.gains, rc.n);
    const double best = snr_bhu(rc.cfg, rc.gains, opt.n_p, opt.n_a);
    for (int k = 0; k <= 2000; ++k) {
      const double na = (rc.n - 1.0) * k / 2000.0;  // keep one passive element
      const double v = snr_bhu(rc.cfg, rc.gains, rc.n - na, na);
      CHECK(v <= best * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("single-surface optimal-allocation closed form equals the substituted formula") {
  SplitMix64 rng(321);
  for (int i = 0; i < 200; ++i) {
    const RandomDouble rc = draw(rng);
    const RelaxedSplit opt = optimal_split_bhu(rc.cfg, rc.gains, rc.n);
    const double direct = snr_bhu(rc.cfg, rc.gains, opt.n_p, opt.n_a);
    const double closed = snr_opt_allocation_bhu(rc.cfg, rc.gains, rc.n);
    CHECK(closed == Catch::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("optimal-allocation SNR grows quadratically past the threshold") {
  PowerConfig cfg;
  PathGains g = stock_single();
  cfg.p_i = dbm_to_watts(-40.0);
  const DerivedConstants c = derived_constants(Scheme::bhu, cfg, g);
  const double n = 1e9;
  CHECK(snr_opt_allocation_bhu(cfg, g, static_cast<int>(n)) / (n * n) ==
        Catch::Approx(c.c1).epsilon(1e-3));
}

TEST_CASE("cubic-law approximation is tight inside its regime") {
  PowerConfig cfg;
  const PathGains g = stock_double();
  const auto approx = approx_snr_opt_allocation(Scheme::bapu, cfg, g, 600);
  REQUIRE(approx.valid);
  REQUIRE(approx.regime_ratio < 0.01);
  const double np = 400.0;
  const double exact = snr_core(Scheme::bapu, cfg, g, np, 200.0);
  CHECK(std::fabs(approx.snr - exact) / exact < 0.02);
}

TEST_CASE("cubic-law approximation reports the regime ratio at small budgets") {
  PowerConfig cfg;
  const PathGains g = stock_double();
  const auto approx = approx_snr_opt_allocation(Scheme::bpau, cfg, g, 10);
  const DerivedConstants c = derived_constants(Scheme::bpau, cfg, g);
  const double expect = c.c7 * (20.0 / 3.0) * (20.0 / 3.0) / c.c8;
  CHECK(approx.regime_ratio == Catch::Approx(expect).epsilon(1e-12));
  CHECK(approx.valid == (expect <= 0.01));
}

TEST_CASE("approximated SNR obeys the exact cubic law") {
  PowerConfig cfg;
  const PathGains g = stock_double();
  const double a = approx_snr_opt_allocation(Scheme::bapu, cfg, g, 100).snr;
  const double b = approx_snr_opt_allocation(Scheme::bapu, cfg, g, 200).snr;
  CHECK(b / a == Catch::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("scheme selection by allocation follows the dominant link") {
  PowerConfig cfg;
  PathGains bhu = stock_single();
  PathGains dbl = stock_double();
  const int n = 200;
  // single-surface outlet link made nearly lossless: the single surface wins
  PathGains bhu_strong = bhu;
  bhu_strong.beta_iu_sq = db_to_linear(-20.0);
  auto cmp = best_scheme_by_allocation(cfg, bhu_strong, dbl, n);
  CHECK(cmp.best == Scheme::bhu);
  CHECK(cmp.cond_bhu);
  // strong final hop favors the forward double order
  PathGains dbl_strong_user = dbl;
  dbl_strong_user.beta_u_sq = db_to_linear(-20.0);
  cmp = best_scheme_by_allocation(cfg, bhu, dbl_strong_user, n);
  CHECK(cmp.best == Scheme::bapu);
  CHECK(cmp.cond_bapu);
  // strong first hop favors the reverse order
  PathGains dbl_strong_bs = dbl;
  dbl_strong_bs.beta_b_sq = db_to_linear(-20.0);
  cmp = best_scheme_by_allocation(cfg, bhu, dbl_strong_bs, n);
  CHECK(cmp.best == Scheme::bpau);
  CHECK(cmp.cond_bpau);
}

TEST_CASE("the branch condition holds with equality on the all-active side") {
  PowerConfig cfg;
  const PathGains g = stock_single();
  const int n = 250;
  cfg.p_i = 4.0 * n * (cfg.p_b * g.beta_bi_sq + cfg.sigma_r_sq);  // threshold lands exactly on N
  REQUIRE(bhu_active_threshold(cfg, g) == Catch::Approx(static_cast<double>(n)).epsilon(1e-12));
  const RelaxedSplit s = optimal_split_bhu(cfg, g, n);
  CHECK(s.n_a == Catch::Approx(n - 1.0));
  CHECK(s.n_p == Catch::Approx(1.0));
}

TEST_CASE("allocation-level comparison at the stock scenario") {
  PowerConfig cfg;
  const PathGains bhu = stock_single();
  const PathGains dbl = stock_double();
  const auto at600 = best_scheme_by_allocation(cfg, bhu, dbl, 600);
  CHECK(at600.best == Scheme::bhu);
  // the double-reflection rates climb faster in N than the single-surface one
  const auto at300 = best_scheme_by_allocation(cfg, bhu, dbl, 300);
  const double growth_bhu = at600.rate_bhu - at300.rate_bhu;
  CHECK(at600.rate_bapu - at300.rate_bapu > growth_bhu);
  CHECK(at600.rate_bpau - at300.rate_bpau > growth_bhu);
}

TEST_CASE("exhaustive scan is invariant to the worker count") {
  PowerConfig cfg;
  const PathGains g = stock_double();
  setenv("IRS_DEPLOY_THREADS", "1", 1);
  const ElementSplit serial = exhaustive_split(Scheme::bpau, cfg, g, 30000);
  setenv("IRS_DEPLOY_THREADS", "5", 1);
  const ElementSplit parallel = exhaustive_split(Scheme::bpau, cfg, g, 30000);
  unsetenv("IRS_DEPLOY_THREADS");
  CHECK(serial.n_p == parallel.n_p);
}
