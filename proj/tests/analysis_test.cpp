#include <cmath>
#include <stdexcept>
#include <vector>

#include "conewave/analysis.hpp"
#include "conewave/boundary.hpp"
#include "conewave/geometry.hpp"
#include "conewave/rng.hpp"
#include "conewave/sampling.hpp"
#include "conewave/solver.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace conewave;

TEST_SUITE("analysis") {

TEST_CASE("modulus function pinned values") {
  const double e_inv = std::exp(-1.0);
  const double cap = std::exp(-0.5);
  CHECK(h_modulus(e_inv) == doctest::Approx(cap).epsilon(1e-15));
  CHECK(h_modulus(0.25) == doctest::Approx(0.5887050112577373).epsilon(1e-15));
  CHECK(h_modulus(10.0) == cap);  // capped past the maximum
  CHECK(h_modulus(1.0) == cap);
  // continuous across the cap
  CHECK(h_modulus(e_inv * (1 - 1e-12)) == doctest::Approx(cap).epsilon(1e-12));
  CHECK(h_modulus(e_inv * (1 + 1e-12)) == doctest::Approx(cap).epsilon(1e-12));
  CHECK(h_modulus(1e-300) > 0.0);
  CHECK_THROWS_AS(h_modulus(0.0), std::domain_error);
  CHECK_THROWS_AS(h_modulus(-1.0), std::domain_error);
}

TEST_CASE("staircase path factories") {
  for (std::size_t m : {1u, 3u, 5u})
    for (std::size_t n : {1u, 4u}) {
      for (const StaircasePath& p : {StaircasePath::boundary(m, n), StaircasePath::diagonal(m, n),
                                     StaircasePath::right_then_down(m, n)}) {
        CHECK_NOTHROW(p.validate(m, n));
        REQUIRE(p.coords.size() == m + n + 1);
        CHECK(p.coords.front() == std::pair<std::size_t, std::size_t>{0, n});
        CHECK(p.coords.back() == std::pair<std::size_t, std::size_t>{m, 0});
      }
    }

  // the 1x1 diagonal visits exactly (0,1), (1,1), (1,0)
  const StaircasePath d11 = StaircasePath::diagonal(1, 1);
  REQUIRE(d11.coords.size() == 3);
  CHECK(d11.coords[1] == std::pair<std::size_t, std::size_t>{1, 1});

  StaircasePath bad;
  bad.coords = {{0, 1}, {1, 1}};  // stops short of the corner
  CHECK_THROWS_AS(bad.validate(1, 1), std::invalid_argument);
  bad.coords = {{0, 1}, {1, 0}};  // diagonal jump
  CHECK_THROWS_AS(bad.validate(1, 1), std::invalid_argument);
  bad.coords = {{1, 1}, {1, 0}};  // wrong start corner
  CHECK_THROWS_AS(bad.validate(1, 1), std::invalid_argument);
}

TEST_CASE("extract_path walks the boundary data") {
  RngStream rng(41, 0);
  const BoundaryPair b = sample_brownian_boundary(3, 0, 2, rng);
  const DiscreteField f = solve(b);
  const auto vals = extract_path(f, StaircasePath::boundary(8, 8));
  REQUIRE(vals.size() == 17);
  for (std::size_t j = 0; j <= 8; ++j) CHECK(vals[j] == b.y_minus[8 - j]);
  for (std::size_t m = 1; m <= 8; ++m) CHECK(vals[8 + m] == b.y_plus[m]);

  // the top-right corner cell sits on the right_then_down path
  const auto rtd = extract_path(f, StaircasePath::right_then_down(8, 8));
  CHECK(rtd[8] == f.get(8, 8));
}

TEST_CASE("modulus report on a constant field") {
  BoundaryPair b;
  b.y_plus.assign(33, Vec::basis0(2));
  b.y_minus.assign(33, Vec::basis0(2));
  const ModulusReport r = modulus_report(solve(b), 5, 0, 1000, 1);
  CHECK(r.sup_ratio == 0.0);
  REQUIRE(r.per_scale_m.size() == 3);  // M0 = 0 .. N-3
  REQUIRE(r.per_scale_n.size() == 3);
  for (double v : r.per_scale_m) CHECK(v == 0.0);
  for (double v : r.per_scale_n) CHECK(v == 0.0);
}

TEST_CASE("finest per-scale entry equals the cell-increment maximum") {
  RngStream rng(42, 0);
  const BoundaryPair b = sample_brownian_boundary(4, 0, 1, rng);
  const DiscreteField f = solve(b);
  const ModulusReport r = modulus_report(f, 4, 0, 0, 1);

  double biggest_m = 0.0, biggest_n = 0.0;
  for (std::size_t m = 0; m + 1 < f.rows(); ++m)
    for (std::size_t n = 0; n < f.cols(); ++n)
      biggest_m = std::max(biggest_m, (f.get(m + 1, n) - f.get(m, n)).norm());
  for (std::size_t m = 0; m < f.rows(); ++m)
    for (std::size_t n = 0; n + 1 < f.cols(); ++n)
      biggest_n = std::max(biggest_n, (f.get(m, n + 1) - f.get(m, n)).norm());

  const double scale = h_modulus(std::ldexp(1.0, -4));
  CHECK(r.per_scale_m[0] == doctest::Approx(biggest_m / scale).epsilon(1e-12));
  CHECK(r.per_scale_n[0] == doctest::Approx(biggest_n / scale).epsilon(1e-12));
  CHECK(r.sup_ratio >= r.per_scale_m[0]);

  // the report is a deterministic function of (field, pair_seed)
  const ModulusReport again = modulus_report(f, 4, 0, 0, 1);
  CHECK(again.sup_ratio == r.sup_ratio);

  Grid rect(17, 16, 2);
  CHECK_THROWS_AS(modulus_report(rect, 4, 0), std::invalid_argument);
}

TEST_CASE("tail curve over a synthetic ensemble") {
  std::vector<ModulusReport> ens(3);
  ens[0].sup_ratio = 1.0;
  ens[1].sup_ratio = 2.0;
  ens[2].sup_ratio = 3.0;
  const TailCurve c = modulus_tail_curve(ens, {0.05, 0.1});
  REQUIRE(c.a_grid.size() == 2);
  // thresholds 32 A = 1.6 and 3.2
  CHECK(c.probability[0] == doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(c.probability[1] == 0.0);
}

TEST_CASE("stats report conjunction") {
  StatsReport r;
  r.add("a", 0.1, 1.0, true);
  r.add("b", 2.0, 1.0, false);
  r.finish();
  CHECK_FALSE(r.pass);
  StatsReport ok;
  ok.add("a", 0.1, 1.0, true);
  ok.finish();
  CHECK(ok.pass);
}

TEST_CASE("chain invariance, small clean and corrupted runs") {
  const std::vector<StaircasePath> paths = {StaircasePath::boundary(16, 16),
                                            StaircasePath::diagonal(16, 16)};
  const StatsReport clean = chain_invariance_test(30, 4, 0, 1, paths, 77);
  CHECK(clean.pass);

  // identical seed, identical report
  const StatsReport rerun = chain_invariance_test(30, 4, 0, 1, paths, 77);
  REQUIRE(rerun.checks.size() == clean.checks.size());
  for (std::size_t i = 0; i < clean.checks.size(); ++i) {
    CHECK(rerun.checks[i].name == clean.checks[i].name);
    CHECK(rerun.checks[i].statistic == clean.checks[i].statistic);
  }

  // copying the n-predecessor plants an atom at zero in the increments
  const StatsReport bad =
      chain_invariance_test(30, 4, 0, 1, paths, 77, Corruption::kIdentityStep);
  CHECK_FALSE(bad.pass);

  CHECK_THROWS_AS(chain_invariance_test(0, 4, 0, 1, paths, 77), std::invalid_argument);
  CHECK_THROWS_AS(chain_invariance_test(30, 4, 0, 1, {}, 77), std::invalid_argument);
}

TEST_CASE("chain invariance at d = 2 uses the two-sample route") {
  const std::vector<StaircasePath> paths = {StaircasePath::diagonal(16, 16)};
  const StatsReport r = chain_invariance_test(30, 4, 0, 2, paths, 78);
  CHECK(r.pass);
}

TEST_CASE("translation invariance, small clean and corrupted runs") {
  const std::vector<std::pair<std::size_t, std::size_t>> probes = {{1, 1}, {2, 3}};
  const StatsReport clean = translation_invariance_test(100, 4, 0, 1, {4, 4}, probes, 91);
  CHECK(clean.pass);

  const StatsReport bad = translation_invariance_test(100, 4, 0, 1, {4, 4}, probes, 91,
                                                      Corruption::kNonstationaryBoundary);
  CHECK_FALSE(bad.pass);

  CHECK_THROWS_AS(translation_invariance_test(2, 4, 0, 1, {4, 4}, probes, 91),
                  std::invalid_argument);
  CHECK_THROWS_AS(translation_invariance_test(100, 4, 0, 1, {20, 20}, probes, 91),
                  std::invalid_argument);
  CHECK_THROWS_AS(translation_invariance_test(100, 4, 0, 1, {4, 4}, {}, 91),
                  std::invalid_argument);
}

TEST_CASE("convergence study argument checks") {
  const auto [p, m] = preset_boundary("circle-sin", 1);
  CHECK_THROWS_AS(convergence_study(p, m, 1, 6, 4, 0, 3), std::invalid_argument);
  const auto [p2, m2] = preset_boundary("great-circle-precession", 2);
  // d >= 2 needs a strictly finer reference mesh
  CHECK_THROWS_AS(convergence_study(p2, m2, 2, 4, 6, 0, 3, 5), std::invalid_argument);

  const auto rows = convergence_study(p, m, 1, 4, 5, 0, 3);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].mesh_exp == 4);
  CHECK(rows[0].sup_err <= 1e-9);  // circle targets are grid-exact
  CHECK(rows[1].sup_err <= 1e-9);
}

TEST_CASE("gibbs slice diagnostics") {
  const auto [cp, cm] = preset_boundary("constant", 1);
  const InterpolatedField flat = phi_n(cp, cm, 4, 0);
  const GibbsSliceReport zero = gibbs_slice_diagnostic(flat, 0.5, 0.0625);
  CHECK(zero.points > 0);
  CHECK(zero.var_t_proxy == 0.0);
  CHECK(zero.var_x_proxy == 0.0);
  CHECK(zero.cross_corr == 0.0);
  CHECK(zero.lag1_x == 0.0);

  CHECK_THROWS_AS(gibbs_slice_diagnostic(flat, 2.0, 0.0625), std::domain_error);
  CHECK_THROWS_AS(gibbs_slice_diagnostic(flat, 0.0, 0.0625), std::domain_error);
  CHECK_THROWS_AS(gibbs_slice_ensemble({}, 0.5, 0.0625), std::invalid_argument);

  // Brownian data: the rescaled null derivatives carry unit energy each, so
  // both quadratic proxies sit near 2 and the correlations near 0
  RngStream rng(93, 0);
  std::vector<InterpolatedField> fields;
  for (int r = 0; r < 12; ++r) fields.push_back(phi_n(sample_brownian_boundary(6, 0, 1, rng), 6));
  const GibbsSliceReport g = gibbs_slice_ensemble(fields, 0.5, std::ldexp(1.0, -6));
  CHECK(g.points >= 700);
  CHECK(g.var_t_proxy > 1.5);
  CHECK(g.var_t_proxy < 2.5);
  CHECK(g.var_x_proxy > 1.5);
  CHECK(g.var_x_proxy < 2.5);
  CHECK(std::abs(g.cross_corr) < 0.3);
  CHECK(std::abs(g.lag1_x) < 0.3);
}

}  // TEST_SUITE
