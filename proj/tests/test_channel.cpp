#include <doctest.h>

#include <cmath>
#include <complex>

#include "nrv2x/channel.hpp"
#include "oracles.hpp"

using namespace nrv2x;

TEST_SUITE("channel") {

TEST_CASE("V2I path loss") {
  CHECK(path_loss_v2i(100.0, 28.0) == doctest::Approx(121.343).epsilon(1e-4));
  CHECK(path_loss_v2i(1.0, 1.0) == doctest::Approx(32.4));
  CHECK(path_loss_v2i(1000.0, 28.0) == doctest::Approx(151.343).epsilon(1e-4));
}

TEST_CASE("V2V path loss") {
  CHECK(path_loss_v2v(50.0, 28.0) == doctest::Approx(115.170).epsilon(1e-4));
  CHECK(path_loss_v2v(1.0, 1.0) == doctest::Approx(36.85));
  CHECK(path_loss_v2v(10.0, 28.0) == doctest::Approx(94.201).epsilon(1e-4));
}

TEST_CASE("bessel_j0 against reference values") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j0(1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-12));
  CHECK(std::fabs(bessel_j0(2.404825557695773)) < 1e-12);  // first zero
  CHECK(bessel_j0(5.0) == doctest::Approx(-0.17759677131433830).epsilon(1e-10));
  CHECK_THROWS_AS(bessel_j0(12.5), std::domain_error);
}

TEST_CASE("jakes_epsilon") {
  CHECK(jakes_epsilon(0.0, 28.0, 0.125) == 1.0);
  // 50 km/h, 28 GHz, 0.125 ms: f_d ~ 1296.3 Hz, x ~ 1.018
  const double eps = jakes_epsilon(50.0, 28.0, 0.125);
  CHECK(eps == doctest::Approx(0.757).epsilon(0.0015));
  const double x1 = 2.0 * M_PI * ((50.0 / 3.6) * 28e9 / 3e8) * 0.125e-3;
  CHECK(eps == doctest::Approx(oracle::j0_series(x1)).epsilon(1e-9));
  // 50 km/h, 2 GHz, 1 ms: x = 2*pi*92.59*0.001; series value ~0.91716
  const double x2 = 2.0 * M_PI * ((50.0 / 3.6) * 2e9 / 3e8) * 1e-3;
  CHECK(jakes_epsilon(50.0, 2.0, 1.0) == doctest::Approx(oracle::j0_series(x2)).epsilon(1e-9));
  CHECK(jakes_epsilon(50.0, 2.0, 1.0) == doctest::Approx(0.917157).epsilon(1e-4));
  // negative J0 region clamps to zero
  CHECK(jakes_epsilon(150.0, 28.0, 0.2) == 0.0);
}

TEST_CASE("large-scale gain reduces to the path loss when shadowing and budget terms vanish") {
  ScenarioConfig cfg;
  cfg.num_cues = 1;
  cfg.num_vue_pairs = 0;
  cfg.num_bues = 0;
  cfg.shadow_std_v2i_db = 0.0;
  cfg.shadow_std_v2v_db = 0.0;
  cfg.gnb_antenna_gain_dbi = 0.0;
  cfg.vehicle_antenna_gain_dbi = 0.0;
  cfg.gnb_noise_figure_db = 0.0;
  cfg.vehicle_noise_figure_db = 0.0;
  UserSet u;
  u.gnb = {500.0, 500.0};
  u.area_side_m = 1000.0;
  u.cues = {{500.0, 600.0}};  // 100 m
  const DistanceTable d = distances(u, 1.0);
  auto rng = derived_rng(1, 0, "shadowing");
  const ShadowingTable s = draw_shadowing(cfg, rng);
  const LargeScaleGains g = large_scale(d, s, cfg);
  CHECK(g.cue_gnb[0] == doctest::Approx(std::pow(10.0, -12.134)).epsilon(1e-3));
}

TEST_CASE("noise figures enter the budget only when enabled") {
  ScenarioConfig cfg;
  cfg.num_cues = 1;
  cfg.num_vue_pairs = 0;
  cfg.num_bues = 0;
  cfg.shadow_std_v2i_db = 0.0;
  UserSet u;
  u.gnb = {500.0, 500.0};
  u.area_side_m = 1000.0;
  u.cues = {{500.0, 600.0}};
  const DistanceTable d = distances(u, 1.0);
  auto rng = derived_rng(1, 0, "shadowing");
  const ShadowingTable s = draw_shadowing(cfg, rng);
  const double base = large_scale(d, s, cfg).cue_gnb[0];
  cfg.apply_noise_figures = true;
  const double with_nf = large_scale(d, s, cfg).cue_gnb[0];
  CHECK(linear_to_db(base / with_nf) == doctest::Approx(cfg.gnb_noise_figure_db).epsilon(1e-9));
}

TEST_CASE("same drop queried twice gives identical gains") {
  ScenarioConfig cfg;
  cfg.num_cues = 4;
  cfg.num_vue_pairs = 3;
  cfg.num_bues = 2;
  auto drop_rng = derived_rng(8, 0, "drop");
  const UserSet u = drop_users(cfg, drop_rng);
  const DistanceTable d = distances(u, 1.0);
  auto rng = derived_rng(8, 0, "shadowing");
  const ShadowingTable s = draw_shadowing(cfg, rng);
  const LargeScaleGains g1 = large_scale(d, s, cfg);
  const LargeScaleGains g2 = large_scale(d, s, cfg);
  for (size_t i = 0; i < g1.cue_gnb.size(); ++i) CHECK(g1.cue_gnb[i] == g2.cue_gnb[i]);
  for (int c = 0; c < g1.cue_vue.rows(); ++c)
    for (int v = 0; v < g1.cue_vue.cols(); ++v) CHECK(g1.cue_vue.at(c, v) == g2.cue_vue.at(c, v));
}

TEST_CASE("shadowing sample deviation matches the configured 7.8 dB within 2%") {
  ScenarioConfig cfg;
  cfg.num_cues = 100000;
  cfg.num_vue_pairs = 0;
  cfg.num_bues = 0;
  auto rng = derived_rng(9, 0, "shadowing");
  const ShadowingTable s = draw_shadowing(cfg, rng);
  double sum = 0.0, sq = 0.0;
  for (double x : s.cue_gnb) {
    sum += x;
    sq += x * x;
  }
  const double n = static_cast<double>(s.cue_gnb.size());
  const double stddev = std::sqrt(sq / n - (sum / n) * (sum / n));
  CHECK(stddev == doctest::Approx(7.8).epsilon(0.02));
}

TEST_CASE("eps = 1 freezes the fading process") {
  auto rng = derived_rng(10, 0, "fading");
  AgedFadingTable f(1, 4, 1.0, rng);
  const auto h0 = f.current(0, 2);
  for (int64_t t = 1; t <= 20; ++t) f.advance_link(0, t, rng);
  CHECK(f.current(0, 2) == h0);
  CHECK(f.previous(0, 2) == h0);
}

TEST_CASE("eps = 0 decorrelates consecutive coefficients") {
  auto rng = derived_rng(11, 0, "fading");
  AgedFadingTable f(1, 1, 0.0, rng);
  std::complex<double> acc = 0.0;
  const int steps = 10000;
  for (int64_t t = 1; t <= steps; ++t) {
    const auto before = f.current(0, 0);
    f.advance_link(0, t, rng);
    acc += f.current(0, 0) * std::conj(before);
  }
  CHECK(std::abs(acc) / steps < 0.02);
}

TEST_CASE("stationarity, exponential power law and lag-1 autocorrelation at eps = 0.757") {
  const double eps = jakes_epsilon(50.0, 28.0, 0.125);
  auto rng = derived_rng(12, 0, "fading");
  AgedFadingTable f(1, 1, eps, rng);
  const int steps = 100000;
  double power = 0.0;
  std::complex<double> lag = 0.0;
  std::vector<double> power_samples;
  power_samples.reserve(10000);
  for (int64_t t = 1; t <= steps; ++t) {
    const auto before = f.current(0, 0);
    f.advance_link(0, t, rng);
    const auto now = f.current(0, 0);
    power += std::norm(now);
    lag += now * std::conj(before);
    if (t <= 10000) power_samples.push_back(std::norm(now));
  }
  CHECK(power / steps == doctest::Approx(1.0).epsilon(0.02));
  // sample autocorrelation (lag sum over sample power): |corr - eps| <= 0.01
  CHECK(std::fabs(std::abs(lag) / power - eps) <= 0.01);
  CHECK(oracle::ks_statistic_exp1(power_samples) < 1.628 / std::sqrt(10000.0));  // 1% level
}

TEST_CASE("fading is independent across RBs") {
  auto rng = derived_rng(13, 0, "fading");
  AgedFadingTable f(1, 2, 0.757, rng);
  std::complex<double> cross = 0.0;
  const int steps = 20000;
  for (int64_t t = 1; t <= steps; ++t) {
    f.advance_link(0, t, rng);
    cross += f.current(0, 0) * std::conj(f.current(0, 1));
  }
  CHECK(std::abs(cross) / steps < 0.02);
}

TEST_CASE("lazy multi-slot advance matches the k-step correlation") {
  const double eps = 0.8;
  const int gap = 3;
  auto rng = derived_rng(14, 0, "fading");
  AgedFadingTable f(1, 1, eps, rng);
  std::complex<double> acc = 0.0;
  double power = 0.0;
  const int jumps = 20000;
  for (int j = 1; j <= jumps; ++j) {
    const auto before = f.current(0, 0);
    f.advance_link(0, static_cast<int64_t>(j) * gap, rng);
    acc += f.current(0, 0) * std::conj(before);
    power += std::norm(f.current(0, 0));
  }
  CHECK(std::abs(acc) / jumps == doctest::Approx(std::pow(eps, gap)).epsilon(0.04));
  CHECK(power / jumps == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("expected gNB-side power gain follows eps^2|h_hat|^2 + (1 - eps^2)") {
  auto rng = derived_rng(15, 0, "fading");
  AgedFadingTable f(2, 3, 0.6, rng);
  f.advance_link(1, 5, rng);
  const double hhat = std::norm(f.previous(1, 2));
  CHECK(f.expected_power(1, 2) == doctest::Approx(0.36 * hhat + 0.64).epsilon(1e-12));
}

}  // TEST_SUITE
