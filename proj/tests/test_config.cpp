#include <doctest.h>

#include "nrv2x/config.hpp"
#include "nrv2x/rng.hpp"

using namespace nrv2x;

TEST_SUITE("config") {

TEST_CASE("empty document yields the reference defaults") {
  const ScenarioConfig cfg = load_config("");
  CHECK(cfg.area_side_m == 1000.0);
  CHECK(cfg.lane_count == 4);
  CHECK(cfg.lane_width_m == 4.0);
  CHECK(cfg.num_vue_pairs == 10);
  CHECK(cfg.num_bues == 10);
  CHECK(cfg.vehicle_speed_kmph == 50.0);
  CHECK(cfg.carrier_freq_bwp1_ghz == 28.0);
  CHECK(cfg.carrier_freq_bwp2_ghz == 2.0);
  CHECK(cfg.numerology_bwp1 == 3);
  CHECK(cfg.numerology_bwp2 == 0);
  CHECK(cfg.rbs_per_rc == 4);
  CHECK(cfg.num_rcs == 8);
  CHECK(cfg.max_sched_per_tti == 8);
  CHECK(cfg.noise_power_dbm == -114.0);
  CHECK(cfg.p_cue_max_dbm == 23.0);
  CHECK(cfg.p_vue_max_dbm == 23.0);
  CHECK(cfg.r0_bps_hz == 0.5);
  CHECK(cfg.gamma0_db == 5.0);
  CHECK(cfg.p0 == 1e-3);
  CHECK(cfg.delta_c_ms == 50.0);
  CHECK(cfg.delta_v_ms == 10.0);
  CHECK(cfg.beta_c_bytes == 50);
  CHECK(cfg.beta_v_bytes == 10);
  CHECK(cfg.shadow_std_v2v_db == 4.0);
  CHECK(cfg.shadow_std_v2i_db == doctest::Approx(7.8));
  CHECK(cfg.num_slots == 5000);
  CHECK(cfg.num_runs == 10);
  CHECK(cfg.algorithm == Algorithm::kGsrags);
}

TEST_CASE("lambda_c is computed from the CUE count") {
  ScenarioConfig cfg;
  cfg.num_cues = 172;
  CHECK(cfg.lambda_c() == doctest::Approx(8.6));
}

TEST_CASE("out-of-range probability is rejected with the key name") {
  CHECK_THROWS_WITH_AS(load_config("p0 = 1.5"),
                       doctest::Contains("'p0' probability out of range"), ConfigError);
}

TEST_CASE("overrides apply over defaults") {
  const ScenarioConfig cfg = load_config("num_cues = 172\nalgorithm = GSRAGS\n");
  CHECK(cfg.num_cues == 172);
  CHECK(cfg.algorithm == Algorithm::kGsrags);
  CHECK(cfg.num_vue_pairs == 10);  // untouched defaults
}

TEST_CASE("unknown keys are rejected") {
  CHECK_THROWS_WITH_AS(load_config("nun_cues = 10"), doctest::Contains("unknown config key"),
                       ConfigError);
}

TEST_CASE("malformed lines and values are reported") {
  CHECK_THROWS_AS(load_config("num_cues"), ConfigError);
  CHECK_THROWS_AS(load_config("num_cues = ten"), ConfigError);
  CHECK_THROWS_AS(load_config("algorithm = greedy"), ConfigError);
}

TEST_CASE("numerology table") {
  const auto p3 = numerology_params(3);
  CHECK(p3.scs_khz == 120.0);
  CHECK(p3.rb_bandwidth_khz == 1440.0);
  CHECK(p3.tti_ms == 0.125);
  const auto p0 = numerology_params(0);
  CHECK(p0.scs_khz == 15.0);
  CHECK(p0.rb_bandwidth_khz == 180.0);
  CHECK(p0.tti_ms == 1.0);
  for (int mu = 0; mu <= 4; ++mu) {
    const auto p = numerology_params(mu);
    CHECK(p.scs_khz == 15.0 * (1 << mu));
    CHECK(p.rb_bandwidth_khz == 12.0 * p.scs_khz);
    CHECK(p.tti_ms == 1.0 / (1 << mu));
  }
  CHECK_THROWS_AS(numerology_params(5), ConfigError);
  CHECK_THROWS_AS(numerology_params(-1), ConfigError);
}

TEST_CASE("serialized config round-trips bit-exact") {
  ScenarioConfig cfg;
  cfg.p0 = 1e-3;
  cfg.shadow_std_v2i_db = 7.8;
  cfg.vehicle_speed_kmph = 50.0000001;
  cfg.base_seed = 987654321;
  cfg.algorithm = Algorithm::kGsrahs;
  const std::string text = save_config(cfg);
  const ScenarioConfig back = load_config(text);
  CHECK(save_config(back) == text);
  CHECK(back.vehicle_speed_kmph == cfg.vehicle_speed_kmph);
  CHECK(back.p0 == cfg.p0);
  CHECK(back.base_seed == cfg.base_seed);
  CHECK(back.algorithm == cfg.algorithm);
}

TEST_CASE("grid capacity invariant is validated") {
  CHECK_THROWS_AS(load_config("num_rcs = 100"), ConfigError);  // 100*4 RBs > 50 MHz
}

TEST_CASE("derived rng streams are deterministic and independent") {
  auto a1 = derived_rng(42, 0, "fading");
  auto a2 = derived_rng(42, 0, "fading");
  auto b = derived_rng(42, 1, "fading");
  auto c = derived_rng(42, 0, "shadowing");
  bool same_run = true, diff_run = false, diff_stream = false;
  for (int i = 0; i < 64; ++i) {
    const uint64_t x = a1.raw();
    same_run = same_run && (x == a2.raw());
    diff_run = diff_run || (x != b.raw());
    diff_stream = diff_stream || (x != c.raw());
  }
  CHECK(same_run);
  CHECK(diff_run);
  CHECK(diff_stream);
}

}  // TEST_SUITE
