#include <doctest.h>

#include "nrv2x/engine.hpp"

using namespace nrv2x;

namespace {

ScenarioConfig small_config() {
  ScenarioConfig cfg;
  cfg.num_cues = 24;
  cfg.num_vue_pairs = 4;
  cfg.num_bues = 3;
  cfg.num_slots = 400;
  cfg.num_runs = 2;
  cfg.base_seed = 77;
  return cfg;
}

bool ledgers_equal(const MetricsLedger& a, const MetricsLedger& b) {
  return a.cue_generated == b.cue_generated && a.cue_completed == b.cue_completed &&
         a.cue_dropped == b.cue_dropped && a.vue_generated == b.vue_generated &&
         a.vue_completed == b.vue_completed && a.vue_dropped == b.vue_dropped &&
         a.cue_delays_ms == b.cue_delays_ms && a.vue_delays_ms == b.vue_delays_ms &&
         a.vue_outage_events == b.vue_outage_events && a.vue_sinr_samples == b.vue_sinr_samples &&
         a.cue_rb_sum == b.cue_rb_sum && a.vue_rb_sum == b.vue_rb_sum &&
         a.bue_rb_sum == b.bue_rb_sum && a.cue_sum_rate_accum_bps == b.cue_sum_rate_accum_bps &&
         a.bue_sum_rate_samples_bps == b.bue_sum_rate_samples_bps;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("zero slots gives an empty ledger") {
  ScenarioConfig cfg = small_config();
  cfg.num_slots = 0;
  const auto l = run_once(cfg, 0);
  CHECK(l.tti_count == 0);
  CHECK(l.cue_generated == 0);
  CHECK(l.bue_event_count == 0);
  CHECK(l.conservation_holds());
}

TEST_CASE("identical seeds give bit-identical ledgers") {
  const ScenarioConfig cfg = small_config();
  const auto a = run_once(cfg, 0);
  const auto b = run_once(cfg, 0);
  CHECK(ledgers_equal(a, b));
  const auto c = run_once(cfg, 1);
  CHECK(!ledgers_equal(a, c));  // distinct run index decorrelates
}

TEST_CASE("BWP-2 scheduling fires every eighth BWP-1 slot") {
  ScenarioConfig cfg = small_config();
  cfg.num_slots = 80;
  const auto l = run_once(cfg, 0);
  CHECK(l.bue_event_count == 10);
  cfg.num_slots = 81;
  CHECK(run_once(cfg, 0).bue_event_count == 11);
}

TEST_CASE("traffic conservation holds at the end of every run") {
  const ScenarioConfig cfg = small_config();
  for (int r = 0; r < 3; ++r) CHECK(run_once(cfg, r).conservation_holds());
}

TEST_CASE("no constraint violations in a loaded simulation") {
  ScenarioConfig cfg = small_config();
  cfg.num_cues = 100;
  cfg.num_slots = 300;
  const auto l = run_once(cfg, 0);
  CHECK(l.constraint_violations == 0);
  CHECK(l.full_demand_slots > 0);
  CHECK(l.full_demand_all_rcs_slots == l.full_demand_slots);
}

TEST_CASE("campaign results are independent of worker count") {
  const ScenarioConfig cfg = small_config();
  const auto seq = run_campaign(cfg, 1);
  const auto par = run_campaign(cfg, 2);
  CHECK(seq.run_cue_plr == par.run_cue_plr);
  CHECK(seq.mean_cue_delay_ms == par.mean_cue_delay_ms);
  CHECK(seq.mean_cue_sum_rate_bps == par.mean_cue_sum_rate_bps);
  CHECK(seq.vue_outage == par.vue_outage);
}

TEST_CASE("single-run campaign equals run_once") {
  ScenarioConfig cfg = small_config();
  cfg.num_runs = 1;
  const auto report = run_campaign(cfg, 1);
  const auto l = run_once(cfg, 0);
  CHECK(report.cue_generated == l.cue_generated);
  CHECK(report.mean_cue_plr == doctest::Approx(plr_cue(l)));
}

TEST_CASE("all three algorithms run clean on the same scenario") {
  ScenarioConfig cfg = small_config();
  cfg.num_runs = 1;
  cfg.num_slots = 200;
  for (auto alg : {Algorithm::kGsrags, Algorithm::kHrahs, Algorithm::kGsrahs}) {
    cfg.algorithm = alg;
    const auto l = run_once(cfg, 0);
    CHECK(l.constraint_violations == 0);
    CHECK(l.conservation_holds());
  }
}

TEST_CASE("bench produces positive timings for increasing sizes") {
  const auto res = bench_matching({8, 16}, 5, 2.0);
  REQUIRE(res.points.size() == 2);
  CHECK(res.points[0].gale_shapley_ms > 0.0);
  CHECK(res.points[0].hungarian_ms > 0.0);
  CHECK(res.points[1].hungarian_ms > res.points[0].hungarian_ms * 0.5);
}

}  // TEST_SUITE
