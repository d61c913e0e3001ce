#include <doctest.h>

#include <set>

#include "nrv2x/resource_grid.hpp"

using namespace nrv2x;

TEST_SUITE("resource_grid") {

TEST_CASE("default grid: 32 BWP-1 RBs in 8 chunks, 21 BWP-2 RBs") {
  const ResourceGrid g = build_grid(ScenarioConfig{});
  CHECK(g.bwp1.rb_count == 32);
  CHECK(g.num_rcs == 8);
  CHECK(g.eta == 4);
  CHECK(g.bwp1.rb_bandwidth_khz == 1440.0);
  CHECK(g.bwp1.tti_ms == 0.125);
  CHECK(g.bwp2.rb_bandwidth_khz == 180.0);
  CHECK(g.bwp2.tti_ms == 1.0);
  // 50 MHz minus 46.08 MHz leaves 3.92 MHz -> 21 RBs of 180 kHz
  CHECK(g.bwp2.rb_count == 21);
}

TEST_CASE("rc index ranges") {
  const ResourceGrid g = build_grid(ScenarioConfig{});
  CHECK(g.rbs_of(0) == std::vector<int>{0, 1, 2, 3});
  CHECK(g.rbs_of(7) == std::vector<int>{28, 29, 30, 31});
  CHECK_THROWS_AS(g.rbs_of(8), std::out_of_range);
  CHECK_THROWS_AS(g.rbs_of(-1), std::out_of_range);
}

TEST_CASE("eta = 1 degenerates to single RBs") {
  ScenarioConfig cfg;
  cfg.rbs_per_rc = 1;
  const ResourceGrid g = build_grid(cfg);
  for (int i = 0; i < g.num_rcs; ++i) CHECK(g.rbs_of(i) == std::vector<int>{i});
}

TEST_CASE("eta = 5 layout starts RC 0 at RBs 0..4") {
  ScenarioConfig cfg;
  cfg.rbs_per_rc = 5;
  cfg.num_rcs = 6;
  const ResourceGrid g = build_grid(cfg);
  CHECK(g.rbs_of(0) == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(g.rbs_of(1).front() == 5);
}

TEST_CASE("chunks are disjoint and cover num_rcs * eta RBs") {
  ScenarioConfig cfg;
  cfg.rbs_per_rc = 3;
  cfg.num_rcs = 7;
  const ResourceGrid g = build_grid(cfg);
  std::set<int> all;
  for (int i = 0; i < g.num_rcs; ++i)
    for (int rb : g.rbs_of(i)) CHECK(all.insert(rb).second);  // no overlap
  CHECK(static_cast<int>(all.size()) == g.num_rcs * g.eta);
}

TEST_CASE("grids exceeding the bandwidth are rejected") {
  ScenarioConfig cfg;
  cfg.num_rcs = 9;  // 9*4*1.44 MHz = 51.84 MHz > 50 MHz
  CHECK_THROWS_AS(build_grid(cfg), ConfigError);
}

}  // TEST_SUITE
