#include <doctest.h>

#include <set>

#include "nrv2x/traffic.hpp"

using namespace nrv2x;

TEST_SUITE("traffic") {

TEST_CASE("CUE arrival process is Poisson with mean C/20 per slot") {
  ScenarioConfig cfg;
  cfg.num_cues = 172;
  auto rng = derived_rng(20, 0, "traffic");
  const int slots = 100000;
  double sum = 0.0, sq = 0.0;
  for (int64_t t = 0; t < slots; ++t) {
    const auto arrivals = generate_cue_arrivals(cfg, t, rng);
    // owners are distinct within a slot
    std::set<int> owners;
    for (const auto& p : arrivals) CHECK(owners.insert(p.owner).second);
    const double k = static_cast<double>(arrivals.size());
    sum += k;
    sq += k * k;
  }
  const double mean = sum / slots;
  const double var = sq / slots - mean * mean;
  CHECK(mean == doctest::Approx(8.6).epsilon(0.01));
  CHECK(var == doctest::Approx(mean).epsilon(0.03));  // Poisson: mean == variance
}

TEST_CASE("no CUEs, no arrivals") {
  ScenarioConfig cfg;
  cfg.num_cues = 0;
  auto rng = derived_rng(21, 0, "traffic");
  for (int64_t t = 0; t < 200; ++t) CHECK(generate_cue_arrivals(cfg, t, rng).empty());
}

TEST_CASE("CUE packets carry the configured size and deadline") {
  ScenarioConfig cfg;
  cfg.num_cues = 50;
  auto rng = derived_rng(22, 0, "traffic");
  for (int64_t t = 0; t < 50; ++t)
    for (const auto& p : generate_cue_arrivals(cfg, t, rng)) {
      CHECK(p.size_bytes == 50);
      CHECK(p.ttl_ms == 50.0);
      CHECK(p.remaining_bits == 400.0);
      CHECK(p.arrival_slot == t);
    }
}

TEST_CASE("VUE arrivals: one packet per pair per period, spread over the window") {
  ScenarioConfig cfg;
  cfg.num_vue_pairs = 10;
  int total = 0;
  for (int64_t t = 0; t < 100; ++t) {
    const auto arrivals = generate_vue_arrivals(cfg, t);
    for (const auto& p : arrivals) {
      CHECK(p.ttl_ms == 10.0);
      CHECK(p.size_bytes == 10);
      total += 1;
    }
  }
  CHECK(total == 10);
  // a slot where no pair fires
  CHECK(generate_vue_arrivals(cfg, 5).empty());
}

TEST_CASE("serve drains exactly one packet with a full budget") {
  TtlBuffer buf;
  buf.push({7, 50, 100, 50.0, 400.0});
  const auto done = buf.serve(7, 400.0, 104, 0.125);
  REQUIRE(done.size() == 1);
  CHECK(done[0].owner == 7);
  CHECK(done[0].delay_ms == doctest::Approx(4 * 0.125));
  CHECK(buf.empty());
}

TEST_CASE("zero budget leaves the buffer unchanged") {
  TtlBuffer buf;
  buf.push({1, 50, 0, 50.0, 400.0});
  CHECK(buf.serve(1, 0.0, 5, 0.125).empty());
  CHECK(buf.size() == 1);
}

TEST_CASE("partial service completes the first packet and half-drains the second") {
  TtlBuffer buf;
  buf.push({3, 50, 0, 50.0, 400.0});
  buf.push({3, 50, 1, 50.0, 400.0});
  const auto done = buf.serve(3, 600.0, 2, 0.125);
  REQUIRE(done.size() == 1);
  CHECK(buf.size() == 1);
  CHECK(buf.packets().front().remaining_bits == doctest::Approx(200.0));
}

TEST_CASE("serve touches only the requested user") {
  TtlBuffer buf;
  buf.push({1, 50, 0, 50.0, 400.0});
  buf.push({2, 50, 0, 50.0, 400.0});
  const auto done = buf.serve(2, 1e9, 1, 0.125);
  REQUIRE(done.size() == 1);
  CHECK(done[0].owner == 2);
  CHECK(buf.packets().front().owner == 1);
}

TEST_CASE("expiry uses a strict deadline comparison") {
  TtlBuffer buf;
  buf.push({1, 50, 0, 50.0, 400.0});
  // aged exactly 50 ms: retained (one more service chance)
  CHECK(buf.expire(50, 1.0).empty());
  CHECK(buf.size() == 1);
  // aged 51 ms: dropped
  const auto dropped = buf.expire(51, 1.0);
  REQUIRE(dropped.size() == 1);
  CHECK(dropped[0].owner == 1);
  CHECK(buf.empty());
  CHECK(buf.expire(60, 1.0).empty());  // empty buffer no-op
}

TEST_CASE("buffer keeps TTL order and head_users reports distinct owners oldest-first") {
  TtlBuffer buf;
  buf.push({5, 50, 0, 50.0, 400.0});
  buf.push({9, 50, 1, 50.0, 400.0});
  buf.push({5, 50, 2, 50.0, 400.0});
  buf.push({4, 50, 3, 50.0, 400.0});
  int64_t last = -1;
  for (const auto& p : buf.packets()) {
    CHECK(p.arrival_slot >= last);
    last = p.arrival_slot;
  }
  CHECK(buf.head_users(2) == std::vector<int>{5, 9});
  CHECK(buf.head_users(10) == std::vector<int>{5, 9, 4});
  CHECK(buf.distinct_user_count() == 3);
  CHECK(buf.has_traffic(4));
  CHECK(!buf.has_traffic(6));
}

TEST_CASE("conservation under a random serve/expire sequence") {
  ScenarioConfig cfg;
  cfg.num_cues = 12;
  auto rng = derived_rng(23, 0, "traffic");
  auto rng2 = derived_rng(23, 1, "serve");
  TtlBuffer buf;
  int64_t generated = 0, completed = 0, dropped = 0;
  for (int64_t t = 0; t < 2000; ++t) {
    for (const auto& p : generate_cue_arrivals(cfg, t, rng)) {
      buf.push(p);
      ++generated;
    }
    dropped += static_cast<int64_t>(buf.expire(t, 0.125).size());
    const int user = rng2.uniform_int(cfg.num_cues);
    completed += static_cast<int64_t>(buf.serve(user, rng2.uniform(0.0, 900.0), t, 0.125).size());
  }
  CHECK(generated == completed + dropped + static_cast<int64_t>(buf.size()));
}

}  // TEST_SUITE
