#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>
#include <vector>

#include "nrv2x/channel.hpp"
#include "nrv2x/config.hpp"
#include "nrv2x/matching.hpp"
#include "nrv2x/metrics.hpp"
#include "nrv2x/resource_grid.hpp"
#include "nrv2x/scheduler.hpp"
#include "nrv2x/topology.hpp"
#include "nrv2x/traffic.hpp"

namespace nrv2x {

// One independent simulation run: drops users, then walks the BWP-1 slot
// loop -- advance mobility, evolve channels, generate and expire packets,
// run the selected scheduler, serve buffers, record metrics. BWP-2 (BUE)
// scheduling fires on its own coarser TTI grid.
class SimulationRun {
 public:
  SimulationRun(const ScenarioConfig& cfg, int run_index)
      : cfg_(cfg),
        grid_(build_grid(cfg)),
        rng_drop_(derived_rng(cfg.base_seed, static_cast<uint64_t>(run_index), "drop")),
        rng_shadow_(derived_rng(cfg.base_seed, static_cast<uint64_t>(run_index), "shadowing")),
        rng_v2v_(derived_rng(cfg.base_seed, static_cast<uint64_t>(run_index), "fading_v2v")),
        rng_cue_vue_(derived_rng(cfg.base_seed, static_cast<uint64_t>(run_index), "fading_cue_vue")),
        rng_gnb_(derived_rng(cfg.base_seed, static_cast<uint64_t>(run_index), "fading_gnb")),
        rng_bue_(derived_rng(cfg.base_seed, static_cast<uint64_t>(run_index), "fading_bue")),
        rng_traffic_(derived_rng(cfg.base_seed, static_cast<uint64_t>(run_index), "traffic")) {
    users_ = drop_users(cfg_, rng_drop_);
    shadowing_ = draw_shadowing(cfg_, rng_shadow_);
    dists_ = distances(users_, cfg_.min_link_distance_m);
    gains_ = large_scale(dists_, shadowing_, cfg_);
    const double eps = jakes_epsilon(cfg_.vehicle_speed_kmph, cfg_.carrier_freq_bwp1_ghz,
                                     cfg_.feedback_period_ms);
    const int rbs = grid_.bwp1.rb_count;
    v2v_fading_ = AgedFadingTable(cfg_.num_vue_pairs, rbs, eps, rng_v2v_);
    cue_vue_fading_ = AgedFadingTable(cfg_.num_cues * cfg_.num_vue_pairs, rbs, eps, rng_cue_vue_);
    ledger_.init_users(cfg_.num_cues, cfg_.num_vue_pairs);
  }

  MetricsLedger run() {
    for (int64_t t = 0; t < cfg_.num_slots; ++t) step(t);
    for (const auto& p : cue_buf_.packets()) {
      (void)p;
      ++ledger_.cue_residual;
    }
    for (const auto& p : vue_buf_.packets()) {
      (void)p;
      ++ledger_.vue_residual;
    }
    return ledger_;
  }

 private:
  void refresh_mobile_gains() {
    // only the VUE-side geometry moves; V2I gains stay as dropped
    dists_ = distances(users_, cfg_.min_link_distance_m);
    const double to_gnb_db = link_budget_to_gnb_db(cfg_);
    const double to_vehicle_db = link_budget_to_vehicle_db(cfg_);
    const double f1 = cfg_.carrier_freq_bwp1_ghz;
    for (int v = 0; v < cfg_.num_vue_pairs; ++v) {
      gains_.vue_v2v[static_cast<size_t>(v)] = db_to_linear(
          -path_loss_v2v(dists_.vue_v2v[static_cast<size_t>(v)], f1) + shadowing_.vue_v2v[static_cast<size_t>(v)] + to_vehicle_db);
      gains_.vue_gnb[static_cast<size_t>(v)] = db_to_linear(
          -path_loss_v2i(dists_.vue_gnb[static_cast<size_t>(v)], f1) + shadowing_.vue_gnb[static_cast<size_t>(v)] + to_gnb_db);
    }
    for (int c = 0; c < cfg_.num_cues; ++c)
      for (int v = 0; v < cfg_.num_vue_pairs; ++v)
        gains_.cue_vue.at(c, v) = db_to_linear(-path_loss_v2v(dists_.cue_vue.at(c, v), f1) +
                                               shadowing_.cue_vue.at(c, v) + to_vehicle_db);
  }

  void step(int64_t t) {
    const double tti_ms = grid_.bwp1.tti_ms;
    const double tti_s = tti_ms * 1e-3;
    if (t > 0) {
      users_ = advance(users_, tti_s);
      refresh_mobile_gains();
      v2v_fading_.advance_all(t, rng_v2v_);
    }

    for (const auto& p : generate_cue_arrivals(cfg_, t, rng_traffic_)) {
      cue_buf_.push(p);
      ++ledger_.cue_generated;
      ++ledger_.cue_user_generated[static_cast<size_t>(p.owner)];
    }
    for (const auto& p : generate_vue_arrivals(cfg_, t)) {
      vue_buf_.push(p);
      ++ledger_.vue_generated;
      ++ledger_.vue_user_generated[static_cast<size_t>(p.owner)];
    }

    for (const auto& p : cue_buf_.expire(t, tti_ms)) {
      ++ledger_.cue_dropped;
      ++ledger_.cue_user_dropped[static_cast<size_t>(p.owner)];
    }
    for (const auto& p : vue_buf_.expire(t, tti_ms)) {
      ++ledger_.vue_dropped;
      ++ledger_.vue_user_dropped[static_cast<size_t>(p.owner)];
    }

    ++ledger_.tti_count;
    const AllocationDecision decision = decide();

    ledger_.constraint_violations += count_constraint_violations(
        decision, cfg_.max_sched_per_tti, grid_.num_rcs, cfg_.p_cue_max_watts(),
        cfg_.p_vue_max_watts(), cfg_.r0_bps_hz);
    ledger_.cue_rb_sum += static_cast<int64_t>(decision.grants.size()) * grid_.eta;
    if (cue_buf_.distinct_user_count() >= cfg_.max_sched_per_tti) {
      ++ledger_.full_demand_slots;
      int assigned = 0;
      for (int owner : decision.rc_owner) assigned += owner >= 0 ? 1 : 0;
      if (assigned == grid_.num_rcs) ++ledger_.full_demand_all_rcs_slots;
    }

    for (const auto& g : decision.grants) {
      ledger_.cue_sum_rate_accum_bps += g.rate_bps;
      const double bits = g.rate_bps * tti_s;
      for (const auto& done : cue_buf_.serve(g.cue, bits, t, tti_ms)) {
        ++ledger_.cue_completed;
        ++ledger_.cue_user_completed[static_cast<size_t>(done.owner)];
        ledger_.cue_user_delay_sum_ms[static_cast<size_t>(done.owner)] += done.delay_ms;
        ledger_.cue_delays_ms.push_back(done.delay_ms);
      }
      if (g.paired_vue < 0) continue;

      // realized V2V transmission on the shared RC
      const int v = g.paired_vue;
      ledger_.vue_rb_sum += grid_.eta;
      const int link = g.cue * cfg_.num_vue_pairs + v;
      cue_vue_fading_.advance_link(link, t, rng_cue_vue_);
      double gamma_min = std::numeric_limits<double>::infinity();
      for (int rb = g.rc * grid_.eta; rb < (g.rc + 1) * grid_.eta; ++rb) {
        const double gamma = sinr_vue_realized(
            g.p_v_w, gains_.vue_v2v[static_cast<size_t>(v)], v2v_fading_.current_power(v, rb),
            g.p_c_w, gains_.cue_vue.at(g.cue, v), cue_vue_fading_.current_power(link, rb),
            cfg_.noise_watts());
        ++ledger_.vue_sinr_samples[static_cast<size_t>(v)];
        if (gamma < cfg_.gamma0_linear()) ++ledger_.vue_outage_events[static_cast<size_t>(v)];
        gamma_min = std::min(gamma_min, gamma);
      }
      const double vue_rate =
          rc_rate_bps(apply_sinr_backoff(gamma_min, cfg_.bler_backoff_db), grid_.eta,
                      cfg_.rb_bandwidth_bwp1_hz());
      for (const auto& done : vue_buf_.serve(v, vue_rate * tti_s, t, tti_ms)) {
        ++ledger_.vue_completed;
        ++ledger_.vue_user_completed[static_cast<size_t>(done.owner)];
        ledger_.vue_user_delay_sum_ms[static_cast<size_t>(done.owner)] += done.delay_ms;
        ledger_.vue_delays_ms.push_back(done.delay_ms);
      }
    }

    if (t % cfg_.slots_per_bwp2_tti() == 0 && cfg_.num_bues > 0 && grid_.bwp2.rb_count > 0) {
      Matrix bue_gain(cfg_.num_bues, grid_.bwp2.rb_count);
      for (int m = 0; m < cfg_.num_bues; ++m)
        for (int rb = 0; rb < grid_.bwp2.rb_count; ++rb)
          bue_gain.at(m, rb) = gains_.bue_gnb[static_cast<size_t>(m)] * iid_fading_power(rng_bue_);
      const BueAllocation bue = max_ci_bue(bue_gain, cfg_.p_cue_max_watts(), cfg_.noise_watts(),
                                           grid_.bwp2.rb_bandwidth_khz * 1e3, cfg_.bler_backoff_db);
      ++ledger_.bue_event_count;
      for (int owner : bue.rb_owner) ledger_.bue_rb_sum += owner >= 0 ? 1 : 0;
      ledger_.bue_sum_rate_samples_bps.push_back(bue.sum_rate_bps);
    }
  }

  AllocationDecision decide() {
    SchedulerInput in;
    in.num_rcs = grid_.num_rcs;
    in.eta = grid_.eta;
    in.rb_bw_hz = cfg_.rb_bandwidth_bwp1_hz();
    in.max_sched = cfg_.max_sched_per_tti;
    in.noise_w = cfg_.noise_watts();
    in.backoff_db = cfg_.bler_backoff_db;
    in.r0_se = cfg_.r0_bps_hz;
    in.gamma0_lin = cfg_.gamma0_linear();
    in.p0 = cfg_.p0;
    in.p_c_max_w = cfg_.p_cue_max_watts();
    in.p_v_max_w = cfg_.p_vue_max_watts();
    in.cue_ids = cue_buf_.head_users(cfg_.max_sched_per_tti);
    for (int v = 0; v < cfg_.num_vue_pairs; ++v)
      if (vue_buf_.has_traffic(v)) in.vue_ids.push_back(v);

    const int nc = static_cast<int>(in.cue_ids.size());
    const int nv = static_cast<int>(in.vue_ids.size());
    const int rbs = grid_.bwp1.rb_count;
    // gNB-observable links: block fading, redrawn i.i.d. each TTI
    in.cue_gnb_gain = Matrix(nc, rbs);
    for (int c = 0; c < nc; ++c) {
      const double alpha = gains_.cue_gnb[static_cast<size_t>(in.cue_ids[static_cast<size_t>(c)])];
      for (int rb = 0; rb < rbs; ++rb) in.cue_gnb_gain.at(c, rb) = alpha * iid_fading_power(rng_gnb_);
    }
    in.vue_gnb_gain = Matrix(nv, rbs);
    for (int vj = 0; vj < nv; ++vj) {
      const double alpha = gains_.vue_gnb[static_cast<size_t>(in.vue_ids[static_cast<size_t>(vj)])];
      for (int rb = 0; rb < rbs; ++rb) in.vue_gnb_gain.at(vj, rb) = alpha * iid_fading_power(rng_gnb_);
    }
    in.alpha_v2v.resize(static_cast<size_t>(nv));
    in.alpha_cue_vue = Matrix(nc, nv);
    for (int vj = 0; vj < nv; ++vj) {
      in.alpha_v2v[static_cast<size_t>(vj)] = gains_.vue_v2v[static_cast<size_t>(in.vue_ids[static_cast<size_t>(vj)])];
      for (int c = 0; c < nc; ++c)
        in.alpha_cue_vue.at(c, vj) =
            gains_.cue_vue.at(in.cue_ids[static_cast<size_t>(c)], in.vue_ids[static_cast<size_t>(vj)]);
    }
    switch (cfg_.algorithm) {
      case Algorithm::kHrahs: return hrahs_tti(in);
      case Algorithm::kGsrahs: return gsrahs_tti(in);
      case Algorithm::kGsrags: break;
    }
    return gsrags_tti(in);
  }

  ScenarioConfig cfg_;
  ResourceGrid grid_;
  RngStream rng_drop_, rng_shadow_, rng_v2v_, rng_cue_vue_, rng_gnb_, rng_bue_, rng_traffic_;
  UserSet users_;
  ShadowingTable shadowing_;
  DistanceTable dists_;
  LargeScaleGains gains_;
  AgedFadingTable v2v_fading_;
  AgedFadingTable cue_vue_fading_;
  TtlBuffer cue_buf_;
  TtlBuffer vue_buf_;
  MetricsLedger ledger_;
};

inline MetricsLedger run_once(const ScenarioConfig& cfg, int run_index) {
  return SimulationRun(cfg, run_index).run();
}

// Runs num_runs independent drops (optionally across threads; each run owns
// derived RNG streams, so the merge order and results are seed-determined).
inline CampaignReport run_campaign(const ScenarioConfig& cfg, int jobs = 1) {
  std::vector<MetricsLedger> ledgers(static_cast<size_t>(cfg.num_runs));
  if (jobs <= 1) {
    for (int r = 0; r < cfg.num_runs; ++r) ledgers[static_cast<size_t>(r)] = run_once(cfg, r);
  } else {
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (;;) {
        const int r = next.fetch_add(1);
        if (r >= cfg.num_runs) return;
        ledgers[static_cast<size_t>(r)] = run_once(cfg, r);
      }
    };
    std::vector<std::thread> pool;
    const int n = std::min(jobs, cfg.num_runs);
    pool.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return summarize(ledgers, cfg);
}

// ---------------------------------------------------------------------------
// Matching complexity benchmark
// ---------------------------------------------------------------------------

struct BenchPoint {
  int n = 0;
  double gale_shapley_ms = 0.0;
  double hungarian_ms = 0.0;
};

struct BenchResult {
  std::vector<BenchPoint> points;
  double gale_shapley_exponent = 0.0;
  double hungarian_exponent = 0.0;
};

namespace detail {
inline double fit_loglog_slope(const std::vector<double>& n, const std::vector<double>& t) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(n.size());
  for (size_t i = 0; i < n.size(); ++i) {
    const double x = std::log(n[i]);
    const double y = std::log(t[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}
}  // namespace detail

// Times the two assignment solvers on prebuilt random instances and fits
// log-log growth exponents. The instances carry a structured cost surface
// (index-product scale with multiplicative noise); on plain iid-uniform
// weights both solvers enjoy easy augmenting paths / early acceptances and
// the asymptotic regimes never show at these sizes.
inline BenchResult bench_matching(const std::vector<int>& sizes, uint64_t seed,
                                  double min_sample_ms = 40.0) {
  BenchResult res;
  RngStream rng(seed);
  std::vector<double> ns, gs_t, hu_t;
  for (int n : sizes) {
    Matrix w(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        w.at(i, j) = -static_cast<double>(i + 1) * (j + 1) * (1.0 + 0.05 * rng.uniform());
    const PreferenceInstance inst = prefs_from_weights(w);
    auto time_op = [&](auto&& op) {
      using clock = std::chrono::steady_clock;
      int reps = 0;
      double total = 0.0;
      while (total < min_sample_ms || reps < 3) {
        const auto t0 = clock::now();
        op();
        total += std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        ++reps;
      }
      return total / reps;
    };
    BenchPoint p;
    p.n = n;
    p.gale_shapley_ms = time_op([&]() { (void)gale_shapley(inst); });
    p.hungarian_ms = time_op([&]() { (void)hungarian(w); });
    res.points.push_back(p);
    ns.push_back(static_cast<double>(n));
    gs_t.push_back(p.gale_shapley_ms);
    hu_t.push_back(p.hungarian_ms);
  }
  if (ns.size() >= 2) {
    res.gale_shapley_exponent = detail::fit_loglog_slope(ns, gs_t);
    res.hungarian_exponent = detail::fit_loglog_slope(ns, hu_t);
  }
  return res;
}

}  // namespace nrv2x
