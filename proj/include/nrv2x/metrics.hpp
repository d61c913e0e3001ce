#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "nrv2x/config.hpp"

namespace nrv2x {

// Per-run accumulators for every reported quantity. One ledger per run;
// merging across runs happens in summarize().
struct MetricsLedger {
  // class-level packet counters
  int64_t cue_generated = 0, cue_completed = 0, cue_dropped = 0;
  int64_t vue_generated = 0, vue_completed = 0, vue_dropped = 0;
  int64_t cue_residual = 0, vue_residual = 0;  // in buffer at run end

  // per-user packet counters and delay sums (completed packets only)
  std::vector<int64_t> cue_user_generated, cue_user_completed, cue_user_dropped;
  std::vector<double> cue_user_delay_sum_ms;
  std::vector<int64_t> vue_user_generated, vue_user_completed, vue_user_dropped;
  std::vector<double> vue_user_delay_sum_ms;

  // completed-packet delay samples
  std::vector<double> cue_delays_ms;
  std::vector<double> vue_delays_ms;

  // realized per-RB SINR samples of transmitting VUEs vs gamma0
  std::vector<int64_t> vue_sinr_samples, vue_outage_events;

  // RB occupancy and rate tallies
  int64_t tti_count = 0;
  int64_t cue_rb_sum = 0, vue_rb_sum = 0, bue_rb_sum = 0;
  int64_t bue_event_count = 0;
  std::vector<double> bue_sum_rate_samples_bps;
  double cue_sum_rate_accum_bps = 0.0;  // sum over TTIs of the scheduled sum rate

  // audit
  int64_t constraint_violations = 0;
  int64_t full_demand_slots = 0;        // slots with >= C_t distinct CUEs queued
  int64_t full_demand_all_rcs_slots = 0;  // of those, slots with every RC assigned

  void init_users(int num_cues, int num_vues) {
    cue_user_generated.assign(static_cast<size_t>(num_cues), 0);
    cue_user_completed.assign(static_cast<size_t>(num_cues), 0);
    cue_user_dropped.assign(static_cast<size_t>(num_cues), 0);
    cue_user_delay_sum_ms.assign(static_cast<size_t>(num_cues), 0.0);
    vue_user_generated.assign(static_cast<size_t>(num_vues), 0);
    vue_user_completed.assign(static_cast<size_t>(num_vues), 0);
    vue_user_dropped.assign(static_cast<size_t>(num_vues), 0);
    vue_user_delay_sum_ms.assign(static_cast<size_t>(num_vues), 0.0);
    vue_sinr_samples.assign(static_cast<size_t>(num_vues), 0);
    vue_outage_events.assign(static_cast<size_t>(num_vues), 0);
  }

  bool conservation_holds() const {
    return cue_generated == cue_completed + cue_dropped + cue_residual &&
           vue_generated == vue_completed + vue_dropped + vue_residual;
  }
};

inline double ratio_or_zero(int64_t num, int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

inline double plr_cue(const MetricsLedger& l) { return ratio_or_zero(l.cue_dropped, l.cue_generated); }
inline double plr_vue(const MetricsLedger& l) { return ratio_or_zero(l.vue_dropped, l.vue_generated); }

// Empirical CDF of a sample set as (value, P(X <= value)) points, most
// max_points quantiles when the set is large.
inline std::vector<std::pair<double, double>> cdf_points(std::vector<double> samples,
                                                         int max_points = 512) {
  std::vector<std::pair<double, double>> out;
  if (samples.empty()) return out;
  std::sort(samples.begin(), samples.end());
  const size_t n = samples.size();
  if (static_cast<int>(n) <= max_points) {
    out.reserve(n);
    for (size_t i = 0; i < n; ++i)
      out.emplace_back(samples[i], static_cast<double>(i + 1) / static_cast<double>(n));
    return out;
  }
  out.reserve(static_cast<size_t>(max_points));
  for (int k = 0; k < max_points; ++k) {
    const size_t i = (static_cast<size_t>(k) * (n - 1)) / static_cast<size_t>(max_points - 1);
    out.emplace_back(samples[i], static_cast<double>(i + 1) / static_cast<double>(n));
  }
  return out;
}

// Largest user count whose satisfaction fraction reaches 95%; 0 if none.
inline int qos_capacity(const std::vector<std::pair<int, double>>& satisfaction_by_count) {
  int best = 0;
  for (const auto& [count, satisfied] : satisfaction_by_count)
    if (satisfied >= 0.95) best = std::max(best, count);
  return best;
}

// Cross-run report: per-run PLRs, pooled delay/outage/rate statistics, and
// the occupancy and audit tallies the acceptance checks read.
struct CampaignReport {
  ScenarioConfig cfg;
  int num_runs = 0;

  std::vector<double> run_cue_plr, run_vue_plr;
  double mean_cue_plr = 0.0, mean_vue_plr = 0.0;
  int64_t cue_generated = 0, cue_completed = 0, cue_dropped = 0;
  int64_t vue_generated = 0, vue_completed = 0, vue_dropped = 0;

  double mean_cue_delay_ms = 0.0, mean_vue_delay_ms = 0.0;
  std::vector<std::pair<double, double>> cue_delay_cdf, vue_delay_cdf;

  std::vector<double> vue_outage;             // per VUE index, pooled over runs
  std::vector<double> vue_mean_delay_ms;      // per VUE index, pooled (completed)
  std::vector<int64_t> vue_completed_by_user;
  std::vector<std::pair<double, double>> vue_outage_cdf;  // CDF across VUEs

  double mean_cue_rbs_per_tti = 0.0, mean_vue_rbs_per_tti = 0.0, mean_bue_rbs_per_tti = 0.0;
  std::vector<std::pair<double, double>> bue_rate_cdf;
  double mean_bue_sum_rate_bps = 0.0;
  double mean_cue_sum_rate_bps = 0.0;   // scheduled rate, the step-1 objective
  double mean_cue_goodput_bps = 0.0;    // delivered rate: completed bits per second

  double cue_satisfaction = 0.0;  // fraction of (run, CUE) meeting PLR < 2% and delay <= delta_c
  int64_t constraint_violations = 0;
  int64_t full_demand_slots = 0, full_demand_all_rcs_slots = 0;
  bool conservation_ok = true;
};

inline CampaignReport summarize(const std::vector<MetricsLedger>& runs, const ScenarioConfig& cfg) {
  CampaignReport r;
  r.cfg = cfg;
  r.num_runs = static_cast<int>(runs.size());
  if (runs.empty()) return r;

  std::vector<double> cue_delays, vue_delays, bue_rates;
  std::vector<int64_t> vue_samples(static_cast<size_t>(cfg.num_vue_pairs), 0);
  std::vector<int64_t> vue_events(static_cast<size_t>(cfg.num_vue_pairs), 0);
  std::vector<int64_t> vue_done(static_cast<size_t>(cfg.num_vue_pairs), 0);
  std::vector<double> vue_delay_sum(static_cast<size_t>(cfg.num_vue_pairs), 0.0);
  int64_t tti_total = 0, bue_events = 0;
  int64_t cue_rb = 0, vue_rb = 0, bue_rb = 0;
  double cue_rate_accum = 0.0;
  int64_t sat_ok = 0, sat_total = 0;

  for (const auto& l : runs) {
    r.run_cue_plr.push_back(plr_cue(l));
    r.run_vue_plr.push_back(plr_vue(l));
    r.cue_generated += l.cue_generated;
    r.cue_completed += l.cue_completed;
    r.cue_dropped += l.cue_dropped;
    r.vue_generated += l.vue_generated;
    r.vue_completed += l.vue_completed;
    r.vue_dropped += l.vue_dropped;
    cue_delays.insert(cue_delays.end(), l.cue_delays_ms.begin(), l.cue_delays_ms.end());
    vue_delays.insert(vue_delays.end(), l.vue_delays_ms.begin(), l.vue_delays_ms.end());
    bue_rates.insert(bue_rates.end(), l.bue_sum_rate_samples_bps.begin(), l.bue_sum_rate_samples_bps.end());
    for (size_t v = 0; v < vue_samples.size(); ++v) {
      vue_samples[v] += l.vue_sinr_samples[v];
      vue_events[v] += l.vue_outage_events[v];
      vue_done[v] += l.vue_user_completed[v];
      vue_delay_sum[v] += l.vue_user_delay_sum_ms[v];
    }
    tti_total += l.tti_count;
    bue_events += l.bue_event_count;
    cue_rb += l.cue_rb_sum;
    vue_rb += l.vue_rb_sum;
    bue_rb += l.bue_rb_sum;
    cue_rate_accum += l.cue_sum_rate_accum_bps;
    r.constraint_violations += l.constraint_violations;
    r.full_demand_slots += l.full_demand_slots;
    r.full_demand_all_rcs_slots += l.full_demand_all_rcs_slots;
    r.conservation_ok = r.conservation_ok && l.conservation_holds();
    // satisfaction over (run, CUE) instances that generated traffic; a user
    // with demand but no completions cannot meet its delay target
    for (size_t c = 0; c < l.cue_user_generated.size(); ++c) {
      if (l.cue_user_generated[c] == 0) continue;
      ++sat_total;
      const double user_plr = ratio_or_zero(l.cue_user_dropped[c], l.cue_user_generated[c]);
      const bool delay_ok = l.cue_user_completed[c] > 0 &&
                            l.cue_user_delay_sum_ms[c] / static_cast<double>(l.cue_user_completed[c]) <= cfg.delta_c_ms;
      if (user_plr < 0.02 && delay_ok) ++sat_ok;
    }
  }

  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
  };
  r.mean_cue_plr = mean(r.run_cue_plr);
  r.mean_vue_plr = mean(r.run_vue_plr);
  r.mean_cue_delay_ms = mean(cue_delays);
  r.mean_vue_delay_ms = mean(vue_delays);
  r.cue_delay_cdf = cdf_points(cue_delays);
  r.vue_delay_cdf = cdf_points(vue_delays);
  r.bue_rate_cdf = cdf_points(bue_rates);
  r.mean_bue_sum_rate_bps = mean(bue_rates);

  r.vue_outage.resize(vue_samples.size());
  r.vue_mean_delay_ms.resize(vue_samples.size());
  r.vue_completed_by_user = vue_done;
  for (size_t v = 0; v < vue_samples.size(); ++v) {
    r.vue_outage[v] = ratio_or_zero(vue_events[v], vue_samples[v]);
    r.vue_mean_delay_ms[v] = vue_done[v] == 0 ? 0.0 : vue_delay_sum[v] / static_cast<double>(vue_done[v]);
  }
  r.vue_outage_cdf = cdf_points(r.vue_outage);

  r.mean_cue_rbs_per_tti = ratio_or_zero(cue_rb, tti_total);
  r.mean_vue_rbs_per_tti = ratio_or_zero(vue_rb, tti_total);
  r.mean_bue_rbs_per_tti = bue_events == 0 ? 0.0 : static_cast<double>(bue_rb) / static_cast<double>(bue_events);
  r.mean_cue_sum_rate_bps = tti_total == 0 ? 0.0 : cue_rate_accum / static_cast<double>(tti_total);
  // total completed bits over total simulated time == cross-run mean of the
  // per-run delivered rates (runs share one duration)
  const double per_run_seconds = ratio_or_zero(tti_total, static_cast<int64_t>(runs.size())) *
                                 numerology_params(cfg.numerology_bwp1).tti_ms * 1e-3;
  r.mean_cue_goodput_bps =
      per_run_seconds == 0.0
          ? 0.0
          : static_cast<double>(r.cue_completed) * 8.0 * cfg.beta_c_bytes /
                (per_run_seconds * static_cast<double>(runs.size()));
  r.cue_satisfaction = sat_total == 0 ? 1.0 : static_cast<double>(sat_ok) / static_cast<double>(sat_total);
  return r;
}

}  // namespace nrv2x
