#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "nrv2x/config.hpp"
#include "nrv2x/mathutil.hpp"
#include "nrv2x/rng.hpp"
#include "nrv2x/topology.hpp"

namespace nrv2x {

// Path loss in dB; d in meters (>= 1), f_c in GHz.
inline double path_loss_v2i(double d_m, double fc_ghz) {
  return 32.4 + 20.0 * std::log10(fc_ghz) + 30.0 * std::log10(d_m);
}

inline double path_loss_v2v(double d_m, double fc_ghz) {
  return 36.85 + 30.0 * std::log10(d_m) + 18.9 * std::log10(fc_ghz);
}

// Channel time-correlation over one feedback period under Jakes' model:
// eps = J0(2*pi*f_d*T), f_d = v*f_c/c. Clamped to [0,1]; the first J0 zero
// sits far above the vehicular operating regime (x ~ 1 at 50 km/h, 28 GHz,
// 0.125 ms). Beyond the series regime (|x| >= 12, several hundred km/h at
// these carriers) the channel is treated as fully decorrelated.
inline double jakes_epsilon(double speed_kmph, double fc_ghz, double period_ms) {
  const double fd_hz = (speed_kmph / 3.6) * (fc_ghz * 1e9) / 3e8;
  const double x = 2.0 * M_PI * fd_hz * (period_ms * 1e-3);
  if (x >= 12.0) return 0.0;
  const double j0 = bessel_j0(x);
  return std::min(1.0, std::max(0.0, j0));
}

// Log-normal shadowing draws, fixed for the lifetime of one user drop.
struct ShadowingTable {
  std::vector<double> cue_gnb;
  std::vector<double> bue_gnb;
  std::vector<double> vue_v2v;
  std::vector<double> vue_gnb;
  Matrix cue_vue;
};

inline ShadowingTable draw_shadowing(const ScenarioConfig& cfg, RngStream& rng) {
  ShadowingTable s;
  const double v2i = cfg.shadow_std_v2i_db;
  const double v2v = cfg.shadow_std_v2v_db;
  s.cue_gnb.resize(static_cast<size_t>(cfg.num_cues));
  for (auto& x : s.cue_gnb) x = rng.normal(0.0, v2i);
  s.bue_gnb.resize(static_cast<size_t>(cfg.num_bues));
  for (auto& x : s.bue_gnb) x = rng.normal(0.0, v2i);
  s.vue_v2v.resize(static_cast<size_t>(cfg.num_vue_pairs));
  for (auto& x : s.vue_v2v) x = rng.normal(0.0, v2v);
  s.vue_gnb.resize(static_cast<size_t>(cfg.num_vue_pairs));
  for (auto& x : s.vue_gnb) x = rng.normal(0.0, v2i);
  s.cue_vue = Matrix(cfg.num_cues, cfg.num_vue_pairs);
  // receiver is a vehicle, so the V2V deviation applies
  for (int c = 0; c < cfg.num_cues; ++c)
    for (int v = 0; v < cfg.num_vue_pairs; ++v) s.cue_vue.at(c, v) = rng.normal(0.0, v2v);
  return s;
}

// Fixed dB terms of the link budget by receiving end:
//   alpha_dB = -PL(d) + shadowing + tx antenna + rx antenna - NF allocation.
// The noise figure terms enter only when apply_noise_figures is set; the
// default reads noise_power_dbm as the effective post-NF floor.
inline double link_budget_to_gnb_db(const ScenarioConfig& cfg) {
  return cfg.vehicle_antenna_gain_dbi + cfg.gnb_antenna_gain_dbi -
         (cfg.apply_noise_figures ? cfg.gnb_noise_figure_db : 0.0);
}

inline double link_budget_to_vehicle_db(const ScenarioConfig& cfg) {
  return 2.0 * cfg.vehicle_antenna_gain_dbi -
         (cfg.apply_noise_figures ? cfg.vehicle_noise_figure_db : 0.0);
}

// Linear large-scale power gains per link. Links terminating at the gNB use
// the V2I law on the BWP-1 carrier (BWP-2 for BUEs); links terminating at a
// vehicle use the V2V law.
struct LargeScaleGains {
  std::vector<double> cue_gnb;
  std::vector<double> bue_gnb;
  std::vector<double> vue_v2v;
  std::vector<double> vue_gnb;
  Matrix cue_vue;
};

inline LargeScaleGains large_scale(const DistanceTable& d, const ShadowingTable& s,
                                   const ScenarioConfig& cfg) {
  LargeScaleGains g;
  const double to_gnb_db = link_budget_to_gnb_db(cfg);
  const double to_vehicle_db = link_budget_to_vehicle_db(cfg);
  const double f1 = cfg.carrier_freq_bwp1_ghz;
  const double f2 = cfg.carrier_freq_bwp2_ghz;

  g.cue_gnb.resize(d.cue_gnb.size());
  for (size_t c = 0; c < d.cue_gnb.size(); ++c)
    g.cue_gnb[c] = db_to_linear(-path_loss_v2i(d.cue_gnb[c], f1) + s.cue_gnb[c] + to_gnb_db);
  g.bue_gnb.resize(d.bue_gnb.size());
  for (size_t m = 0; m < d.bue_gnb.size(); ++m)
    g.bue_gnb[m] = db_to_linear(-path_loss_v2i(d.bue_gnb[m], f2) + s.bue_gnb[m] + to_gnb_db);
  g.vue_v2v.resize(d.vue_v2v.size());
  g.vue_gnb.resize(d.vue_gnb.size());
  for (size_t v = 0; v < d.vue_v2v.size(); ++v) {
    g.vue_v2v[v] = db_to_linear(-path_loss_v2v(d.vue_v2v[v], f1) + s.vue_v2v[v] + to_vehicle_db);
    g.vue_gnb[v] = db_to_linear(-path_loss_v2i(d.vue_gnb[v], f1) + s.vue_gnb[v] + to_gnb_db);
  }
  g.cue_vue = Matrix(d.cue_vue.rows(), d.cue_vue.cols());
  for (int c = 0; c < d.cue_vue.rows(); ++c)
    for (int v = 0; v < d.cue_vue.cols(); ++v)
      g.cue_vue.at(c, v) = db_to_linear(-path_loss_v2v(d.cue_vue.at(c, v), f1) + s.cue_vue.at(c, v) + to_vehicle_db);
  return g;
}

// First-order Gauss-Markov fading, h_t = eps*h_{t-1} + e_t with
// e ~ CN(0, 1-eps^2), kept per (link, RB) with independent RBs. Links are
// advanced lazily: jumping k slots uses the exact k-step composition, so a
// link untouched for many TTIs costs one draw instead of k.
//
// previous() exposes h_{t-1} (the one-TTI-delayed CSI the gNB holds);
// current() is the ground-truth coefficient at the advanced slot.
class AgedFadingTable {
 public:
  AgedFadingTable() = default;

  AgedFadingTable(int num_links, int num_rbs, double eps, RngStream& rng)
      : eps_(eps), rbs_(num_rbs), last_(static_cast<size_t>(num_links), 0) {
    const size_t n = static_cast<size_t>(num_links) * num_rbs;
    prev_.resize(n);
    curr_.resize(n);
    const double evar = 1.0 - eps_ * eps_;
    for (size_t i = 0; i < n; ++i) {
      prev_[i] = rng.complex_normal(1.0);
      curr_[i] = eps_ * prev_[i] + rng.complex_normal(evar);
    }
  }

  double eps() const { return eps_; }
  int num_rbs() const { return rbs_; }

  void advance_link(int link, int64_t slot, RngStream& rng) {
    const int64_t k = slot - last_[static_cast<size_t>(link)];
    if (k <= 0) return;
    const size_t base = static_cast<size_t>(link) * rbs_;
    const double evar = 1.0 - eps_ * eps_;
    if (k == 1) {
      for (int n = 0; n < rbs_; ++n) {
        prev_[base + n] = curr_[base + n];
        curr_[base + n] = eps_ * prev_[base + n] + rng.complex_normal(evar);
      }
    } else {
      // jump to slot-1 in one exact step, then take a single step
      const double ek = std::pow(eps_, static_cast<double>(k - 1));
      const double jump_var = 1.0 - ek * ek;
      for (int n = 0; n < rbs_; ++n) {
        prev_[base + n] = ek * curr_[base + n] + rng.complex_normal(jump_var);
        curr_[base + n] = eps_ * prev_[base + n] + rng.complex_normal(evar);
      }
    }
    last_[static_cast<size_t>(link)] = slot;
  }

  void advance_all(int64_t slot, RngStream& rng) {
    for (size_t l = 0; l < last_.size(); ++l) advance_link(static_cast<int>(l), slot, rng);
  }

  std::complex<double> current(int link, int rb) const { return curr_[static_cast<size_t>(link) * rbs_ + rb]; }
  std::complex<double> previous(int link, int rb) const { return prev_[static_cast<size_t>(link) * rbs_ + rb]; }

  double current_power(int link, int rb) const { return std::norm(current(link, rb)); }
  // gNB-side expected power gain given the delayed estimate:
  // eps^2*|h_hat|^2 + (1 - eps^2).
  double expected_power(int link, int rb) const {
    return eps_ * eps_ * std::norm(previous(link, rb)) + (1.0 - eps_ * eps_);
  }

 private:
  double eps_ = 1.0;
  int rbs_ = 0;
  std::vector<std::complex<double>> prev_;
  std::vector<std::complex<double>> curr_;
  std::vector<int64_t> last_;
};

// |h|^2 for a link the gNB observes directly: block fading, independent
// across TTIs and RBs, drawn on demand.
inline double iid_fading_power(RngStream& rng) { return rng.exponential(1.0); }

}  // namespace nrv2x
