#pragma once

#include <stdexcept>
#include <vector>

#include "nrv2x/config.hpp"

namespace nrv2x {

struct BandwidthPart {
  int mu;
  double carrier_ghz;
  double rb_bandwidth_khz;
  double tti_ms;
  int rb_count;
};

// The two orthogonal bandwidth parts and the grouping of BWP-1 RBs into
// resource chunks of eta contiguous RBs each. RC i covers the zero-based
// half-open RB range [eta*i, eta*(i+1)).
struct ResourceGrid {
  BandwidthPart bwp1;
  BandwidthPart bwp2;
  int eta;
  int num_rcs;

  int rc_first_rb(int rc) const { return rc * eta; }

  std::vector<int> rbs_of(int rc) const {
    if (rc < 0 || rc >= num_rcs) throw std::out_of_range("rc index out of range: " + std::to_string(rc));
    std::vector<int> rbs(static_cast<size_t>(eta));
    for (int k = 0; k < eta; ++k) rbs[static_cast<size_t>(k)] = rc * eta + k;
    return rbs;
  }
};

// BWP-1 holds exactly num_rcs * eta RBs; BWP-2 RBs fill whatever of the
// total bandwidth remains.
inline ResourceGrid build_grid(const ScenarioConfig& cfg) {
  const auto n1 = numerology_params(cfg.numerology_bwp1);
  const auto n2 = numerology_params(cfg.numerology_bwp2);
  ResourceGrid g;
  g.eta = cfg.rbs_per_rc;
  g.num_rcs = cfg.num_rcs;
  g.bwp1 = {cfg.numerology_bwp1, cfg.carrier_freq_bwp1_ghz, n1.rb_bandwidth_khz, n1.tti_ms,
            cfg.num_rcs * cfg.rbs_per_rc};
  const double bwp1_khz = g.bwp1.rb_count * n1.rb_bandwidth_khz;
  const double total_khz = cfg.total_bandwidth_mhz * 1e3;
  if (bwp1_khz > total_khz + 1e-9)
    throw ConfigError("requested RCs exceed BWP-1 capacity: " + std::to_string(g.bwp1.rb_count) + " RBs");
  const int rb2 = static_cast<int>((total_khz - bwp1_khz) / n2.rb_bandwidth_khz);
  g.bwp2 = {cfg.numerology_bwp2, cfg.carrier_freq_bwp2_ghz, n2.rb_bandwidth_khz, n2.tti_ms, rb2};
  return g;
}

}  // namespace nrv2x
