#pragma once

#include <cmath>
#include <vector>

#include "nrv2x/config.hpp"
#include "nrv2x/mathutil.hpp"
#include "nrv2x/rng.hpp"

namespace nrv2x {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double euclidean(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// A V2V transmitter/receiver pair travelling along one lane.
// direction is +1 (eastbound) or -1 (westbound).
struct VuePair {
  Vec2 tx;
  Vec2 rx;
  int lane = 0;
  int direction = 1;
};

// Horizontal lane strips stacked immediately south of the gNB, spanning the
// full area width. Lane k occupies y in [top - (k+1)*width, top - k*width).
struct LaneGeometry {
  double top = 0.0;
  double width = 0.0;
  int count = 0;
  double area_side = 0.0;

  double y_min() const { return top - count * width; }

  bool contains(const Vec2& p) const {
    return p.y >= y_min() && p.y < top && p.x >= 0.0 && p.x <= area_side;
  }

  bool inside_lane(const Vec2& p, int lane) const {
    const double hi = top - lane * width;
    return p.y >= hi - width && p.y < hi && p.x >= 0.0 && p.x <= area_side;
  }
};

struct UserSet {
  Vec2 gnb;
  std::vector<Vec2> cues;
  std::vector<Vec2> bues;
  std::vector<VuePair> vues;
  LaneGeometry lanes;
  double area_side_m = 0.0;
  double pair_separation_m = 0.0;
  double speed_mps = 0.0;
};

// gNB at the area centre; CUEs/BUEs uniform over the square minus the lane
// strips (rejection sampling); VUE pairs uniform along their lane with the
// receiver trailing the transmitter by the fixed separation.
inline UserSet drop_users(const ScenarioConfig& cfg, RngStream& rng) {
  UserSet u;
  u.area_side_m = cfg.area_side_m;
  u.pair_separation_m = cfg.vue_pair_separation_m;
  u.speed_mps = cfg.speed_mps();
  u.gnb = {cfg.area_side_m / 2.0, cfg.area_side_m / 2.0};
  u.lanes = {u.gnb.y, cfg.lane_width_m, cfg.lane_count, cfg.area_side_m};

  auto drop_off_lane = [&]() {
    for (;;) {
      Vec2 p{rng.uniform(0.0, cfg.area_side_m), rng.uniform(0.0, cfg.area_side_m)};
      if (!u.lanes.contains(p)) return p;
    }
  };
  u.cues.reserve(static_cast<size_t>(cfg.num_cues));
  for (int c = 0; c < cfg.num_cues; ++c) u.cues.push_back(drop_off_lane());
  u.bues.reserve(static_cast<size_t>(cfg.num_bues));
  for (int m = 0; m < cfg.num_bues; ++m) u.bues.push_back(drop_off_lane());

  u.vues.reserve(static_cast<size_t>(cfg.num_vue_pairs));
  for (int v = 0; v < cfg.num_vue_pairs; ++v) {
    VuePair p;
    p.lane = rng.uniform_int(cfg.lane_count);
    p.direction = (p.lane < cfg.lane_count / 2 || cfg.lane_count == 1) ? 1 : -1;
    const double lane_top = u.lanes.top - p.lane * cfg.lane_width_m;
    const double y = rng.uniform(lane_top - cfg.lane_width_m, lane_top);
    const double x = rng.uniform(0.0, cfg.area_side_m);
    p.tx = {x, y};
    double rx_x = x - p.direction * cfg.vue_pair_separation_m;
    rx_x = std::fmod(rx_x + cfg.area_side_m, cfg.area_side_m);
    p.rx = {rx_x, y};
    u.vues.push_back(p);
  }
  return u;
}

// Translates VUE pairs along their lane by speed*dt, wrapping at the area
// boundary (torus on the lane axis). V2I users are stationary.
inline UserSet advance(const UserSet& users, double dt_s) {
  UserSet u = users;
  const double step = users.speed_mps * dt_s;
  for (auto& p : u.vues) {
    p.tx.x = std::fmod(p.tx.x + p.direction * step + u.area_side_m, u.area_side_m);
    p.rx.x = std::fmod(p.rx.x + p.direction * step + u.area_side_m, u.area_side_m);
  }
  return u;
}

// Euclidean distances for every link class the SINR model needs, clamped
// below by min_distance to keep the path-loss laws finite.
struct DistanceTable {
  std::vector<double> cue_gnb;
  std::vector<double> bue_gnb;
  std::vector<double> vue_v2v;   // tx -> rx, torus metric on the lane axis
  std::vector<double> vue_gnb;   // tx -> gNB (interference into the uplink)
  Matrix cue_vue;                // CUE c -> VUE-rx v (interference onto V2V)
};

inline DistanceTable distances(const UserSet& u, double min_distance_m = 1.0) {
  DistanceTable d;
  auto clamp = [min_distance_m](double x) { return std::max(x, min_distance_m); };
  d.cue_gnb.reserve(u.cues.size());
  for (const auto& p : u.cues) d.cue_gnb.push_back(clamp(euclidean(p, u.gnb)));
  d.bue_gnb.reserve(u.bues.size());
  for (const auto& p : u.bues) d.bue_gnb.push_back(clamp(euclidean(p, u.gnb)));
  d.vue_v2v.reserve(u.vues.size());
  d.vue_gnb.reserve(u.vues.size());
  for (const auto& p : u.vues) {
    double dx = std::fabs(p.tx.x - p.rx.x);
    dx = std::min(dx, u.area_side_m - dx);
    d.vue_v2v.push_back(clamp(std::hypot(dx, p.tx.y - p.rx.y)));
    d.vue_gnb.push_back(clamp(euclidean(p.tx, u.gnb)));
  }
  d.cue_vue = Matrix(static_cast<int>(u.cues.size()), static_cast<int>(u.vues.size()));
  for (size_t c = 0; c < u.cues.size(); ++c)
    for (size_t v = 0; v < u.vues.size(); ++v)
      d.cue_vue.at(static_cast<int>(c), static_cast<int>(v)) = clamp(euclidean(u.cues[c], u.vues[v].rx));
  return d;
}

}  // namespace nrv2x
