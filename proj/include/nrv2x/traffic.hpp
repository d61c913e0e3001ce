#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <vector>

#include "nrv2x/config.hpp"
#include "nrv2x/rng.hpp"

namespace nrv2x {

struct Packet {
  int owner = 0;
  int size_bytes = 0;
  int64_t arrival_slot = 0;
  double ttl_ms = 0.0;
  double remaining_bits = 0.0;
};

struct CompletedPacket {
  int owner = 0;
  double delay_ms = 0.0;
};

// Per-class packet queue kept in remaining-TTL order. All packets of one
// class share the same TTL, so arrival order is TTL order and the head is
// always the packet closest to expiry.
class TtlBuffer {
 public:
  void push(const Packet& p) { q_.push_back(p); }

  bool empty() const { return q_.empty(); }
  size_t size() const { return q_.size(); }
  const std::deque<Packet>& packets() const { return q_; }

  bool has_traffic(int user) const {
    for (const auto& p : q_)
      if (p.owner == user) return true;
    return false;
  }

  // Distinct owners scanning from the head (oldest TTL first), up to limit.
  std::vector<int> head_users(int limit) const {
    std::vector<int> users;
    for (const auto& p : q_) {
      if (std::find(users.begin(), users.end(), p.owner) == users.end()) {
        users.push_back(p.owner);
        if (static_cast<int>(users.size()) >= limit) break;
      }
    }
    return users;
  }

  int distinct_user_count() const {
    std::vector<int> users;
    for (const auto& p : q_)
      if (std::find(users.begin(), users.end(), p.owner) == users.end()) users.push_back(p.owner);
    return static_cast<int>(users.size());
  }

  // Drains this user's packets head-first with the given bit budget. A
  // packet whose bits are exhausted completes with delay (now - arrival)*tti;
  // a partially served packet keeps its remaining bits.
  std::vector<CompletedPacket> serve(int user, double bits, int64_t now, double tti_ms) {
    std::vector<CompletedPacket> done;
    if (bits <= 0.0) return done;
    for (auto it = q_.begin(); it != q_.end() && bits > 0.0;) {
      if (it->owner != user) {
        ++it;
        continue;
      }
      if (bits >= it->remaining_bits) {
        bits -= it->remaining_bits;
        done.push_back({user, static_cast<double>(now - it->arrival_slot) * tti_ms});
        it = q_.erase(it);
      } else {
        it->remaining_bits -= bits;
        bits = 0.0;
      }
    }
    return done;
  }

  // Drops every packet strictly past its deadline: (now - arrival)*tti > ttl.
  std::vector<Packet> expire(int64_t now, double tti_ms) {
    std::vector<Packet> dropped;
    for (auto it = q_.begin(); it != q_.end();) {
      if (static_cast<double>(now - it->arrival_slot) * tti_ms > it->ttl_ms) {
        dropped.push_back(*it);
        it = q_.erase(it);
      } else {
        ++it;
      }
    }
    return dropped;
  }

 private:
  std::deque<Packet> q_;
};

// Poisson(lambda_c) packets per slot, each to a distinct uniformly-chosen
// CUE (count clamped to the CUE population).
inline std::vector<Packet> generate_cue_arrivals(const ScenarioConfig& cfg, int64_t slot, RngStream& rng) {
  std::vector<Packet> out;
  if (cfg.num_cues == 0) return out;
  int k = rng.poisson(cfg.lambda_c());
  k = std::min(k, cfg.num_cues);
  if (k == 0) return out;
  // partial Fisher-Yates over the CUE index range
  std::vector<int> idx(static_cast<size_t>(cfg.num_cues));
  for (int i = 0; i < cfg.num_cues; ++i) idx[static_cast<size_t>(i)] = i;
  for (int i = 0; i < k; ++i) {
    const int j = i + rng.uniform_int(cfg.num_cues - i);
    std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(j)]);
    out.push_back({idx[static_cast<size_t>(i)], cfg.beta_c_bytes, slot, cfg.delta_c_ms,
                   8.0 * cfg.beta_c_bytes});
  }
  return out;
}

// One small packet per VUE pair every vue_packet_period_slots, with pair
// start offsets spread evenly across the period.
inline std::vector<Packet> generate_vue_arrivals(const ScenarioConfig& cfg, int64_t slot) {
  std::vector<Packet> out;
  const int period = cfg.vue_packet_period_slots;
  for (int v = 0; v < cfg.num_vue_pairs; ++v) {
    const int64_t offset = (static_cast<int64_t>(v) * period / std::max(1, cfg.num_vue_pairs)) % period;
    if (slot % period == offset)
      out.push_back({v, cfg.beta_v_bytes, slot, cfg.delta_v_ms, 8.0 * cfg.beta_v_bytes});
  }
  return out;
}

}  // namespace nrv2x
