#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "nrv2x/mathutil.hpp"
#include "nrv2x/matching.hpp"
#include "nrv2x/power.hpp"

namespace nrv2x {

// ---------------------------------------------------------------------------
// SINR and rate building blocks
// ---------------------------------------------------------------------------

// Uplink CUE SINR in one RB; gains are full power gains alpha*|h|^2, both
// known at the gNB. vue_gain is 0 when no VUE shares the RB.
inline double sinr_cue(double p_c_w, double cue_gain, double p_v_w, double vue_gain, double noise_w) {
  return p_c_w * cue_gain / (noise_w + p_v_w * vue_gain);
}

// Decision-time VUE SINR: aged links enter through the expected power gain
// eps^2*|h_hat|^2 + (1 - eps^2), since the gNB cannot observe the current
// error realization.
inline double sinr_vue_decision(double p_v_w, double alpha_v, double eps_v, double hhat_v_sq,
                                double p_c_w, double alpha_cv, double eps_cv, double hhat_cv_sq,
                                double noise_w) {
  const double num = p_v_w * alpha_v * (eps_v * eps_v * hhat_v_sq + (1.0 - eps_v * eps_v));
  const double den = noise_w + p_c_w * alpha_cv * (eps_cv * eps_cv * hhat_cv_sq + (1.0 - eps_cv * eps_cv));
  return num / den;
}

// Ground-truth VUE SINR with the realized fading draws.
inline double sinr_vue_realized(double p_v_w, double alpha_v, double h_v_sq, double p_c_w,
                                double alpha_cv, double h_cv_sq, double noise_w) {
  return p_v_w * alpha_v * h_v_sq / (noise_w + p_c_w * alpha_cv * h_cv_sq);
}

inline double apply_sinr_backoff(double gamma, double backoff_db) {
  return gamma / db_to_linear(backoff_db);
}

inline double spectral_efficiency(double gamma) { return std::log2(1.0 + gamma); }

// RC rate from the worst RB of the chunk: eta RBs, each rb_bw_hz wide, all
// run at the spectral efficiency the minimum SINR supports.
inline double rc_rate_bps(double gamma_min, int eta, double rb_bw_hz) {
  return static_cast<double>(eta) * rb_bw_hz * spectral_efficiency(gamma_min);
}

// ---------------------------------------------------------------------------
// Per-TTI scheduling
// ---------------------------------------------------------------------------

// Everything one TTI decision depends on. cue_ids are the first C_t buffer
// owners in TTL order; vue_ids are the pairs with queued packets. Gains to
// the gNB carry the current fading (directly observable); gains toward the
// VUE receivers are large-scale only, matching what the outage form uses.
struct SchedulerInput {
  int num_rcs = 0;
  int eta = 0;
  double rb_bw_hz = 0.0;
  int max_sched = 0;  // C_t
  double noise_w = 0.0;
  double backoff_db = 0.0;
  double r0_se = 0.0;  // minimum spectral efficiency for paired CUEs
  double gamma0_lin = 0.0;
  double p0 = 0.0;
  double p_c_max_w = 0.0;
  double p_v_max_w = 0.0;
  std::vector<int> cue_ids;
  std::vector<int> vue_ids;
  Matrix cue_gnb_gain;   // [candidate][rb]   alpha*|h|^2
  Matrix vue_gnb_gain;   // [vue][rb]         alpha*|h|^2
  std::vector<double> alpha_v2v;  // [vue]
  Matrix alpha_cue_vue;  // [candidate][vue]
};

struct CueGrant {
  int cue = -1;
  int rc = -1;
  double p_c_w = 0.0;
  int paired_vue = -1;
  double p_v_w = 0.0;
  double rate_bps = 0.0;
  double spectral_eff = 0.0;
};

struct AllocationDecision {
  std::vector<CueGrant> grants;
  std::vector<int> rc_owner;  // rc -> cue id, -1 if unassigned
};

enum class AssignmentSolver { kGaleShapley, kHungarian };

// Intermediate weight tables and raw matchings, exposed for tests that
// check stability and optimality of the decision against oracles.
struct SchedulingTrace {
  Matrix rate_no_interference;  // [candidate][rc]
  Matrix pair_rate;             // [grant][vue], -inf = infeasible or below r0
  std::vector<int> grant_candidate;  // grant -> candidate row index
  BipartiteMatching step1;           // over pad_square(rate_no_interference + null users)
  BipartiteMatching step2;           // over pad_square(pair_rate)
};

namespace detail {
inline BipartiteMatching solve_assignment(const Matrix& w, AssignmentSolver solver) {
  if (solver == AssignmentSolver::kGaleShapley) return gale_shapley(prefs_from_weights(w));
  return hungarian(w);
}
}  // namespace detail

// Shared decision pipeline; GSRAGS, HRAHS and GSRAHS differ only in which
// solver runs each step.
//   1. candidates (padded with null users up to C_t) get interference-free
//      RC rates R',
//   2. step-1 solver assigns RCs,
//   3. each scheduled CUE is evaluated against every candidate VUE: optimal
//      powers from the outage constraint, shared-RC rate, -inf below r0,
//   4. step-2 solver pairs CUEs with VUEs; everyone else stays unpaired and
//      scheduled CUEs without a partner keep full power.
inline AllocationDecision schedule_tti(const SchedulerInput& in, AssignmentSolver step1,
                                       AssignmentSolver step2, SchedulingTrace* trace = nullptr) {
  AllocationDecision out;
  out.rc_owner.assign(static_cast<size_t>(in.num_rcs), -1);
  const int nc = static_cast<int>(in.cue_ids.size());
  const int total_rbs = in.num_rcs * in.eta;

  Matrix r_prime(nc, in.num_rcs);
  Matrix se_prime(nc, in.num_rcs);
  for (int c = 0; c < nc; ++c) {
    for (int i = 0; i < in.num_rcs; ++i) {
      double gmin = std::numeric_limits<double>::infinity();
      for (int rb = i * in.eta; rb < (i + 1) * in.eta && rb < total_rbs; ++rb)
        gmin = std::min(gmin, sinr_cue(in.p_c_max_w, in.cue_gnb_gain.at(c, rb), 0.0, 0.0, in.noise_w));
      const double se = spectral_efficiency(apply_sinr_backoff(gmin, in.backoff_db));
      se_prime.at(c, i) = se;
      r_prime.at(c, i) = static_cast<double>(in.eta) * in.rb_bw_hz * se;
    }
  }
  if (trace) trace->rate_no_interference = r_prime;

  // square instance over max(C_t, num_rcs); rows beyond nc are null users
  const int n1 = std::max(in.max_sched, in.num_rcs);
  Matrix w1(n1, n1, kDummyWeight);
  for (int c = 0; c < nc; ++c)
    for (int i = 0; i < in.num_rcs; ++i) w1.at(c, i) = r_prime.at(c, i);
  const BipartiteMatching m1 = detail::solve_assignment(w1, step1);
  if (trace) trace->step1 = m1;

  std::vector<int> grant_candidate;
  for (int c = 0; c < nc; ++c) {
    const int rc = m1.right_of_left[static_cast<size_t>(c)];
    if (rc < 0 || rc >= in.num_rcs) continue;  // matched to a dummy RC
    CueGrant g;
    g.cue = in.cue_ids[static_cast<size_t>(c)];
    g.rc = rc;
    g.p_c_w = in.p_c_max_w;
    g.rate_bps = r_prime.at(c, rc);
    g.spectral_eff = se_prime.at(c, rc);
    out.rc_owner[static_cast<size_t>(rc)] = g.cue;
    grant_candidate.push_back(c);
    out.grants.push_back(g);
  }
  if (trace) trace->grant_candidate = grant_candidate;

  const int ns = static_cast<int>(out.grants.size());
  const int nv = static_cast<int>(in.vue_ids.size());
  if (ns == 0 || nv == 0) {
    if (trace) trace->pair_rate = Matrix(ns, nv);
    return out;
  }

  Matrix pair_rate(ns, nv, kForbiddenWeight);
  Matrix pair_se(ns, nv, 0.0);
  Matrix pair_pc(ns, nv, 0.0);
  for (int s = 0; s < ns; ++s) {
    const int c = grant_candidate[static_cast<size_t>(s)];
    const int rc = out.grants[static_cast<size_t>(s)].rc;
    for (int vj = 0; vj < nv; ++vj) {
      const PowerSolution sol =
          allocate_power(in.alpha_v2v[static_cast<size_t>(vj)], in.alpha_cue_vue.at(c, vj),
                         in.gamma0_lin, in.p0, in.p_c_max_w, in.p_v_max_w, in.noise_w);
      if (!sol.feasible) continue;
      double gmin = std::numeric_limits<double>::infinity();
      for (int rb = rc * in.eta; rb < (rc + 1) * in.eta; ++rb)
        gmin = std::min(gmin, sinr_cue(sol.p_c_w, in.cue_gnb_gain.at(c, rb), sol.p_v_w,
                                       in.vue_gnb_gain.at(vj, rb), in.noise_w));
      const double se = spectral_efficiency(apply_sinr_backoff(gmin, in.backoff_db));
      if (se < in.r0_se) continue;  // rate floor: pairing would starve the CUE
      pair_rate.at(s, vj) = static_cast<double>(in.eta) * in.rb_bw_hz * se;
      pair_se.at(s, vj) = se;
      pair_pc.at(s, vj) = sol.p_c_w;
    }
  }
  if (trace) trace->pair_rate = pair_rate;

  const BipartiteMatching m2 = detail::solve_assignment(pad_square(pair_rate), step2);
  if (trace) trace->step2 = m2;
  for (int s = 0; s < ns; ++s) {
    const int vj = m2.right_of_left[static_cast<size_t>(s)];
    if (vj < 0 || vj >= nv) continue;
    if (!(pair_rate.at(s, vj) > kDummyWeight)) continue;  // infeasible or dummy edge
    auto& g = out.grants[static_cast<size_t>(s)];
    g.paired_vue = in.vue_ids[static_cast<size_t>(vj)];
    g.p_c_w = pair_pc.at(s, vj);
    g.p_v_w = in.p_v_max_w;
    g.rate_bps = pair_rate.at(s, vj);
    g.spectral_eff = pair_se.at(s, vj);
  }
  return out;
}

inline AllocationDecision gsrags_tti(const SchedulerInput& in, SchedulingTrace* trace = nullptr) {
  return schedule_tti(in, AssignmentSolver::kGaleShapley, AssignmentSolver::kGaleShapley, trace);
}

inline AllocationDecision hrahs_tti(const SchedulerInput& in, SchedulingTrace* trace = nullptr) {
  return schedule_tti(in, AssignmentSolver::kHungarian, AssignmentSolver::kHungarian, trace);
}

inline AllocationDecision gsrahs_tti(const SchedulerInput& in, SchedulingTrace* trace = nullptr) {
  return schedule_tti(in, AssignmentSolver::kGaleShapley, AssignmentSolver::kHungarian, trace);
}

// Structural constraint checks on a decision: one CUE per RC, one-to-one
// pairing, power caps, schedule size cap, rate floor for paired CUEs.
// Returns the number of violations (0 on a well-formed decision).
inline int count_constraint_violations(const AllocationDecision& d, int max_sched, int num_rcs,
                                       double p_c_max_w, double p_v_max_w, double r0_se) {
  int bad = 0;
  if (static_cast<int>(d.grants.size()) > max_sched) ++bad;
  std::vector<int> rc_seen(static_cast<size_t>(num_rcs), 0);
  std::vector<int> cues, vues;
  for (const auto& g : d.grants) {
    if (g.rc < 0 || g.rc >= num_rcs || ++rc_seen[static_cast<size_t>(g.rc)] > 1) ++bad;
    if (g.rc >= 0 && g.rc < num_rcs && d.rc_owner[static_cast<size_t>(g.rc)] != g.cue) ++bad;
    if (g.p_c_w < 0.0 || g.p_c_w > p_c_max_w * (1.0 + 1e-12)) ++bad;
    if (g.p_v_w < 0.0 || g.p_v_w > p_v_max_w * (1.0 + 1e-12)) ++bad;
    for (int c : cues)
      if (c == g.cue) ++bad;
    cues.push_back(g.cue);
    if (g.paired_vue >= 0) {
      for (int v : vues)
        if (v == g.paired_vue) ++bad;
      vues.push_back(g.paired_vue);
      if (g.spectral_eff < r0_se) ++bad;
    }
  }
  for (int rc = 0; rc < num_rcs; ++rc) {
    if (d.rc_owner[static_cast<size_t>(rc)] < 0) continue;
    bool found = false;
    for (const auto& g : d.grants) found = found || (g.rc == rc && g.cue == d.rc_owner[static_cast<size_t>(rc)]);
    if (!found) ++bad;
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Best-effort users (BWP-2)
// ---------------------------------------------------------------------------

struct BueAllocation {
  std::vector<int> rb_owner;          // BWP-2 rb -> BUE id, -1 if none
  std::vector<double> rb_rate_bps;
  double sum_rate_bps = 0.0;
};

// Max C/I: every BWP-2 RB independently goes to the BUE with the highest
// instantaneous rate on it, ties to the lower index.
inline BueAllocation max_ci_bue(const Matrix& bue_gain, double p_w, double noise_w, double rb_bw_hz,
                                double backoff_db) {
  BueAllocation out;
  const int num_rbs = bue_gain.cols();
  const int num_bues = bue_gain.rows();
  out.rb_owner.assign(static_cast<size_t>(num_rbs), -1);
  out.rb_rate_bps.assign(static_cast<size_t>(num_rbs), 0.0);
  for (int rb = 0; rb < num_rbs; ++rb) {
    double best = -1.0;
    int winner = -1;
    for (int m = 0; m < num_bues; ++m) {
      const double g = bue_gain.at(m, rb);
      if (g > best) {
        best = g;
        winner = m;
      }
    }
    if (winner < 0) continue;
    out.rb_owner[static_cast<size_t>(rb)] = winner;
    const double gamma = apply_sinr_backoff(p_w * best / noise_w, backoff_db);
    out.rb_rate_bps[static_cast<size_t>(rb)] = rb_bw_hz * spectral_efficiency(gamma);
    out.sum_rate_bps += out.rb_rate_bps[static_cast<size_t>(rb)];
  }
  return out;
}

}  // namespace nrv2x
