#pragma once

#include <cmath>

namespace nrv2x {

// Exact Rayleigh outage of the V2V SINR
//   gamma_v = p_v*alpha_v*X / (noise + p_c*alpha_cv*Y),  X, Y iid Exp(1):
//   Pr(gamma_v <= gamma0)
//     = 1 - exp(-gamma0*noise/(p_v*alpha_v)) * (p_v*alpha_v)/(p_v*alpha_v + gamma0*p_c*alpha_cv).
// Nondecreasing in p_c, nonincreasing in p_v. p_v = 0 means no usable link
// and returns 1.
inline double outage_probability(double p_c_w, double p_v_w, double alpha_v, double alpha_cv,
                                 double gamma0_lin, double noise_w) {
  if (p_v_w <= 0.0) return 1.0;
  const double s = p_v_w * alpha_v;
  return 1.0 - std::exp(-gamma0_lin * noise_w / s) * s / (s + gamma0_lin * p_c_w * alpha_cv);
}

struct PowerSolution {
  double p_c_w = 0.0;
  double p_v_w = 0.0;
  bool feasible = false;
  double outage_at_solution = 1.0;
  double achieved_rate_bps = 0.0;  // filled by the scheduler's rate function
};

// Power allocation for one (CUE, VUE, RC) candidate. The VUE transmits at
// its cap (raising p_v only relaxes the outage constraint on the CUE), and
// the CUE receives the largest power whose outage stays within p0 -- the
// CUE rate is increasing in p_c, so that corner maximizes it. The boundary
// is located by bisection since the outage is monotone in p_c.
inline PowerSolution allocate_power(double alpha_v, double alpha_cv, double gamma0_lin, double p0,
                                    double p_c_max_w, double p_v_max_w, double noise_w,
                                    double rel_tol = 1e-6) {
  PowerSolution sol;
  sol.p_v_w = p_v_max_w;
  const double at_zero = outage_probability(0.0, p_v_max_w, alpha_v, alpha_cv, gamma0_lin, noise_w);
  if (at_zero > p0) return sol;  // even a silent CUE violates the constraint
  sol.feasible = true;
  const double at_max = outage_probability(p_c_max_w, p_v_max_w, alpha_v, alpha_cv, gamma0_lin, noise_w);
  if (at_max <= p0) {
    sol.p_c_w = p_c_max_w;
    sol.outage_at_solution = at_max;
    return sol;
  }
  double lo = 0.0;   // satisfies the constraint
  double hi = p_c_max_w;  // violates it
  for (int it = 0; it < 200 && hi - lo > rel_tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (outage_probability(mid, p_v_max_w, alpha_v, alpha_cv, gamma0_lin, noise_w) <= p0)
      lo = mid;
    else
      hi = mid;
  }
  sol.p_c_w = lo;
  sol.outage_at_solution = outage_probability(lo, p_v_max_w, alpha_v, alpha_cv, gamma0_lin, noise_w);
  return sol;
}

}  // namespace nrv2x
