#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "nrv2x/mathutil.hpp"

namespace nrv2x {

// Weight conventions shared by both assignment kernels:
//   kForbiddenWeight marks a pairing that must never form voluntarily,
//   kDummyWeight is the padding value for null participants. Dummies rank
//   above forbidden edges, so "unmatched" beats an infeasible partner.
inline constexpr double kForbiddenWeight = -std::numeric_limits<double>::infinity();
inline constexpr double kDummyWeight = -1e300;

struct BipartiteMatching {
  std::vector<int> right_of_left;  // proposer/row -> matched column
  std::vector<int> left_of_right;
  double total_weight = 0.0;  // filled by the Hungarian solver
  long proposals = 0;         // filled by Gale-Shapley
};

// Ranked preference lists for a square stable-matching instance. Each list
// is a permutation of the opposite side, best first. Dummy participants
// come from square padding and always sit at the bottom of every list.
struct PreferenceInstance {
  int size = 0;
  std::vector<std::vector<int>> proposer_prefs;
  std::vector<std::vector<int>> proposee_prefs;
  std::vector<bool> proposer_is_dummy;
  std::vector<bool> proposee_is_dummy;
};

inline Matrix pad_square(const Matrix& w, double fill = kDummyWeight) {
  const int n = std::max(w.rows(), w.cols());
  Matrix out(n, n, fill);
  for (int i = 0; i < w.rows(); ++i)
    for (int j = 0; j < w.cols(); ++j) out.at(i, j) = w.at(i, j);
  return out;
}

// Both sides rank the other by descending weight of the shared matrix,
// ties broken by ascending index. Entries at or below kDummyWeight mark
// dummy rows/columns; -inf entries sort below them.
inline PreferenceInstance prefs_from_weights(const Matrix& w) {
  if (!w.square()) throw std::invalid_argument("prefs_from_weights requires a square matrix");
  const int n = w.rows();
  PreferenceInstance inst;
  inst.size = n;
  inst.proposer_prefs.assign(static_cast<size_t>(n), {});
  inst.proposee_prefs.assign(static_cast<size_t>(n), {});
  inst.proposer_is_dummy.assign(static_cast<size_t>(n), true);
  inst.proposee_is_dummy.assign(static_cast<size_t>(n), true);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (w.at(i, j) > kDummyWeight) {
        inst.proposer_is_dummy[static_cast<size_t>(i)] = false;
        inst.proposee_is_dummy[static_cast<size_t>(j)] = false;
      }
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return w.at(i, a) > w.at(i, b); });
    inst.proposer_prefs[static_cast<size_t>(i)] = order;
  }
  for (int j = 0; j < n; ++j) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return w.at(a, j) > w.at(b, j); });
    inst.proposee_prefs[static_cast<size_t>(j)] = order;
  }
  return inst;
}

inline void validate_preferences(const PreferenceInstance& inst) {
  const int n = inst.size;
  auto check = [n](const std::vector<std::vector<int>>& prefs, const char* side) {
    if (static_cast<int>(prefs.size()) != n)
      throw std::invalid_argument(std::string(side) + " preference count mismatch");
    std::vector<bool> seen;
    for (const auto& list : prefs) {
      if (static_cast<int>(list.size()) != n)
        throw std::invalid_argument(std::string(side) + " preference list is not a full ranking");
      seen.assign(static_cast<size_t>(n), false);
      for (int x : list) {
        if (x < 0 || x >= n || seen[static_cast<size_t>(x)])
          throw std::invalid_argument(std::string(side) + " preference list is not a permutation");
        seen[static_cast<size_t>(x)] = true;
      }
    }
  };
  check(inst.proposer_prefs, "proposer");
  check(inst.proposee_prefs, "proposee");
}

// Deferred acceptance with the proposers on the offering side. Returns the
// proposer-optimal stable matching; with strict complete preferences the
// outcome is a perfect matching independent of proposal order.
inline BipartiteMatching gale_shapley(const PreferenceInstance& inst) {
  validate_preferences(inst);
  const int n = inst.size;
  BipartiteMatching m;
  m.right_of_left.assign(static_cast<size_t>(n), -1);
  m.left_of_right.assign(static_cast<size_t>(n), -1);
  if (n == 0) return m;

  // proposee-side rank lookup: rank[j][i] = position of proposer i in j's list
  std::vector<std::vector<int>> rank(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int j = 0; j < n; ++j)
    for (int pos = 0; pos < n; ++pos)
      rank[static_cast<size_t>(j)][static_cast<size_t>(inst.proposee_prefs[static_cast<size_t>(j)][static_cast<size_t>(pos)])] = pos;

  std::vector<int> next(static_cast<size_t>(n), 0);  // next list position to propose at
  std::vector<int> free_stack(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) free_stack[static_cast<size_t>(i)] = n - 1 - i;  // propose in index order

  while (!free_stack.empty()) {
    const int i = free_stack.back();
    const int j = inst.proposer_prefs[static_cast<size_t>(i)][static_cast<size_t>(next[static_cast<size_t>(i)]++)];
    ++m.proposals;
    const int held = m.left_of_right[static_cast<size_t>(j)];
    if (held < 0) {
      free_stack.pop_back();
      m.left_of_right[static_cast<size_t>(j)] = i;
      m.right_of_left[static_cast<size_t>(i)] = j;
    } else if (rank[static_cast<size_t>(j)][static_cast<size_t>(i)] < rank[static_cast<size_t>(j)][static_cast<size_t>(held)]) {
      free_stack.back() = held;
      m.right_of_left[static_cast<size_t>(held)] = -1;
      m.left_of_right[static_cast<size_t>(j)] = i;
      m.right_of_left[static_cast<size_t>(i)] = j;
    }
  }
  return m;
}

// Maximum-total-weight perfect assignment on a square matrix (Jonker-
// Volgenant style shortest augmenting paths, O(n^3)). Forbidden and dummy
// entries are remapped to a level below every real weight so they appear
// only when forced; total_weight sums the original weights of real pairs.
inline BipartiteMatching hungarian(const Matrix& w) {
  if (!w.square()) throw std::invalid_argument("hungarian requires a square matrix (pad first)");
  const int n = w.rows();
  BipartiteMatching result;
  result.right_of_left.assign(static_cast<size_t>(n), -1);
  result.left_of_right.assign(static_cast<size_t>(n), -1);
  if (n == 0) return result;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = w.at(i, j);
      if (x > kDummyWeight) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
    }
  if (!(lo <= hi)) {
    lo = 0.0;
    hi = 0.0;
  }
  const double span = hi - lo + 1.0;
  const double floor_value = lo - span * (n + 1);  // dominated by any real weight
  auto cost = [&](int i, int j) {
    const double x = w.at(i, j);
    return -(x > kDummyWeight ? x : floor_value);  // minimize negated weight
  };

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<size_t>(n) + 1, 0.0), v(static_cast<size_t>(n) + 1, 0.0);
  std::vector<int> p(static_cast<size_t>(n) + 1, 0), way(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<size_t>(n) + 1, inf);
    std::vector<char> used(static_cast<size_t>(n) + 1, 0);
    do {
      used[static_cast<size_t>(j0)] = 1;
      const int i0 = p[static_cast<size_t>(j0)];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[static_cast<size_t>(i0)] - v[static_cast<size_t>(j)];
        if (cur < minv[static_cast<size_t>(j)]) {
          minv[static_cast<size_t>(j)] = cur;
          way[static_cast<size_t>(j)] = j0;
        }
        if (minv[static_cast<size_t>(j)] < delta) {
          delta = minv[static_cast<size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<size_t>(j)]) {
          u[static_cast<size_t>(p[static_cast<size_t>(j)])] += delta;
          v[static_cast<size_t>(j)] -= delta;
        } else {
          minv[static_cast<size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<size_t>(j0)];
      p[static_cast<size_t>(j0)] = p[static_cast<size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  for (int j = 1; j <= n; ++j) {
    const int i = p[static_cast<size_t>(j)];
    result.right_of_left[static_cast<size_t>(i - 1)] = j - 1;
    result.left_of_right[static_cast<size_t>(j - 1)] = i - 1;
    if (w.at(i - 1, j - 1) > kDummyWeight) result.total_weight += w.at(i - 1, j - 1);
  }
  return result;
}

}  // namespace nrv2x
