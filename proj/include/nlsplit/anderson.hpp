#pragma once

#include <vector>

#include "nlsplit/linalg.hpp"

namespace nlsplit::anderson {

/// Sliding difference-matrix window for Anderson acceleration: S holds
/// iterate differences, Gd holds residual differences, and qr factors Gd
/// incrementally so the least-squares solve is O(window) per proposal.
struct AndersonWindow {
  int depth = 0;  // m; 0 means plain fixed-point iteration
  std::vector<Vec> S_cols;
  std::vector<Vec> Gd_cols;
  linalg::QRFactorization qr;

  int cols() const { return static_cast<int>(Gd_cols.size()); }
};

AndersonWindow make_window(int depth, int dim);

/// Proposal from the current window. Empty window: theta + g (plain step).
/// Otherwise theta + g - (S + Gd) xi with xi = argmin ||Gd xi - g||.
/// `paper_literal_sign` flips the correction to + (S + Gd) xi, reproducing
/// the update formula as printed in the source algorithm; the default sign
/// is the one that passes the linear-exactness invariant.
Vec aa_propose(const AndersonWindow& w, const Vec& theta, const Vec& g,
               bool paper_literal_sign = false);

/// Append the difference pair (theta_new - theta_prev, g_new - g_prev),
/// dropping the oldest pair when the window exceeds its depth. Incremental
/// rank collapse is handled by evicting oldest columns until the append
/// succeeds (an all-dependent window ends up holding just the new column,
/// or nothing when the difference itself is zero).
AndersonWindow aa_push(AndersonWindow w, const Vec& theta_prev, const Vec& theta_new,
                       const Vec& g_prev, const Vec& g_new);

/// Drop all columns (stagnation reset).
void clear(AndersonWindow& w);

}  // namespace nlsplit::anderson
