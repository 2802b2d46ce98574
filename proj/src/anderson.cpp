#include "nlsplit/anderson.hpp"

namespace nlsplit::anderson {

AndersonWindow make_window(int depth, int dim) {
  AndersonWindow w;
  w.depth = depth;
  w.qr = linalg::qr_empty(dim);
  return w;
}

void clear(AndersonWindow& w) {
  w.S_cols.clear();
  w.Gd_cols.clear();
  w.qr = linalg::qr_empty(w.qr.n);
}

Vec aa_propose(const AndersonWindow& w, const Vec& theta, const Vec& g,
               bool paper_literal_sign) {
  Vec proposal = linalg::add(theta, g);
  if (w.cols() == 0) return proposal;

  const Vec xi = linalg::least_squares(w.qr, g);  // may throw DegenerateWindow
  const double sign = paper_literal_sign ? 1.0 : -1.0;
  for (int j = 0; j < w.cols(); ++j) {
    const double c = sign * xi[j];
    for (std::size_t i = 0; i < proposal.size(); ++i)
      proposal[i] += c * (w.S_cols[j][i] + w.Gd_cols[j][i]);
  }
  return proposal;
}

AndersonWindow aa_push(AndersonWindow w, const Vec& theta_prev, const Vec& theta_new,
                       const Vec& g_prev, const Vec& g_new) {
  if (w.depth <= 0) return w;
  const Vec ds = linalg::sub(theta_new, theta_prev);
  const Vec dg = linalg::sub(g_new, g_prev);

  if (w.cols() >= w.depth) {
    w.qr = linalg::qr_drop_first_column(w.qr);
    w.S_cols.erase(w.S_cols.begin());
    w.Gd_cols.erase(w.Gd_cols.begin());
  }
  for (;;) {
    try {
      w.qr = linalg::qr_append_column(w.qr, dg);
      w.S_cols.push_back(ds);
      w.Gd_cols.push_back(dg);
      break;
    } catch (const RankCollapse&) {
      if (w.cols() == 0) break;  // the new difference itself is degenerate
      w.qr = linalg::qr_drop_first_column(w.qr);
      w.S_cols.erase(w.S_cols.begin());
      w.Gd_cols.erase(w.Gd_cols.begin());
    }
  }
  return w;
}

}  // namespace nlsplit::anderson
