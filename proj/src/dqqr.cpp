#include <algorithm>
#include <cmath>
#include <numeric>

#include "dq/decomp.hpp"

namespace dq {

namespace {

void swap_rows(DQMatrix& a, std::size_t i, std::size_t j) {
  for (std::size_t c = 0; c < a.cols(); ++c) {
    std::swap(a.st(i, c), a.st(j, c));
    std::swap(a.inf(i, c), a.inf(j, c));
  }
}

void swap_cols(DQMatrix& a, std::size_t i, std::size_t j) {
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::swap(a.st(r, i), a.st(r, j));
    std::swap(a.inf(r, i), a.inf(r, j));
  }
}

double col_norm(const QMatrix& a, std::size_t j, std::size_t from) {
  double s = 0.0;
  for (std::size_t i = from; i < a.rows(); ++i) s += a(i, j).norm2();
  return std::sqrt(s);
}

// R[k:, :] ← H R[k:, :] and Q[:, k:] ← Q[:, k:] H with H = I − w (2/ww) w*.
void reflect(DQMatrix& R, DQMatrix& Q, std::size_t k, const DQMatrix& w, DualNumber two_over) {
  const std::size_t m = R.rows();
  DQMatrix rs = R.block(k, 0, m - k, R.cols());
  DQMatrix wr = scale(w.adjoint() * rs, two_over);
  R.set_block(k, 0, rs - w * wr);
  DQMatrix qs = Q.block(0, k, Q.rows(), m - k);
  DQMatrix qw = scale(qs * w, two_over);
  Q.set_block(0, k, qs - qw * w.adjoint());
}

}  // namespace

QrResult dqqr(const DQMatrix& a, const ToleranceConfig& tol, bool pivot) {
  const std::size_t m = a.rows(), n = a.cols(), p = std::min(m, n);
  QrResult out;
  out.Q = DQMatrix::identity(m);
  out.R = a;
  out.perm.resize(n);
  std::iota(out.perm.begin(), out.perm.end(), std::size_t{0});
  DQMatrix& R = out.R;
  DQMatrix& Q = out.Q;
  FrobPair fa = frob_norms(a);
  const double dim = static_cast<double>(std::max(m, n));
  const double thr_st = std::max(tol.rank_tol * dim * fa.st_norm, tol.zero_tol);
  const double thr_inf = std::max(tol.rank_tol * dim * (fa.st_norm + fa.inf_norm), tol.zero_tol);

  for (std::size_t k = 0; k < p; ++k) {
    if (pivot) {
      std::size_t best = k;
      double bn = -1.0;
      for (std::size_t j = k; j < n; ++j) {
        double v = col_norm(R.st, j, k);
        if (v > bn) { bn = v; best = j; }
      }
      if (!(bn > thr_st)) {
        bn = -1.0;
        for (std::size_t j = k; j < n; ++j) {
          double v = col_norm(R.inf, j, k);
          if (v > bn) { bn = v; best = j; }
        }
      }
      if (best != k) {
        swap_cols(R, k, best);
        std::swap(out.perm[k], out.perm[best]);
      }
    }
    const std::size_t len = m - k;
    if (col_norm(R.st, k, k) > thr_st) {
      std::size_t piv = k;
      for (std::size_t i = k; i < m; ++i)
        if (R.st(i, k).norm() > R.st(piv, k).norm()) piv = i;
      if (piv != k) {
        swap_rows(R, k, piv);
        swap_cols(Q, k, piv);
      }
      DQMatrix x = R.block(k, k, len, 1);
      DualQuaternion x0 = x.at(0, 0);
      DualQuaternion omega = x0 * DualQuaternion(dn_inv(dq_norm(x0)));
      DualQuaternion alpha = -(omega * DualQuaternion(vec_norm(x)));
      DQMatrix w = x;
      w.set(0, 0, x0 - alpha);
      DualQuaternion ww = inner(w, w);
      reflect(R, Q, k, w, dn_inv(DualNumber{ww.st.w, ww.inf.w}) * DualNumber(2.0));
      for (std::size_t i = k + 1; i < m; ++i) R.set(i, k, {});
      R.set(k, k, alpha);
    } else if (col_norm(R.inf, k, k) > thr_inf) {
      std::size_t piv = k;
      for (std::size_t i = k; i < m; ++i)
        if (R.inf(i, k).norm() > R.inf(piv, k).norm()) piv = i;
      if (piv != k) {
        swap_rows(R, k, piv);
        swap_cols(Q, k, piv);
      }
      QMatrix x = R.inf.block(k, k, len, 1);
      Quaternion x0 = x(0, 0);
      Quaternion omega = x0 * (1.0 / x0.norm());
      Quaternion alpha = -(omega * x.frob());
      QMatrix w = x;
      w(0, 0) = x0 - alpha;
      double two_over = 2.0 / (w.frob() * w.frob());
      reflect(R, Q, k, DQMatrix(w), DualNumber(two_over));
      for (std::size_t i = k + 1; i < m; ++i) R.set(i, k, {});
      R.set(k, k, {Quaternion(), alpha});
    } else {
      for (std::size_t i = k + 1; i < m; ++i) R.set(i, k, {});
    }
  }

  for (std::size_t k = 0; k < p; ++k) {
    DualQuaternion d = R.at(k, k);
    DualQuaternion phi;
    if (d.st.norm() > thr_st) {
      phi = d * DualQuaternion(dn_inv(dq_norm(d)));
      ++out.arank;
      ++out.rank;
    } else if (d.inf.norm() > thr_inf) {
      phi = DualQuaternion(d.inf * (1.0 / d.inf.norm()));
      ++out.rank;
    } else {
      continue;
    }
    DualQuaternion pc = phi.conj();
    for (std::size_t c = 0; c < n; ++c) R.set(k, c, pc * R.at(k, c));
    for (std::size_t r = 0; r < m; ++r) Q.set(r, k, Q.at(r, k) * phi);
  }
  return out;
}

}  // namespace dq
