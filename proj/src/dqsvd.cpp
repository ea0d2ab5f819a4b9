#include <algorithm>
#include <cmath>

#include "dq/decomp.hpp"

namespace dq {

namespace {

Quaternion imag_part(const Quaternion& q) { return {0.0, q.x, q.y, q.z}; }

// Right-multiplies column j of both parts by the unit quaternion w.
void rotate_col(QMatrix& m, std::size_t j, const Quaternion& w) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = m(i, j) * w;
}

Quaternion leading_phase(const QMatrix& m, std::size_t j) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double nq = m(i, j).norm();
    if (nq > 1e-8) return m(i, j) * (1.0 / nq);
  }
  return Quaternion(1.0);
}

}  // namespace

double appreciable_threshold(double smax, std::size_t rows, std::size_t cols, const ToleranceConfig& tol) {
  return std::max(tol.rank_tol * static_cast<double>(std::max(rows, cols)) * smax, tol.zero_tol);
}

SvdResult dqsvd(const DQMatrix& a, const ToleranceConfig& tol, bool rotate_null) {
  const std::size_t m = a.rows(), n = a.cols(), p = std::min(m, n);
  SvdResult out;
  QSvd s0 = qsvd(a.st);
  QMatrix U0 = std::move(s0.U), V0 = std::move(s0.V);
  const std::vector<double>& sig = s0.sigma;
  const double smax = p ? sig[0] : 0.0;
  const double thr = appreciable_threshold(smax, m, n, tol);
  std::size_t r = 0;
  while (r < p && sig[r] > thr) ++r;

  // clusters of (numerically) repeated appreciable singular values
  std::vector<std::size_t> cluster(r);
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  for (std::size_t i = 0; i < r;) {
    std::size_t j = i + 1;
    while (j < r && sig[j - 1] - sig[j] <= 1e-8 * sig[j - 1]) ++j;
    for (std::size_t k = i; k < j; ++k) cluster[k] = spans.size();
    spans.emplace_back(i, j);
    i = j;
  }

  QMatrix B = U0.adjoint() * a.inf * V0;
  for (auto [i0, i1] : spans) {
    const std::size_t w = i1 - i0;
    if (w < 2) continue;
    QMatrix bc = B.block(i0, i0, w, w);
    QMatrix h = (bc + bc.adjoint()) * 0.5;
    // shift to a positive definite matrix so its SVD is its eigendecomposition
    double shift = h.frob() + 1.0;
    for (std::size_t k = 0; k < w; ++k) h(k, k).w += shift;
    QMatrix g = qsvd(h).V;
    U0.set_block(0, i0, U0.block(0, i0, m, w) * g);
    V0.set_block(0, i0, V0.block(0, i0, n, w) * g);
  }

  std::vector<double> tau;
  std::size_t null_pairs = 0;
  if (r < m && r < n) {
    QMatrix bn = (U0.adjoint() * a.inf * V0).block(r, r, m - r, n - r);
    QSvd sn = qsvd(bn);
    tau = sn.sigma;
    if (rotate_null) {
      U0.set_block(0, r, U0.block(0, r, m, m - r) * sn.U);
      V0.set_block(0, r, V0.block(0, r, n, n - r) * sn.V);
      null_pairs = tau.size();
    }
  }

  for (std::size_t i = 0; i < std::max(m, n); ++i) {
    if (i < r || (i >= r && i - r < null_pairs)) {
      Quaternion w = leading_phase(U0, i).conj();
      rotate_col(U0, i, w);
      rotate_col(V0, i, w);
    } else {
      if (i < m) rotate_col(U0, i, leading_phase(U0, i).conj());
      if (i < n) rotate_col(V0, i, leading_phase(V0, i).conj());
    }
  }

  B = U0.adjoint() * a.inf * V0;
  QMatrix K(m, m), L(n, n);
  for (std::size_t i = 0; i < r; ++i) {
    K(i, i) = imag_part(B(i, i)) * (1.0 / sig[i]);
    for (std::size_t j = i + 1; j < r; ++j) {
      Quaternion kij, lij;
      if (cluster[i] == cluster[j]) {
        kij = B(i, j) * (1.0 / sig[i]);
      } else {
        double det = sig[j] * sig[j] - sig[i] * sig[i];
        kij = (sig[j] * B(i, j) + sig[i] * B(j, i).conj()) * (1.0 / det);
        lij = (sig[j] * B(j, i).conj() + sig[i] * B(i, j)) * (1.0 / det);
      }
      K(i, j) = kij;
      K(j, i) = -kij.conj();
      L(i, j) = lij;
      L(j, i) = -lij.conj();
    }
    for (std::size_t j = r; j < n; ++j) {
      L(i, j) = B(i, j) * (-1.0 / sig[i]);
      L(j, i) = -L(i, j).conj();
    }
    for (std::size_t j = r; j < m; ++j) {
      K(j, i) = B(j, i) * (1.0 / sig[i]);
      K(i, j) = -K(j, i).conj();
    }
  }

  out.U = DQMatrix(U0, U0 * K);
  out.V = DQMatrix(V0, V0 * L);
  for (std::size_t i = 0; i < r; ++i) out.sigma.push_back({sig[i], B(i, i).w});
  double tmax = tau.empty() ? 0.0 : tau[0];
  double thr_inf = std::max(tol.rank_tol * static_cast<double>(std::max(m, n)) * std::max(smax, tmax), tol.zero_tol);
  std::size_t t = 0;
  for (double v : tau) {
    if (!(v > thr_inf)) break;
    ++t;
    if (rotate_null) out.sigma.push_back({0.0, v});
  }
  out.profile = {r + t, r};
  return out;
}

DQMatrix svd_middle(const SvdResult& s, std::size_t rows, std::size_t cols) {
  return DQMatrix::diag(s.sigma, rows, cols);
}

DQMatrix orthonormalize(const DQMatrix& cols, double zero_tol) {
  DQMatrix q = cols;
  for (std::size_t j = 0; j < q.cols(); ++j) {
    DQMatrix v = q.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        DQMatrix e = q.col(k);
        v = v - mul_right(e, inner(e, v));
      }
    DualNumber nv = vec_norm(v, zero_tol);
    if (!is_appreciable(nv, zero_tol)) throw Error(ErrorKind::NonAppreciable, "columns are not appreciably independent");
    q.set_block(0, j, scale(v, dn_inv(nv, zero_tol)));
  }
  return q;
}

DQMatrix complete_unitary(const DQMatrix& cols, std::size_t n) {
  if (cols.rows() != n) throw Error(ErrorKind::DimensionMismatch, "completion basis has the wrong length");
  DQMatrix basis = cols;
  std::vector<DQMatrix> have;
  for (std::size_t j = 0; j < cols.cols(); ++j) have.push_back(cols.col(j));
  std::vector<bool> used(n, false);
  while (have.size() < n) {
    double best = -1.0;
    std::size_t bi = 0;
    DQMatrix pick;
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      DQMatrix v(n, 1);
      v.st(c, 0) = Quaternion(1.0);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& e : have) v = v - mul_right(e, inner(e, v));
      double nr = v.st.frob();
      if (nr > best) { best = nr; bi = c; pick = v; }
    }
    if (!(best > 1e-6)) throw Error(ErrorKind::ConvergenceFailure, "could not complete unitary basis");
    used[bi] = true;
    DualNumber nv = vec_norm(pick);
    have.push_back(scale(pick, dn_inv(nv)));
  }
  return hstack(have);
}

}  // namespace dq
