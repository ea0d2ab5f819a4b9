#include "dq/gsvd.hpp"

#include <algorithm>

namespace dq {

namespace {

DQMatrix cols_of(const DQMatrix& a, const std::vector<std::size_t>& idx) { return select_cols(a, idx); }

void put_cols(DQMatrix& a, const std::vector<std::size_t>& idx, const DQMatrix& b) {
  for (std::size_t j = 0; j < idx.size(); ++j) a.set_block(0, idx[j], b.col(j));
}

DQMatrix block_rows(const DQMatrix& a, std::size_t i0, std::size_t h) { return a.block(i0, 0, h, a.cols()); }

void check_pair(const DQMatrix& a, const DQMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "pair must share the column count");
}

DQMatrix pad_cols(const DQMatrix& a, std::size_t n) {
  DQMatrix out(a.rows(), n);
  out.set_block(0, 0, a);
  return out;
}

}  // namespace

CsDecomposition cs_decompose(const DQMatrix& za, const DQMatrix& zb, const ToleranceConfig& tol) {
  check_pair(za, zb);
  const std::size_t m = za.rows(), p = zb.rows(), t = za.cols();
  SvdResult sa = dqsvd(za, tol);
  DQMatrix ua = sa.U, w = sa.V;
  DQMatrix y = zb * w;
  const double thr = appreciable_threshold(1.0, m + p, t, tol);

  std::vector<std::size_t> one, mid, inf, zero;
  std::vector<DualNumber> snorm(t);
  for (std::size_t i = 0; i < t; ++i) {
    snorm[i] = vec_norm(y.col(i), tol.zero_tol);
    if (snorm[i].st <= thr) one.push_back(i);
    else if (i < sa.profile.arank) mid.push_back(i);
    else if (i < sa.profile.rank) inf.push_back(i);
    else zero.push_back(i);
  }
  std::reverse(mid.begin(), mid.end());

  CsDecomposition out;
  out.r = one.size();
  out.q = mid.size();
  out.l = inf.size();

  // c = 1 columns: Z_B contributes only its ε part, diagonalized separately
  std::vector<double> sx;
  QMatrix ux;
  if (!one.empty()) {
    QSvd s = qsvd(cols_of(y, one).inf);
    DQMatrix vx(s.V);
    put_cols(w, one, cols_of(w, one) * vx);
    put_cols(ua, one, cols_of(ua, one) * vx);
    for (double v : s.sigma)
      if (v > thr) sx.push_back(v);
    ux = s.U;
  }
  out.r1 = sx.size();

  std::vector<DQMatrix> known;
  for (std::size_t i : mid) known.push_back(scale(y.col(i), dn_inv(snorm[i], 0.0)));
  std::vector<std::size_t> rest = inf;
  rest.insert(rest.end(), zero.begin(), zero.end());
  for (std::size_t i : rest) known.push_back(scale(y.col(i), dn_inv(snorm[i], 0.0)));
  for (std::size_t i = 0; i < out.r1; ++i) known.push_back(DQMatrix(ux.col(i)));
  DQMatrix kn = known.empty() ? DQMatrix(p, 0) : hstack(known);
  DQMatrix full = complete_unitary(orthonormalize(kn, tol.zero_tol), p);

  const std::size_t nq = mid.size(), nr = rest.size(), fill = p - nq - nr - out.r1;
  out.V = hstack({full.block(0, nq + nr, p, out.r1), full.block(0, nq + nr + out.r1, p, fill), full.block(0, 0, p, nq),
                  full.block(0, nq, p, nr)});

  std::vector<std::size_t> uorder = one;
  uorder.insert(uorder.end(), mid.begin(), mid.end());
  uorder.insert(uorder.end(), inf.begin(), inf.end());
  std::vector<bool> taken(m, false);
  for (std::size_t i : uorder) taken[i] = true;
  for (std::size_t i = 0; i < m; ++i)
    if (!taken[i]) uorder.push_back(i);
  out.U = select_cols(ua, uorder);

  std::vector<std::size_t> worder = one;
  worder.insert(worder.end(), mid.begin(), mid.end());
  worder.insert(worder.end(), rest.begin(), rest.end());
  out.W = select_cols(w, worder);

  out.SA = DQMatrix(m, t);
  out.SB = DQMatrix(p, t);
  for (std::size_t i = 0; i < out.r; ++i) out.SA.set(i, i, DualQuaternion(Quaternion(1.0)));
  for (std::size_t i = 0; i < out.r1; ++i) out.SB.set(i, i, DualQuaternion(DualNumber(0.0, sx[i])));
  for (std::size_t j = 0; j < nq; ++j) {
    std::size_t i = mid[j];
    DualNumber c = sa.sigma[i], s = snorm[i];
    out.SA.set(out.r + j, out.r + j, DualQuaternion(c));
    out.SB.set(out.r1 + fill + j, out.r + j, DualQuaternion(s));
    out.pairs.push_back({c, s});
  }
  for (std::size_t j = 0; j < inf.size(); ++j)
    out.SA.set(out.r + nq + j, out.r + nq + j, DualQuaternion(sa.sigma[inf[j]]));
  for (std::size_t j = 0; j < nr; ++j) out.SB.set(out.r1 + fill + nq + j, out.r + nq + j, DualQuaternion(Quaternion(1.0)));
  return out;
}

GsvdResult dqgsvd2(const DQMatrix& a, const DQMatrix& b, const ToleranceConfig& tol) {
  check_pair(a, b);
  const std::size_t m = a.rows(), p = b.rows(), n = a.cols();
  SvdResult sc = dqsvd(vstack({a, b}), tol);
  const std::size_t t = sc.profile.arank;
  DQMatrix z = sc.U.block(0, 0, m + p, t);
  CsDecomposition cs = cs_decompose(block_rows(z, 0, m), block_rows(z, m, p), tol);

  std::vector<DualNumber> dinv(n, DualNumber(0.0));
  for (std::size_t i = 0; i < t; ++i) dinv[i] = dn_inv(sc.sigma[i], 0.0);
  GsvdResult out;
  out.form = GsvdForm::quotient;
  out.U = cs.U;
  out.V = cs.V;
  out.X = sc.V * DQMatrix::diag(dinv, n, n) * blkdiag({cs.W, DQMatrix::identity(n - t)});
  out.SigmaA = pad_cols(cs.SA, n);
  out.SigmaB = pad_cols(cs.SB, n);
  out.cs_pairs = cs.pairs;
  out.dims = {m, p, n, cs.r, cs.q, cs.l, t, cs.r1, cs.r1, 0, sc.profile.rank, sc.profile.arank};
  return out;
}

GsvdResult dqgsvd1(const DQMatrix& a, const DQMatrix& b, GsvdVariant variant, const ToleranceConfig& tol) {
  check_pair(a, b);
  const std::size_t m = a.rows(), p = b.rows(), n = a.cols();
  SvdResult sc = dqsvd(vstack({a, b}), tol);
  const std::size_t k = sc.profile.rank, t = sc.profile.arank;
  const std::size_t lead = variant == GsvdVariant::plain ? k : t;
  DQMatrix z = sc.U.block(0, 0, m + p, lead);
  CsDecomposition cs = cs_decompose(block_rows(z, 0, m), block_rows(z, m, p), tol);

  GsvdResult out;
  out.form = GsvdForm::product;
  out.U = cs.U;
  out.V = cs.V;
  out.cs_pairs = cs.pairs;
  out.dims = {m, p, n, cs.r, cs.q, cs.l, lead, cs.r1, cs.r1, 0, k, t};

  if (variant == GsvdVariant::plain) {
    DQMatrix top = cs.W.adjoint() * DQMatrix::diag(sc.sigma, k, k) * sc.V.block(0, 0, n, k).adjoint();
    out.X = DQMatrix(n, n);
    out.X.set_block(0, 0, top);
    out.SigmaA = pad_cols(cs.SA, n);
    out.SigmaB = pad_cols(cs.SB, n);
    return out;
  }

  const std::size_t s = k - t;
  out.dims.s = s;
  QMatrix z2 = sc.U.st.block(0, t, m + p, s);
  QMatrix na = out.U.st.adjoint() * z2.block(0, 0, m, s);
  QMatrix nb = out.V.st.adjoint() * z2.block(m, 0, p, s);
  out.SigmaA = DQMatrix(m, n);
  out.SigmaA.set_block(0, 0, cs.SA);
  out.SigmaA.set_block(0, t, DQMatrix::eps(na));
  out.SigmaB = DQMatrix(p, n);
  out.SigmaB.set_block(0, 0, cs.SB);
  out.SigmaB.set_block(0, t, DQMatrix::eps(nb));

  std::vector<DualNumber> d(n, DualNumber(1.0)), dinv(n, DualNumber(1.0));
  for (std::size_t i = 0; i < k; ++i) {
    d[i] = i < t ? sc.sigma[i] : DualNumber(sc.sigma[i].inf);
    dinv[i] = dn_inv(d[i], 0.0);
  }
  DQMatrix w3 = blkdiag({cs.W, DQMatrix::identity(n - t)});
  out.X = w3.adjoint() * DQMatrix::diag(d, n, n) * sc.V.adjoint();
  out.X_inv = sc.V * DQMatrix::diag(dinv, n, n) * w3;
  out.x_nonsingular = true;
  return out;
}

}  // namespace dq
