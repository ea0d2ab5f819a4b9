#include "dq/ppsvd.hpp"

#include <algorithm>
#include <cmath>

#include "dq/error.hpp"

namespace dq {

namespace {

DQMatrix eye(std::size_t n) { return DQMatrix::identity(n); }

DQMatrix embed(const DQMatrix& a, std::size_t off, std::size_t n) {
  DQMatrix out = eye(n);
  out.set_block(off, off, a);
  return out;
}

struct Compressed {
  DQMatrix transform;
  std::size_t appreciable = 0;
};

Compressed compress(const DQMatrix& a, const ToleranceConfig& tol) {
  if (a.rows() == 0 || a.cols() == 0) return {eye(a.cols()), 0};
  CompressResult c = compress_columns(a, tol, false);
  return {c.transform, c.appreciable};
}

// left unitary factor of an unpivoted QR, m×m
DQMatrix qr_left(const DQMatrix& a, const ToleranceConfig& tol) {
  if (a.rows() == 0 || a.cols() == 0) return eye(a.rows());
  return dqqr(a, tol, false).Q;
}

// Running state: form_A = U*·A·P, form_B = P⁻¹·B·Q, form_C = Q⁻¹·C·V.
struct Work {
  DQMatrix A, B, C;
  DQMatrix U, V, P, Pi, Q, Qi;

  void right_p(const DQMatrix& t, const DQMatrix& ti) {
    A = A * t;
    B = ti * B;
    P = P * t;
    Pi = ti * Pi;
  }
  void right_q(const DQMatrix& t, const DQMatrix& ti) {
    B = B * t;
    C = ti * C;
    Q = Q * t;
    Qi = ti * Qi;
  }
  void left_u(const DQMatrix& w) {
    A = w.adjoint() * A;
    U = U * w;
  }
  void right_v(const DQMatrix& w) {
    C = C * w;
    V = V * w;
  }
};

struct Pivot {
  std::size_t r0, rn, c0, cn;
};

// E with E[x, pivot rows] = F[x, pivot cols]·R⁻¹ for every row x outside the
// pivot rows; (I − E)·F has zeros in the pivot columns outside the pivot rows.
DQMatrix row_clear(const DQMatrix& f, const Pivot& pv, const ToleranceConfig& tol) {
  const std::size_t n = f.rows();
  DQMatrix e(n, n);
  if (pv.rn == 0) return e;
  DQMatrix rinv = mat_inverse(f.block(pv.r0, pv.c0, pv.rn, pv.cn), tol);
  DQMatrix m = f.block(0, pv.c0, n, pv.cn) * rinv;
  for (std::size_t x = 0; x < n; ++x) {
    if (x >= pv.r0 && x < pv.r0 + pv.rn) continue;
    e.set_block(x, pv.r0, m.block(x, 0, 1, pv.rn));
  }
  return e;
}

// F with F[pivot cols, x] = R⁻¹·f[pivot rows, x] for x outside the pivot
// columns; f·(I − F) has zeros in the pivot rows outside the pivot columns.
DQMatrix col_clear(const DQMatrix& f, const Pivot& pv, const ToleranceConfig& tol) {
  const std::size_t n = f.cols();
  DQMatrix e(n, n);
  if (pv.rn == 0) return e;
  DQMatrix rinv = mat_inverse(f.block(pv.r0, pv.c0, pv.rn, pv.cn), tol);
  DQMatrix m = rinv * f.block(pv.r0, 0, pv.rn, n);
  for (std::size_t x = 0; x < n; ++x) {
    if (x >= pv.c0 && x < pv.c0 + pv.cn) continue;
    e.set_block(pv.c0, x, m.block(0, x, pv.cn, 1));
  }
  return e;
}

// row ops on C are realised as Q⁻¹ = I − E, Q = I + E
void clear_c_rows(Work& w, const Pivot& pv, const ToleranceConfig& tol) {
  DQMatrix e = row_clear(w.C, pv, tol);
  DQMatrix i = eye(e.rows());
  w.right_q(i + e, i - e);
}

void clear_b_rows(Work& w, const Pivot& pv, const ToleranceConfig& tol) {
  DQMatrix e = row_clear(w.B, pv, tol);
  DQMatrix i = eye(e.rows());
  w.right_p(i + e, i - e);
}

// block diag(I_off, t, I) of size n and its inverse
void scale_block(std::size_t off, const DQMatrix& t, std::size_t n, DQMatrix& out, DQMatrix& out_inv,
                 const ToleranceConfig& tol) {
  out = embed(t, off, n);
  out_inv = embed(t.rows() == 0 ? t : mat_inverse(t, tol), off, n);
}

}  // namespace

BlockPattern ppsvd_pattern_a(const PpsvdBlockDims& d) {
  BlockPattern p({d.i, d.m - d.i}, {d.i, d.n - d.i});
  p.set(0, 0, BlockKind::Identity);
  p.set(1, 1, BlockKind::Eps);
  return p;
}

BlockPattern ppsvd_pattern_b(const PpsvdBlockDims& d) {
  BlockPattern p({d.j, d.i - d.j, d.k, d.n - d.i - d.k}, {d.j, d.k, d.p - d.j - d.k});
  p.set(0, 0, BlockKind::Identity);
  p.set(1, 1, BlockKind::Eps);
  p.set(1, 2, BlockKind::Eps);
  p.set(2, 1, BlockKind::Identity);
  p.set(2, 2, BlockKind::Eps);
  p.set(3, 2, BlockKind::Eps);
  return p;
}

BlockPattern ppsvd_pattern_c(const PpsvdBlockDims& d) {
  BlockPattern p({d.l, d.j - d.l, d.s, d.k - d.s, d.t, d.p - d.j - d.k - d.t}, {d.l, d.s, d.t, d.q - d.l - d.s - d.t});
  p.set(0, 0, BlockKind::RealDiag);
  for (std::size_t bj = 1; bj < 4; ++bj) p.set(1, bj, BlockKind::Eps);
  p.set(2, 0, BlockKind::Eps);
  p.set(2, 1, BlockKind::Identity);
  p.set(2, 3, BlockKind::Eps);
  p.set(3, 3, BlockKind::Eps);
  p.set(4, 0, BlockKind::Eps);
  p.set(4, 2, BlockKind::Identity);
  p.set(4, 3, BlockKind::Eps);
  p.set(5, 3, BlockKind::Eps);
  return p;
}

PpsvdResult dqppsvd(const DQMatrix& a, const DQMatrix& b, const DQMatrix& c, const ToleranceConfig& tol) {
  const std::size_t m = a.rows(), n = a.cols(), p = b.cols(), q = c.cols();
  if (b.rows() != n) throw Error(ErrorKind::DimensionMismatch, "B must have as many rows as A has columns");
  if (c.rows() != p) throw Error(ErrorKind::DimensionMismatch, "C must have as many rows as B has columns");

  Work w{a, b, c, eye(m), eye(q), eye(n), eye(n), eye(p), eye(p)};
  PpsvdBlockDims d{m, n, p, q};

  // unitary compressions: A columns, then the two row blocks of B, then three of C
  Compressed ca = compress(w.A, tol);
  d.i = ca.appreciable;
  w.right_p(ca.transform, ca.transform.adjoint());

  Compressed cb1 = compress(w.B.block(0, 0, d.i, p), tol);
  d.j = cb1.appreciable;
  w.right_q(cb1.transform, cb1.transform.adjoint());
  Compressed cb2 = compress(w.B.block(d.i, d.j, n - d.i, p - d.j), tol);
  d.k = cb2.appreciable;
  DQMatrix t2 = embed(cb2.transform, d.j, p);
  w.right_q(t2, t2.adjoint());

  Compressed cc1 = compress(w.C.block(0, 0, d.j, q), tol);
  d.l = cc1.appreciable;
  w.right_v(cc1.transform);
  Compressed cc2 = compress(w.C.block(d.j, d.l, d.k, q - d.l), tol);
  d.s = cc2.appreciable;
  w.right_v(embed(cc2.transform, d.l, q));
  const std::size_t jk = d.j + d.k, ls = d.l + d.s;
  Compressed cc3 = compress(w.C.block(jk, ls, p - jk, q - ls), tol);
  d.t = cc3.appreciable;
  w.right_v(embed(cc3.transform, ls, q));

  // triangularize the pivot blocks: C on the Q side, B on the P side, A on the U side
  for (auto [r0, rn, c0, cn] : {Pivot{0, d.j, 0, d.l}, Pivot{d.j, d.k, d.l, d.s}, Pivot{jk, p - jk, ls, d.t}}) {
    DQMatrix t = embed(qr_left(w.C.block(r0, c0, rn, cn), tol), r0, p);
    w.right_q(t, t.adjoint());
  }
  for (auto [r0, rn, c0, cn] : {Pivot{0, d.i, 0, d.j}, Pivot{d.i, n - d.i, d.j, d.k}}) {
    DQMatrix t = embed(qr_left(w.B.block(r0, c0, rn, cn), tol), r0, n);
    w.right_p(t, t.adjoint());
  }
  w.left_u(qr_left(w.A.block(0, 0, m, d.i), tol));

  // block Gauss-Jordan on the rows of C, then on the rows of B; the diagonal
  // blocks of B end up block diagonal along the row split of C
  for (const Pivot& pv : {Pivot{0, d.l, 0, d.l}, Pivot{d.j, d.s, d.l, d.s}, Pivot{jk, d.t, ls, d.t}})
    clear_c_rows(w, pv, tol);
  for (const Pivot& pv : {Pivot{0, d.l, 0, d.l}, Pivot{d.l, d.j - d.l, d.l, d.j - d.l}, Pivot{d.i, d.s, d.j, d.s},
                          Pivot{d.i + d.s, d.k - d.s, d.j + d.s, d.k - d.s}})
    clear_b_rows(w, pv, tol);
  w.left_u(qr_left(w.A.block(0, 0, m, d.i), tol));

  // normalize: A's pivot through P, both pivot blocks of B through Q, then C's
  // s pivot (compensated on P) and t pivot
  DQMatrix t, ti;
  scale_block(0, w.A.block(0, 0, d.i, d.i), n, ti, t, tol);
  w.right_p(t, ti);
  scale_block(0, w.B.block(0, 0, d.j, d.j), p, ti, t, tol);
  w.right_q(t, ti);
  scale_block(d.j, w.B.block(d.i, d.j, d.k, d.k), p, ti, t, tol);
  w.right_q(t, ti);
  DQMatrix rs = w.C.block(d.j, d.l, d.s, d.s);
  scale_block(d.j, rs, p, t, ti, tol);
  w.right_q(t, ti);
  scale_block(d.i, rs, n, t, ti, tol);
  w.right_p(t, ti);
  scale_block(jk, w.C.block(jk, ls, d.t, d.t), p, t, ti, tol);
  w.right_q(t, ti);

  // SVD of the l×l pivot of C; W moves through Q, P and U to keep the identities
  if (d.l > 0) {
    SvdResult sv = dqsvd(w.C.block(0, 0, d.l, d.l), tol);
    DQMatrix wq = embed(sv.U, 0, p);
    w.right_q(wq, wq.adjoint());
    w.right_v(embed(sv.V, 0, q));
    DQMatrix wp = embed(sv.U, 0, n);
    w.right_p(wp, wp.adjoint());
    w.left_u(embed(sv.U, 0, m));
  }

  // clear the ε blocks to the right of A's identity and B's identity
  {
    DQMatrix f = col_clear(w.A, Pivot{0, d.i, 0, d.i}, tol);
    DQMatrix i = eye(n);
    w.right_p(i - f, i + f);
  }
  {
    DQMatrix f = col_clear(w.B, Pivot{0, d.j, 0, d.j}, tol);
    DQMatrix i = eye(p);
    w.right_q(i - f, i + f);
  }

  // C's top rows: [Σ, Yε] → [Σ, 0] by a blocked unitary
  std::vector<DualNumber> sigma;
  for (std::size_t x = 0; x < d.l; ++x) sigma.emplace_back(w.C.st(x, x).w, w.C.inf(x, x).w);
  if (d.l > 0 && d.l < q) {
    QMatrix mm = w.C.inf.block(0, d.l, d.l, q - d.l);
    for (std::size_t x = 0; x < d.l; ++x)
      for (std::size_t y = 0; y < mm.cols(); ++y) mm(x, y) = mm(x, y) * (-1.0 / sigma[x].st);
    w.right_v(blocked_unitary(mm));
  }

  PpsvdResult out;
  out.U = w.U;
  out.V = w.V;
  out.P = w.P;
  out.Pinv = w.Pi;
  out.Q = w.Q;
  out.Qinv = w.Qi;
  out.dims = d;
  out.formA = clean_to_pattern(w.A, ppsvd_pattern_a(d));
  out.formB = clean_to_pattern(w.B, ppsvd_pattern_b(d));
  out.formC = clean_to_pattern(w.C, ppsvd_pattern_c(d));
  out.sigma_appreciable = sigma;
  return out;
}

SvdResult product_svd_from_ppsvd(const PpsvdResult& r, const DQMatrix& a, const DQMatrix& b, const DQMatrix& c,
                                 const ToleranceConfig& tol) {
  const PpsvdBlockDims& d = r.dims;
  const std::size_t m = d.m, q = d.q, l = d.l;
  DQMatrix prod = r.formA * r.formB * r.formC;
  QMatrix tcorner = prod.inf.block(l, l, m - l, q - l);

  // U*(ABC)V must equal diag(Σ, Tε)
  DQMatrix expect(m, q);
  for (std::size_t x = 0; x < l; ++x) expect.set(x, x, DualQuaternion(Quaternion(r.sigma_appreciable[x].st),
                                                                      Quaternion(r.sigma_appreciable[x].inf)));
  expect.inf.set_block(l, l, tcorner);
  DQMatrix direct = r.U.adjoint() * (a * b * c) * r.V;
  FrobPair dev = frob_norms(direct - expect);
  double sc = std::max({scale_of(a) * scale_of(b) * scale_of(c), 1.0});
  if (dev.st_norm > tol.residual_tol_st * sc || dev.inf_norm > tol.residual_tol_inf * sc)
    throw Error(ErrorKind::InconsistentResult, "product of the forms does not match U*(ABC)V");

  QSvd ts = qsvd(tcorner);
  double smax = 0.0;
  for (const DualNumber& x : r.sigma_appreciable) smax = std::max(smax, x.st);
  for (double x : ts.sigma) smax = std::max(smax, x);
  const double thr = appreciable_threshold(smax, m, q, tol);

  SvdResult out;
  out.U = r.U * embed(DQMatrix(ts.U), l, m);
  out.V = r.V * embed(DQMatrix(ts.V), l, q);
  out.sigma = r.sigma_appreciable;
  for (double x : ts.sigma)
    if (x > thr) out.sigma.emplace_back(0.0, x);
  out.profile = {out.sigma.size(), l};
  return out;
}

}  // namespace dq
