#include "dq/rsvd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dq {

namespace {

std::vector<std::size_t> reversed_range(std::size_t n, std::size_t off, std::size_t len) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::reverse(p.begin() + static_cast<std::ptrdiff_t>(off), p.begin() + static_cast<std::ptrdiff_t>(off + len));
  return p;
}

DQMatrix eye(std::size_t n) { return DQMatrix::identity(n); }

// I with a in the trailing corner starting at (off, off)
DQMatrix embed(const DQMatrix& a, std::size_t off, std::size_t n) {
  DQMatrix out = eye(n);
  out.set_block(off, off, a);
  return out;
}

double min_over_max_sv(const QMatrix& a) {
  QSvd s = qsvd(a);
  if (s.sigma.empty()) return 1.0;
  if (s.sigma.front() == 0.0) return 0.0;
  return s.sigma.back() / s.sigma.front();
}

void certify(const DQMatrix& m, const char* name, const ToleranceConfig& tol) {
  if (m.rows() == 0) return;
  double ratio = min_over_max_sv(m.st);
  if (ratio <= tol.rank_tol * static_cast<double>(m.rows()))
    throw Error(ErrorKind::NonsingularityCertificationFailure,
                std::string(name) + " has a numerically singular standard part");
}

struct Stage {
  const DQMatrix &a, &b, &c;
  DQMatrix P, Q, U, V;
  DQMatrix A() const { return P * a * Q; }
  DQMatrix B() const { return P * b * U; }
  DQMatrix C() const { return V * c * Q; }
};

RsvdResult rsvd_core(const DQMatrix& a, const DQMatrix& b, const DQMatrix& c, bool nonsingular,
                     const ToleranceConfig& tol) {
  const std::size_t m = a.rows(), n = a.cols(), p = b.cols(), q = c.rows();
  if (b.rows() != m) throw Error(ErrorKind::DimensionMismatch, "B must have as many rows as A");
  if (c.cols() != n) throw Error(ErrorKind::DimensionMismatch, "C must have as many columns as A");

  // step 1: pair (A, C), then scale the cosine-sine columns by S_C^{-1}
  GsvdResult g1 = nonsingular ? dqgsvd1(a, c, GsvdVariant::nonsingular_x, tol) : dqgsvd2(a, c, tol);
  const std::size_t jkl = g1.dims.r, r123 = g1.dims.k_or_t - jkl, c2 = g1.dims.s;
  std::vector<DualNumber> sc(n, DualNumber(1.0));
  for (std::size_t i = 0; i < g1.dims.q; ++i) sc[jkl + i] = dn_inv(g1.cs_pairs[i].s, 0.0);
  Stage st{a, b, c, g1.U.adjoint(), (nonsingular ? g1.X_inv : g1.X) * DQMatrix::diag(sc, n, n), eye(p),
           g1.V.adjoint()};
  const std::size_t top = q - r123;

  // step 2: pair (A-block*, B-block*) on the rows below j+k+l
  DQMatrix a2 = st.A(), b2 = st.B();
  DQMatrix ablk = a2.block(jkl, jkl, m - jkl, r123).adjoint();
  DQMatrix bblk = b2.block(jkl, 0, m - jkl, p).adjoint();
  GsvdResult g2 = nonsingular ? dqgsvd1(ablk, bblk, GsvdVariant::nonsingular_x, tol) : dqgsvd2(ablk, bblk, tol);
  const std::size_t r = g2.dims.r, s = g2.dims.q, t = g2.dims.l_or_t1, tp = g2.dims.k_or_t;
  const std::size_t t_hat = tp - r - s - t, s1_hat = r123 - r - s - t;
  // θ descending: reverse the middle block on every side
  const std::size_t voff = p - s - (tp - r - s);
  DQMatrix mx = select_cols(nonsingular ? g2.X_inv : g2.X, reversed_range(m - jkl, r, s));
  DQMatrix q2 = select_cols(g2.U, reversed_range(r123, r, s));
  DQMatrix u2 = select_cols(g2.V, reversed_range(p, voff, s));
  std::vector<DualNumber> theta, delta;
  for (std::size_t i = s; i-- > 0;) {
    theta.push_back(g2.cs_pairs[i].c);
    delta.push_back(g2.cs_pairs[i].s);
  }
  st.P = embed(mx.adjoint(), jkl, m) * st.P;
  st.Q = st.Q * embed(q2, jkl, n);
  st.U = st.U * u2;
  st.V = embed(q2.adjoint(), top, q) * st.V;

  // step 3: clear the B entries of the leading rows against S_B and I
  const std::size_t rs = jkl + r, rt = jkl + r + s, cb1 = p - s - t - t_hat;
  {
    DQMatrix a3 = st.A(), b3 = st.B();
    DQMatrix bs = b3.block(0, cb1, jkl, s), bt = b3.block(0, cb1 + s, jkl, t + t_hat);
    DQMatrix sbinv = s > 0 ? mat_inverse(b3.block(rs, cb1, s, s), tol) : DQMatrix(0, 0);
    DQMatrix f = bs * sbinv;
    DQMatrix p3 = eye(m), q3 = eye(n);
    p3.set_block(0, rs, DQMatrix(jkl, s) - f);
    p3.set_block(0, rt, DQMatrix(jkl, t + t_hat) - bt);
    q3.set_block(0, rs, f * a3.block(rs, rs, s, s));
    q3.set_block(0, rt, bt * a3.block(rt, rt, t + t_hat, t));
    st.P = p3 * st.P;
    st.Q = st.Q * q3;

    // the column update leaves C̃₁ε above the s rows of C
    DQMatrix c3 = st.C();
    QMatrix ct = c3.inf.block(0, rs, top, s);
    DQMatrix v3 = eye(q);
    v3.inf.set_block(0, top + r, QMatrix(top, s) - ct);
    v3.inf.set_block(top + r, 0, ct.adjoint());
    st.V = v3 * st.V;
  }

  // step 4: SVD of B₁ and the α/γ rescaling
  RsvdBlockDims d;
  {
    DQMatrix b4 = st.B();
    SvdResult sb = dqsvd(b4.block(0, 0, jkl, cb1), tol);
    d.j = sb.profile.arank;
    d.k = sb.profile.rank - sb.profile.arank;
    d.l = jkl - sb.profile.rank;
    std::vector<DualNumber> dd(jkl, DualNumber(1.0)), ddinv(jkl, DualNumber(1.0));
    for (std::size_t i = 0; i < sb.profile.rank; ++i) {
      dd[i] = i < d.j ? sb.sigma[i] : DualNumber(sb.sigma[i].inf);
      ddinv[i] = dn_inv(dd[i], 0.0);
    }
    std::vector<DualNumber> qd(n, DualNumber(1.0));
    for (std::size_t i = 0; i < s; ++i) qd[rs + i] = triple_from_cs(theta[i], delta[i]).gamma;
    DQMatrix p4 = embed(DQMatrix::diag(ddinv, jkl, jkl) * sb.U.adjoint(), 0, m);
    DQMatrix q4 = embed(sb.U * DQMatrix::diag(dd, jkl, jkl), 0, n) * DQMatrix::diag(qd, n, n);
    st.P = p4 * st.P;
    st.Q = st.Q * q4;
    st.U = st.U * embed(sb.V, 0, p);
  }

  d.r = r;
  d.s = s;
  d.t = t;
  d.t_hat = t_hat;
  d.s1_hat = s1_hat;
  d.top = top;
  d.c2 = c2;
  d.c3 = n - jkl - r123 - c2;
  d.r1_hat = nonsingular ? g2.dims.s : 0;
  d.r2_hat = m - jkl - tp - d.r1_hat;
  d.m1 = jkl + r + s + t + t_hat;
  d.m2 = d.k2 = m - d.m1;
  d.k1 = c2 + d.c3;

  if (nonsingular) {
    // step 5: blocked eliminations against the appreciable pivots
    const std::size_t cc = jkl + r123, tail = d.m1;
    {
      DQMatrix a5 = st.A();
      DQMatrix q5 = eye(n);
      q5.set_block(0, cc, DQMatrix(jkl + r, c2) - a5.block(0, cc, jkl + r, c2));
      if (s > 0)
        q5.set_block(rs, cc, DQMatrix(s, c2) - mat_inverse(a5.block(rs, rs, s, s), tol) * a5.block(rs, cc, s, c2));
      st.Q = st.Q * q5;
    }
    {
      DQMatrix a5 = st.A();
      const std::size_t h = m - tail;
      DQMatrix p5 = eye(m);
      p5.set_block(tail, jkl, DQMatrix(h, r) - a5.block(tail, jkl, h, r));
      if (s > 0)
        p5.set_block(tail, rs, DQMatrix(h, s) - a5.block(tail, rs, h, s) * mat_inverse(a5.block(rs, rs, s, s), tol));
      st.P = p5 * st.P;
    }
    // step 6: standard SVD of the remaining ε corner
    if (c2 > 0 && m > tail) {
      DQMatrix a6 = st.A();
      QSvd x = qsvd(a6.inf.block(tail, cc, m - tail, c2));
      st.P = embed(DQMatrix(x.U.adjoint()), tail, m) * st.P;
      DQMatrix q6 = eye(n);
      q6.set_block(cc, cc, DQMatrix(x.V));
      st.Q = st.Q * q6;
    }
    certify(st.P, "P", tol);
    certify(st.Q, "Q", tol);
  }

  RsvdResult out;
  out.dims = d;
  DQMatrix fa = st.A();
  out.formA = clean_to_pattern(fa, rsvd_pattern_a(d, nonsingular));
  out.leftover = pattern_residual(out.formA, rsvd_pattern_a(d));
  out.formB = clean_to_pattern(st.B(), rsvd_pattern_b(d, p));
  out.formC = clean_to_pattern(st.C(), rsvd_pattern_c(d));
  out.P = st.P;
  out.Q = st.Q;
  out.U = st.U;
  out.V = st.V;
  out.pq_nonsingular = nonsingular;
  for (std::size_t i = 0; i < t; ++i) out.wtS_A.push_back(out.formA.inf(rt + i, rt + i).w);
  out.theta = theta;
  out.delta = delta;
  out.triples = restricted_triples(out, tol);
  return out;
}

}  // namespace

RestrictedTriple triple_from_cs(DualNumber theta, DualNumber delta) {
  DualNumber root = dn_sqrt(DualNumber(1.0) + theta * theta, 0.0);
  DualNumber gamma = theta / root;
  return {theta * gamma, delta, gamma};
}

std::vector<RestrictedTriple> restricted_triples(const RsvdResult& res, const ToleranceConfig& tol) {
  const RsvdBlockDims& d = res.dims;
  if (res.theta.size() != d.s || res.delta.size() != d.s)
    throw Error(ErrorKind::InconsistentResult, "cosine-sine data does not match the s block");
  const std::size_t ra = d.jkl() + d.r, rb = d.jkl() + d.r, cb = res.formB.cols() - d.s - d.t - d.t_hat,
                    rc = d.top + d.r;
  std::vector<RestrictedTriple> out;
  for (std::size_t i = 0; i < d.s; ++i) {
    RestrictedTriple tr = triple_from_cs(res.theta[i], res.delta[i]);
    DualQuaternion fa = res.formA.at(ra + i, ra + i), fb = res.formB.at(rb + i, cb + i),
                   fc = res.formC.at(rc + i, ra + i);
    auto off = [&](DualNumber want, const DualQuaternion& got) {
      return std::abs(want.st - got.st.w) > tol.residual_tol_st || std::abs(want.inf - got.inf.w) > tol.residual_tol_inf;
    };
    if (off(tr.alpha, fa) || off(tr.beta, fb) || off(tr.gamma, fc))
      throw Error(ErrorKind::InconsistentResult, "restricted triple disagrees with the canonical forms");
    out.push_back(tr);
  }
  return out;
}

BlockPattern rsvd_pattern_a(const RsvdBlockDims& d, bool with_leftover) {
  BlockPattern pt({d.jkl(), d.r, d.s, d.t, d.t_hat, d.m2}, {d.jkl(), d.r, d.s, d.t, d.s1_hat, d.c2, d.c3});
  pt.set(0, 0, BlockKind::Identity);
  pt.set(1, 1, BlockKind::Identity);
  pt.set(2, 2, BlockKind::RealDiag);
  pt.set(3, 3, BlockKind::EpsDiag);
  pt.set(5, 5, BlockKind::EpsDiag);
  if (with_leftover) {
    pt.set(3, 5, BlockKind::Eps);
    pt.set(4, 5, BlockKind::Eps);
    pt.set(5, 3, BlockKind::Eps);
    pt.set(5, 4, BlockKind::Eps);
  }
  return pt;
}

BlockPattern rsvd_pattern_b(const RsvdBlockDims& d, std::size_t p) {
  const std::size_t cb1 = p - d.s - d.t - d.t_hat;
  BlockPattern pt({d.j, d.k, d.l, d.r, d.s, d.t + d.t_hat, d.m2}, {d.j, d.k, cb1 - d.j - d.k, d.s, d.t + d.t_hat});
  pt.set(0, 0, BlockKind::Identity);
  pt.set(1, 1, BlockKind::EpsIdentity);
  for (std::size_t bj = 0; bj < 3; ++bj) pt.set(3, bj, BlockKind::Eps);
  pt.set(4, 3, BlockKind::RealDiag);
  pt.set(5, 4, BlockKind::Identity);
  if (d.r1_hat > 0)
    for (std::size_t bj = 0; bj < 5; ++bj) pt.set(6, bj, BlockKind::Eps);
  return pt;
}

BlockPattern rsvd_pattern_c(const RsvdBlockDims& d) {
  BlockPattern pt({d.top, d.r, d.s, d.t, d.s1_hat}, {d.jkl(), d.r, d.s, d.t, d.s1_hat, d.c2, d.c3});
  pt.set(0, 0, BlockKind::Eps);
  pt.set(1, 1, BlockKind::Identity);
  pt.set(2, 2, BlockKind::RealDiag);
  pt.set(3, 3, BlockKind::Identity);
  pt.set(4, 4, BlockKind::Identity);
  for (std::size_t bi = 0; bi < 5; ++bi) pt.set(bi, 5, BlockKind::Eps);
  return pt;
}

RsvdResult dqrsvd1(const DQMatrix& a, const DQMatrix& b, const DQMatrix& c, const ToleranceConfig& tol) {
  return rsvd_core(a, b, c, false, tol);
}

RsvdResult dqrsvd2(const DQMatrix& a, const DQMatrix& b, const DQMatrix& c, const ToleranceConfig& tol) {
  return rsvd_core(a, b, c, true, tol);
}

}  // namespace dq
