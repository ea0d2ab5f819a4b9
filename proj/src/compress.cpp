#include "dq/decomp.hpp"

namespace dq {

CompressResult compress_columns(const DQMatrix& a, const ToleranceConfig& tol, bool split_infinitesimal) {
  SvdResult s = dqsvd(a, tol, split_infinitesimal);
  CompressResult out;
  out.transform = s.V;
  out.appreciable = s.profile.arank;
  out.infinitesimal = s.profile.rank - s.profile.arank;
  DQMatrix c = a * s.V;
  // the standard part beyond the appreciable block is zero by construction
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = out.appreciable; j < c.cols(); ++j) {
      c.st(i, j) = Quaternion();
      if (split_infinitesimal && j >= s.profile.rank) c.inf(i, j) = Quaternion();
    }
  out.compressed = c;
  return out;
}

CompressResult compress_rows(const DQMatrix& a, const ToleranceConfig& tol, bool split_infinitesimal) {
  CompressResult c = compress_columns(a.adjoint(), tol, split_infinitesimal);
  c.transform = c.transform.adjoint();
  c.compressed = c.compressed.adjoint();
  return c;
}

CanonicalForm canonical_diag_form(const DQMatrix& a, Side side, const ToleranceConfig& tol) {
  SvdResult s = dqsvd(a, tol, true);
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t r = s.profile.arank, t = s.profile.rank;
  std::vector<DualNumber> d, dinv, shape;
  for (std::size_t i = 0; i < t; ++i) {
    DualNumber v = i < r ? s.sigma[i] : DualNumber(s.sigma[i].inf);
    d.push_back(v);
    dinv.push_back(dn_inv(v, 0.0));
    shape.push_back(i < r ? DualNumber(1.0) : DualNumber(0.0, 1.0));
  }
  auto padded = [](std::vector<DualNumber> v, std::size_t k) {
    v.resize(k, DualNumber(1.0));
    return DQMatrix::diag(v, k, k);
  };
  CanonicalForm out;
  out.profile = s.profile;
  out.form = DQMatrix::diag(shape, m, n);
  if (side == Side::right) {
    out.left = s.U;
    out.left_inv = s.U.adjoint();
    out.right = s.V * padded(dinv, n);
    out.right_inv = padded(d, n) * s.V.adjoint();
  } else {
    out.left = s.U * padded(d, m);
    out.left_inv = padded(dinv, m) * s.U.adjoint();
    out.right = s.V;
    out.right_inv = s.V.adjoint();
  }
  return out;
}

}  // namespace dq
