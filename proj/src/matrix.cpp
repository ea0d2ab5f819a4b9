#include "dq/matrix.hpp"

#include <algorithm>
#include <string>

namespace dq {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::DimensionMismatch, what);
}

}  // namespace

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Quaternion(1.0);
  return m;
}

QMatrix QMatrix::diag(const std::vector<double>& d, std::size_t rows, std::size_t cols) {
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < d.size() && i < rows && i < cols; ++i) m(i, i) = Quaternion(d[i]);
  return m;
}

QMatrix QMatrix::block(std::size_t i0, std::size_t j0, std::size_t h, std::size_t w) const {
  require(i0 + h <= r_ && j0 + w <= c_, "block out of range");
  QMatrix b(h, w);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < w; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
  return b;
}

void QMatrix::set_block(std::size_t i0, std::size_t j0, const QMatrix& b) {
  require(i0 + b.rows() <= r_ && j0 + b.cols() <= c_, "set_block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
}

QMatrix QMatrix::adjoint() const {
  QMatrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j).conj();
  return t;
}

double QMatrix::frob() const {
  double s = 0.0;
  for (const auto& q : d_) s += q.norm2();
  return std::sqrt(s);
}

double QMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& q : d_) m = std::max(m, q.norm());
  return m;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  require(r_ == o.r_ && c_ == o.c_, "matrix sum shape mismatch");
  for (std::size_t k = 0; k < d_.size(); ++k) d_[k] += o.d_[k];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  require(r_ == o.r_ && c_ == o.c_, "matrix difference shape mismatch");
  for (std::size_t k = 0; k < d_.size(); ++k) d_[k] -= o.d_[k];
  return *this;
}

QMatrix& QMatrix::operator*=(double s) {
  for (auto& q : d_) q *= s;
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  require(a.cols() == b.rows(), "matrix product inner dimensions differ");
  QMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Quaternion& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator*(QMatrix a, double s) { return a *= s; }

QMatrix mul_right(QMatrix a, const Quaternion& q) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = a(i, j) * q;
  return a;
}

Quaternion inner(const QMatrix& u, const QMatrix& v) {
  require(u.rows() == v.rows() && u.cols() == 1 && v.cols() == 1, "inner product needs equal-length columns");
  Quaternion s;
  for (std::size_t i = 0; i < u.rows(); ++i) s += u(i, 0).conj() * v(i, 0);
  return s;
}

DQMatrix::DQMatrix(QMatrix s, QMatrix i) : st(std::move(s)), inf(std::move(i)) {
  require(st.rows() == inf.rows() && st.cols() == inf.cols(), "standard and infinitesimal parts differ in shape");
}

DQMatrix DQMatrix::diag(const std::vector<DualNumber>& d, std::size_t rows, std::size_t cols) {
  DQMatrix m(rows, cols);
  for (std::size_t i = 0; i < d.size() && i < rows && i < cols; ++i) m.set(i, i, DualQuaternion(d[i]));
  return m;
}

DQMatrix DQMatrix::eps(const QMatrix& m) { return {QMatrix(m.rows(), m.cols()), m}; }

DQMatrix mat_mul(const DQMatrix& a, const DQMatrix& b) {
  require(a.cols() == b.rows(), "matrix product inner dimensions differ");
  return {a.st * b.st, a.st * b.inf + a.inf * b.st};
}

DQMatrix mat_adjoint(const DQMatrix& a) { return a.adjoint(); }

DQMatrix operator*(const DQMatrix& a, const DQMatrix& b) { return mat_mul(a, b); }
DQMatrix operator+(const DQMatrix& a, const DQMatrix& b) { return {a.st + b.st, a.inf + b.inf}; }
DQMatrix operator-(const DQMatrix& a, const DQMatrix& b) { return {a.st - b.st, a.inf - b.inf}; }

DQMatrix scale(const DQMatrix& a, DualNumber s) { return {a.st * s.st, a.inf * s.st + a.st * s.inf}; }

DQMatrix mul_right(const DQMatrix& a, const DualQuaternion& q) {
  return {mul_right(a.st, q.st), mul_right(a.st, q.inf) + mul_right(a.inf, q.st)};
}

DualQuaternion inner(const DQMatrix& u, const DQMatrix& v) {
  return {inner(u.st, v.st), inner(u.st, v.inf) + inner(u.inf, v.st)};
}

DualNumber vec_norm(const DQMatrix& v, double zero_tol) {
  double s = v.st.frob();
  if (s > zero_tol) {
    double cross = 2.0 * inner(v.st, v.inf).w;
    return dn_sqrt({s * s, cross}, 0.0);
  }
  return {0.0, v.inf.frob()};
}

DQMatrix blkdiag(const std::vector<DQMatrix>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) { r += b.rows(); c += b.cols(); }
  DQMatrix m(r, c);
  std::size_t i = 0, j = 0;
  for (const auto& b : blocks) {
    m.set_block(i, j, b);
    i += b.rows();
    j += b.cols();
  }
  return m;
}

DQMatrix hstack(const std::vector<DQMatrix>& blocks) {
  std::size_t c = 0;
  std::size_t r = blocks.empty() ? 0 : blocks.front().rows();
  for (const auto& b : blocks) {
    require(b.rows() == r, "hstack row counts differ");
    c += b.cols();
  }
  DQMatrix m(r, c);
  std::size_t j = 0;
  for (const auto& b : blocks) { m.set_block(0, j, b); j += b.cols(); }
  return m;
}

DQMatrix vstack(const std::vector<DQMatrix>& blocks) {
  std::size_t r = 0;
  std::size_t c = blocks.empty() ? 0 : blocks.front().cols();
  for (const auto& b : blocks) {
    require(b.cols() == c, "vstack column counts differ");
    r += b.rows();
  }
  DQMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& b : blocks) { m.set_block(i, 0, b); i += b.rows(); }
  return m;
}

DQMatrix select_cols(const DQMatrix& a, const std::vector<std::size_t>& idx) {
  DQMatrix m(a.rows(), idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) m.set_block(0, j, a.col(idx[j]));
  return m;
}

DQMatrix select_rows(const DQMatrix& a, const std::vector<std::size_t>& idx) {
  DQMatrix m(idx.size(), a.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) m.set_block(i, 0, a.block(idx[i], 0, 1, a.cols()));
  return m;
}

FrobPair frob_norms(const DQMatrix& a) { return {a.st.frob(), a.inf.frob()}; }
FrobPair frob_norms(const QMatrix& a) { return {a.frob(), 0.0}; }

double scale_of(const DQMatrix& a) {
  FrobPair f = frob_norms(a);
  double s = f.st_norm + f.inf_norm;
  return s > 0.0 ? s : 1.0;
}

UnitaryCheck is_unitary(const DQMatrix& a, const ToleranceConfig& tol) {
  require(a.rows() == a.cols(), "unitarity check needs a square matrix");
  DQMatrix g = mat_mul(a.adjoint(), a) - DQMatrix::identity(a.rows());
  UnitaryCheck r;
  r.residual = frob_norms(g);
  r.pass = r.residual.st_norm <= tol.residual_tol_st && r.residual.inf_norm <= tol.residual_tol_inf;
  return r;
}

DQMatrix blocked_unitary(const QMatrix& m) {
  std::size_t r = m.rows(), c = m.cols();
  DQMatrix u = DQMatrix::identity(r + c);
  u.inf.set_block(0, r, m);
  u.inf.set_block(r, 0, m.adjoint() * -1.0);
  return u;
}

Eigen::MatrixXcd embed_complex(const QMatrix& q) {
  const Eigen::Index m = static_cast<Eigen::Index>(q.rows()), n = static_cast<Eigen::Index>(q.cols());
  Eigen::MatrixXcd e(2 * m, 2 * n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const Quaternion& x = q(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      std::complex<double> a(x.w, x.x), b(x.y, x.z);
      e(i, j) = a;
      e(i, n + j) = b;
      e(m + i, j) = -std::conj(b);
      e(m + i, n + j) = std::conj(a);
    }
  return e;
}

QMatrix collapse_complex(const Eigen::MatrixXcd& e) {
  const Eigen::Index m = e.rows() / 2, n = e.cols() / 2;
  QMatrix q(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      std::complex<double> a = e(i, j), b = e(i, n + j);
      q(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Quaternion(a.real(), a.imag(), b.real(), b.imag());
    }
  return q;
}

DQMatrix mat_inverse(const DQMatrix& a, const ToleranceConfig& tol) {
  require(a.rows() == a.cols(), "inverse needs a square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return {};
  Eigen::MatrixXcd e = embed_complex(a.st);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double smax = s(0), smin = s(s.size() - 1);
  double thr = std::max(tol.rank_tol * static_cast<double>(n) * smax, tol.zero_tol);
  if (!(smin > thr)) throw Error(ErrorKind::Singular, "standard part is numerically singular");
  Eigen::MatrixXcd inv = svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
  QMatrix si = collapse_complex(inv);
  return {si, (si * a.inf * si) * -1.0};
}

}  // namespace dq
