#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dq/scalar.hpp"

namespace dq {

/** @brief Dense row-major quaternion matrix. */
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), d_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  static QMatrix diag(const std::vector<double>& d, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool empty() const { return r_ == 0 || c_ == 0; }

  Quaternion& operator()(std::size_t i, std::size_t j) { return d_[i * c_ + j]; }
  const Quaternion& operator()(std::size_t i, std::size_t j) const { return d_[i * c_ + j]; }
  const std::vector<Quaternion>& data() const { return d_; }

  QMatrix block(std::size_t i0, std::size_t j0, std::size_t h, std::size_t w) const;
  void set_block(std::size_t i0, std::size_t j0, const QMatrix& b);
  QMatrix col(std::size_t j) const { return block(0, j, r_, 1); }
  QMatrix adjoint() const;
  double frob() const;
  double max_abs() const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(double s);

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Quaternion> d_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator*(QMatrix a, double s);
/** @brief Every entry multiplied on the right by q. */
QMatrix mul_right(QMatrix a, const Quaternion& q);
/** @brief ⟨u, v⟩ = u* v for column vectors. */
Quaternion inner(const QMatrix& u, const QMatrix& v);

struct FrobPair {
  double st_norm = 0.0;
  double inf_norm = 0.0;
};

struct RankProfile {
  std::size_t rank = 0;
  std::size_t arank = 0;
};

/** @brief A_st + A_in ε, stored as two quaternion matrices of equal shape. */
class DQMatrix {
 public:
  QMatrix st;
  QMatrix inf;

  DQMatrix() = default;
  DQMatrix(std::size_t rows, std::size_t cols) : st(rows, cols), inf(rows, cols) {}
  explicit DQMatrix(QMatrix s) : st(s), inf(s.rows(), s.cols()) {}
  DQMatrix(QMatrix s, QMatrix i);

  static DQMatrix identity(std::size_t n) { return DQMatrix(QMatrix::identity(n)); }
  static DQMatrix diag(const std::vector<DualNumber>& d, std::size_t rows, std::size_t cols);
  /** @brief Purely infinitesimal matrix Mε. */
  static DQMatrix eps(const QMatrix& m);

  std::size_t rows() const { return st.rows(); }
  std::size_t cols() const { return st.cols(); }

  DualQuaternion at(std::size_t i, std::size_t j) const { return {st(i, j), inf(i, j)}; }
  void set(std::size_t i, std::size_t j, const DualQuaternion& v) {
    st(i, j) = v.st;
    inf(i, j) = v.inf;
  }

  DQMatrix block(std::size_t i0, std::size_t j0, std::size_t h, std::size_t w) const {
    return {st.block(i0, j0, h, w), inf.block(i0, j0, h, w)};
  }
  void set_block(std::size_t i0, std::size_t j0, const DQMatrix& b) {
    st.set_block(i0, j0, b.st);
    inf.set_block(i0, j0, b.inf);
  }
  DQMatrix col(std::size_t j) const { return block(0, j, rows(), 1); }
  DQMatrix adjoint() const { return {st.adjoint(), inf.adjoint()}; }
};

DQMatrix mat_mul(const DQMatrix& a, const DQMatrix& b);
DQMatrix mat_adjoint(const DQMatrix& a);
DQMatrix mat_inverse(const DQMatrix& a, const ToleranceConfig& tol = {});
DQMatrix operator*(const DQMatrix& a, const DQMatrix& b);
DQMatrix operator+(const DQMatrix& a, const DQMatrix& b);
DQMatrix operator-(const DQMatrix& a, const DQMatrix& b);
DQMatrix scale(const DQMatrix& a, DualNumber s);
/** @brief Every entry multiplied on the right by the dual quaternion q. */
DQMatrix mul_right(const DQMatrix& a, const DualQuaternion& q);
/** @brief u* v for dual column vectors. */
DualQuaternion inner(const DQMatrix& u, const DQMatrix& v);
DualNumber vec_norm(const DQMatrix& v, double zero_tol = 1e-12);

DQMatrix blkdiag(const std::vector<DQMatrix>& blocks);
DQMatrix hstack(const std::vector<DQMatrix>& blocks);
DQMatrix vstack(const std::vector<DQMatrix>& blocks);
/** @brief Columns of a picked in the given order. */
DQMatrix select_cols(const DQMatrix& a, const std::vector<std::size_t>& idx);
DQMatrix select_rows(const DQMatrix& a, const std::vector<std::size_t>& idx);

FrobPair frob_norms(const DQMatrix& a);
FrobPair frob_norms(const QMatrix& a);
double scale_of(const DQMatrix& a);

struct UnitaryCheck {
  FrobPair residual;
  bool pass = false;
};
UnitaryCheck is_unitary(const DQMatrix& a, const ToleranceConfig& tol = {});

/** @brief [[I_m, Mε], [−M*ε, I_n]]. */
DQMatrix blocked_unitary(const QMatrix& m);

/** @brief Q = Qa + Qb j ↦ [[Qa, Qb], [−conj(Qb), conj(Qa)]]. */
Eigen::MatrixXcd embed_complex(const QMatrix& q);
/** @brief Inverse of embed_complex, reading the top block row. */
QMatrix collapse_complex(const Eigen::MatrixXcd& m);

/** @brief U·diag(σ, τε, 0)·V* with seeded random unitary U, V. */
DQMatrix random_with_ranks(std::size_t rows, std::size_t cols, RankProfile profile, std::uint64_t seed);
/** @brief Same as random_with_ranks and also reports the planted singular values. */
DQMatrix random_with_ranks(std::size_t rows, std::size_t cols, RankProfile profile, std::uint64_t seed,
                           std::vector<DualNumber>* planted);
/** @brief Dense matrix with standard-normal components in both parts. */
DQMatrix random_dense(std::size_t rows, std::size_t cols, std::uint64_t seed);
/** @brief Random unitary dual quaternion matrix. */
DQMatrix random_unitary(std::size_t n, std::uint64_t seed);

}  // namespace dq
