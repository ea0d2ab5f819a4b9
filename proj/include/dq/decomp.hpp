#pragma once

#include <cstddef>
#include <vector>

#include "dq/matrix.hpp"

namespace dq {

/** @brief SVD of a standard quaternion matrix; sigma has min(m, n) entries, descending. */
struct QSvd {
  QMatrix U;
  QMatrix V;
  std::vector<double> sigma;
};

QSvd qsvd(const QMatrix& a);

/** @brief A·Π = Q·R with R upper trapezoidal (m×n) and Π the column permutation perm. */
struct QrResult {
  DQMatrix Q;
  DQMatrix R;
  std::vector<std::size_t> perm;
  std::size_t arank = 0;
  std::size_t rank = 0;
};

QrResult dqqr(const DQMatrix& a, const ToleranceConfig& tol = {}, bool pivot = true);

struct SvdResult {
  DQMatrix U;
  DQMatrix V;
  std::vector<DualNumber> sigma;
  RankProfile profile;
};

/**
 * @brief Dual SVD U*AV = diag(σ_1..σ_r, τ_1ε..τ_{t-r}ε, 0).
 *
 * With rotate_null = false the zero block of A_st keeps the basis of the
 * standard SVD and the infinitesimal spectrum is counted but not diagonalized.
 */
SvdResult dqsvd(const DQMatrix& a, const ToleranceConfig& tol = {}, bool rotate_null = true);

/** @brief diag(sigma) padded to rows×cols. */
DQMatrix svd_middle(const SvdResult& s, std::size_t rows, std::size_t cols);

/** @brief A·transform = (Â₁, Â₂ε, 0) for columns, transform·A = (A₁; A₂ε; 0) for rows. */
struct CompressResult {
  DQMatrix transform;
  DQMatrix compressed;
  std::size_t appreciable = 0;
  std::size_t infinitesimal = 0;
};

CompressResult compress_columns(const DQMatrix& a, const ToleranceConfig& tol = {}, bool split_infinitesimal = true);
CompressResult compress_rows(const DQMatrix& a, const ToleranceConfig& tol = {}, bool split_infinitesimal = true);

enum class Side { right, left };

/**
 * @brief form = left_inv·A·right = diag(I_r̂, I_{r−r̂}ε, 0).
 *
 * Side::right gives unitary left and nonsingular right; Side::left gives
 * nonsingular left and unitary right.
 */
struct CanonicalForm {
  DQMatrix left;
  DQMatrix left_inv;
  DQMatrix right;
  DQMatrix right_inv;
  DQMatrix form;
  RankProfile profile;
};

CanonicalForm canonical_diag_form(const DQMatrix& a, Side side, const ToleranceConfig& tol = {});

/** @brief Extends orthonormal columns to an n×n unitary matrix, keeping them first. */
DQMatrix complete_unitary(const DQMatrix& cols, std::size_t n);

/** @brief Orthonormalizes the columns in order (dual modified Gram-Schmidt, two passes). */
DQMatrix orthonormalize(const DQMatrix& cols, double zero_tol = 1e-12);

/** @brief Threshold deciding appreciable standard singular values. */
double appreciable_threshold(double smax, std::size_t rows, std::size_t cols, const ToleranceConfig& tol);

}  // namespace dq
