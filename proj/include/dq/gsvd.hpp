#pragma once

#include <cstddef>
#include <vector>

#include "dq/decomp.hpp"

namespace dq {

/**
 * @brief Block sizes of a pair decomposition.
 *
 * l_or_t1 is the Ξε block width, k_or_t the number of leading columns carried
 * by the stacked spectrum (rank for the plain first form, Arank otherwise) and
 * s the width of the orthonormal (N_A; N_B) columns of the nonsingular form.
 */
struct GsvdBlockDims {
  std::size_t m = 0, p = 0, n = 0;
  std::size_t r = 0, q = 0, l_or_t1 = 0, k_or_t = 0, r1 = 0, r2 = 0;
  std::size_t s = 0;
  std::size_t stacked_rank = 0, stacked_arank = 0;
};

struct CsPair {
  DualNumber c;
  DualNumber s;
};

enum class GsvdVariant { plain, nonsingular_x };

/** @brief quotient: U*AX = SigmaA; product: A = U·SigmaA·X. */
enum class GsvdForm { quotient, product };

struct GsvdResult {
  DQMatrix U;
  DQMatrix V;
  DQMatrix X;
  DQMatrix X_inv;  // empty unless x_nonsingular
  DQMatrix SigmaA;
  DQMatrix SigmaB;
  GsvdBlockDims dims;
  std::vector<CsPair> cs_pairs;
  bool x_nonsingular = false;
  GsvdForm form = GsvdForm::quotient;
};

GsvdResult dqgsvd1(const DQMatrix& a, const DQMatrix& b, GsvdVariant variant = GsvdVariant::plain,
                   const ToleranceConfig& tol = {});
GsvdResult dqgsvd2(const DQMatrix& a, const DQMatrix& b, const ToleranceConfig& tol = {});

/**
 * @brief Cosine-sine split of orthonormal columns (Z_A; Z_B).
 *
 * U*·Z_A·W = SA and V*·Z_B·W = SB with SA = (I_r, C_q, Ξε_l, 0) and
 * SB rows (Σε_{r1}, 0, S_q, I). Pairs are listed with c ascending.
 */
struct CsDecomposition {
  DQMatrix U, V, W;
  DQMatrix SA, SB;
  std::size_t r = 0, q = 0, l = 0, r1 = 0;
  std::vector<CsPair> pairs;
};

CsDecomposition cs_decompose(const DQMatrix& za, const DQMatrix& zb, const ToleranceConfig& tol = {});

}  // namespace dq
