#pragma once

#include <cstddef>
#include <vector>

#include "dq/decomp.hpp"
#include "dq/pattern.hpp"

namespace dq {

/**
 * @brief Block counts of a product-product decomposition of (A m×n, B n×p, C p×q).
 *
 * i = Arank(A), j and k the appreciable column ranks of the two row blocks of
 * B, l, s, t those of the three row blocks of C. l is also Arank(ABC).
 */
struct PpsvdBlockDims {
  std::size_t m = 0, n = 0, p = 0, q = 0;
  std::size_t i = 0, j = 0, k = 0, l = 0, s = 0, t = 0;
};

/** @brief U*·A·P = formA, P⁻¹·B·Q = formB, Q⁻¹·C·V = formC. */
struct PpsvdResult {
  DQMatrix U, V, P, Pinv, Q, Qinv;
  DQMatrix formA, formB, formC;
  PpsvdBlockDims dims;
  std::vector<DualNumber> sigma_appreciable;
};

PpsvdResult dqppsvd(const DQMatrix& a, const DQMatrix& b, const DQMatrix& c, const ToleranceConfig& tol = {});

/**
 * @brief Full dual SVD of ABC from a product-product decomposition.
 *
 * The ε corner T of formA·formB·formC gets a standard quaternion SVD; the
 * result's U, V are the decomposition's U, V extended by that SVD.
 */
SvdResult product_svd_from_ppsvd(const PpsvdResult& result, const DQMatrix& a, const DQMatrix& b, const DQMatrix& c,
                                 const ToleranceConfig& tol = {});

BlockPattern ppsvd_pattern_a(const PpsvdBlockDims& d);
BlockPattern ppsvd_pattern_b(const PpsvdBlockDims& d);
BlockPattern ppsvd_pattern_c(const PpsvdBlockDims& d);

}  // namespace dq
