#pragma once

#include <cstddef>
#include <vector>

#include "dq/gsvd.hpp"
#include "dq/pattern.hpp"

namespace dq {

/**
 * @brief Block counts of a restricted decomposition of (A m×n, B m×p, C q×n).
 *
 * Rows of P·A·Q: [j+k+l, r, s, t, t_hat, tail]; columns of P·A·Q and V·C·Q:
 * [j+k+l, r, s, t, s1_hat, c2, c3]; rows of V·C·Q: [top, r, s, t, s1_hat].
 * c2 is the width of the ε-only columns of the nonsingular path (0 otherwise),
 * tail = r1_hat + r2_hat (the ε rows and zero rows below t_hat).
 * m1 = j+k+l+r+s+t+t_hat, m2 = k2 = tail, k1 = c2 + c3.
 */
struct RsvdBlockDims {
  std::size_t j = 0, k = 0, l = 0, r = 0, s = 0, t = 0, t_hat = 0, s1_hat = 0;
  std::size_t top = 0, c2 = 0, c3 = 0, r1_hat = 0, r2_hat = 0;
  std::size_t m1 = 0, m2 = 0, k1 = 0, k2 = 0;
  std::size_t jkl() const { return j + k + l; }
};

struct RestrictedTriple {
  DualNumber alpha;
  DualNumber beta;
  DualNumber gamma;
};

struct RsvdResult {
  DQMatrix P, Q, U, V;
  DQMatrix formA, formB, formC;
  RsvdBlockDims dims;
  std::vector<RestrictedTriple> triples;
  bool pq_nonsingular = false;
  /** @brief ε-graded diagonal of the t block of formA. */
  std::vector<double> wtS_A;
  /**
   * @brief Norm of the ε blocks of formA the nonsingular path cannot clear.
   *
   * Rows t/t_hat against c2 and the tail rows against t and s1_hat; none of
   * them has an appreciable pivot in A. Zero when every stage has rank = Arank.
   */
  FrobPair leftover;
  /** @brief Second-stage cosine/sine data behind the triples, θ descending. */
  std::vector<DualNumber> theta, delta;
};

RsvdResult dqrsvd1(const DQMatrix& a, const DQMatrix& b, const DQMatrix& c, const ToleranceConfig& tol = {});
RsvdResult dqrsvd2(const DQMatrix& a, const DQMatrix& b, const DQMatrix& c, const ToleranceConfig& tol = {});

/** @brief Recomputes (α, β, γ) from θ, δ and checks them against the forms. */
std::vector<RestrictedTriple> restricted_triples(const RsvdResult& result, const ToleranceConfig& tol = {});

/** @brief α = θ²/√(1+θ²), β = δ, γ = θ/√(1+θ²). */
RestrictedTriple triple_from_cs(DualNumber theta, DualNumber delta);

/** @brief with_leftover admits the ε blocks described at RsvdResult::leftover. */
BlockPattern rsvd_pattern_a(const RsvdBlockDims& d, bool with_leftover = false);
BlockPattern rsvd_pattern_b(const RsvdBlockDims& d, std::size_t p);
BlockPattern rsvd_pattern_c(const RsvdBlockDims& d);

}  // namespace dq
