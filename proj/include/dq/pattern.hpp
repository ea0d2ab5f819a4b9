#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dq/matrix.hpp"

namespace dq {

/**
 * @brief Allowed content of one block of a canonical form.
 *
 * RealDiag and EpsDiag admit a real dual (resp. real infinitesimal) diagonal,
 * Eps any purely infinitesimal block, Free anything.
 */
enum class BlockKind { Zero, Identity, RealDiag, EpsDiag, EpsIdentity, Eps, Free };

const char* to_string(BlockKind k);

/** @brief Block partition of a matrix; kinds are row-major over the partition, default Zero. */
struct BlockPattern {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::vector<BlockKind> kinds;

  BlockPattern(std::vector<std::size_t> r, std::vector<std::size_t> c);
  void set(std::size_t bi, std::size_t bj, BlockKind k) { kinds[bi * cols.size() + bj] = k; }
  BlockKind at(std::size_t bi, std::size_t bj) const { return kinds[bi * cols.size() + bj]; }
  std::size_t total_rows() const;
  std::size_t total_cols() const;
};

/** @brief Frobenius norms of everything the pattern does not allow. */
FrobPair pattern_residual(const DQMatrix& a, const BlockPattern& p);

/** @brief Projection of a onto the pattern; Identity blocks become exact. */
DQMatrix clean_to_pattern(const DQMatrix& a, const BlockPattern& p);

}  // namespace dq
