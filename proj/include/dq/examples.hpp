#pragma once

#include <string>
#include <vector>

#include "dq/matrix.hpp"

namespace dq {

struct Triplet {
  DQMatrix A, B, C;
};

/** @brief The worked restricted-SVD triplet (A 3×3, B 3×2, C 3×3). */
Triplet example_rsvd_triplet();
/** @brief The worked product-product SVD triplet (all 2×2). */
Triplet example_ppsvd_triplet();

/** @brief Looks up an example by id ("6.1"/"rsvd" or "6.2"/"ppsvd"); throws UnknownExample. */
Triplet example_by_id(const std::string& id);

}  // namespace dq
