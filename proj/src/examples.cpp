#include "dq/examples.hpp"

#include <cmath>

namespace dq {

namespace {

void put(DQMatrix& m, std::size_t i, std::size_t j, Quaternion st, Quaternion in) { m.set(i, j, {st, in}); }

}  // namespace

Triplet example_rsvd_triplet() {
  const double h = std::sqrt(2.0) / 2.0;
  Triplet t{DQMatrix(3, 3), DQMatrix(3, 2), DQMatrix(3, 3)};
  put(t.A, 0, 0, 1.0, {});
  put(t.A, 0, 1, h, {1.0, 0, 0, h});
  put(t.A, 1, 0, {}, units::k);
  put(t.A, 1, 1, h, {1.0, 0, 0, h});
  put(t.A, 2, 2, {}, 1.0);

  put(t.B, 0, 0, 1.0, {0, 1, 0, 1});
  put(t.B, 0, 1, {1, 0, 2, 0}, {0, 0, 0, 2});
  put(t.B, 1, 0, 1.0, {1, 0, 0, 1});
  put(t.B, 1, 1, 1.0, {std::sqrt(2.0) - 1.0, -2, 0, 1});
  put(t.B, 2, 0, {}, 1.0);
  put(t.B, 2, 1, 1.0, {});

  put(t.C, 0, 0, {}, 1.0);
  put(t.C, 0, 1, {}, {h, 0, h, 0});
  put(t.C, 1, 1, h, -1.0);
  put(t.C, 2, 2, 1.0, {});
  return t;
}

Triplet example_ppsvd_triplet() {
  Triplet t{DQMatrix(2, 2), DQMatrix(2, 2), DQMatrix(2, 2)};
  put(t.A, 0, 0, 0.5, 1.0);
  put(t.A, 0, 1, {}, {0, -0.5, 0, 0});
  put(t.A, 1, 0, {}, {0, 0, 0, 0.5});
  put(t.A, 1, 1, {}, 1.0);

  put(t.B, 0, 0, 1.0, {});
  put(t.B, 0, 1, {}, units::i);
  put(t.B, 1, 0, {}, units::k);
  put(t.B, 1, 1, 0.5, {});

  put(t.C, 0, 0, 1.0, {});
  put(t.C, 0, 1, {}, units::k);
  put(t.C, 1, 0, {}, units::j);
  put(t.C, 1, 1, {}, units::i);
  return t;
}

Triplet example_by_id(const std::string& id) {
  if (id == "6.1" || id == "rsvd") return example_rsvd_triplet();
  if (id == "6.2" || id == "ppsvd") return example_ppsvd_triplet();
  throw Error(ErrorKind::UnknownExample, "no example with id '" + id + "'");
}

}  // namespace dq
