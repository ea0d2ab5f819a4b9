#include <algorithm>
#include <cmath>
#include <random>

#include "dq/decomp.hpp"

namespace dq {

namespace {

QMatrix normal_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& gen) {
  std::normal_distribution<double> nd(0.0, 1.0);
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      double w = nd(gen), x = nd(gen), y = nd(gen), z = nd(gen);
      m(i, j) = Quaternion(w, x, y, z);
    }
  return m;
}

std::vector<double> log_uniform(std::size_t k, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> ud(std::log(1e-2), 0.0);
  std::vector<double> v(k);
  for (auto& x : v) x = std::exp(ud(gen));
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

DQMatrix random_dense(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  QMatrix st = normal_matrix(rows, cols, gen);
  QMatrix in = normal_matrix(rows, cols, gen);
  return {st, in};
}

DQMatrix random_unitary(std::size_t n, std::uint64_t seed) { return dqqr(random_dense(n, n, seed)).Q; }

DQMatrix random_with_ranks(std::size_t rows, std::size_t cols, RankProfile profile, std::uint64_t seed,
                           std::vector<DualNumber>* planted) {
  if (profile.arank > profile.rank || profile.rank > std::min(rows, cols))
    throw Error(ErrorKind::InvalidProfile, "rank profile does not fit the matrix shape");
  std::mt19937_64 gen(seed);
  DQMatrix u = random_unitary(rows, gen());
  DQMatrix v = random_unitary(cols, gen());
  std::vector<double> sig = log_uniform(profile.arank, gen);
  std::vector<double> tau = log_uniform(profile.rank - profile.arank, gen);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<DualNumber> d;
  for (double s : sig) d.push_back({s, nd(gen)});
  for (double t : tau) d.push_back({0.0, t});
  if (planted) *planted = d;
  return u * DQMatrix::diag(d, rows, cols) * v.adjoint();
}

DQMatrix random_with_ranks(std::size_t rows, std::size_t cols, RankProfile profile, std::uint64_t seed) {
  return random_with_ranks(rows, cols, profile, seed, nullptr);
}

}  // namespace dq
