#include "dq/pattern.hpp"

#include <cmath>
#include <numeric>

#include "dq/error.hpp"

namespace dq {

const char* to_string(BlockKind k) {
  switch (k) {
    case BlockKind::Zero: return "zero";
    case BlockKind::Identity: return "identity";
    case BlockKind::RealDiag: return "real_diag";
    case BlockKind::EpsDiag: return "eps_diag";
    case BlockKind::EpsIdentity: return "eps_identity";
    case BlockKind::Eps: return "eps";
    case BlockKind::Free: return "free";
  }
  return "unknown";
}

BlockPattern::BlockPattern(std::vector<std::size_t> r, std::vector<std::size_t> c)
    : rows(std::move(r)), cols(std::move(c)), kinds(rows.size() * cols.size(), BlockKind::Zero) {}

std::size_t BlockPattern::total_rows() const { return std::accumulate(rows.begin(), rows.end(), std::size_t{0}); }
std::size_t BlockPattern::total_cols() const { return std::accumulate(cols.begin(), cols.end(), std::size_t{0}); }

namespace {

double sq(const Quaternion& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }

// allowed part of entry (i, j) local to its block; returns (st, inf)
std::pair<Quaternion, Quaternion> allowed(BlockKind k, bool diag, const Quaternion& s, const Quaternion& e) {
  switch (k) {
    case BlockKind::Zero: return {Quaternion(), Quaternion()};
    case BlockKind::Identity: return {diag ? Quaternion(1.0) : Quaternion(), Quaternion()};
    case BlockKind::RealDiag:
      if (!diag) return {Quaternion(), Quaternion()};
      return {Quaternion(s.w), Quaternion(e.w)};
    case BlockKind::EpsDiag: return {Quaternion(), diag ? Quaternion(e.w) : Quaternion()};
    case BlockKind::EpsIdentity: return {Quaternion(), diag ? Quaternion(1.0) : Quaternion()};
    case BlockKind::Eps: return {Quaternion(), e};
    case BlockKind::Free: return {s, e};
  }
  return {Quaternion(), Quaternion()};
}

void check_shape(const DQMatrix& a, const BlockPattern& p) {
  if (a.rows() != p.total_rows() || a.cols() != p.total_cols())
    throw Error(ErrorKind::DimensionMismatch, "pattern does not match matrix shape");
}

template <class F>
void for_each_entry(const BlockPattern& p, F f) {
  std::size_t i0 = 0;
  for (std::size_t bi = 0; bi < p.rows.size(); ++bi) {
    std::size_t j0 = 0;
    for (std::size_t bj = 0; bj < p.cols.size(); ++bj) {
      for (std::size_t i = 0; i < p.rows[bi]; ++i)
        for (std::size_t j = 0; j < p.cols[bj]; ++j) f(i0 + i, j0 + j, p.at(bi, bj), i == j);
      j0 += p.cols[bj];
    }
    i0 += p.rows[bi];
  }
}

}  // namespace

FrobPair pattern_residual(const DQMatrix& a, const BlockPattern& p) {
  check_shape(a, p);
  double s2 = 0.0, e2 = 0.0;
  for_each_entry(p, [&](std::size_t i, std::size_t j, BlockKind k, bool d) {
    const Quaternion& s = a.st(i, j);
    const Quaternion& e = a.inf(i, j);
    auto [as, ae] = allowed(k, d, s, e);
    s2 += sq(s - as);
    e2 += sq(e - ae);
  });
  return {std::sqrt(s2), std::sqrt(e2)};
}

DQMatrix clean_to_pattern(const DQMatrix& a, const BlockPattern& p) {
  check_shape(a, p);
  DQMatrix out(a.rows(), a.cols());
  for_each_entry(p, [&](std::size_t i, std::size_t j, BlockKind k, bool d) {
    auto [as, ae] = allowed(k, d, a.st(i, j), a.inf(i, j));
    out.st(i, j) = as;
    out.inf(i, j) = ae;
  });
  return out;
}

}  // namespace dq
