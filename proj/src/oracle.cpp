#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "dq/error.hpp"
#include "dq/verify.hpp"

namespace dq {

// deliberately on LAPACK rather than the Eigen route used by qsvd
std::vector<double> oracle_singular_values(const QMatrix& q) {
  const std::size_t mn = std::min(q.rows(), q.cols());
  if (mn == 0) return {};
  Eigen::MatrixXcd e = embed_complex(q);
  const lapack_int m = static_cast<lapack_int>(e.rows()), n = static_cast<lapack_int>(e.cols());
  std::vector<lapack_complex_double> buf(static_cast<std::size_t>(m) * static_cast<std::size_t>(n));
  for (lapack_int j = 0; j < n; ++j)
    for (lapack_int i = 0; i < m; ++i) buf[static_cast<std::size_t>(j) * m + i] = e(i, j);
  std::vector<double> s(2 * mn), superb(2 * mn);
  lapack_int info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'N', 'N', m, n, buf.data(), m, s.data(), nullptr, 1, nullptr, 1,
                                   superb.data());
  if (info != 0) throw Error(ErrorKind::ConvergenceFailure, "zgesvd failed with info " + std::to_string(info));

  const double scale = std::max(s.front(), 1e-300);
  std::vector<double> out;
  for (std::size_t i = 0; i < mn; ++i) {
    if (std::abs(s[2 * i] - s[2 * i + 1]) > 1e-8 * scale)
      throw Error(ErrorKind::PairingFailure, "complex embedding spectrum does not pair");
    out.push_back(0.5 * (s[2 * i] + s[2 * i + 1]));
  }
  return out;
}

}  // namespace dq
