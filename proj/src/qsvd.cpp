#include <algorithm>
#include <cmath>

#include "dq/decomp.hpp"

namespace dq {

namespace {

using Vec = std::vector<Quaternion>;

double vnorm(const Vec& v) {
  double s = 0.0;
  for (const auto& q : v) s += q.norm2();
  return std::sqrt(s);
}

Quaternion vdot(const Vec& u, const Vec& v) {
  Quaternion s;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i].conj() * v[i];
  return s;
}

// r -= basis_k · h_k, returning the coefficients h_k = basis_k* r.
std::vector<Quaternion> project_out(Vec& r, const std::vector<Vec>& basis) {
  std::vector<Quaternion> h(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    h[k] = vdot(basis[k], r);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= basis[k][i] * h[k];
  }
  return h;
}

void apply_coeffs(Vec& r, const std::vector<Vec>& basis, const std::vector<Quaternion>& h) {
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= basis[k][i] * h[k];
}

// Column c of a 2m-row complex matrix read back as a quaternion m-vector.
Vec lift(const Eigen::MatrixXcd& e, Eigen::Index c) {
  const Eigen::Index m = e.rows() / 2;
  Vec v(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    std::complex<double> a = e(i, c), b = -std::conj(e(m + i, c));
    v[static_cast<std::size_t>(i)] = Quaternion(a.real(), a.imag(), b.real(), b.imag());
  }
  return v;
}

// Pivoted Gram-Schmidt completion of basis up to size n from the candidates.
void complete(std::vector<Vec>& basis, const std::vector<Vec>& cand, std::size_t n) {
  while (basis.size() < n) {
    double best = -1.0;
    Vec pick;
    for (const auto& c : cand) {
      Vec r = c;
      project_out(r, basis);
      project_out(r, basis);
      double nr = vnorm(r);
      if (nr > best) { best = nr; pick = std::move(r); }
    }
    if (!(best > 1e-6)) throw Error(ErrorKind::ConvergenceFailure, "could not complete quaternion singular basis");
    for (auto& q : pick) q *= 1.0 / best;
    basis.push_back(std::move(pick));
  }
}

Quaternion leading_phase(const Vec& v) {
  for (const auto& q : v)
    if (q.norm() > 1e-8) return q * (1.0 / q.norm());
  return Quaternion(1.0);
}

void rotate(Vec& v, const Quaternion& w) {
  for (auto& q : v) q = q * w;
}

QMatrix to_matrix(const std::vector<Vec>& cols, std::size_t rows) {
  QMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

}  // namespace

QSvd qsvd(const QMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols(), p = std::min(m, n);
  QSvd out;
  if (p == 0) {
    out.U = QMatrix::identity(m);
    out.V = QMatrix::identity(n);
    return out;
  }
  Eigen::MatrixXcd e = embed_complex(a);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceFailure, "complex SVD did not converge");
  const auto& s = svd.singularValues();
  const Eigen::MatrixXcd& eu = svd.matrixU();
  const Eigen::MatrixXcd& ev = svd.matrixV();
  const double smax = s(0);
  const double tiny = 1e-13 * smax;

  std::vector<Vec> us, vs;
  const Eigen::Index total = static_cast<Eigen::Index>(2 * p);
  Eigen::Index a0 = 0;
  while (a0 < total && us.size() < p) {
    if (!(s(a0) > tiny)) break;
    Eigen::Index b0 = a0 + 1;
    while (b0 < total && s(b0 - 1) - s(b0) <= 1e-8 * smax) ++b0;
    std::vector<Vec> cu, cv;
    for (Eigen::Index c = a0; c < b0; ++c) {
      cu.push_back(lift(eu, c));
      cv.push_back(lift(ev, c));
    }
    // AV = UΣ holds for quaternion right multiples, so the same coefficients
    // applied to both sides keep the pairs coupled.
    std::size_t want = static_cast<std::size_t>((b0 - a0 + 1) / 2);
    std::vector<bool> used(cu.size(), false);
    for (std::size_t got = 0; got < want && us.size() < p; ++got) {
      double best = -1.0;
      std::size_t bi = 0;
      Vec bu, bv;
      for (std::size_t c = 0; c < cv.size(); ++c) {
        if (used[c]) continue;
        Vec rv = cv[c], ru = cu[c];
        auto h = project_out(rv, vs);
        apply_coeffs(ru, us, h);
        auto h2 = project_out(rv, vs);
        apply_coeffs(ru, us, h2);
        double nr = vnorm(rv);
        if (nr > best) { best = nr; bi = c; bu = std::move(ru); bv = std::move(rv); }
      }
      if (!(best > 0.5)) break;
      used[bi] = true;
      for (auto& q : bv) q *= 1.0 / best;
      double nu = vnorm(bu);
      for (auto& q : bu) q *= 1.0 / nu;
      us.push_back(std::move(bu));
      vs.push_back(std::move(bv));
    }
    a0 = b0;
  }
  const std::size_t paired = us.size();

  std::vector<Vec> allu, allv;
  for (Eigen::Index c = eu.cols() - 1; c >= 0; --c) allu.push_back(lift(eu, c));
  for (Eigen::Index c = ev.cols() - 1; c >= 0; --c) allv.push_back(lift(ev, c));
  complete(us, allu, m);
  complete(vs, allv, n);

  // one more modified Gram-Schmidt sweep in the final order
  for (auto* basis : {&us, &vs}) {
    std::vector<Vec> prev;
    for (auto& v : *basis) {
      project_out(v, prev);
      double nv = vnorm(v);
      for (auto& q : v) q *= 1.0 / nv;
      prev.push_back(v);
    }
  }

  for (std::size_t i = 0; i < std::max(m, n); ++i) {
    if (i < paired) {
      Quaternion w = leading_phase(us[i]).conj();
      rotate(us[i], w);
      rotate(vs[i], w);
    } else {
      if (i < m) rotate(us[i], leading_phase(us[i]).conj());
      if (i < n) rotate(vs[i], leading_phase(vs[i]).conj());
    }
  }

  out.U = to_matrix(us, m);
  out.V = to_matrix(vs, n);
  out.sigma.assign(p, 0.0);
  for (std::size_t i = 0; i < paired; ++i) {
    Quaternion acc;
    for (std::size_t r = 0; r < m; ++r) {
      Quaternion av;
      for (std::size_t c = 0; c < n; ++c) av += a(r, c) * vs[i][c];
      acc += us[i][r].conj() * av;
    }
    out.sigma[i] = acc.w;
  }
  return out;
}

}  // namespace dq
