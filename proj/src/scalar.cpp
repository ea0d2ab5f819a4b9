#include "dq/scalar.hpp"

#include <string>

namespace dq {

void ToleranceConfig::validate() const {
  auto check = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(ErrorKind::InvalidProfile, std::string(name) + " must be a positive finite number");
  };
  check(zero_tol, "zero_tol");
  check(rank_tol, "rank_tol");
  check(residual_tol_st, "residual_tol_st");
  check(residual_tol_inf, "residual_tol_inf");
}

Ordering dn_cmp(DualNumber p, DualNumber q, double zero_tol) {
  double ds = p.st - q.st;
  if (std::abs(ds) > zero_tol) return ds < 0 ? Ordering::less : Ordering::greater;
  double di = p.inf - q.inf;
  if (std::abs(di) > zero_tol) return di < 0 ? Ordering::less : Ordering::greater;
  return Ordering::equal;
}

bool is_appreciable(DualNumber q, double zero_tol) { return std::abs(q.st) > zero_tol; }

DualNumber dn_sqrt(DualNumber q, double zero_tol) {
  if (!(q.st > zero_tol))
    throw Error(ErrorKind::NonAppreciable, "square root needs a positive appreciable argument");
  double s = std::sqrt(q.st);
  return {s, q.inf / (2.0 * s)};
}

DualNumber dn_inv(DualNumber q, double zero_tol) {
  if (!is_appreciable(q, zero_tol)) throw Error(ErrorKind::NonAppreciable, "inverse of an infinitesimal dual number");
  return {1.0 / q.st, -q.inf / (q.st * q.st)};
}

DualQuaternion dq_mul(const DualQuaternion& p, const DualQuaternion& q) {
  return {p.st * q.st, p.st * q.inf + p.inf * q.st};
}

DualQuaternion dq_inv(const DualQuaternion& q, double zero_tol) {
  if (!(q.st.norm() > zero_tol)) throw Error(ErrorKind::NonAppreciable, "inverse of an infinitesimal dual quaternion");
  Quaternion a = q.st.inverse();
  return {a, -(a * q.inf * a)};
}

DualNumber dq_norm(const DualQuaternion& q, double zero_tol) {
  double n2 = q.st.norm2();
  if (std::sqrt(n2) > zero_tol) {
    double cross = 2.0 * (q.st.w * q.inf.w + q.st.x * q.inf.x + q.st.y * q.inf.y + q.st.z * q.inf.z);
    return dn_sqrt({n2, cross}, 0.0);
  }
  return {0.0, q.inf.norm()};
}

}  // namespace dq
