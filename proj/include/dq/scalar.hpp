#pragma once

#include <cmath>

#include "dq/error.hpp"

namespace dq {

struct ToleranceConfig {
  double zero_tol = 1e-12;
  double rank_tol = 1e-10;
  double residual_tol_st = 1e-9;
  double residual_tol_inf = 1e-7;

  /** @brief Throws InvalidProfile unless every field is strictly positive. */
  void validate() const;
};

/** @brief a + bε with ε² = 0. */
struct DualNumber {
  double st = 0.0;
  double inf = 0.0;

  constexpr DualNumber() = default;
  constexpr DualNumber(double s) : st(s) {}
  constexpr DualNumber(double s, double i) : st(s), inf(i) {}

  DualNumber operator-() const { return {-st, -inf}; }
  DualNumber& operator+=(DualNumber o) { st += o.st; inf += o.inf; return *this; }
  DualNumber& operator-=(DualNumber o) { st -= o.st; inf -= o.inf; return *this; }
};

inline DualNumber operator+(DualNumber a, DualNumber b) { return {a.st + b.st, a.inf + b.inf}; }
inline DualNumber operator-(DualNumber a, DualNumber b) { return {a.st - b.st, a.inf - b.inf}; }
inline DualNumber operator*(DualNumber a, DualNumber b) {
  return {a.st * b.st, a.st * b.inf + a.inf * b.st};
}
/** @brief Division through the derivative rule; the caller guarantees b.st != 0. */
inline DualNumber operator/(DualNumber a, DualNumber b) {
  double s = a.st / b.st;
  return {s, (a.inf - s * b.inf) / b.st};
}

enum class Ordering { less, equal, greater };

Ordering dn_cmp(DualNumber p, DualNumber q, double zero_tol = 1e-12);
bool is_appreciable(DualNumber q, double zero_tol = 1e-12);
DualNumber dn_sqrt(DualNumber q, double zero_tol = 1e-12);
DualNumber dn_inv(DualNumber q, double zero_tol = 1e-12);

struct Quaternion {
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_) : w(w_) {}
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  Quaternion conj() const { return {w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  Quaternion inverse() const;
  bool is_zero() const { return w == 0.0 && x == 0.0 && y == 0.0 && z == 0.0; }

  Quaternion operator-() const { return {-w, -x, -y, -z}; }
  Quaternion& operator+=(const Quaternion& o) { w += o.w; x += o.x; y += o.y; z += o.z; return *this; }
  Quaternion& operator-=(const Quaternion& o) { w -= o.w; x -= o.x; y -= o.y; z -= o.z; return *this; }
  Quaternion& operator*=(double s) { w *= s; x *= s; y *= s; z *= s; return *this; }
};

inline Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
inline Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
inline Quaternion operator*(Quaternion a, double s) { return a *= s; }
inline Quaternion operator*(double s, Quaternion a) { return a *= s; }
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}
inline Quaternion Quaternion::inverse() const {
  double n = norm2();
  return {w / n, -x / n, -y / n, -z / n};
}

namespace units {
inline constexpr Quaternion one{1, 0, 0, 0};
inline constexpr Quaternion i{0, 1, 0, 0};
inline constexpr Quaternion j{0, 0, 1, 0};
inline constexpr Quaternion k{0, 0, 0, 1};
}  // namespace units

struct DualQuaternion {
  Quaternion st;
  Quaternion inf;

  constexpr DualQuaternion() = default;
  constexpr DualQuaternion(Quaternion s) : st(s) {}
  constexpr DualQuaternion(Quaternion s, Quaternion i) : st(s), inf(i) {}
  constexpr DualQuaternion(DualNumber d) : st(d.st), inf(d.inf) {}

  DualQuaternion conj() const { return {st.conj(), inf.conj()}; }
  DualQuaternion operator-() const { return {-st, -inf}; }
};

inline DualQuaternion operator+(const DualQuaternion& a, const DualQuaternion& b) {
  return {a.st + b.st, a.inf + b.inf};
}
inline DualQuaternion operator-(const DualQuaternion& a, const DualQuaternion& b) {
  return {a.st - b.st, a.inf - b.inf};
}

DualQuaternion dq_mul(const DualQuaternion& p, const DualQuaternion& q);
DualQuaternion dq_inv(const DualQuaternion& q, double zero_tol = 1e-12);
/** @brief √(qq*) for appreciable q, |q_in|ε for infinitesimal q. */
DualNumber dq_norm(const DualQuaternion& q, double zero_tol = 1e-12);

inline DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) { return dq_mul(a, b); }

}  // namespace dq
