#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dq/examples.hpp"
#include "dq/ppsvd.hpp"

using namespace dq;

namespace {

void near(const DualQuaternion& got, Quaternion st, Quaternion inf, double tol = 1e-9) {
  CHECK((got.st - st).norm() <= tol);
  CHECK((got.inf - inf).norm() <= tol);
}

void check_result(const PpsvdResult& r, const DQMatrix& a, const DQMatrix& b, const DQMatrix& c) {
  double sc = scale_of(a) + scale_of(b) + scale_of(c);
  FrobPair fa = frob_norms(r.U.adjoint() * a * r.P - r.formA);
  FrobPair fb = frob_norms(r.Pinv * b * r.Q - r.formB);
  FrobPair fc = frob_norms(r.Qinv * c * r.V - r.formC);
  for (const FrobPair& f : {fa, fb, fc}) {
    CHECK(f.st_norm <= 1e-8 * sc);
    CHECK(f.inf_norm <= 1e-6 * sc);
  }
  FrobPair ip = frob_norms(r.P * r.Pinv - DQMatrix::identity(r.P.rows()));
  FrobPair iq = frob_norms(r.Q * r.Qinv - DQMatrix::identity(r.Q.rows()));
  CHECK(ip.st_norm <= 1e-9);
  CHECK(ip.inf_norm <= 1e-7);
  CHECK(iq.st_norm <= 1e-9);
  CHECK(iq.inf_norm <= 1e-7);
  UnitaryCheck u = is_unitary(r.U), v = is_unitary(r.V);
  CHECK(u.residual.st_norm <= 1e-12);
  CHECK(u.residual.inf_norm <= 1e-10);
  CHECK(v.residual.st_norm <= 1e-12);
  CHECK(v.residual.inf_norm <= 1e-10);
  for (std::size_t x = 0; x + 1 < r.sigma_appreciable.size(); ++x)
    CHECK(dn_cmp(r.sigma_appreciable[x], r.sigma_appreciable[x + 1]) != Ordering::less);
}

void compare_spectrum(const PpsvdResult& r, const DQMatrix& a, const DQMatrix& b, const DQMatrix& c) {
  SvdResult mine = product_svd_from_ppsvd(r, a, b, c);
  SvdResult ref = dqsvd(a * b * c);
  REQUIRE(mine.sigma.size() == ref.sigma.size());
  CHECK(mine.profile.arank == ref.profile.arank);
  for (std::size_t x = 0; x < ref.sigma.size(); ++x) {
    CHECK(std::abs(mine.sigma[x].st - ref.sigma[x].st) <= 1e-8);
    CHECK(std::abs(mine.sigma[x].inf - ref.sigma[x].inf) <= 1e-6);
  }
}

}  // namespace

TEST_CASE("product-product example forms") {
  Triplet t = example_ppsvd_triplet();
  PpsvdResult r = dqppsvd(t.A, t.B, t.C);
  check_result(r, t.A, t.B, t.C);
  CHECK(r.dims.i == 1);
  CHECK(r.dims.j == 1);
  CHECK(r.dims.k == 1);
  CHECK(r.dims.l == 1);
  near(r.formA.at(0, 0), 1.0, 0.0);
  near(r.formA.at(0, 1), 0.0, 0.0);
  near(r.formA.at(1, 0), 0.0, 0.0);
  near(r.formA.at(1, 1), 0.0, 1.0);
  near(r.formB.at(0, 0), 1.0, 0.0);
  near(r.formB.at(0, 1), 0.0, 0.0);
  near(r.formB.at(1, 0), 0.0, 0.0);
  near(r.formB.at(1, 1), 1.0, 0.0);
  near(r.formC.at(0, 0), 0.5, 1.0);
  near(r.formC.at(0, 1), 0.0, 0.0);
  near(r.formC.at(1, 0), 0.0, 0.0);
  near(r.formC.at(1, 1), 0.0, Quaternion(0, 0.5, 0, 0));
  // U = [[1, kε], [kε, 1]] and V = [[1, -kε], [-kε, 1]]
  const Quaternion k(0, 0, 0, 1);
  near(r.U.at(0, 0), 1.0, 0.0);
  near(r.U.at(0, 1), 0.0, k);
  near(r.U.at(1, 0), 0.0, k);
  near(r.U.at(1, 1), 1.0, 0.0);
  near(r.V.at(0, 0), 1.0, 0.0);
  near(r.V.at(0, 1), 0.0, k * -1.0);
  near(r.V.at(1, 0), 0.0, k * -1.0);
  near(r.V.at(1, 1), 1.0, 0.0);

  SvdResult sv = product_svd_from_ppsvd(r, t.A, t.B, t.C);
  REQUIRE(sv.sigma.size() == 1);
  CHECK(std::abs(sv.sigma[0].st - 0.5) <= 1e-9);
  CHECK(std::abs(sv.sigma[0].inf - 1.0) <= 1e-9);
  compare_spectrum(r, t.A, t.B, t.C);
}

TEST_CASE("identity triplet") {
  DQMatrix i3 = DQMatrix::identity(3);
  PpsvdResult r = dqppsvd(i3, i3, i3);
  check_result(r, i3, i3, i3);
  CHECK(r.dims.l == 3);
  compare_spectrum(r, i3, i3, i3);
}

TEST_CASE("random square triplets") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    DQMatrix a = random_dense(3, 3, 100 + seed), b = random_dense(3, 3, 200 + seed), c = random_dense(3, 3, 300 + seed);
    PpsvdResult r = dqppsvd(a, b, c);
    check_result(r, a, b, c);
    compare_spectrum(r, a, b, c);
  }
}

TEST_CASE("rectangular and rank-deficient triplets") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    DQMatrix a = random_with_ranks(4, 5, {3, 2}, 400 + seed), b = random_with_ranks(5, 4, {3, 2}, 500 + seed),
             c = random_with_ranks(4, 3, {3, 1}, 600 + seed);
    PpsvdResult r = dqppsvd(a, b, c);
    check_result(r, a, b, c);
    compare_spectrum(r, a, b, c);
  }
}

TEST_CASE("infinitesimal rank planted in B") {
  DQMatrix a = random_dense(3, 3, 7), c = random_dense(3, 3, 8);
  DQMatrix b = random_with_ranks(3, 3, {3, 1}, 9);
  PpsvdResult r = dqppsvd(a, b, c);
  check_result(r, a, b, c);
  CHECK(r.dims.i == 3);
  CHECK(r.dims.j == 1);
  CHECK(r.dims.l == 1);
  compare_spectrum(r, a, b, c);
}

TEST_CASE("zero factor") {
  DQMatrix a(2, 3), b = random_dense(3, 2, 1), c = random_dense(2, 2, 2);
  PpsvdResult r = dqppsvd(a, b, c);
  check_result(r, a, b, c);
  CHECK(r.dims.i == 0);
  CHECK(r.sigma_appreciable.empty());
}

TEST_CASE("shape mismatch") {
  CHECK_THROWS_AS(dqppsvd(DQMatrix(2, 3), DQMatrix(2, 2), DQMatrix(2, 2)), Error);
  CHECK_THROWS_AS(dqppsvd(DQMatrix(2, 2), DQMatrix(2, 3), DQMatrix(2, 2)), Error);
}
