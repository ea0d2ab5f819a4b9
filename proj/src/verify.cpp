#include "dq/verify.hpp"

#include <algorithm>
#include <cmath>

#include "dq/error.hpp"

namespace dq {

namespace {

// identities such as c²+s² = 1 are held to a fixed bound independent of inputs
constexpr FrobPair kIdentityTol{1e-10, 1e-8};
constexpr FrobPair kSpectrumTol{1e-8, 1e-6};

FrobPair rel(FrobPair f, double sc) { return {f.st_norm / sc, f.inf_norm / sc}; }

FrobPair residual_tol(const ToleranceConfig& tol) { return {tol.residual_tol_st, tol.residual_tol_inf}; }

FrobPair unitary_residual(const DQMatrix& u) {
  DQMatrix i = DQMatrix::identity(u.rows());
  FrobPair a = frob_norms(u.adjoint() * u - i), b = frob_norms(u * u.adjoint() - i);
  return {std::max(a.st_norm, b.st_norm), std::max(a.inf_norm, b.inf_norm)};
}

void expect_shape(const DQMatrix& m, std::size_t r, std::size_t c, const char* name) {
  if (m.rows() != r || m.cols() != c)
    throw Error(ErrorKind::DimensionMismatch, std::string(name) + " has shape " + std::to_string(m.rows()) + "x" +
                                                  std::to_string(m.cols()) + ", expected " + std::to_string(r) +
                                                  "x" + std::to_string(c));
}

void expect(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::DimensionMismatch, what);
}

// worst |x − 1| over the two parts of a dual number list
FrobPair unit_deviation(const std::vector<DualNumber>& v) {
  FrobPair out;
  for (const DualNumber& x : v) {
    out.st_norm = std::max(out.st_norm, std::abs(x.st - 1.0));
    out.inf_norm = std::max(out.inf_norm, std::abs(x.inf));
  }
  return out;
}

double smallest_ratio(const QMatrix& m) {
  std::vector<double> s = oracle_singular_values(m);
  if (s.empty()) return 1.0;
  return s.front() > 0.0 ? s.back() / s.front() : 0.0;
}

void verify_qr(const DQMatrix& a, const QrResult& r, const ToleranceConfig& tol, VerificationReport& rep) {
  const double sc = scale_of(a);
  std::vector<std::size_t> sorted = r.perm;
  std::sort(sorted.begin(), sorted.end());
  bool perm_ok = true;
  for (std::size_t i = 0; i < sorted.size(); ++i) perm_ok = perm_ok && sorted[i] == i;
  rep.add_flag("permutation", perm_ok);
  if (perm_ok) rep.add("reconstruction", rel(frob_norms(r.Q * r.R - select_cols(a, r.perm)), sc), residual_tol(tol));
  rep.add("Q unitary", unitary_residual(r.Q), residual_tol(tol));
  DQMatrix lower(r.R.rows(), r.R.cols());
  for (std::size_t i = 0; i < r.R.rows(); ++i)
    for (std::size_t j = 0; j < std::min(i, r.R.cols()); ++j) lower.set(i, j, r.R.at(i, j));
  rep.add("R upper trapezoidal", rel(frob_norms(lower), sc), residual_tol(tol));
  rep.add_flag("rank profile", r.arank <= r.rank && r.rank <= std::min(a.rows(), a.cols()));
}

void verify_svd(const DQMatrix& a, const SvdResult& s, const ToleranceConfig& tol, VerificationReport& rep) {
  const double sc = scale_of(a);
  rep.add("reconstruction", rel(frob_norms(s.U.adjoint() * a * s.V - svd_middle(s, a.rows(), a.cols())), sc),
          residual_tol(tol));
  rep.add("U unitary", unitary_residual(s.U), residual_tol(tol));
  rep.add("V unitary", unitary_residual(s.V), residual_tol(tol));
  bool ordered = true, positive = true;
  std::size_t appreciable = 0;
  for (std::size_t i = 0; i < s.sigma.size(); ++i) {
    positive = positive && dn_cmp(s.sigma[i], DualNumber(0.0), 0.0) == Ordering::greater;
    if (s.sigma[i].st > 0.0) ++appreciable;
    if (i + 1 < s.sigma.size()) ordered = ordered && dn_cmp(s.sigma[i], s.sigma[i + 1]) != Ordering::less;
  }
  rep.add_flag("sigma positive", positive);
  rep.add_flag("sigma descending", ordered);
  rep.add_flag("rank profile", s.profile.rank == s.sigma.size() && s.profile.arank == appreciable);
}

void verify_gsvd(const DQMatrix& a, const DQMatrix& b, const GsvdResult& g, const ToleranceConfig& tol,
                 VerificationReport& rep) {
  const double sc = scale_of(a) + scale_of(b);
  if (g.form == GsvdForm::quotient) {
    rep.add("A reconstruction", rel(frob_norms(g.U.adjoint() * a * g.X - g.SigmaA), sc), residual_tol(tol));
    rep.add("B reconstruction", rel(frob_norms(g.V.adjoint() * b * g.X - g.SigmaB), sc), residual_tol(tol));
  } else {
    rep.add("A reconstruction", rel(frob_norms(g.U * g.SigmaA * g.X - a), sc), residual_tol(tol));
    rep.add("B reconstruction", rel(frob_norms(g.V * g.SigmaB * g.X - b), sc), residual_tol(tol));
  }
  rep.add("U unitary", unitary_residual(g.U), residual_tol(tol));
  rep.add("V unitary", unitary_residual(g.V), residual_tol(tol));
  if (g.x_nonsingular)
    rep.add("X inverse", frob_norms(g.X * g.X_inv - DQMatrix::identity(g.X.rows())), residual_tol(tol));
  std::vector<DualNumber> ones;
  bool ordered = true;
  for (std::size_t i = 0; i < g.cs_pairs.size(); ++i) {
    const CsPair& p = g.cs_pairs[i];
    ones.push_back(p.c * p.c + p.s * p.s);
    if (i + 1 < g.cs_pairs.size()) ordered = ordered && dn_cmp(p.c, g.cs_pairs[i + 1].c) != Ordering::greater;
  }
  rep.add("cosine-sine identity", unit_deviation(ones), kIdentityTol);
  rep.add_flag("cosines ascending", ordered);
}

void verify_rsvd(const DQMatrix& a, const DQMatrix& b, const DQMatrix& c, const RsvdResult& r, bool nonsingular,
                 const ToleranceConfig& tol, VerificationReport& rep) {
  const double sc = scale_of(a) + scale_of(b) + scale_of(c);
  DQMatrix fa = r.P * a * r.Q, fb = r.P * b * r.U, fc = r.V * c * r.Q;
  rep.add("PAQ = formA", rel(frob_norms(fa - r.formA), sc), residual_tol(tol));
  rep.add("PBU = formB", rel(frob_norms(fb - r.formB), sc), residual_tol(tol));
  rep.add("VCQ = formC", rel(frob_norms(fc - r.formC), sc), residual_tol(tol));
  rep.add("U unitary", unitary_residual(r.U), residual_tol(tol));
  rep.add("V unitary", unitary_residual(r.V), residual_tol(tol));
  rep.add("formA pattern", rel(pattern_residual(fa, rsvd_pattern_a(r.dims, nonsingular)), sc), residual_tol(tol));
  rep.add("formB pattern", rel(pattern_residual(fb, rsvd_pattern_b(r.dims, b.cols())), sc), residual_tol(tol));
  rep.add("formC pattern", rel(pattern_residual(fc, rsvd_pattern_c(r.dims)), sc), residual_tol(tol));

  std::vector<DualNumber> ones;
  bool ordered = true, monotone = true, inside = true;
  for (std::size_t i = 0; i < r.triples.size(); ++i) {
    const RestrictedTriple& x = r.triples[i];
    ones.push_back(x.alpha * x.alpha + x.beta * x.beta + x.gamma * x.gamma);
    for (DualNumber v : {x.alpha, x.beta, x.gamma}) inside = inside && v.st > 0.0 && v.st < 1.0;
    if (i + 1 < r.triples.size()) {
      const RestrictedTriple& y = r.triples[i + 1];
      ordered = ordered && dn_cmp(x.alpha, y.alpha) != Ordering::less && dn_cmp(x.beta, y.beta) != Ordering::greater &&
                dn_cmp(x.gamma, y.gamma) != Ordering::less;
      monotone = monotone &&
                 dn_cmp(x.alpha / (x.beta * x.gamma), y.alpha / (y.beta * y.gamma)) != Ordering::less;
    }
  }
  rep.add("triple identity", unit_deviation(ones), kIdentityTol);
  rep.add_flag("triples in (0, 1)", inside);
  rep.add_flag("triples ordered", ordered);
  rep.add_flag("quotients descending", monotone);

  // the stored triples must be the ones the cosine-sine data and forms give
  bool consistent = true;
  try {
    std::vector<RestrictedTriple> again = restricted_triples(r, tol);
    consistent = again.size() == r.triples.size();
    for (std::size_t i = 0; consistent && i < again.size(); ++i)
      for (auto [u, v] : {std::pair{again[i].alpha, r.triples[i].alpha}, std::pair{again[i].beta, r.triples[i].beta},
                          std::pair{again[i].gamma, r.triples[i].gamma}})
        consistent = consistent && std::abs(u.st - v.st) <= kIdentityTol.st_norm &&
                     std::abs(u.inf - v.inf) <= kIdentityTol.inf_norm;
  } catch (const Error&) {
    consistent = false;
  }
  rep.add_flag("triples match forms", consistent);

  if (nonsingular) {
    const double bound = tol.rank_tol;
    rep.add_flag("P nonsingular", r.P.rows() == 0 || smallest_ratio(r.P.st) > bound * static_cast<double>(r.P.rows()));
    rep.add_flag("Q nonsingular", r.Q.rows() == 0 || smallest_ratio(r.Q.st) > bound * static_cast<double>(r.Q.rows()));
  }
}

void verify_ppsvd(const DQMatrix& a, const DQMatrix& b, const DQMatrix& c, const PpsvdResult& r,
                  const ToleranceConfig& tol, VerificationReport& rep) {
  const double sc = scale_of(a) + scale_of(b) + scale_of(c);
  DQMatrix fa = r.U.adjoint() * a * r.P, fb = r.Pinv * b * r.Q, fc = r.Qinv * c * r.V;
  rep.add("U*AP = formA", rel(frob_norms(fa - r.formA), sc), residual_tol(tol));
  rep.add("P^-1 BQ = formB", rel(frob_norms(fb - r.formB), sc), residual_tol(tol));
  rep.add("Q^-1 CV = formC", rel(frob_norms(fc - r.formC), sc), residual_tol(tol));
  rep.add("BQ = P formB", rel(frob_norms(b * r.Q - r.P * r.formB), sc), residual_tol(tol));
  rep.add("CV = Q formC", rel(frob_norms(c * r.V - r.Q * r.formC), sc), residual_tol(tol));
  rep.add("P inverse", frob_norms(r.P * r.Pinv - DQMatrix::identity(r.P.rows())), residual_tol(tol));
  rep.add("Q inverse", frob_norms(r.Q * r.Qinv - DQMatrix::identity(r.Q.rows())), residual_tol(tol));
  rep.add("U unitary", unitary_residual(r.U), residual_tol(tol));
  rep.add("V unitary", unitary_residual(r.V), residual_tol(tol));
  const double bound = tol.rank_tol;
  rep.add_flag("P nonsingular", r.P.rows() == 0 || smallest_ratio(r.P.st) > bound * static_cast<double>(r.P.rows()));
  rep.add_flag("Q nonsingular", r.Q.rows() == 0 || smallest_ratio(r.Q.st) > bound * static_cast<double>(r.Q.rows()));
  rep.add("formA pattern", rel(pattern_residual(fa, ppsvd_pattern_a(r.dims)), sc), residual_tol(tol));
  rep.add("formB pattern", rel(pattern_residual(fb, ppsvd_pattern_b(r.dims)), sc), residual_tol(tol));
  rep.add("formC pattern", rel(pattern_residual(fc, ppsvd_pattern_c(r.dims)), sc), residual_tol(tol));

  bool ordered = r.sigma_appreciable.size() == r.dims.l;
  FrobPair diag_dev;
  for (std::size_t i = 0; ordered && i < r.sigma_appreciable.size(); ++i) {
    ordered = r.sigma_appreciable[i].st > 0.0;
    if (i + 1 < r.sigma_appreciable.size())
      ordered = ordered && dn_cmp(r.sigma_appreciable[i], r.sigma_appreciable[i + 1]) != Ordering::less;
    diag_dev.st_norm = std::max(diag_dev.st_norm, std::abs(fc.st(i, i).w - r.sigma_appreciable[i].st));
    diag_dev.inf_norm = std::max(diag_dev.inf_norm, std::abs(fc.inf(i, i).w - r.sigma_appreciable[i].inf));
  }
  rep.add_flag("sigma descending", ordered);
  rep.add("sigma matches formC", rel(diag_dev, sc), residual_tol(tol));
  rep.merge(cross_check_ppsvd(a, b, c, r, tol));
}

}  // namespace

const char* to_string(DecompKind k) {
  switch (k) {
    case DecompKind::qr: return "qr";
    case DecompKind::svd: return "svd";
    case DecompKind::gsvd1: return "gsvd1";
    case DecompKind::gsvd2: return "gsvd2";
    case DecompKind::rsvd1: return "rsvd1";
    case DecompKind::rsvd2: return "rsvd2";
    case DecompKind::ppsvd: return "ppsvd";
  }
  return "unknown";
}

DecompKind parse_kind(const std::string& name) {
  for (DecompKind k : {DecompKind::qr, DecompKind::svd, DecompKind::gsvd1, DecompKind::gsvd2, DecompKind::rsvd1,
                       DecompKind::rsvd2, DecompKind::ppsvd})
    if (name == to_string(k)) return k;
  throw Error(ErrorKind::Parse, "unknown decomposition kind '" + name + "'");
}

std::size_t input_count(DecompKind k) {
  switch (k) {
    case DecompKind::qr:
    case DecompKind::svd: return 1;
    case DecompKind::gsvd1:
    case DecompKind::gsvd2: return 2;
    default: return 3;
  }
}

AnyResult decompose(DecompKind k, const std::vector<DQMatrix>& in, const ToleranceConfig& tol) {
  if (in.size() != input_count(k))
    throw Error(ErrorKind::DimensionMismatch, std::string(to_string(k)) + " takes " +
                                                  std::to_string(input_count(k)) + " input matrices");
  switch (k) {
    case DecompKind::qr: return dqqr(in[0], tol);
    case DecompKind::svd: return dqsvd(in[0], tol);
    case DecompKind::gsvd1: return dqgsvd1(in[0], in[1], GsvdVariant::plain, tol);
    case DecompKind::gsvd2: return dqgsvd2(in[0], in[1], tol);
    case DecompKind::rsvd1: return dqrsvd1(in[0], in[1], in[2], tol);
    case DecompKind::rsvd2: return dqrsvd2(in[0], in[1], in[2], tol);
    case DecompKind::ppsvd: return dqppsvd(in[0], in[1], in[2], tol);
  }
  throw Error(ErrorKind::Parse, "unknown decomposition kind");
}

void VerificationReport::add(std::string name, FrobPair residual, FrobPair threshold) {
  bool ok = residual.st_norm <= threshold.st_norm && residual.inf_norm <= threshold.inf_norm;
  checks.push_back({std::move(name), residual, threshold, ok});
  overall = overall && ok;
}

void VerificationReport::add_flag(std::string name, bool ok) {
  checks.push_back({std::move(name), {ok ? 0.0 : 1.0, 0.0}, {0.0, 0.0}, ok});
  overall = overall && ok;
}

void VerificationReport::merge(const VerificationReport& o) {
  checks.insert(checks.end(), o.checks.begin(), o.checks.end());
  overall = overall && o.overall;
}

void check_shapes(DecompKind k, const std::vector<DQMatrix>& in, const AnyResult& result) {
  expect(in.size() == input_count(k), "wrong number of input matrices");
  const std::size_t m = in[0].rows(), n = in[0].cols();
  switch (k) {
    case DecompKind::qr: {
      const QrResult* r = std::get_if<QrResult>(&result);
      expect(r != nullptr, "result is not a QR factorization");
      expect_shape(r->Q, m, m, "Q");
      expect_shape(r->R, m, n, "R");
      expect(r->perm.size() == n, "permutation length differs from the column count");
      for (std::size_t p : r->perm) expect(p < n, "permutation index out of range");
      break;
    }
    case DecompKind::svd: {
      const SvdResult* r = std::get_if<SvdResult>(&result);
      expect(r != nullptr, "result is not an SVD");
      expect_shape(r->U, m, m, "U");
      expect_shape(r->V, n, n, "V");
      expect(r->sigma.size() <= std::min(m, n), "too many singular values");
      break;
    }
    case DecompKind::gsvd1:
    case DecompKind::gsvd2: {
      const GsvdResult* r = std::get_if<GsvdResult>(&result);
      expect(r != nullptr, "result is not a pair decomposition");
      expect(in[1].cols() == n, "A and B must have the same number of columns");
      const std::size_t p = in[1].rows();
      expect_shape(r->U, m, m, "U");
      expect_shape(r->V, p, p, "V");
      expect_shape(r->X, n, n, "X");
      expect_shape(r->SigmaA, m, n, "SigmaA");
      expect_shape(r->SigmaB, p, n, "SigmaB");
      if (r->x_nonsingular) expect_shape(r->X_inv, n, n, "X_inv");
      break;
    }
    case DecompKind::rsvd1:
    case DecompKind::rsvd2: {
      const RsvdResult* r = std::get_if<RsvdResult>(&result);
      expect(r != nullptr, "result is not a restricted decomposition");
      expect(in[1].rows() == m, "B must have as many rows as A");
      expect(in[2].cols() == n, "C must have as many columns as A");
      const std::size_t p = in[1].cols(), q = in[2].rows();
      expect_shape(r->P, m, m, "P");
      expect_shape(r->Q, n, n, "Q");
      expect_shape(r->U, p, p, "U");
      expect_shape(r->V, q, q, "V");
      expect_shape(r->formA, m, n, "formA");
      expect_shape(r->formB, m, p, "formB");
      expect_shape(r->formC, q, n, "formC");
      const RsvdBlockDims& d = r->dims;
      expect(d.m1 + d.m2 == m && d.jkl() + d.r + d.s + d.t + d.t_hat == d.m1, "block rows do not add up");
      expect(d.jkl() + d.r + d.s + d.t + d.s1_hat + d.c2 + d.c3 == n, "block columns do not add up");
      expect(d.top + d.r + d.s + d.t + d.s1_hat == q, "block rows of C do not add up");
      expect(d.s + d.t + d.t_hat + d.j + d.k <= p, "block columns of B do not add up");
      break;
    }
    case DecompKind::ppsvd: {
      const PpsvdResult* r = std::get_if<PpsvdResult>(&result);
      expect(r != nullptr, "result is not a product-product decomposition");
      expect(in[1].rows() == n, "B must have as many rows as A has columns");
      expect(in[2].rows() == in[1].cols(), "C must have as many rows as B has columns");
      const std::size_t p = in[1].cols(), q = in[2].cols();
      const PpsvdBlockDims& d = r->dims;
      expect(d.m == m && d.n == n && d.p == p && d.q == q, "block dims disagree with the inputs");
      expect(d.i <= std::min(m, n) && d.j <= d.i && d.k <= n - d.i && d.j + d.k <= p && d.l <= d.j && d.s <= d.k &&
                 d.t <= p - d.j - d.k && d.l + d.s + d.t <= q,
             "block dims are not nested");
      expect_shape(r->U, m, m, "U");
      expect_shape(r->V, q, q, "V");
      expect_shape(r->P, n, n, "P");
      expect_shape(r->Pinv, n, n, "Pinv");
      expect_shape(r->Q, p, p, "Q");
      expect_shape(r->Qinv, p, p, "Qinv");
      expect_shape(r->formA, m, n, "formA");
      expect_shape(r->formB, n, p, "formB");
      expect_shape(r->formC, p, q, "formC");
      break;
    }
  }
}

VerificationReport verify_decomposition(DecompKind k, const std::vector<DQMatrix>& in, const AnyResult& result,
                                        const ToleranceConfig& tol) {
  VerificationReport rep;
  try {
    check_shapes(k, in, result);
  } catch (const Error&) {
    rep.add_flag("shapes", false);
    return rep;
  }
  try {
    switch (k) {
      case DecompKind::qr: verify_qr(in[0], std::get<QrResult>(result), tol, rep); break;
      case DecompKind::svd: verify_svd(in[0], std::get<SvdResult>(result), tol, rep); break;
      case DecompKind::gsvd1:
      case DecompKind::gsvd2: verify_gsvd(in[0], in[1], std::get<GsvdResult>(result), tol, rep); break;
      case DecompKind::rsvd1:
      case DecompKind::rsvd2:
        verify_rsvd(in[0], in[1], in[2], std::get<RsvdResult>(result), k == DecompKind::rsvd2, tol, rep);
        break;
      case DecompKind::ppsvd: verify_ppsvd(in[0], in[1], in[2], std::get<PpsvdResult>(result), tol, rep); break;
    }
  } catch (const Error& e) {
    rep.add_flag(std::string("evaluation (") + e.what() + ")", false);
  }
  return rep;
}

FrobPair spectrum_deviation(std::vector<DualNumber> x, std::vector<DualNumber> y, std::size_t n) {
  auto prep = [n](std::vector<DualNumber>& v) {
    if (v.size() < n) v.resize(n, DualNumber(0.0));
    std::stable_sort(v.begin(), v.end(),
                     [](DualNumber a, DualNumber b) { return dn_cmp(a, b, 0.0) == Ordering::greater; });
  };
  prep(x);
  prep(y);
  if (x.size() != y.size()) return {INFINITY, INFINITY};
  FrobPair out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.st_norm = std::max(out.st_norm, std::abs(x[i].st - y[i].st));
    out.inf_norm = std::max(out.inf_norm, std::abs(x[i].inf - y[i].inf));
  }
  return out;
}

VerificationReport cross_check_ppsvd(const DQMatrix& a, const DQMatrix& b, const DQMatrix& c, const PpsvdResult& r,
                                     const ToleranceConfig& tol) {
  VerificationReport rep;
  try {
    SvdResult mine = product_svd_from_ppsvd(r, a, b, c, tol);
    SvdResult direct = dqsvd(a * b * c, tol);
    rep.add("spectrum vs direct product",
            spectrum_deviation(mine.sigma, direct.sigma, std::min(a.rows(), c.cols())), kSpectrumTol);
    rep.add_flag("rank vs direct product", mine.profile.rank == direct.profile.rank &&
                                               mine.profile.arank == direct.profile.arank);
  } catch (const Error& e) {
    rep.add_flag(std::string("spectrum vs direct product (") + e.what() + ")", false);
  }
  return rep;
}

}  // namespace dq
