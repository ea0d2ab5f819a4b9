// Acceptance criteria 1-7; one PASS/FAIL line each, nonzero exit if any fails.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "dq/examples.hpp"
#include "dq/io.hpp"

using namespace dq;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int run_tool(const std::string& args) {
  std::string cmd = std::string(DQTOOL_PATH) + " " + args + " >/dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

// worst entrywise deviation of got from want over both parts and all components
double max_dev(const DQMatrix& got, const DQMatrix& want) {
  if (got.rows() != want.rows() || got.cols() != want.cols()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < got.rows(); ++i)
    for (std::size_t j = 0; j < got.cols(); ++j)
      d = std::max({d, (got.st(i, j) - want.st(i, j)).norm(), (got.inf(i, j) - want.inf(i, j)).norm()});
  return d;
}

DQMatrix diag_of(const std::vector<DualQuaternion>& d) {
  DQMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

DualQuaternion dq(double st, double inf) { return {Quaternion(st), Quaternion(inf)}; }

double dn_dev(DualNumber a, double st, double inf) { return std::max(std::abs(a.st - st), std::abs(a.inf - inf)); }

struct Scratch {
  fs::path dir;
  explicit Scratch(const char* name) : dir(fs::temp_directory_path() / name) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string at(const std::string& f) const { return (dir / f).string(); }
  std::string inputs(const std::string& d) const {
    return at(d + "/A.dqm") + " " + at(d + "/B.dqm") + " " + at(d + "/C.dqm");
  }
};

bool pipeline(const Scratch& s, const char* id, const char* kind) {
  std::string ex = std::string("ex_") + kind, out = std::string("out_") + kind;
  return run_tool(std::string("example ") + id + " -o " + s.at(ex)) == 0 &&
         run_tool(std::string("decompose --kind ") + kind + " " + s.inputs(ex) + " -o " + s.at(out)) == 0 &&
         run_tool(std::string("verify --kind ") + kind + " " + s.inputs(ex) + " --result " + s.at(out + "/result.dqr")) ==
             0;
}

void criterion1() {
  auto t0 = Clock::now();
  Scratch s("dq_accept_1");
  bool piped = pipeline(s, "6.1", "rsvd1");
  auto [k, any] = parse_result(read_text(s.at("out_rsvd1/result.dqr")));
  const RsvdResult& r = std::get<RsvdResult>(any);
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  double tdev = INFINITY;
  if (r.triples.size() == 1)
    tdev = std::max({dn_dev(r.triples[0].alpha, s6 / 6, 5 * s3 / 9), dn_dev(r.triples[0].beta, s2 / 2, -1.0),
                     dn_dev(r.triples[0].gamma, s3 / 3, 2 * s6 / 9)});
  DQMatrix wa = diag_of({dq(1, 0), dq(s6 / 6, 5 * s3 / 9), dq(0, 1)});
  DQMatrix wb(3, 2);
  wb.set(1, 0, dq(s2 / 2, -1.0));
  wb.set(2, 1, dq(1, 0));
  DQMatrix wc = diag_of({dq(0, 1), dq(s3 / 3, 2 * s6 / 9), dq(1, 0)});
  double fdev = std::max({max_dev(r.formA, wa), max_dev(r.formB, wb), max_dev(r.formC, wc)});
  double secs = seconds_since(t0);
  report(1, piped && k == DecompKind::rsvd1 && tdev <= 1e-9 && fdev <= 1e-9 && secs < 1.0,
         std::string("restricted example pipeline ") + (piped ? "exit 0" : "failed") +
             fmt(", triple dev %.2e, form dev %.2e, %.3f s", tdev, fdev, secs));
}

void criterion2() {
  auto t0 = Clock::now();
  Scratch s("dq_accept_2");
  bool piped = pipeline(s, "6.2", "ppsvd");
  Triplet t = example_ppsvd_triplet();
  PpsvdResult r = dqppsvd(t.A, t.B, t.C);
  DQMatrix wa = diag_of({dq(1, 0), dq(0, 1)}), wb = DQMatrix::identity(2);
  DQMatrix wc = diag_of({dq(0.5, 1), DualQuaternion{Quaternion(), Quaternion(0, 0.5, 0, 0)}});
  double fdev = std::max({max_dev(r.formA, wa), max_dev(r.formB, wb), max_dev(r.formC, wc)});
  SvdResult sv = product_svd_from_ppsvd(r, t.A, t.B, t.C);
  FrobPair sdev = spectrum_deviation(sv.sigma, {DualNumber(0.5, 1.0), DualNumber(0.0)}, 2);
  double secs = seconds_since(t0);
  report(2, piped && fdev <= 1e-9 && sdev.st_norm <= 1e-9 && sdev.inf_norm <= 1e-9 && secs < 1.0,
         std::string("product-product example pipeline ") + (piped ? "exit 0" : "failed") +
             fmt(", form dev %.2e, spectrum dev %.2e, %.3f s", fdev, std::max(sdev.st_norm, sdev.inf_norm), secs));
}

struct Triple3 {
  DQMatrix a, b, c;
  bool rank_equals_arank = true;
};

// random matrix: dense, or a prescribed profile which may include infinitesimal rank
DQMatrix random_matrix(std::mt19937_64& g, std::size_t r, std::size_t c, bool& profile_equal) {
  std::uint64_t seed = g();
  switch (g() % 3) {
    case 0: return random_dense(r, c, seed);
    case 1: {
      std::size_t rank = 1 + g() % std::min(r, c);
      return random_with_ranks(r, c, {rank, rank}, seed);
    }
    default: {
      std::size_t rank = g() % (std::min(r, c) + 1);
      std::size_t arank = rank == 0 ? 0 : g() % (rank + 1);
      if (arank != rank) profile_equal = false;
      return random_with_ranks(r, c, {rank, arank}, seed);
    }
  }
}

std::vector<Triple3> rsvd_cases() {
  std::mt19937_64 g(20240601);
  std::vector<Triple3> out;
  for (int i = 0; i < 200; ++i) {
    std::size_t m = 1 + g() % 6, n = 1 + g() % 6, p = 1 + g() % 6, q = 1 + g() % 6;
    Triple3 t;
    t.a = random_matrix(g, m, n, t.rank_equals_arank);
    t.b = random_matrix(g, m, p, t.rank_equals_arank);
    t.c = random_matrix(g, q, n, t.rank_equals_arank);
    out.push_back(std::move(t));
  }
  return out;
}

struct RsvdPair {
  std::optional<RsvdResult> r1, r2;
  std::string err;
};

void criteria3and4() {
  auto t0 = Clock::now();
  std::vector<Triple3> cases = rsvd_cases();
  std::vector<RsvdPair> res(cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i) {
    try {
      res[i].r1 = dqrsvd1(cases[i].a, cases[i].b, cases[i].c);
    } catch (const Error& e) {
      res[i].err = e.what();
    }
    try {
      res[i].r2 = dqrsvd2(cases[i].a, cases[i].b, cases[i].c);
    } catch (const Error& e) {
      res[i].err += std::string(" ") + e.what();
    }
  }

  // criterion 3 on the first path's triples
  double worst_st = 0.0, worst_inf = 0.0;
  int bad_order = 0, bad_quot = 0, failed = 0;
  std::size_t triples = 0;
  for (const RsvdPair& p : res) {
    if (!p.r1) {
      ++failed;
      continue;
    }
    const auto& ts = p.r1->triples;
    triples += ts.size();
    for (std::size_t i = 0; i < ts.size(); ++i) {
      DualNumber one = ts[i].alpha * ts[i].alpha + ts[i].beta * ts[i].beta + ts[i].gamma * ts[i].gamma;
      worst_st = std::max(worst_st, std::abs(one.st - 1.0));
      worst_inf = std::max(worst_inf, std::abs(one.inf));
      if (i + 1 < ts.size()) {
        const RestrictedTriple &x = ts[i], &y = ts[i + 1];
        if (dn_cmp(x.alpha, y.alpha) == Ordering::less || dn_cmp(x.beta, y.beta) == Ordering::greater ||
            dn_cmp(x.gamma, y.gamma) == Ordering::less)
          ++bad_order;
        if (dn_cmp(x.alpha / (x.beta * x.gamma), y.alpha / (y.beta * y.gamma)) == Ordering::less) ++bad_quot;
      }
    }
  }
  double secs = seconds_since(t0);
  report(3, failed == 0 && worst_st <= 1e-10 && worst_inf <= 1e-8 && bad_order == 0 && bad_quot == 0 && secs < 30.0,
         std::to_string(cases.size()) + " triplets, " + std::to_string(triples) + " triples, " +
             std::to_string(failed) + " failed runs" +
             fmt(", identity dev (%.2e, %.2e), %.2f s for both paths", worst_st, worst_inf, secs) +
             ", order violations " + std::to_string(bad_order) + ", quotient violations " + std::to_string(bad_quot));

  // criterion 4: path agreement, certificates on rank = Arank inputs
  double agree = 0.0;
  int mismatched = 0, uncertified = 0, certified_cases = 0, missing = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const RsvdPair& p = res[i];
    if (!p.r1 || !p.r2) {
      ++missing;
      continue;
    }
    const auto &x = p.r1->triples, &y = p.r2->triples;
    if (x.size() != y.size()) {
      ++mismatched;
      continue;
    }
    for (std::size_t j = 0; j < x.size(); ++j)
      for (auto [u, v] : {std::pair{x[j].alpha, y[j].alpha}, std::pair{x[j].beta, y[j].beta},
                          std::pair{x[j].gamma, y[j].gamma}})
        agree = std::max({agree, std::abs(u.st - v.st), std::abs(u.inf - v.inf)});
    if (cases[i].rank_equals_arank) {
      ++certified_cases;
      VerificationReport rep =
          verify_decomposition(DecompKind::rsvd2, {cases[i].a, cases[i].b, cases[i].c}, AnyResult(*p.r2));
      bool cert = p.r2->pq_nonsingular;
      for (const Check& c : rep.checks)
        if (c.name == "P nonsingular" || c.name == "Q nonsingular") cert = cert && c.passed;
      if (!cert) ++uncertified;
    }
  }
  report(4, missing == 0 && mismatched == 0 && agree <= 1e-8 && uncertified == 0,
         fmt("max path disagreement %.2e", agree) + ", " + std::to_string(mismatched) + " length mismatches, " +
             std::to_string(missing) + " failed runs, certificates " +
             std::to_string(certified_cases - uncertified) + "/" + std::to_string(certified_cases));
}

void criterion5() {
  auto t0 = Clock::now();
  std::mt19937_64 g(777);
  FrobPair worst;
  int failed = 0, rank_mismatch = 0;
  for (int i = 0; i < 100; ++i) {
    std::size_t m = 1 + g() % 5, n = 1 + g() % 5, p = 1 + g() % 5, q = 1 + g() % 5;
    bool unused = true;
    DQMatrix a = random_matrix(g, m, n, unused), b = random_matrix(g, n, p, unused), c = random_matrix(g, p, q, unused);
    try {
      PpsvdResult r = dqppsvd(a, b, c);
      SvdResult mine = product_svd_from_ppsvd(r, a, b, c);
      SvdResult direct = dqsvd(a * b * c);
      if (mine.sigma.size() != direct.sigma.size()) ++rank_mismatch;
      FrobPair d = spectrum_deviation(mine.sigma, direct.sigma, std::min(m, q));
      worst.st_norm = std::max(worst.st_norm, d.st_norm);
      worst.inf_norm = std::max(worst.inf_norm, d.inf_norm);
    } catch (const Error&) {
      ++failed;
    }
  }
  report(5, failed == 0 && rank_mismatch == 0 && worst.st_norm <= 1e-8 && worst.inf_norm <= 1e-6,
         "100 triplets, " + std::to_string(failed) + " failed runs, " + std::to_string(rank_mismatch) +
             " rank mismatches" + fmt(", max spectral deviation (%.2e, %.2e), %.2f s", worst.st_norm, worst.inf_norm,
                                      seconds_since(t0)));
}

void criterion6() {
  auto t0 = Clock::now();
  std::mt19937_64 g(4242);
  double qr_st = 0, qr_inf = 0, sv_st = 0, sv_inf = 0, oracle = 0, bu = 0, cs_st = 0, cs_inf = 0;
  int failed = 0;
  for (int i = 0; i < 500; ++i) {
    std::size_t m = 1 + g() % 8, n = 1 + g() % 8;
    bool unused = true;
    DQMatrix a = random_matrix(g, m, n, unused);
    DQMatrix b = random_matrix(g, 1 + g() % 8, n, unused);
    try {
      const double sc = scale_of(a);
      QrResult qr = dqqr(a);
      FrobPair f = frob_norms(qr.Q * qr.R - select_cols(a, qr.perm));
      qr_st = std::max(qr_st, f.st_norm / sc);
      qr_inf = std::max(qr_inf, f.inf_norm / sc);

      SvdResult sv = dqsvd(a);
      f = frob_norms(sv.U * svd_middle(sv, m, n) * sv.V.adjoint() - a);
      sv_st = std::max(sv_st, f.st_norm / sc);
      sv_inf = std::max(sv_inf, f.inf_norm / sc);

      // appreciable standard parts against LAPACK; the rest of the LAPACK spectrum must vanish
      std::vector<double> o = oracle_singular_values(a.st);
      const double top = o.empty() ? 1.0 : std::max(o.front(), 1e-300);
      for (std::size_t k = 0; k < o.size(); ++k) {
        double mine = k < sv.sigma.size() ? sv.sigma[k].st : 0.0;
        oracle = std::max(oracle, std::abs(o[k] - mine) / top);
      }

      UnitaryCheck u = is_unitary(blocked_unitary(a.st));
      bu = std::max({bu, u.residual.st_norm, u.residual.inf_norm});

      for (const GsvdResult& gs : {dqgsvd2(a, b), dqgsvd1(a, b)})
        for (const CsPair& p : gs.cs_pairs) {
          DualNumber one = p.c * p.c + p.s * p.s;
          cs_st = std::max(cs_st, std::abs(one.st - 1.0));
          cs_inf = std::max(cs_inf, std::abs(one.inf));
        }
    } catch (const Error&) {
      ++failed;
    }
  }
  bool ok = failed == 0 && qr_st <= 1e-11 && qr_inf <= 1e-9 && sv_st <= 1e-11 && sv_inf <= 1e-9 && oracle <= 1e-10 &&
            bu <= 1e-14 && cs_st <= 1e-10 && cs_inf <= 1e-8;
  report(6, ok,
         "500 matrices, " + std::to_string(failed) + " failed runs" +
             fmt(", qr (%.2e, %.2e)", qr_st, qr_inf) + fmt(", svd (%.2e, %.2e)", sv_st, sv_inf) +
             fmt(", oracle %.2e, blocked unitary %.2e", oracle, bu) + fmt(", cs (%.2e, %.2e)", cs_st, cs_inf) +
             fmt(", %.2f s", seconds_since(t0)));
}

// every file below dir, keyed by relative path
std::vector<std::pair<std::string, std::string>> snapshot(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out.emplace_back(fs::relative(e.path(), dir).string(), read_text(e.path().string()));
  std::sort(out.begin(), out.end());
  return out;
}

void criterion7() {
  auto once = [](const Scratch& s) {
    bool ok = run_tool("example 6.1 -o " + s.at("e1")) == 0 && run_tool("example 6.2 -o " + s.at("e2")) == 0;
    ok = ok && run_tool("gen 4 3 --rank 3 --arank 2 --seed 7 -o " + s.at("g/A.dqm")) == 0;
    ok = ok && run_tool("gen 3 4 --rank 2 --arank 1 --seed 8 -o " + s.at("g/B.dqm")) == 0;
    ok = ok && run_tool("gen 4 3 --seed 9 -o " + s.at("g/C.dqm")) == 0;
    const std::string ga = s.at("g/A.dqm"), gb = s.at("g/B.dqm"), gc = s.at("g/C.dqm");
    std::vector<std::pair<std::string, std::string>> jobs = {
        {"qr", ga},
        {"svd", ga},
        {"gsvd1", ga + " " + gc},
        {"gsvd2", ga + " " + gc},
        {"rsvd1", s.inputs("e1")},
        {"rsvd2", s.inputs("e1")},
        {"ppsvd", s.inputs("e2")},
        {"ppsvd", ga + " " + gb + " " + gc},
    };
    int idx = 0;
    for (const auto& [kind, in] : jobs) {
      std::string out = s.at("out" + std::to_string(idx++));
      ok = ok && run_tool("decompose --kind " + kind + " " + in + " -o " + out) == 0;
      ok = ok && run_tool("verify --kind " + kind + " " + in + " --result " + out + "/result.dqr") == 0;
    }
    return ok;
  };
  Scratch a("dq_accept_7a"), b("dq_accept_7b");
  bool ran = once(a) && once(b);
  auto sa = snapshot(a.dir), sb = snapshot(b.dir);
  bool same = sa.size() == sb.size();
  for (std::size_t i = 0; same && i < sa.size(); ++i) same = sa[i] == sb[i];
  report(7, ran && same && !sa.empty(),
         std::string("two runs of example/gen/decompose/verify: ") + std::to_string(sa.size()) + " files, " +
             (same ? "byte-identical" : "differ") + (ran ? "" : ", a command failed"));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> all = {criterion1, criterion2, criteria3and4, criterion5, criterion6,
                                                  criterion7};
  for (const auto& c : all) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("FAIL criterion run aborted: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
