#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>

#include "dq/error.hpp"
#include "dq/examples.hpp"
#include "dq/io.hpp"

using namespace dq;

namespace {

bool bit_equal(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data().data(), b.data().data(), a.data().size() * sizeof(Quaternion)) == 0;
}

bool bit_equal(const DQMatrix& a, const DQMatrix& b) { return bit_equal(a.st, b.st) && bit_equal(a.inf, b.inf); }

ErrorKind kind_of(const std::string& text) {
  try {
    parse_matrix(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InconsistentResult;
}

}  // namespace

TEST_CASE("matrix text round-trips bit for bit") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DQMatrix m = random_with_ranks(3 + seed % 3, 2 + seed % 4, {2, 1}, seed);
    DQMatrix back = parse_matrix(render_matrix(m));
    CHECK(bit_equal(m, back));
    CHECK(render_matrix(back) == render_matrix(m));
  }
  DQMatrix odd(1, 2);
  odd.st(0, 0) = Quaternion(-0.0, 1e-300, 5e-324, 1.0 / 3.0);
  odd.inf(0, 1) = Quaternion(0.1, -2.5e17, 0.7071067811865476, 1.7976931348623157e308);
  CHECK(bit_equal(odd, parse_matrix(render_matrix(odd))));
  CHECK(parse_matrix(render_matrix(DQMatrix(0, 3))).cols() == 3);
}

TEST_CASE("example entries are stored exactly") {
  Triplet t = example_rsvd_triplet();
  DQMatrix a = parse_matrix(render_matrix(t.A));
  CHECK(a.st(0, 1).w == 0.7071067811865476);
  CHECK(a.inf(0, 1).w == 1.0);
  CHECK(a.st(0, 1).z == 0.0);
  CHECK(a.inf(0, 1).z == 0.7071067811865476);
}

TEST_CASE("malformed matrices are parse errors") {
  CHECK(kind_of("") == ErrorKind::Parse);
  CHECK(kind_of("{") == ErrorKind::Parse);
  CHECK(kind_of("[1, 2]") == ErrorKind::Parse);
  CHECK(kind_of(R"({"rows": 1, "cols": 1})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"rows": 1, "cols": 2, "entries": [[1,0,0,0,0,0,0,0]]})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"rows": 1, "cols": 1, "entries": [[1,0,0,0,0,0,0]]})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"rows": 1, "cols": 1, "entries": [[1,0,0,"x",0,0,0,0]]})") == ErrorKind::Parse);
  CHECK(kind_of(R"({"rows": -1, "cols": 1, "entries": []})") == ErrorKind::Parse);
}

TEST_CASE("result bundles round-trip and still verify") {
  Triplet r = example_rsvd_triplet(), p = example_ppsvd_triplet();
  DQMatrix a = random_with_ranks(4, 3, {3, 2}, 5), b = random_dense(2, 3, 6);
  std::vector<std::pair<DecompKind, std::vector<DQMatrix>>> cases = {
      {DecompKind::qr, {a}},
      {DecompKind::svd, {a}},
      {DecompKind::gsvd1, {a, b}},
      {DecompKind::gsvd2, {a, b}},
      {DecompKind::rsvd1, {r.A, r.B, r.C}},
      {DecompKind::rsvd2, {r.A, r.B, r.C}},
      {DecompKind::ppsvd, {p.A, p.B, p.C}},
  };
  for (const auto& [k, in] : cases) {
    CAPTURE(to_string(k));
    AnyResult res = decompose(k, in);
    std::string text = render_result(k, res);
    auto [k2, back] = parse_result(text);
    CHECK(k2 == k);
    CHECK(render_result(k2, back) == text);
    VerificationReport x = verify_decomposition(k, in, res), y = verify_decomposition(k, in, back);
    CHECK(x.overall);
    CHECK(y.overall);
    REQUIRE(x.checks.size() == y.checks.size());
    for (std::size_t i = 0; i < x.checks.size(); ++i) CHECK(x.checks[i].residual.st_norm == y.checks[i].residual.st_norm);
  }
}

TEST_CASE("bundles with missing parts are parse errors") {
  CHECK_THROWS_AS(parse_result(R"({"format": "dqr", "kind": "svd"})"), Error);
  CHECK_THROWS_AS(parse_result(R"({"format": "dqm"})"), Error);
  CHECK_THROWS_AS(parse_result(R"({"format": "dqr", "kind": "lu", "spectra": {}})"), Error);
}

TEST_CASE("atomic write leaves only the target") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "dq_io_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string path = (dir / "m.dqm").string();
  write_atomic(path, "first");
  write_atomic(path, render_matrix(DQMatrix::identity(2)));
  CHECK(bit_equal(read_matrix(path), DQMatrix::identity(2)));
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    (void)e;
    ++files;
  }
  CHECK(files == 1);
  CHECK_THROWS_AS(read_text((dir / "missing.dqm").string()), Error);
  CHECK_THROWS_AS(write_atomic((dir / "no" / "such" / "dir.dqm").string(), "x"), Error);
  fs::remove_all(dir);
}

TEST_CASE("report renderings") {
  VerificationReport rep;
  rep.add("ok", {1e-12, 0.0}, {1e-9, 1e-7});
  rep.add_flag("bad", false);
  CHECK_FALSE(rep.overall);
  std::string table = format_report_table(rep);
  CHECK(table.find("FAIL") != std::string::npos);
  std::string doc = render_report(rep);
  CHECK(doc.find("\"overall\": false") != std::string::npos);
}
