#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>

#include "dq/io.hpp"

using namespace dq;
namespace fs = std::filesystem;

namespace {

struct Sandbox {
  fs::path dir;
  explicit Sandbox(const char* name) : dir(fs::temp_directory_path() / name) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  std::string at(const std::string& f) const { return (dir / f).string(); }
};

int run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + DQTOOL_PATH + " " + args + " >/dev/null 2>&1";
  int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string inputs(const Sandbox& s, const std::string& d) {
  return s.at(d + "/A.dqm") + " " + s.at(d + "/B.dqm") + " " + s.at(d + "/C.dqm");
}

}  // namespace

TEST_CASE("restricted example pipeline") {
  Sandbox s("dq_cli_rsvd");
  REQUIRE(run("example 6.1 -o " + s.at("ex")) == 0);
  for (const char* k : {"rsvd1", "rsvd2"}) {
    std::string out = s.at(std::string("out_") + k);
    REQUIRE(run(std::string("decompose --kind ") + k + " " + inputs(s, "ex") + " -o " + out) == 0);
    CHECK(run(std::string("verify --kind ") + k + " " + inputs(s, "ex") + " --result " + out + "/result.dqr") == 0);
    nlohmann::json sp = nlohmann::json::parse(read_text(out + "/spectra.json"));
    REQUIRE(sp["triples"].size() == 1);
    CHECK(std::abs(sp["triples"][0]["alpha"][0].get<double>() - 0.4082482905) <= 1e-9);
    CHECK(fs::exists(out + "/result.report.json"));
    CHECK(fs::exists(out + "/result.report.txt"));
  }
}

TEST_CASE("product-product example pipeline") {
  Sandbox s("dq_cli_ppsvd");
  REQUIRE(run("example 6.2 -o " + s.at("ex")) == 0);
  REQUIRE(run("decompose --kind ppsvd " + inputs(s, "ex") + " -o " + s.at("out")) == 0);
  CHECK(run("verify --kind ppsvd " + inputs(s, "ex") + " --result " + s.at("out/result.dqr")) == 0);
  nlohmann::json sp = nlohmann::json::parse(read_text(s.at("out/spectra.json")));
  REQUIRE(sp["sigma"].size() == 1);
  CHECK(std::abs(sp["sigma"][0][0].get<double>() - 0.5) <= 1e-12);
  CHECK(std::abs(sp["sigma"][0][1].get<double>() - 1.0) <= 1e-12);
}

TEST_CASE("corrupted factor fails verification") {
  Sandbox s("dq_cli_corrupt");
  REQUIRE(run("example 6.1 -o " + s.at("ex")) == 0);
  REQUIRE(run("decompose --kind rsvd1 " + inputs(s, "ex") + " -o " + s.at("out")) == 0);
  auto [k, r] = parse_result(read_text(s.at("out/result.dqr")));
  std::get<RsvdResult>(r).U.st(0, 0).w += 1e-3;
  write_atomic(s.at("out/bad.dqr"), render_result(k, r));
  CHECK(run("verify --kind rsvd1 " + inputs(s, "ex") + " --result " + s.at("out/bad.dqr")) == 1);
}

TEST_CASE("usage and parse problems exit with 2") {
  Sandbox s("dq_cli_usage");
  CHECK(run("example 9.9 -o " + s.at("x")) == 2);
  CHECK(run("") == 2);
  CHECK(run("decompose --kind lu " + s.at("a.dqm") + " -o " + s.at("o")) == 2);
  write_atomic(s.at("bad.dqm"), "{\"rows\": 2, \"cols\": 2, \"entries\": []}");
  CHECK(run("decompose --kind svd " + s.at("bad.dqm") + " -o " + s.at("o")) == 2);
  CHECK(run("decompose --kind svd " + s.at("missing.dqm") + " -o " + s.at("o")) == 2);
  CHECK(run("gen 2 2 --rank 3") == 2);

  // shapes that do not match the bundle
  REQUIRE(run("example 6.1 -o " + s.at("e1")) == 0);
  REQUIRE(run("example 6.2 -o " + s.at("e2")) == 0);
  REQUIRE(run("decompose --kind rsvd1 " + inputs(s, "e1") + " -o " + s.at("o1")) == 0);
  CHECK(run("verify --kind rsvd1 " + inputs(s, "e2") + " --result " + s.at("o1/result.dqr")) == 2);
  CHECK(run("verify --kind ppsvd " + inputs(s, "e1") + " --result " + s.at("o1/result.dqr")) == 2);
  CHECK(run("decompose --kind ppsvd " + s.at("e1/A.dqm") + " -o " + s.at("o2")) == 2);
}

TEST_CASE("seeded generation is byte-identical") {
  Sandbox s("dq_cli_gen");
  REQUIRE(run("gen 4 3 --rank 3 --arank 2 --seed 7 -o " + s.at("g1.dqm")) == 0);
  REQUIRE(run("gen 4 3 --rank 3 --arank 2 --seed 7 -o " + s.at("g2.dqm")) == 0);
  REQUIRE(run("gen 4 3 --rank 3 --arank 2 --seed 8 -o " + s.at("g3.dqm")) == 0);
  CHECK(read_text(s.at("g1.dqm")) == read_text(s.at("g2.dqm")));
  CHECK(read_text(s.at("g1.dqm")) != read_text(s.at("g3.dqm")));
  DQMatrix g = read_matrix(s.at("g1.dqm"));
  CHECK(g.rows() == 4);
  CHECK(g.cols() == 3);
}

TEST_CASE("tolerance flags override the environment") {
  Sandbox s("dq_cli_tol");
  CHECK(run("gen 2 2 -o " + s.at("m.dqm"), "RANK_TOL=-1") == 2);
  CHECK(run("--rank-tol 1e-10 gen 2 2 -o " + s.at("m.dqm"), "RANK_TOL=-1") == 0);
  CHECK(run("gen 2 2 -o " + s.at("m.dqm"), "RESIDUAL_TOL_ST=abc") == 2);
  CHECK(run("gen 2 2 --residual-tol-inf 0 -o " + s.at("m.dqm")) == 2);
  // a verification tolerance far below rounding makes an honest result fail
  REQUIRE(run("example 6.2 -o " + s.at("ex")) == 0);
  REQUIRE(run("decompose --kind ppsvd " + inputs(s, "ex") + " -o " + s.at("out")) == 0);
  CHECK(run("verify --kind ppsvd " + inputs(s, "ex") + " --result " + s.at("out/result.dqr")) == 0);
  REQUIRE(run("gen 3 3 --seed 4 -o " + s.at("r/A.dqm")) == 0);
  REQUIRE(run("gen 3 3 --seed 5 -o " + s.at("r/B.dqm")) == 0);
  REQUIRE(run("gen 3 3 --seed 6 -o " + s.at("r/C.dqm")) == 0);
  REQUIRE(run("decompose --kind ppsvd " + inputs(s, "r") + " -o " + s.at("rout")) == 0);
  CHECK(run("verify --kind ppsvd " + inputs(s, "r") + " --result " + s.at("rout/result.dqr")) == 0);
  CHECK(run("verify --kind ppsvd " + inputs(s, "r") + " --result " + s.at("rout/result.dqr"),
            "RESIDUAL_TOL_ST=1e-30") == 1);
}
