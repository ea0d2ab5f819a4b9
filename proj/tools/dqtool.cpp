#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>

#include "dq/error.hpp"
#include "dq/examples.hpp"
#include "dq/io.hpp"

namespace fs = std::filesystem;
using namespace dq;

namespace {

enum Exit : int { ok = 0, verify_failed = 1, usage = 2, numerical = 3 };

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::InvalidProfile:
    case ErrorKind::UnknownExample: return usage;
    default: return numerical;
  }
}

std::vector<DQMatrix> read_inputs(const std::vector<std::string>& paths, DecompKind k) {
  if (paths.size() != input_count(k))
    throw Error(ErrorKind::DimensionMismatch, std::string(to_string(k)) + " expects " +
                                                  std::to_string(input_count(k)) + " input files, got " +
                                                  std::to_string(paths.size()));
  std::vector<DQMatrix> out;
  for (const std::string& p : paths) out.push_back(read_matrix(p));
  return out;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Parse, "cannot create " + dir + ": " + ec.message());
}

int cmd_example(const std::string& id, const std::string& dir) {
  Triplet t = example_by_id(id);
  ensure_dir(dir);
  write_atomic((fs::path(dir) / "A.dqm").string(), render_matrix(t.A));
  write_atomic((fs::path(dir) / "B.dqm").string(), render_matrix(t.B));
  write_atomic((fs::path(dir) / "C.dqm").string(), render_matrix(t.C));
  return ok;
}

int cmd_gen(std::size_t rows, std::size_t cols, std::optional<std::size_t> rank, std::optional<std::size_t> arank,
            std::uint64_t seed, const std::string& out) {
  std::size_t r = rank.value_or(std::min(rows, cols));
  std::size_t a = arank.value_or(r);
  std::string text = render_matrix(random_with_ranks(rows, cols, {r, a}, seed));
  if (out.empty())
    std::cout << text;
  else {
    if (fs::path(out).has_parent_path()) ensure_dir(fs::path(out).parent_path().string());
    write_atomic(out, text);
  }
  return ok;
}

int cmd_decompose(const std::string& kind, const std::vector<std::string>& inputs, const std::string& dir,
                  const ToleranceConfig& tol) {
  DecompKind k = parse_kind(kind);
  std::vector<DQMatrix> in = read_inputs(inputs, k);
  AnyResult r = decompose(k, in, tol);
  ensure_dir(dir);
  write_atomic((fs::path(dir) / "result.dqr").string(), render_result(k, r));
  write_atomic((fs::path(dir) / "spectra.json").string(), render_spectra(k, r));
  return ok;
}

int cmd_verify(const std::string& kind, const std::vector<std::string>& inputs, const std::string& result,
               std::string report, const ToleranceConfig& tol) {
  DecompKind k = parse_kind(kind);
  std::vector<DQMatrix> in = read_inputs(inputs, k);
  auto [rk, r] = parse_result(read_text(result));
  if (rk != k)
    throw Error(ErrorKind::Parse, std::string("bundle holds a ") + to_string(rk) + " result, not " + to_string(k));
  check_shapes(k, in, r);
  VerificationReport rep = verify_decomposition(k, in, r, tol);
  std::string table = format_report_table(rep);
  std::cout << table;
  if (report.empty()) report = (fs::path(result).replace_extension("")).string() + ".report";
  write_atomic(report + ".json", render_report(rep));
  write_atomic(report + ".txt", table);
  return rep.overall ? ok : verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dual quaternion matrix decompositions"};
  app.require_subcommand(1);
  app.fallthrough();

  ToleranceConfig tol;
  app.add_option("--zero-tol", tol.zero_tol, "zero tolerance")->envname("ZERO_TOL");
  app.add_option("--rank-tol", tol.rank_tol, "relative rank tolerance")->envname("RANK_TOL");
  app.add_option("--residual-tol-st", tol.residual_tol_st, "residual tolerance, standard part")
      ->envname("RESIDUAL_TOL_ST");
  app.add_option("--residual-tol-inf", tol.residual_tol_inf, "residual tolerance, infinitesimal part")
      ->envname("RESIDUAL_TOL_INF");

  std::string id, out_dir = ".";
  auto* ex = app.add_subcommand("example", "write an example triplet as A.dqm, B.dqm, C.dqm");
  ex->add_option("id", id, "6.1 (restricted) or 6.2 (product-product)")->required();
  ex->add_option("-o,--out", out_dir, "output directory");

  std::size_t rows = 0, cols = 0;
  std::optional<std::size_t> rank, arank;
  std::uint64_t seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "seeded random matrix with a prescribed rank profile");
  gen->add_option("rows", rows)->required();
  gen->add_option("cols", cols)->required();
  gen->add_option("--rank", rank);
  gen->add_option("--arank", arank);
  gen->add_option("--seed", seed);
  gen->add_option("-o,--out", gen_out, "output file (default: standard output)");

  std::string kind, dec_dir;
  std::vector<std::string> inputs;
  auto* dec = app.add_subcommand("decompose", "decompose input matrices into result.dqr and spectra.json");
  dec->add_option("--kind", kind, "qr|svd|gsvd1|gsvd2|rsvd1|rsvd2|ppsvd")->required();
  dec->add_option("inputs", inputs)->required();
  dec->add_option("-o,--out", dec_dir, "output directory")->required();

  std::string result, report;
  auto* ver = app.add_subcommand("verify", "check a result bundle against its inputs");
  ver->add_option("--kind", kind)->required();
  ver->add_option("inputs", inputs)->required();
  ver->add_option("--result", result, "result.dqr from decompose")->required();
  ver->add_option("--report", report, "report path prefix (.json and .txt are appended)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    tol.validate();
    if (*ex) return cmd_example(id, out_dir);
    if (*gen) return cmd_gen(rows, cols, rank, arank, seed, gen_out);
    if (*dec) return cmd_decompose(kind, inputs, dec_dir, tol);
    if (*ver) return cmd_verify(kind, inputs, result, report, tol);
  } catch (const Error& e) {
    std::cerr << "dqtool: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "dqtool: " << e.what() << "\n";
    return numerical;
  }
  return usage;
}
