#include "dq/io.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dq/error.hpp"

namespace dq {

using nlohmann::json;

namespace {

json to_json(const DQMatrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Quaternion &s = m.st(i, j), &e = m.inf(i, j);
      entries.push_back({s.w, s.x, s.y, s.z, e.w, e.x, e.y, e.z});
    }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

double finite(const json& v) {
  if (!v.is_number()) throw Error(ErrorKind::Parse, "matrix entries must be numbers");
  double x = v.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorKind::Parse, "matrix entries must be finite");
  return x;
}

DQMatrix matrix_from(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw Error(ErrorKind::Parse, "a matrix needs rows, cols and entries");
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
    throw Error(ErrorKind::Parse, "rows and cols must be non-negative integers");
  const std::size_t r = j["rows"].get<std::size_t>(), c = j["cols"].get<std::size_t>();
  const json& e = j["entries"];
  if (!e.is_array() || e.size() != r * c) throw Error(ErrorKind::Parse, "entry count does not match rows*cols");
  DQMatrix m(r, c);
  for (std::size_t k = 0; k < e.size(); ++k) {
    const json& v = e[k];
    if (!v.is_array() || v.size() != 8) throw Error(ErrorKind::Parse, "each entry must have 8 components");
    m.st(k / c, k % c) = Quaternion(finite(v[0]), finite(v[1]), finite(v[2]), finite(v[3]));
    m.inf(k / c, k % c) = Quaternion(finite(v[4]), finite(v[5]), finite(v[6]), finite(v[7]));
  }
  return m;
}

json dn(DualNumber x) { return {x.st, x.inf}; }

DualNumber dn_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Parse, "a dual number is a [st, inf] pair");
  return {finite(j[0]), finite(j[1])};
}

json dn_list(const std::vector<DualNumber>& v) {
  json out = json::array();
  for (DualNumber x : v) out.push_back(dn(x));
  return out;
}

std::vector<DualNumber> dn_list_from(const json& j) {
  std::vector<DualNumber> out;
  for (const json& x : j) out.push_back(dn_from(x));
  return out;
}

json triples_json(const std::vector<RestrictedTriple>& ts) {
  json out = json::array();
  for (const RestrictedTriple& t : ts) out.push_back({{"alpha", dn(t.alpha)}, {"beta", dn(t.beta)}, {"gamma", dn(t.gamma)}});
  return out;
}

json cs_json(const std::vector<CsPair>& ps) {
  json out = json::array();
  for (const CsPair& p : ps) out.push_back({{"c", dn(p.c)}, {"s", dn(p.s)}});
  return out;
}

// field lists keep the dims serialization in one place for both directions
template <class D, class F>
void gsvd_dims_fields(D& d, F f) {
  f("m", d.m), f("p", d.p), f("n", d.n), f("r", d.r), f("q", d.q), f("l_or_t1", d.l_or_t1), f("k_or_t", d.k_or_t);
  f("r1", d.r1), f("r2", d.r2), f("s", d.s), f("stacked_rank", d.stacked_rank), f("stacked_arank", d.stacked_arank);
}

template <class D, class F>
void rsvd_dims_fields(D& d, F f) {
  f("j", d.j), f("k", d.k), f("l", d.l), f("r", d.r), f("s", d.s), f("t", d.t), f("t_hat", d.t_hat);
  f("s1_hat", d.s1_hat), f("top", d.top), f("c2", d.c2), f("c3", d.c3), f("r1_hat", d.r1_hat);
  f("r2_hat", d.r2_hat), f("m1", d.m1), f("m2", d.m2), f("k1", d.k1), f("k2", d.k2);
}

template <class D, class F>
void ppsvd_dims_fields(D& d, F f) {
  f("m", d.m), f("n", d.n), f("p", d.p), f("q", d.q), f("i", d.i), f("j", d.j), f("k", d.k), f("l", d.l);
  f("s", d.s), f("t", d.t);
}

template <class D, class Fields>
json dims_json(const D& d, Fields fields) {
  json out = json::object();
  fields(d, [&](const char* name, std::size_t v) { out[name] = v; });
  return out;
}

template <class D, class Fields>
D dims_from(const json& j, Fields fields) {
  D d;
  fields(d, [&](const char* name, std::size_t& v) {
    if (!j.contains(name) || !j[name].is_number_unsigned())
      throw Error(ErrorKind::Parse, std::string("missing block dimension ") + name);
    v = j[name].get<std::size_t>();
  });
  return d;
}

const auto gsvd_fields = [](auto& d, auto f) { gsvd_dims_fields(d, f); };
const auto rsvd_fields = [](auto& d, auto f) { rsvd_dims_fields(d, f); };
const auto ppsvd_fields = [](auto& d, auto f) { ppsvd_dims_fields(d, f); };

json spectra_json(const AnyResult& r) {
  json s = json::object();
  if (auto* x = std::get_if<SvdResult>(&r)) s["sigma"] = dn_list(x->sigma);
  if (auto* x = std::get_if<GsvdResult>(&r)) s["cs_pairs"] = cs_json(x->cs_pairs);
  if (auto* x = std::get_if<RsvdResult>(&r)) {
    s["triples"] = triples_json(x->triples);
    s["theta"] = dn_list(x->theta);
    s["delta"] = dn_list(x->delta);
  }
  if (auto* x = std::get_if<PpsvdResult>(&r)) s["sigma"] = dn_list(x->sigma_appreciable);
  return s;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(ErrorKind::Parse, std::string("missing field ") + name);
  return j[name];
}

DQMatrix factor(const json& doc, const char* name) { return matrix_from(field(field(doc, "factors"), name)); }

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

}  // namespace

std::string render_matrix(const DQMatrix& m) { return to_json(m).dump() + "\n"; }

DQMatrix parse_matrix(const std::string& text) {
  try {
    return matrix_from(parse_json(text));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

std::string render_spectra(DecompKind k, const AnyResult& r) {
  json doc = spectra_json(r);
  doc["kind"] = to_string(k);
  return doc.dump(2) + "\n";
}

std::string render_result(DecompKind k, const AnyResult& r) {
  json doc = {{"format", "dqr"}, {"kind", to_string(k)}};
  json f = json::object();
  json flags = json::object();
  if (auto* x = std::get_if<QrResult>(&r)) {
    f = {{"Q", to_json(x->Q)}, {"R", to_json(x->R)}};
    doc["perm"] = x->perm;
    doc["profile"] = {{"rank", x->rank}, {"arank", x->arank}};
  } else if (auto* x = std::get_if<SvdResult>(&r)) {
    f = {{"U", to_json(x->U)}, {"V", to_json(x->V)}};
    doc["profile"] = {{"rank", x->profile.rank}, {"arank", x->profile.arank}};
  } else if (auto* x = std::get_if<GsvdResult>(&r)) {
    f = {{"U", to_json(x->U)}, {"V", to_json(x->V)}, {"X", to_json(x->X)}, {"SigmaA", to_json(x->SigmaA)},
         {"SigmaB", to_json(x->SigmaB)}};
    if (x->x_nonsingular) f["X_inv"] = to_json(x->X_inv);
    doc["dims"] = dims_json(x->dims, gsvd_fields);
    flags = {{"x_nonsingular", x->x_nonsingular}, {"form", x->form == GsvdForm::quotient ? "quotient" : "product"}};
  } else if (auto* x = std::get_if<RsvdResult>(&r)) {
    f = {{"P", to_json(x->P)},         {"Q", to_json(x->Q)},         {"U", to_json(x->U)},
         {"V", to_json(x->V)},         {"formA", to_json(x->formA)}, {"formB", to_json(x->formB)},
         {"formC", to_json(x->formC)}};
    doc["dims"] = dims_json(x->dims, rsvd_fields);
    flags = {{"pq_nonsingular", x->pq_nonsingular}};
    doc["wtS_A"] = x->wtS_A;
    doc["leftover"] = {x->leftover.st_norm, x->leftover.inf_norm};
  } else if (auto* x = std::get_if<PpsvdResult>(&r)) {
    f = {{"U", to_json(x->U)},       {"V", to_json(x->V)},         {"P", to_json(x->P)},
         {"Pinv", to_json(x->Pinv)}, {"Q", to_json(x->Q)},         {"Qinv", to_json(x->Qinv)},
         {"formA", to_json(x->formA)}, {"formB", to_json(x->formB)}, {"formC", to_json(x->formC)}};
    doc["dims"] = dims_json(x->dims, ppsvd_fields);
  }
  doc["factors"] = f;
  doc["spectra"] = spectra_json(r);
  doc["flags"] = flags;
  return doc.dump(1) + "\n";
}

std::pair<DecompKind, AnyResult> parse_result(const std::string& text) {
  try {
    json doc = parse_json(text);
    if (field(doc, "format") != "dqr") throw Error(ErrorKind::Parse, "not a factor bundle");
    DecompKind k = parse_kind(field(doc, "kind").get<std::string>());
    const json& sp = field(doc, "spectra");
    switch (k) {
      case DecompKind::qr: {
        QrResult x;
        x.Q = factor(doc, "Q");
        x.R = factor(doc, "R");
        x.perm = field(doc, "perm").get<std::vector<std::size_t>>();
        x.rank = field(field(doc, "profile"), "rank").get<std::size_t>();
        x.arank = field(field(doc, "profile"), "arank").get<std::size_t>();
        return {k, x};
      }
      case DecompKind::svd: {
        SvdResult x;
        x.U = factor(doc, "U");
        x.V = factor(doc, "V");
        x.sigma = dn_list_from(field(sp, "sigma"));
        x.profile.rank = field(field(doc, "profile"), "rank").get<std::size_t>();
        x.profile.arank = field(field(doc, "profile"), "arank").get<std::size_t>();
        return {k, x};
      }
      case DecompKind::gsvd1:
      case DecompKind::gsvd2: {
        GsvdResult x;
        x.U = factor(doc, "U");
        x.V = factor(doc, "V");
        x.X = factor(doc, "X");
        x.SigmaA = factor(doc, "SigmaA");
        x.SigmaB = factor(doc, "SigmaB");
        const json& fl = field(doc, "flags");
        x.x_nonsingular = field(fl, "x_nonsingular").get<bool>();
        if (x.x_nonsingular) x.X_inv = factor(doc, "X_inv");
        x.form = field(fl, "form") == "product" ? GsvdForm::product : GsvdForm::quotient;
        x.dims = dims_from<GsvdBlockDims>(field(doc, "dims"), gsvd_fields);
        for (const json& p : field(sp, "cs_pairs")) x.cs_pairs.push_back({dn_from(field(p, "c")), dn_from(field(p, "s"))});
        return {k, x};
      }
      case DecompKind::rsvd1:
      case DecompKind::rsvd2: {
        RsvdResult x;
        x.P = factor(doc, "P");
        x.Q = factor(doc, "Q");
        x.U = factor(doc, "U");
        x.V = factor(doc, "V");
        x.formA = factor(doc, "formA");
        x.formB = factor(doc, "formB");
        x.formC = factor(doc, "formC");
        x.dims = dims_from<RsvdBlockDims>(field(doc, "dims"), rsvd_fields);
        x.pq_nonsingular = field(field(doc, "flags"), "pq_nonsingular").get<bool>();
        x.wtS_A = field(doc, "wtS_A").get<std::vector<double>>();
        DualNumber lo = dn_from(field(doc, "leftover"));
        x.leftover = {lo.st, lo.inf};
        for (const json& t : field(sp, "triples"))
          x.triples.push_back({dn_from(field(t, "alpha")), dn_from(field(t, "beta")), dn_from(field(t, "gamma"))});
        x.theta = dn_list_from(field(sp, "theta"));
        x.delta = dn_list_from(field(sp, "delta"));
        return {k, x};
      }
      case DecompKind::ppsvd: {
        PpsvdResult x;
        x.U = factor(doc, "U");
        x.V = factor(doc, "V");
        x.P = factor(doc, "P");
        x.Pinv = factor(doc, "Pinv");
        x.Q = factor(doc, "Q");
        x.Qinv = factor(doc, "Qinv");
        x.formA = factor(doc, "formA");
        x.formB = factor(doc, "formB");
        x.formC = factor(doc, "formC");
        x.dims = dims_from<PpsvdBlockDims>(field(doc, "dims"), ppsvd_fields);
        x.sigma_appreciable = dn_list_from(field(sp, "sigma"));
        return {k, x};
      }
    }
    throw Error(ErrorKind::Parse, "unknown decomposition kind");
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

std::string render_report(const VerificationReport& rep) {
  json checks = json::array();
  for (const Check& c : rep.checks)
    checks.push_back({{"name", c.name},
                      {"residual", {c.residual.st_norm, c.residual.inf_norm}},
                      {"threshold", {c.threshold.st_norm, c.threshold.inf_norm}},
                      {"passed", c.passed}});
  return json{{"overall", rep.overall}, {"checks", checks}}.dump(2) + "\n";
}

std::string format_report_table(const VerificationReport& rep) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-44s %12s %12s %10s %10s  %s\n", "check", "res(st)", "res(inf)", "tol(st)",
                "tol(inf)", "result");
  out << line;
  for (const Check& c : rep.checks) {
    std::snprintf(line, sizeof line, "%-44s %12.3e %12.3e %10.1e %10.1e  %s\n", c.name.c_str(), c.residual.st_norm,
                  c.residual.inf_norm, c.threshold.st_norm, c.threshold.inf_norm, c.passed ? "pass" : "FAIL");
    out << line;
  }
  out << "overall: " << (rep.overall ? "pass" : "FAIL") << "\n";
  return out.str();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Parse, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::Parse, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorKind::Parse, "cannot rename into " + path + ": " + ec.message());
  }
}

DQMatrix read_matrix(const std::string& path) { return parse_matrix(read_text(path)); }

}  // namespace dq
