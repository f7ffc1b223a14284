#include "config.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace wrgoal {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(Error::parse, where + ": " + what);
}

void check_keys(const Json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key())) fail(where, "unknown key '" + item.key() + "'");
}

double need_number(const Json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int need_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

Vec need_vector(const Json& j, const std::string& where, int len) {
  if (!j.is_array()) fail(where, "expected an array");
  if (len >= 0 && static_cast<int>(j.size()) != len)
    fail(where, "expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
  Vec v(j.size());
  for (size_t k = 0; k < j.size(); ++k) v[k] = need_number(j[k], where);
  return v;
}

SignalTerm parse_term(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  check_keys(j, where, {"kind", "a", "b"});
  if (!j.contains("kind")) fail(where, "missing 'kind'");
  const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  SignalTerm t;
  if (kind == "constant")
    t.kind = SignalTerm::constant;
  else if (kind == "sine")
    t.kind = SignalTerm::sine;
  else if (kind == "cosine")
    t.kind = SignalTerm::cosine;
  else if (kind == "power")
    t.kind = SignalTerm::power;
  else
    fail(where, "unknown signal term kind '" + kind + "'");
  t.a = j.contains("a") ? need_number(j["a"], where + ".a") : 0.0;
  t.b = j.contains("b") ? need_number(j["b"], where + ".b") : 0.0;
  return t;
}

Json term_to_json(const SignalTerm& t) {
  Json j;
  switch (t.kind) {
    case SignalTerm::constant: j["kind"] = "constant"; break;
    case SignalTerm::sine: j["kind"] = "sine"; break;
    case SignalTerm::cosine: j["kind"] = "cosine"; break;
    case SignalTerm::power: j["kind"] = "power"; break;
  }
  j["a"] = t.a;
  if (t.kind != SignalTerm::constant) j["b"] = t.b;
  return j;
}

std::pair<int, int> line_col(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

std::string to_string(Scheme s) {
  return s == Scheme::explicit_euler ? "euler" : "cn";
}

Scheme parse_scheme(const std::string& s) {
  if (s == "euler") return Scheme::explicit_euler;
  if (s == "cn") return Scheme::crank_nicolson;
  throw Error(Error::parse, "unknown scheme '" + s + "' (use euler or cn)");
}

std::string to_string(SplitKind k) {
  switch (k) {
    case SplitKind::jacobi: return "jacobi";
    case SplitKind::gauss_seidel: return "gauss-seidel";
    default: return "full";
  }
}

SplitKind parse_split(const std::string& s) {
  if (s == "jacobi") return SplitKind::jacobi;
  if (s == "gauss-seidel") return SplitKind::gauss_seidel;
  if (s == "full") return SplitKind::full;
  throw Error(Error::parse, "unknown splitting '" + s + "' (use jacobi, gauss-seidel or full)");
}

std::string to_string(const Variant& v) {
  return to_string(v.scheme) + (v.goal ? ":goal" : ":uniform");
}

std::string file_token(const Variant& v) {
  return to_string(v.scheme) + (v.goal ? "_goal" : "_uniform");
}

Variant parse_variant(const std::string& s) {
  const auto pos = s.find(':');
  if (pos == std::string::npos)
    throw Error(Error::parse, "variant '" + s + "' is not of the form scheme:refine");
  Variant v;
  v.scheme = parse_scheme(s.substr(0, pos));
  const std::string mode = s.substr(pos + 1);
  if (mode == "goal")
    v.goal = true;
  else if (mode == "uniform")
    v.goal = false;
  else
    throw Error(Error::parse, "unknown refine mode '" + mode + "' (use goal or uniform)");
  return v;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  auto term_eq = [](const SignalTerm& x, const SignalTerm& y) {
    return x.kind == y.kind && x.a == y.a && x.b == y.b;
  };
  if (a.name != b.name || a.problem.m != b.problem.m || a.problem.t0 != b.problem.t0 ||
      a.problem.tn != b.problem.tn)
    return false;
  if (a.problem.B.rows() != b.problem.B.rows() || a.problem.B.cols() != b.problem.B.cols() ||
      a.problem.B != b.problem.B || a.problem.u0 != b.problem.u0)
    return false;
  if (a.problem.Y.comps.size() != b.problem.Y.comps.size()) return false;
  for (size_t i = 0; i < a.problem.Y.comps.size(); ++i) {
    if (a.problem.Y.comps[i].size() != b.problem.Y.comps[i].size()) return false;
    for (size_t k = 0; k < a.problem.Y.comps[i].size(); ++k)
      if (!term_eq(a.problem.Y.comps[i][k], b.problem.Y.comps[i][k])) return false;
  }
  if (a.qoi_terms.size() != b.qoi_terms.size()) return false;
  for (size_t r = 0; r < a.qoi_terms.size(); ++r)
    if (a.qoi_terms[r].tau != b.qoi_terms[r].tau ||
        a.qoi_terms[r].weight != b.qoi_terms[r].weight)
      return false;
  return a.splitting == b.splitting && a.levels == b.levels && a.fraction == b.fraction &&
         a.k_max == b.k_max && a.n_init == b.n_init && a.uniform_levels == b.uniform_levels &&
         a.variants == b.variants && a.out_dir == b.out_dir &&
         a.emit_matrices == b.emit_matrices;
}

ExperimentConfig parse_config(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
    throw Error(Error::parse, "line " + std::to_string(line) + " col " + std::to_string(col) +
                                  ": " + e.what());
  }
  if (!root.is_object()) fail("config", "top level must be an object");
  check_keys(root, "config", {"name", "problem", "qoi", "run", "output"});
  if (!root.contains("problem")) fail("config", "missing 'problem'");
  if (!root.contains("qoi")) fail("config", "missing 'qoi'");

  ExperimentConfig c;
  if (root.contains("name")) {
    if (!root["name"].is_string()) fail("name", "expected a string");
    c.name = root["name"].get<std::string>();
  }

  const Json& pj = root["problem"];
  if (!pj.is_object()) fail("problem", "expected an object");
  check_keys(pj, "problem", {"interval", "matrix", "signal", "initial"});
  for (const char* key : {"interval", "matrix", "signal", "initial"})
    if (!pj.contains(key)) fail("problem", std::string("missing '") + key + "'");
  const Vec iv = need_vector(pj["interval"], "problem.interval", 2);
  c.problem.t0 = iv[0];
  c.problem.tn = iv[1];
  if (!pj["matrix"].is_array() || pj["matrix"].empty())
    fail("problem.matrix", "expected a non-empty array of rows");
  const int m = static_cast<int>(pj["matrix"].size());
  c.problem.m = m;
  c.problem.B = Mat(m, m);
  for (int r = 0; r < m; ++r) {
    const Vec row = need_vector(pj["matrix"][r], "problem.matrix row " + std::to_string(r + 1), m);
    c.problem.B.row(r) = row.transpose();
  }
  if (!pj["signal"].is_array() || static_cast<int>(pj["signal"].size()) != m)
    fail("problem.signal", "expected " + std::to_string(m) + " component term lists");
  c.problem.Y.comps.resize(m);
  for (int i = 0; i < m; ++i) {
    const Json& terms = pj["signal"][i];
    if (!terms.is_array()) fail("problem.signal component " + std::to_string(i + 1),
                                "expected an array of terms");
    for (size_t k = 0; k < terms.size(); ++k)
      c.problem.Y.comps[i].push_back(parse_term(
          terms[k], "problem.signal component " + std::to_string(i + 1)));
  }
  c.problem.u0 = need_vector(pj["initial"], "problem.initial", m);

  const Json& qj = root["qoi"];
  if (!qj.is_array() || qj.empty()) fail("qoi", "expected a non-empty array of terms");
  for (size_t r = 0; r < qj.size(); ++r) {
    const std::string where = "qoi term " + std::to_string(r + 1);
    const Json& tj = qj[r];
    if (!tj.is_object()) fail(where, "expected an object");
    check_keys(tj, where, {"time", "weights"});
    if (!tj.contains("time") || !tj.contains("weights"))
      fail(where, "needs 'time' and 'weights'");
    QoiTerm term;
    term.tau = need_number(tj["time"], where + ".time");
    term.weight = need_vector(tj["weights"], where + ".weights", m);
    c.qoi_terms.push_back(std::move(term));
  }

  if (root.contains("run")) {
    const Json& rj = root["run"];
    if (!rj.is_object()) fail("run", "expected an object");
    check_keys(rj, "run",
               {"splitting", "levels", "fraction", "kmax", "n_init", "uniform_levels",
                "variants"});
    if (rj.contains("splitting")) {
      if (!rj["splitting"].is_string()) fail("run.splitting", "expected a string");
      c.splitting = parse_split(rj["splitting"].get<std::string>());
    }
    if (rj.contains("levels")) c.levels = need_int(rj["levels"], "run.levels");
    if (rj.contains("fraction")) c.fraction = need_number(rj["fraction"], "run.fraction");
    if (rj.contains("kmax")) c.k_max = need_int(rj["kmax"], "run.kmax");
    if (rj.contains("n_init")) c.n_init = need_int(rj["n_init"], "run.n_init");
    if (rj.contains("uniform_levels"))
      c.uniform_levels = need_int(rj["uniform_levels"], "run.uniform_levels");
    if (rj.contains("variants")) {
      if (!rj["variants"].is_array() || rj["variants"].empty())
        fail("run.variants", "expected a non-empty array of scheme:refine strings");
      for (const auto& vj : rj["variants"]) {
        if (!vj.is_string()) fail("run.variants", "expected strings");
        c.variants.push_back(parse_variant(vj.get<std::string>()));
      }
    }
  }
  if (c.variants.empty())
    c.variants = {{Scheme::explicit_euler, true},
                  {Scheme::explicit_euler, false},
                  {Scheme::crank_nicolson, true},
                  {Scheme::crank_nicolson, false}};

  if (root.contains("output")) {
    const Json& oj = root["output"];
    if (!oj.is_object()) fail("output", "expected an object");
    check_keys(oj, "output", {"dir", "emit_matrices"});
    if (oj.contains("dir")) {
      if (!oj["dir"].is_string()) fail("output.dir", "expected a string");
      c.out_dir = oj["dir"].get<std::string>();
    }
    if (oj.contains("emit_matrices")) {
      if (!oj["emit_matrices"].is_boolean()) fail("output.emit_matrices", "expected a boolean");
      c.emit_matrices = oj["emit_matrices"].get<bool>();
    }
  }

  try {
    c.problem.validate();
    Qoi::make(c.qoi_terms, c.problem);  // bounds, ordering, dimensions
  } catch (const Error& e) {
    throw Error(Error::parse, e.what());
  }
  if (c.levels < 0 || c.uniform_levels < 0) fail("run", "levels must be >= 0");
  if (!(c.fraction > 0.0) || c.fraction > 1.0) fail("run.fraction", "must be in (0,1]");
  if (c.k_max < 1) fail("run.kmax", "must be >= 1");
  if (c.n_init < 2) fail("run.n_init", "must be >= 2");
  return c;
}

std::string format_config(const ExperimentConfig& c) {
  Json root;
  root["name"] = c.name;
  Json pj;
  pj["interval"] = {c.problem.t0, c.problem.tn};
  Json rows = Json::array();
  for (int r = 0; r < c.problem.m; ++r) {
    Json row = Json::array();
    for (int k = 0; k < c.problem.m; ++k) row.push_back(c.problem.B(r, k));
    rows.push_back(std::move(row));
  }
  pj["matrix"] = std::move(rows);
  Json sig = Json::array();
  for (const auto& comp : c.problem.Y.comps) {
    Json terms = Json::array();
    for (const auto& t : comp) terms.push_back(term_to_json(t));
    sig.push_back(std::move(terms));
  }
  pj["signal"] = std::move(sig);
  Json u0 = Json::array();
  for (int i = 0; i < c.problem.m; ++i) u0.push_back(c.problem.u0[i]);
  pj["initial"] = std::move(u0);
  root["problem"] = std::move(pj);

  Json qj = Json::array();
  for (const auto& term : c.qoi_terms) {
    Json tj;
    tj["time"] = term.tau;
    Json w = Json::array();
    for (int i = 0; i < term.weight.size(); ++i) w.push_back(term.weight[i]);
    tj["weights"] = std::move(w);
    qj.push_back(std::move(tj));
  }
  root["qoi"] = std::move(qj);

  Json rj;
  rj["splitting"] = to_string(c.splitting);
  rj["levels"] = c.levels;
  rj["fraction"] = c.fraction;
  rj["kmax"] = c.k_max;
  rj["n_init"] = c.n_init;
  rj["uniform_levels"] = c.uniform_levels;
  Json vars = Json::array();
  for (const auto& v : c.variants) vars.push_back(to_string(v));
  rj["variants"] = std::move(vars);
  root["run"] = std::move(rj);

  Json oj;
  oj["dir"] = c.out_dir;
  oj["emit_matrices"] = c.emit_matrices;
  root["output"] = std::move(oj);

  return root.dump(2) + "\n";
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  auto sine = [](double a, double w) { return SignalTerm{SignalTerm::sine, a, w}; };
  if (name == "exp1") {
    c.problem.m = 2;
    c.problem.t0 = 0.0;
    c.problem.tn = 3.0;
    c.problem.B = Mat{{10.0, -1.0}, {1.0, 10.0}};
    c.problem.Y.comps = {{sine(10.0, 1.0)}, {sine(1.0, 10.0)}};
    c.problem.u0 = Vec{{-0.1, 0.1}};
    c.qoi_terms = {{2.0, Vec{{1.0, 0.0}}}, {3.0, Vec{{1.0, 2.0}}}};
  } else if (name == "exp2") {
    c.problem.m = 4;
    c.problem.t0 = 0.0;
    c.problem.tn = 2.5;
    c.problem.B = Mat{{5.0, 0.0, 0.0, 0.0},
                      {2.0, 5.0, 1.0, 0.0},
                      {2.0, 0.0, 5.0, 1.0},
                      {0.0, 0.0, -1.0, 5.0}};
    c.problem.Y.comps = {{sine(10.0, 1.0)}, {sine(-10.0, 1.0)}, {sine(1.0, 10.0)},
                         {sine(-1.0, 1.0)}};
    c.problem.u0 = Vec{{-0.4, -0.2, 0.2, 0.4}};
    c.qoi_terms = {{0.5, Vec{{0.0, 0.0, 1.0, 0.0}}}, {2.5, Vec{{0.0, 1.0, 0.0, 0.0}}}};
  } else if (name == "exp3") {
    c.problem.m = 2;
    c.problem.t0 = 0.0;
    c.problem.tn = 4.0;
    c.problem.B = Mat{{5.0, 2.0}, {1.0, 2.5}};
    c.problem.Y.comps = {{sine(10.0, 1.0), sine(0.1, 10.0)}, {sine(1.0, 1.0), sine(1.0, 10.0)}};
    c.problem.u0 = Vec{{-0.5, 0.5}};
    c.qoi_terms = {{3.0, Vec{{1.0, 0.0}}}, {4.0, Vec{{0.0, 1.0}}}};
    c.k_max = 20;
    c.variants = {{Scheme::explicit_euler, true}, {Scheme::crank_nicolson, true}};
  } else {
    throw Error(Error::invalid_argument, "unknown preset '" + name + "' (exp1, exp2, exp3)");
  }
  if (c.variants.empty())
    c.variants = {{Scheme::explicit_euler, true},
                  {Scheme::explicit_euler, false},
                  {Scheme::crank_nicolson, true},
                  {Scheme::crank_nicolson, false}};
  return c;
}

}  // namespace wrgoal
