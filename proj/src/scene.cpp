#include "weylkit/scene.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "weylkit/boundary.hpp"
#include "weylkit/errors.hpp"
#include "weylkit/format.hpp"
#include "weylkit/transforms.hpp"
#include "weylkit/verify.hpp"

namespace weylkit::cli {

namespace {

using io::Json;

const std::vector<std::string_view> kTasks{"eval",   "limit",   "spectrum", "multiplicity",
                                           "invert", "compare", "verify",   "acset"};

const std::vector<std::string_view> kScanKeys{
    "window", "grid_points", "y0", "ratio", "limit_tol", "max_steps", "rank_tol", "excl_eps"};

std::string fmt(double x) { return format_double(x + 0.0); }

double opt_number(const Json& p, std::string_view key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : io::read_number(*it, "params." + std::string(key));
}

long long opt_integer(const Json& p, std::string_view key, long long fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : io::read_integer(*it, "params." + std::string(key));
}

// Library validators speak in bare parameter names; prefix them with the
// scene location.
template <class F>
void validated(F&& check) {
  try {
    check();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("params: ") + e.what());
  }
}

LimitConfig read_limit(const Json& p) {
  LimitConfig c;
  c.y0 = opt_number(p, "y0", c.y0);
  c.ratio = opt_number(p, "ratio", c.ratio);
  c.limit_tol = opt_number(p, "limit_tol", c.limit_tol);
  c.max_steps = static_cast<int>(opt_integer(p, "max_steps", c.max_steps));
  validated([&] { validate(c); });
  return c;
}

Json echo(const LimitConfig& c) {
  return {{"y0", c.y0}, {"ratio", c.ratio}, {"limit_tol", c.limit_tol}, {"max_steps", c.max_steps}};
}

struct Scan {
  double a = 0.0, b = 0.0;
  std::size_t n = 201;
  ProfileConfig cfg;

  std::vector<double> grid() const { return uniform_grid(a, b, n); }
  Json echo() const {
    auto j = cli::echo(cfg.limit);
    j["window"] = {a, b};
    j["grid_points"] = n;
    j["rank_tol"] = cfg.rank_tol;
    j["excl_eps"] = cfg.excl_eps;
    return j;
  }
};

Scan read_scan(const Json& p, unsigned threads) {
  Scan s;
  const auto& w = io::require(p, "window", "params");
  if (!w.is_array() || w.size() != 2) throw ValidationError("params.window: expected [a, b]");
  s.a = io::read_number(w[0], "params.window[0]");
  s.b = io::read_number(w[1], "params.window[1]");
  if (!(std::isfinite(s.a) && std::isfinite(s.b) && s.a < s.b))
    throw ValidationError("params.window: need finite a < b");
  const long long n = opt_integer(p, "grid_points", 201);
  if (n < 2 || n > 10'000'000) throw ValidationError("params.grid_points: must lie in [2, 1e7]");
  s.n = static_cast<std::size_t>(n);
  s.cfg.limit = read_limit(p);
  s.cfg.rank_tol = opt_number(p, "rank_tol", s.cfg.rank_tol);
  s.cfg.excl_eps = opt_number(p, "excl_eps", s.cfg.excl_eps);
  s.cfg.threads = threads;
  validated([&] { validate(s.cfg); });
  return s;
}

void check_params(const Json& p, std::initializer_list<std::string_view> task_keys,
                  bool with_scan) {
  if (!p.is_object()) throw ValidationError("params: expected an object");
  for (const auto& [key, value] : p.items()) {
    const bool known = std::find(task_keys.begin(), task_keys.end(), key) != task_keys.end() ||
                       (with_scan && std::find(kScanKeys.begin(), kScanKeys.end(), key) != kScanKeys.end());
    if (!known) throw ValidationError("params." + key + ": unknown field");
  }
}

Json encode_profile(const MultiplicityProfile& p) {
  Json conv = Json::array();
  for (bool c : p.converged) conv.push_back(c);
  return {{"grid", p.grid}, {"d", p.d}, {"converged", std::move(conv)}, {"excluded", p.excluded}};
}

void profile_warnings(const MultiplicityProfile& p, Json& warnings, std::string_view label = "") {
  const std::string prefix = label.empty() ? "" : std::string(label) + ": ";
  for (std::size_t k = 0; k < p.grid.size(); ++k) {
    if (p.is_excluded(k))
      warnings.push_back(prefix + "t=" + fmt(p.grid[k]) + " excluded (within excl_eps of a singular point)");
    else if (!p.converged[k])
      warnings.push_back(prefix + "t=" + fmt(p.grid[k]) + " boundary limit did not converge");
  }
}

std::string profile_csv(const MultiplicityProfile& p) {
  std::string out = "t,d,converged,excluded\n";
  for (std::size_t k = 0; k < p.grid.size(); ++k)
    out += fmt(p.grid[k]) + "," + std::to_string(p.d[k]) + "," + (p.converged[k] ? "1" : "0") + "," +
           (p.is_excluded(k) ? "1" : "0") + "\n";
  return out;
}

bool has_krein_leaf(const NevanlinnaFunction& f) {
  const auto& payload = f.node().payload;
  if (const auto* s = std::get_if<SqrtFamilyModel>(&payload)) return s->kind == NodeKind::kKreinSL;
  if (const auto* n = std::get_if<KreinTransformNode>(&payload)) return has_krein_leaf(n->inner);
  if (const auto* n = std::get_if<ConjugationNode>(&payload)) return has_krein_leaf(n->inner);
  if (const auto* n = std::get_if<SandwichNode>(&payload)) return has_krein_leaf(n->inner);
  if (const auto* n = std::get_if<DirectSumNode>(&payload))
    return std::any_of(n->terms.begin(), n->terms.end(), has_krein_leaf);
  return false;
}

std::optional<SelfAdjointRelation> read_relation(const Json& p, std::string_view key, std::size_t dim) {
  const auto it = p.find(key);
  if (it == p.end() || it->is_null()) return std::nullopt;
  const std::string path = "params." + std::string(key);
  io::check_keys(*it, path, {"B", "op_basis", "B_op", "multivalued"});
  try {
    if (it->contains("B")) {
      if (it->size() != 1) throw ValidationError("B cannot be combined with other fields");
      return SelfAdjointRelation::operator_graph(io::decode_hermitian((*it)["B"], path + ".B"));
    }
    if (it->contains("multivalued")) {
      if (it->size() != 1 || !io::read_bool((*it)["multivalued"], path + ".multivalued"))
        throw ValidationError("multivalued must be true and stand alone");
      return SelfAdjointRelation::purely_multivalued(dim);
    }
    return SelfAdjointRelation(io::decode_matrix(io::require(*it, "op_basis", path), path + ".op_basis"),
                               io::decode_hermitian(io::require(*it, "B_op", path), path + ".B_op"));
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw ValidationError(path + ": " + what);
  }
}

Json encode_relation(const std::optional<SelfAdjointRelation>& r) {
  if (!r) return nullptr;
  return {{"op_basis", io::encode(r->op_basis())}, {"B_op", io::encode(r->b_op())}};
}

struct Context {
  Context(const Scene& s, unsigned t) : scene(s), threads(t) {}
  const Scene& scene;
  unsigned threads;
  std::optional<NevanlinnaFunction> model;
  Json config = Json::object();
  Json result = Json::object();
  Json warnings = Json::array();
  std::string csv;
  bool ok = true;
};

void task_eval(Context& c) {
  const auto& p = c.scene.params;
  check_params(p, {"z"}, false);
  const auto& zs = io::require(p, "z", "params");
  if (!zs.is_array()) throw ValidationError("params.z: expected an array of [re, im] pairs");
  Json points = Json::array();
  for (std::size_t k = 0; k < zs.size(); ++k) {
    const std::string path = "params.z[" + std::to_string(k) + "]";
    if (!zs[k].is_array() || zs[k].size() != 2) throw ValidationError(path + ": expected [re, im]");
    const Complex z{io::read_number(zs[k][0], path), io::read_number(zs[k][1], path)};
    points.push_back({{"z", {z.real(), z.imag()}},
                      {"value", io::encode((*c.model)(z))},
                      {"symmetry_residual", symmetry_check(*c.model, z)}});
  }
  c.config["z"] = zs;
  c.result["points"] = std::move(points);
}

void task_limit(Context& c) {
  const auto& p = c.scene.params;
  check_params(p, {"t", "y0", "ratio", "limit_tol", "max_steps", "cross_check"}, false);
  auto cfg = read_limit(p);
  if (p.contains("cross_check")) cfg.cross_check = io::read_bool(p["cross_check"], "params.cross_check");
  const auto& ts = io::require(p, "t", "params");
  if (!ts.is_array()) throw ValidationError("params.t: expected an array of reals");
  std::vector<double> points;
  for (std::size_t k = 0; k < ts.size(); ++k)
    points.push_back(io::read_number(ts[k], "params.t[" + std::to_string(k) + "]"));

  Json limits = Json::array();
  for (double t : points) {
    const auto lim = boundary_limit(*c.model, t, cfg);
    Json entry{{"t", t},
               {"converged", lim.converged},
               {"value", io::encode(lim.value)},
               {"last_delta", io::number(lim.last_delta)},
               {"steps", lim.y_used.size()},
               {"y_final", lim.y_used.empty() ? Json(nullptr) : Json(lim.y_used.back())}};
    if (lim.closed_form_residual) entry["closed_form_residual"] = *lim.closed_form_residual;
    if (!lim.converged) c.warnings.push_back("t=" + fmt(t) + " boundary limit did not converge");
    limits.push_back(std::move(entry));
  }
  c.config = echo(cfg);
  c.config["t"] = points;
  c.config["cross_check"] = cfg.cross_check;
  c.result["limits"] = std::move(limits);
}

void task_profile(Context& c, bool spectrum) {
  check_params(c.scene.params, {}, true);
  const auto scan = read_scan(c.scene.params, c.threads);
  const auto grid = scan.grid();
  const auto profile = multiplicity_profile(*c.model, grid, scan.cfg);
  c.config = scan.echo();
  c.result["profile"] = encode_profile(profile);
  profile_warnings(profile, c.warnings);
  c.csv = profile_csv(profile);
  if (spectrum) {
    const auto ac = ac_spectrum_from_profile(profile);
    c.result["ac_spectrum"] = io::encode(ac);
    c.result["ac_measure"] = ac.measure();
    c.csv = "# ac_spectrum: " + ac.to_string() + "\n" + c.csv;
  }
}

void task_invert(Context& c) {
  check_params(c.scene.params, {}, true);
  const auto scan = read_scan(c.scene.params, c.threads);
  const auto grid = scan.grid();
  const auto inv = stieltjes_invert(*c.model, grid, scan.cfg);
  const std::size_t n = c.model->dim();

  Json cells = Json::array();
  std::string csv = "t";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto ij = std::to_string(i) + "_" + std::to_string(j);
      csv += ",re_" + ij + ",im_" + ij;
    }
  csv += "\n";
  for (const auto& piece : inv.density.pieces()) {
    cells.push_back({{"a", piece.a}, {"b", piece.b}, {"density", io::encode(piece.density)}});
    csv += fmt(0.5 * (piece.a + piece.b));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        csv += "," + fmt(piece.density(i, j).real()) + "," + fmt(piece.density(i, j).imag());
    csv += "\n";
  }
  for (std::size_t k : inv.omitted_cells)
    c.warnings.push_back("cell [" + fmt(grid[k]) + ", " + fmt(grid[k + 1]) +
                         ") omitted (excluded or not converged)");
  c.config = scan.echo();
  c.result["cells"] = std::move(cells);
  c.result["omitted_cells"] = inv.omitted_cells;
  c.csv = std::move(csv);
}

void task_compare(Context& c) {
  const auto& p = c.scene.params;
  check_params(p, {"theta1", "theta2"}, true);
  const auto scan = read_scan(p, c.threads);
  const auto t1 = read_relation(p, "theta1", c.model->dim());
  const auto t2 = read_relation(p, "theta2", c.model->dim());
  const auto v = compare_extensions(*c.model, t1, t2, scan.a, scan.b, scan.n, scan.cfg);

  Json conv1 = Json::array(), conv2 = Json::array();
  for (bool b : v.converged1) conv1.push_back(b);
  for (bool b : v.converged2) conv2.push_back(b);
  c.config = scan.echo();
  c.config["theta1"] = encode_relation(t1);
  c.config["theta2"] = encode_relation(t2);
  c.result = {{"verdict", std::string(to_string(v.relation))},
              {"grid", v.grid},
              {"d1", v.d1},
              {"d2", v.d2},
              {"converged1", std::move(conv1)},
              {"converged2", std::move(conv2)},
              {"excluded", v.excluded}};
  for (std::size_t k = 0; k < v.grid.size(); ++k) {
    if (std::binary_search(v.excluded.begin(), v.excluded.end(), k)) {
      c.warnings.push_back("t=" + fmt(v.grid[k]) + " excluded (within excl_eps of a singular point)");
      continue;
    }
    if (!v.converged1[k]) c.warnings.push_back("theta1: t=" + fmt(v.grid[k]) + " boundary limit did not converge");
    if (!v.converged2[k]) c.warnings.push_back("theta2: t=" + fmt(v.grid[k]) + " boundary limit did not converge");
  }
}

void task_verify(Context& c) {
  const auto& p = c.scene.params;
  check_params(p, {"suites", "inject"}, false);
  std::vector<std::string> names = default_suites();
  if (p.contains("suites")) {
    if (!p["suites"].is_array()) throw ValidationError("params.suites: expected an array of names");
    names.clear();
    for (std::size_t k = 0; k < p["suites"].size(); ++k)
      names.push_back(io::read_string(p["suites"][k], "params.suites[" + std::to_string(k) + "]"));
  }
  for (const auto& n : names)
    if (std::find(available_suites().begin(), available_suites().end(), n) == available_suites().end())
      throw ValidationError("params.suites: unknown suite '" + n + "'");
  const std::string inject = p.contains("inject") ? io::read_string(p["inject"], "params.inject") : "none";
  if (inject != "none" && inject != "branch_flip")
    throw ValidationError("params.inject: expected none or branch_flip");

  VerifyOptions opts;
  opts.branch_flip = inject == "branch_flip";
  opts.extra_model = c.model;
  opts.threads = c.threads;
  Json suites = Json::array();
  bool all = true;
  for (const auto& n : names) {
    const auto r = run_suite(n, opts);
    all = all && r.passed();
    suites.push_back({{"name", r.name},
                      {"passed", r.passed()},
                      {"checks", r.checks},
                      {"failures", r.failures},
                      {"max_residual", io::number(r.max_residual)}});
    if (!r.passed())
      c.warnings.push_back("suite " + r.name + ": " + std::to_string(r.failures) + " of " +
                           std::to_string(r.checks) + " checks failed");
  }
  c.config = {{"suites", names}, {"inject", inject}};
  c.result = {{"passed", all}, {"suites", std::move(suites)}};
  c.ok = all;
}

void task_acset(Context& c) {
  const auto& p = c.scene.params;
  check_params(p, {"op", "sets"}, false);
  const auto& op = io::read_string(io::require(p, "op", "params"), "params.op");
  const auto& arr = io::require(p, "sets", "params");
  if (!arr.is_array()) throw ValidationError("params.sets: expected an array of interval sets");
  std::vector<IntervalSet> sets;
  for (std::size_t k = 0; k < arr.size(); ++k)
    sets.push_back(io::decode_interval_set(arr[k], "params.sets[" + std::to_string(k) + "]"));
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw ValidationError(std::string("params.sets: ") + op + " needs " + what);
  };
  auto emit = [&](const IntervalSet& s) {
    c.result["set"] = io::encode(s);
    c.result["text"] = s.to_string();
    c.result["measure"] = io::number(s.measure());
  };

  if (op == "union" || op == "intersect") {
    need(!sets.empty(), "at least one set");
    IntervalSet acc = sets[0];
    for (std::size_t k = 1; k < sets.size(); ++k) acc = op == "union" ? acc.unite(sets[k]) : acc.intersect(sets[k]);
    emit(acc);
  } else if (op == "subtract") {
    need(sets.size() == 2, "exactly two sets");
    emit(sets[0].subtract(sets[1]));
  } else if (op == "closure_ac" || op == "measure") {
    need(sets.size() == 1, "exactly one set");
    emit(op == "closure_ac" ? sets[0].closure_ac() : sets[0]);
  } else if (op == "verify_lemmas") {
    need(!sets.empty(), "at least one set");
    std::vector<IntervalSet> parts(sets.begin() + (sets.size() > 1 ? 1 : 0), sets.end());
    const auto rep = verify_ac_lemmas(sets[0], parts);
    c.result = {{"leftover_measure", io::number(rep.leftover_measure)},
                {"leftover_null", rep.leftover_null},
                {"closure_of_union", io::encode(rep.closure_of_union)},
                {"union_of_closures", io::encode(rep.union_of_closures)},
                {"union_law_holds", rep.union_law_holds},
                {"passed", rep.passed()}};
    c.ok = rep.passed();
  } else {
    throw ValidationError("params.op: expected union, intersect, subtract, closure_ac, measure or verify_lemmas");
  }
  c.config = {{"op", op}, {"sets", arr}};
}

}  // namespace

Scene parse_scene(const Json& j) {
  io::check_keys(j, "", {"task", "model", "params", "output"});
  Scene s;
  s.task = io::read_string(io::require(j, "task", ""), "task");
  if (std::find(kTasks.begin(), kTasks.end(), s.task) == kTasks.end())
    throw ValidationError("task: unknown task '" + s.task + "'");
  if (j.contains("model")) s.model = j["model"];
  if (j.contains("params")) {
    if (!j["params"].is_object()) throw ValidationError("params: expected an object");
    s.params = j["params"];
  }
  if (j.contains("output")) {
    const auto& o = j["output"];
    io::check_keys(o, "output", {"path", "format"});
    if (o.contains("path")) s.output_path = io::read_string(o["path"], "output.path");
    if (o.contains("format")) s.format = io::read_string(o["format"], "output.format");
  }
  if (s.format != "json" && s.format != "csv") throw ValidationError("output.format: expected json or csv");
  return s;
}

io::Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read scene file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  Json j;
  try {
    j = Json::parse(text.str());
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return j;
}

Scene load_scene(const std::string& path) { return parse_scene(read_json_file(path)); }

Report run(const Scene& scene, unsigned threads) {
  Context c(scene, threads);
  const bool model_optional = scene.task == "verify";
  if (scene.task == "acset") {
    if (scene.model) throw ValidationError("model: not used by task acset");
  } else if (scene.model) {
    c.model = io::decode_function(*scene.model, "model");
  } else if (!model_optional) {
    throw ValidationError("model: missing required field");
  }
  if (c.model && has_krein_leaf(*c.model))
    c.warnings.push_back("model contains a Krein-extension leaf with a pole at z = 0; t = 0 is treated as singular");

  if (scene.task == "eval") task_eval(c);
  else if (scene.task == "limit") task_limit(c);
  else if (scene.task == "spectrum") task_profile(c, true);
  else if (scene.task == "multiplicity") task_profile(c, false);
  else if (scene.task == "invert") task_invert(c);
  else if (scene.task == "compare") task_compare(c);
  else if (scene.task == "verify") task_verify(c);
  else task_acset(c);

  if (c.model) c.config["model"] = io::encode(*c.model);
  Report r;
  r.json = {{"tool", kToolName},  {"version", kVersion},       {"task", scene.task},
            {"config", c.config}, {"result", std::move(c.result)}, {"warnings", std::move(c.warnings)}};
  r.csv = std::move(c.csv);
  r.ok = c.ok;
  return r;
}

std::string render(const Report& report, const std::string& format) {
  if (format == "json") return io::pretty(report.json);
  if (format == "csv") {
    if (report.csv.empty())
      throw ValidationError("output.format: task " + report.json.value("task", std::string()) +
                            " has no CSV form");
    return report.csv;
  }
  throw ValidationError("output.format: expected json or csv");
}

}  // namespace weylkit::cli
