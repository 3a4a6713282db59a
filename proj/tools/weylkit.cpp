// Command-line front end: runs scene files and writes reports.
//
//   weylkit run SCENE [flags]         task taken from the scene
//   weylkit <task> SCENE [flags]      task given explicitly (must agree with the scene)
//
// Exit codes: 0 success, 1 verification failures, 2 invalid input,
// 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weylkit/errors.hpp"
#include "weylkit/scene.hpp"

namespace {

using weylkit::io::Json;

struct Flags {
  std::string scene_path;
  std::vector<double> window;
  std::optional<long long> grid_points;
  std::optional<double> y0, ratio, limit_tol, rank_tol, excl_eps;
  std::optional<int> max_steps;
  std::optional<std::string> format, output;
  unsigned threads = 0;
};

void add_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("scene", f.scene_path, "Scene file (JSON)")->required();
  cmd.add_option("--window", f.window, "Scan window a b")->expected(2);
  cmd.add_option("--grid-points", f.grid_points, "Number of grid points");
  cmd.add_option("--y0", f.y0, "First imaginary offset");
  cmd.add_option("--ratio", f.ratio, "Geometric ratio of offsets");
  cmd.add_option("--limit-tol", f.limit_tol, "Boundary-limit tolerance");
  cmd.add_option("--max-steps", f.max_steps, "Maximum refinement steps");
  cmd.add_option("--rank-tol", f.rank_tol, "Relative rank tolerance");
  cmd.add_option("--excl-eps", f.excl_eps, "Exclusion radius around singular points");
  cmd.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd.add_option("-o,--output", f.output, "Output path (default: standard output)");
  cmd.add_option("--threads", f.threads, "Worker threads (0: WEYLKIT_THREADS or all cores)");
}

weylkit::cli::Scene build_scene(const Flags& f, const std::string& task) {
  Json j = weylkit::cli::read_json_file(f.scene_path);
  if (!j.is_object()) throw weylkit::ValidationError("<root>: expected an object");
  if (task != "run") {
    if (j.contains("task") && j["task"] != task)
      throw weylkit::ValidationError("task: scene declares '" + j["task"].dump() +
                                     "' but the subcommand is '" + task + "'");
    j["task"] = task;
  }
  Json& params = j["params"];
  if (params.is_null()) params = Json::object();
  if (!params.is_object()) throw weylkit::ValidationError("params: expected an object");
  if (!f.window.empty()) params["window"] = f.window;
  if (f.grid_points) params["grid_points"] = *f.grid_points;
  if (f.y0) params["y0"] = *f.y0;
  if (f.ratio) params["ratio"] = *f.ratio;
  if (f.limit_tol) params["limit_tol"] = *f.limit_tol;
  if (f.max_steps) params["max_steps"] = *f.max_steps;
  if (f.rank_tol) params["rank_tol"] = *f.rank_tol;
  if (f.excl_eps) params["excl_eps"] = *f.excl_eps;

  auto scene = weylkit::cli::parse_scene(j);
  if (f.format) scene.format = *f.format;
  if (f.output) scene.output_path = *f.output;
  return scene;
}

int execute(const Flags& f, const std::string& task) {
  const auto scene = build_scene(f, task);
  const auto report = weylkit::cli::run(scene, f.threads);
  const auto bytes = weylkit::cli::render(report, scene.format);
  if (scene.output_path.empty()) {
    std::cout << bytes << std::flush;
  } else {
    std::ofstream out(scene.output_path, std::ios::binary);
    if (!(out << bytes)) throw weylkit::ValidationError("cannot write '" + scene.output_path + "'");
  }
  return report.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral multiplicity and boundary-value toolkit for matrix Nevanlinna functions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(weylkit::cli::kVersion));

  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"run", "Run the task named in the scene"},
      {"eval", "Evaluate the model at points of the upper half-plane"},
      {"limit", "Boundary limits F(t + i0)"},
      {"spectrum", "Absolutely continuous spectrum on a window"},
      {"multiplicity", "Multiplicity profile d(t) on a grid"},
      {"invert", "Stieltjes inversion to a piecewise-constant density"},
      {"compare", "Compare two self-adjoint extensions"},
      {"verify", "Run invariant suites"},
      {"acset", "Interval-set algebra and ac-closure"},
  };
  for (const auto& [name, help] : commands) add_flags(*app.add_subcommand(name, help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string task = app.get_subcommands().front()->get_name();
  try {
    return execute(flags, task);
  } catch (const weylkit::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const weylkit::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
