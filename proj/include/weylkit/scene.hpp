#pragma once

// Scene files: a model, a task and its parameters. run() turns a scene into a
// report whose serialized form depends only on the scene contents.
//
// Top level:  {"task": …, "model": node, "params": {…}, "output": {"path": …, "format": "json"|"csv"}}
// Report:     {"tool", "version", "task", "config", "result", "warnings"}

#include <optional>
#include <string>
#include <string_view>

#include "weylkit/serialize.hpp"

namespace weylkit::cli {

inline constexpr std::string_view kToolName = "weylkit";
inline constexpr std::string_view kVersion = "0.1.0";

struct Scene {
  std::string task;
  std::optional<io::Json> model;
  io::Json params = io::Json::object();
  std::string output_path;  // empty: standard output
  std::string format = "json";
};

// Structural validation only (top-level keys, task name, output block).
// Params are checked against the task when the scene runs.
Scene parse_scene(const io::Json& j);
// Reads a JSON file; syntax errors become ValidationError carrying the
// parser's line/column message.
io::Json read_json_file(const std::string& path);
Scene load_scene(const std::string& path);

struct Report {
  io::Json json;
  std::string csv;  // empty for tasks without a tabular form
  bool ok = true;   // false when a verify run has failing suites
};

// threads = 0 defers to WEYLKIT_THREADS / hardware concurrency. The report
// does not depend on the thread count.
Report run(const Scene& scene, unsigned threads = 0);

// Final bytes for the requested format (ValidationError if the task has no
// CSV form).
std::string render(const Report& report, const std::string& format);

}  // namespace weylkit::cli
