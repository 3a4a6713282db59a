#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "weylkit/errors.hpp"
#include "weylkit/scene.hpp"
#include "weylkit/serialize.hpp"
#include "weylkit/sturm_liouville.hpp"
#include "weylkit/verify.hpp"

using namespace weylkit;
using namespace weylkit::testing;
using weylkit::io::Json;

namespace {

const Complex kI{0.0, 1.0};

Json mat(std::size_t n, std::vector<std::pair<double, double>> e) {
  Json entries = Json::array();
  for (auto [re, im] : e) entries.push_back({re, im});
  return {{"dim", n}, {"entries", entries}};
}

Json diag14() { return mat(2, {{1, 0}, {0, 0}, {0, 0}, {4, 0}}); }

cli::Report run_json(const Json& j, unsigned threads = 1) { return cli::run(cli::parse_scene(j), threads); }

}  // namespace

TEST_CASE("matrix encoding round-trips") {
  Rng rng(71);
  const auto m = random_matrix(rng, 3, 2);
  const auto back = io::decode_matrix(io::encode(m), "m");
  CHECK(back.rows() == 3);
  CHECK(back.cols() == 2);
  CHECK(residual(back, m) == 0.0);
  // round-trip through text as well
  CHECK(residual(io::decode_matrix(Json::parse(io::encode(m).dump()), "m"), m) == 0.0);
}

TEST_CASE("malformed matrices are rejected with a field path") {
  CHECK_THROWS_WITH_AS(io::decode_matrix(mat(2, {{1, 0}, {0, 0}, {4, 0}}), "model.T"),
                       "model.T.entries: expected 4 entries, got 3", ValidationError);
  CHECK_THROWS_AS(io::decode_matrix(Json{{"dim", 1}, {"entries", {{1}}}}, "m"), ValidationError);
  CHECK_THROWS_AS(io::decode_matrix(Json{{"dim", 1}, {"entries", {{1, 0}}}, {"extra", 1}}, "m"),
                  ValidationError);
  CHECK_THROWS_AS(io::decode_hermitian(mat(2, {{1, 0}, {1, 0}, {0, 0}, {1, 0}}), "m"), ValidationError);
  CHECK_THROWS_AS(io::decode_matrix(Json{{"dim", 1}, {"entries", {{"inf", 0}}}}, "m"), ValidationError);
}

TEST_CASE("measure and interval set encoding") {
  const OperatorMeasure sigma(1, {{-1.0, HermitianMatrix::identity(1)}},
                              {{-HUGE_VAL, 0.0, HermitianMatrix::identity(1)}});
  const auto j = io::encode(sigma);
  CHECK(j["ac"][0]["a"] == "-inf");
  const auto back = io::decode_measure(Json::parse(j.dump()), "m");
  CHECK(back.atoms().size() == 1);
  CHECK(back.pieces()[0].a == -HUGE_VAL);

  const auto s = IntervalSet::closed(0, 1).unite(IntervalSet::point(2)).unite(IntervalSet::open(3, 4));
  CHECK(io::decode_interval_set(io::encode(s), "s") == s);
  CHECK_THROWS_AS(io::decode_interval_set(Json{{"intervals", {{{"a", 2}, {"b", 1}}}}}, "s"),
                  ValidationError);
}

TEST_CASE("function trees round-trip pointwise") {
  Rng rng(72);
  for (const auto& [name, f] : model_zoo()) {
    CAPTURE(name);
    const auto g = io::decode_function(Json::parse(io::encode(f).dump()), "model");
    CHECK(g.kind() == f.kind());
    for (int k = 0; k < 5; ++k) {
      const Complex z = random_upper(rng);
      CHECK(residual(g(z), f(z)) <= 1e-12 * std::max(1.0, f(z).norm_fro()));
    }
  }
}

TEST_CASE("sl nodes select the extension") {
  const auto t = HermitianMatrix::diagonal(std::vector<double>{1, 4});
  const SLModel m(t);
  const std::pair<const char*, NevanlinnaFunction> cases[] = {
      {"friedrichs", weyl(m)}, {"krein", krein_weyl(m)}, {"neumann", neumann_weyl(m)},
      {"regularized", regularized_weyl(m)}};
  for (const auto& [ext, want] : cases) {
    const auto f = io::decode_function({{"node", "sl"}, {"T", diag14()}, {"extension", ext}}, "model");
    CHECK(residual(f(2.0 + kI), want(2.0 + kI)) == 0.0);
  }
  CHECK_THROWS_AS(io::decode_function({{"node", "sl"}, {"T", diag14()}, {"extension", "dirichlet"}}, "m"),
                  ValidationError);
  CHECK_THROWS_AS(io::decode_function({{"node", "sl"}, {"T", mat(1, {{-1, 0}})}}, "m"), ValidationError);
  CHECK_THROWS_AS(io::decode_function({{"node", "spline"}}, "m"), ValidationError);
}

TEST_CASE("scene structure validation") {
  CHECK_THROWS_AS(cli::parse_scene({{"task", "plot"}}), ValidationError);
  CHECK_THROWS_AS(cli::parse_scene({{"task", "eval"}, {"colour", "red"}}), ValidationError);
  CHECK_THROWS_AS(cli::parse_scene({{"task", "eval"}, {"output", {{"format", "xml"}}}}), ValidationError);
  CHECK_THROWS_AS(run_json({{"task", "eval"}, {"params", {{"z", {{0, 1}}}}}}), ValidationError);
  CHECK_THROWS_WITH_AS(run_json({{"task", "spectrum"},
                                 {"model", {{"node", "sqrt"}, {"T", diag14()}}},
                                 {"params", {{"window", {0, 6}}, {"grid_pts", 10}}}}),
                       "params.grid_pts: unknown field", ValidationError);
  CHECK_THROWS_AS(run_json({{"task", "spectrum"},
                            {"model", {{"node", "sqrt"}, {"T", diag14()}}},
                            {"params", {{"window", {6, 0}}}}}),
                  ValidationError);
  CHECK_THROWS_AS(run_json({{"task", "acset"}, {"model", {{"node", "sqrt"}, {"T", diag14()}}}}),
                  ValidationError);
}

TEST_CASE("spectrum task on the SL model") {
  const Json scene{{"task", "spectrum"},
                   {"model", {{"node", "sl"}, {"T", diag14()}}},
                   {"params", {{"window", {0, 6}}, {"grid_points", 61}}}};
  const auto r = run_json(scene);
  CHECK(r.json["result"]["ac_spectrum"] == io::encode(IntervalSet::closed(1, 6)));
  CHECK(r.csv.rfind("# ac_spectrum: [1, 6]\nt,d,converged,excluded\n0,0,1,0\n", 0) == 0);
  CHECK(r.json["warnings"].size() == 2);  // t = 1 and t = 4 are excluded
  CHECK(r.json["config"]["y0"] == 1e-2);
}

TEST_CASE("compare task examples") {
  Json scene{{"task", "compare"},
             {"model", {{"node", "sqrt"}, {"T", diag14()}}},
             {"params", {{"window", {0, 11}}, {"grid_points", 56}, {"theta2", {{"B", mat(2, {{1, 0}, {0, 0}, {0, 0}, {1, 0}})}}}}}};
  CHECK(run_json(scene).json["result"]["verdict"] == "equivalent");
  scene["params"]["theta2"] = {{"multivalued", true}};
  CHECK(run_json(scene).json["result"]["verdict"] == "equivalent");
  scene["params"]["theta2"] = {{"op_basis", io::encode(ComplexMatrix(2, 1, {1.0, 0.0}))},
                               {"B_op", mat(1, {{0.5, 0}})}};
  CHECK_NOTHROW(run_json(scene));
  scene["params"]["theta2"] = {{"B", mat(1, {{1, 0}})}};
  CHECK_THROWS_AS(run_json(scene), ValidationError);
}

TEST_CASE("eval task reports numerical failures") {
  const Json scene{{"task", "eval"},
                   {"model", {{"node", "krein_sl"}, {"T", diag14()}}},
                   {"params", {{"z", {{0, 0}}}}}};
  CHECK_THROWS_AS(run_json(scene), PoleError);
  const Json ok{{"task", "eval"},
                {"model", {{"node", "krein_sl"}, {"T", diag14()}}},
                {"params", {{"z", {{0, 1}}}}}};
  const auto r = run_json(ok);
  CHECK(r.json["warnings"].size() == 1);
  CHECK_THROWS_AS(cli::render(r, "csv"), ValidationError);
}

TEST_CASE("invert task csv layout") {
  const Json scene{{"task", "invert"},
                   {"model", {{"node", "integral"},
                              {"measure", io::encode(OperatorMeasure::density(0, 1, HermitianMatrix::identity(1)))}}},
                   {"params", {{"window", {-1, 2}}, {"grid_points", 4}}}};
  const auto r = run_json(scene);
  CHECK(r.csv.rfind("t,re_0_0,im_0_0\n", 0) == 0);
  CHECK(r.json["result"]["cells"].size() + r.json["result"]["omitted_cells"].size() == 3);
}

TEST_CASE("acset task") {
  auto set = [](std::vector<std::tuple<double, double, bool, bool>> parts) {
    Json arr = Json::array();
    for (auto [a, b, l, r] : parts) arr.push_back({{"a", a}, {"b", b}, {"cl", l}, {"cr", r}});
    return Json{{"intervals", arr}};
  };
  Json scene{{"task", "acset"},
             {"params", {{"op", "subtract"}, {"sets", {set({{0, 2, true, true}}), set({{0.5, 1, false, false}})}}}}};
  CHECK(run_json(scene).json["result"]["text"] == "[0, 0.5] U [1, 2]");
  scene["params"] = {{"op", "closure_ac"}, {"sets", {set({{0, 1, false, false}, {1, 2, false, false}})}}};
  CHECK(run_json(scene).json["result"]["text"] == "[0, 2]");
  scene["params"] = {{"op", "measure"}, {"sets", {set({{0, 1, true, true}, {2, 3, true, true}})}}};
  CHECK(run_json(scene).json["result"]["measure"] == 2.0);
  scene["params"] = {{"op", "subtract"}, {"sets", {set({})}}};
  CHECK_THROWS_AS(run_json(scene), ValidationError);
}

TEST_CASE("verify task") {
  const auto empty = run_json({{"task", "verify"}, {"params", {{"suites", Json::array()}}}});
  CHECK(empty.ok);
  CHECK(empty.json["result"]["suites"].empty());

  const auto flipped = run_json({{"task", "verify"}, {"params", {{"suites", {"herglotz"}}, {"inject", "branch_flip"}}}});
  CHECK_FALSE(flipped.ok);
  CHECK(flipped.json["result"]["suites"][0]["failures"].get<int>() > 0);

  CHECK_THROWS_AS(run_json({{"task", "verify"}, {"params", {{"suites", {"nope"}}}}}), ValidationError);
}

TEST_CASE("default verification bundle passes") {
  for (const auto& name : default_suites()) {
    CAPTURE(name);
    CHECK(run_suite(name).passed());
  }
}

TEST_CASE("reports do not depend on the thread count") {
  const Json scene{{"task", "multiplicity"},
                   {"model", {{"node", "neumann_sl"}, {"T", diag14()}}},
                   {"params", {{"window", {-1, 7}}, {"grid_points", 81}}}};
  const auto one = cli::render(run_json(scene, 1), "json");
  CHECK(cli::render(run_json(scene, 3), "json") == one);
  CHECK(cli::render(run_json(scene, 1), "json") == one);
}
