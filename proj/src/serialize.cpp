#include "weylkit/serialize.hpp"

#include <algorithm>
#include <cmath>

#include "weylkit/errors.hpp"
#include "weylkit/sturm_liouville.hpp"
#include "weylkit/transforms.hpp"

namespace weylkit::io {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

std::string at(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string at(const std::string& path, std::size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

const Json& require_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

}  // namespace

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x + 0.0;  // no negative zero in reports
}

double read_number(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
  }
  fail(path, "expected a number");
}

long long read_integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v == std::floor(v) && std::abs(v) < 9e15) return static_cast<long long>(v);
  }
  fail(path, "expected an integer");
}

bool read_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

const std::string& read_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get_ref<const std::string&>();
}

const Json& require(const Json& obj, std::string_view key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(at(path, key), "missing required field");
  return *it;
}

void check_keys(const Json& obj, const std::string& path,
                std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, value] : obj.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      fail(at(path, key), "unknown field");
}

namespace {

bool is_flat(const Json& j) {
  return std::none_of(j.begin(), j.end(), [](const Json& e) {
    return e.is_object() || (e.is_array() && !is_flat(e));
  });
}

void write_pretty(const Json& j, int depth, std::string& out) {
  const std::string pad(2 * depth + 2, ' '), close(2 * depth, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(key).dump() + ": ";
      write_pretty(value, depth + 1, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array() && !j.empty() && !is_flat(j)) {
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (k) out += ",\n";
      out += pad;
      write_pretty(j[k], depth + 1, out);
    }
    out += "\n" + close + "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string pretty(const Json& j) {
  std::string out;
  write_pretty(j, 0, out);
  return out + "\n";
}

Json encode(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      entries.push_back(Json::array({number(m(i, j).real()), number(m(i, j).imag())}));
  Json out{{"dim", m.rows()}, {"entries", std::move(entries)}};
  if (m.rows() != m.cols()) out["cols"] = m.cols();
  return out;
}

ComplexMatrix decode_matrix(const Json& j, const std::string& path) {
  check_keys(j, path, {"dim", "cols", "entries"});
  const long long rows = read_integer(require(j, "dim", path), at(path, "dim"));
  const long long cols = j.contains("cols") ? read_integer(j["cols"], at(path, "cols")) : rows;
  if (rows < 0 || cols < 0) fail(at(path, "dim"), "must be non-negative");
  const auto& entries = require_array(require(j, "entries", path), at(path, "entries"));
  if (entries.size() != static_cast<std::size_t>(rows * cols))
    fail(at(path, "entries"), "expected " + std::to_string(rows * cols) + " entries, got " +
                                  std::to_string(entries.size()));
  std::vector<Complex> values;
  values.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    const auto p = at(at(path, "entries"), k);
    if (!e.is_array() || e.size() != 2) fail(p, "expected a [re, im] pair");
    const Complex c{read_number(e[0], p + "[0]"), read_number(e[1], p + "[1]")};
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) fail(p, "entry must be finite");
    values.push_back(c);
  }
  return ComplexMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                       std::move(values));
}

HermitianMatrix decode_hermitian(const Json& j, const std::string& path) {
  const auto m = decode_matrix(j, path);
  try {
    return HermitianMatrix(m);
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

Json encode(const OperatorMeasure& m) {
  Json atoms = Json::array(), ac = Json::array();
  for (const auto& a : m.atoms()) atoms.push_back({{"t", number(a.position)}, {"weight", encode(a.weight)}});
  for (const auto& p : m.pieces())
    ac.push_back({{"a", number(p.a)}, {"b", number(p.b)}, {"density", encode(p.density)}});
  return {{"dim", m.dim()}, {"atoms", std::move(atoms)}, {"ac", std::move(ac)}};
}

OperatorMeasure decode_measure(const Json& j, const std::string& path) {
  check_keys(j, path, {"dim", "atoms", "ac"});
  const long long dim = read_integer(require(j, "dim", path), at(path, "dim"));
  if (dim < 0) fail(at(path, "dim"), "must be non-negative");
  std::vector<Atom> atoms;
  std::vector<AcPiece> pieces;
  if (j.contains("atoms")) {
    const auto& arr = require_array(j["atoms"], at(path, "atoms"));
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const auto p = at(at(path, "atoms"), k);
      check_keys(arr[k], p, {"t", "weight"});
      atoms.push_back({read_number(require(arr[k], "t", p), at(p, "t")),
                       decode_hermitian(require(arr[k], "weight", p), at(p, "weight"))});
    }
  }
  if (j.contains("ac")) {
    const auto& arr = require_array(j["ac"], at(path, "ac"));
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const auto p = at(at(path, "ac"), k);
      check_keys(arr[k], p, {"a", "b", "density"});
      pieces.push_back({read_number(require(arr[k], "a", p), at(p, "a")),
                        read_number(require(arr[k], "b", p), at(p, "b")),
                        decode_hermitian(require(arr[k], "density", p), at(p, "density"))});
    }
  }
  try {
    return OperatorMeasure(static_cast<std::size_t>(dim), std::move(atoms), std::move(pieces));
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

Json encode(const IntervalSet& s) {
  Json arr = Json::array();
  for (const auto& iv : s.intervals())
    arr.push_back({{"a", number(iv.a)}, {"b", number(iv.b)}, {"cl", iv.closed_left}, {"cr", iv.closed_right}});
  return {{"intervals", std::move(arr)}};
}

IntervalSet decode_interval_set(const Json& j, const std::string& path) {
  check_keys(j, path, {"intervals"});
  const auto& arr = require_array(require(j, "intervals", path), at(path, "intervals"));
  std::vector<Interval> parts;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto p = at(at(path, "intervals"), k);
    check_keys(arr[k], p, {"a", "b", "cl", "cr"});
    parts.push_back({read_number(require(arr[k], "a", p), at(p, "a")),
                     read_number(require(arr[k], "b", p), at(p, "b")),
                     arr[k].contains("cl") ? read_bool(arr[k]["cl"], at(p, "cl")) : true,
                     arr[k].contains("cr") ? read_bool(arr[k]["cr"], at(p, "cr")) : true});
  }
  try {
    return IntervalSet::from_intervals(parts);
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
}

Json encode(const NevanlinnaFunction& f) {
  return std::visit(
      Overloaded{
          [](const IntegralModel& m) -> Json {
            return {{"node", "integral"}, {"C0", encode(m.c0)}, {"C1", encode(m.c1)},
                    {"measure", encode(m.sigma)}};
          },
          [](const SqrtFamilyModel& m) -> Json {
            return {{"node", std::string(to_string(m.kind))}, {"T", encode(m.t)}};
          },
          [](const KreinTransformNode& n) -> Json {
            return {{"node", "krein"}, {"B", encode(n.b)}, {"inner", encode(n.inner)}};
          },
          [](const ConjugationNode& n) -> Json {
            return {{"node", "conj"}, {"R", encode(n.r)}, {"R0", encode(n.r0)}, {"inner", encode(n.inner)}};
          },
          [](const SandwichNode& n) -> Json {
            return {{"node", "sandwich"}, {"D", encode(n.d)}, {"inner", encode(n.inner)}};
          },
          [](const DirectSumNode& n) -> Json {
            Json terms = Json::array();
            for (const auto& t : n.terms) terms.push_back(encode(t));
            return {{"node", "sum"}, {"terms", std::move(terms)}};
          },
      },
      f.node().payload);
}

NevanlinnaFunction decode_function(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected a model node object");
  const auto& kind = read_string(require(j, "node", path), at(path, "node"));
  // Constructor failures are input errors at this node.
  auto guarded = [&](auto&& build) {
    try {
      return build();
    } catch (const ValidationError& e) {
      fail(path, e.what());
    }
  };
  auto t_of = [&] { return decode_hermitian(require(j, "T", path), at(path, "T")); };

  if (kind == "integral") {
    check_keys(j, path, {"node", "C0", "C1", "measure"});
    std::optional<HermitianMatrix> c0, c1;
    std::optional<OperatorMeasure> sigma;
    if (j.contains("C0")) c0 = decode_hermitian(j["C0"], at(path, "C0"));
    if (j.contains("C1")) c1 = decode_hermitian(j["C1"], at(path, "C1"));
    if (j.contains("measure")) sigma = decode_measure(j["measure"], at(path, "measure"));
    const std::size_t dim = c0 ? c0->dim() : c1 ? c1->dim() : sigma ? sigma->dim() : 0;
    if (!c0 && !c1 && !sigma) fail(path, "integral node needs at least one of C0, C1, measure");
    return guarded([&] {
      return NevanlinnaFunction::integral(c0.value_or(HermitianMatrix::zero(dim)),
                                          c1.value_or(HermitianMatrix::zero(dim)),
                                          sigma.value_or(OperatorMeasure(dim)));
    });
  }
  if (kind == "sqrt" || kind == "reg_sqrt" || kind == "krein_sl" || kind == "neumann_sl") {
    check_keys(j, path, {"node", "T"});
    auto t = t_of();
    return guarded([&] {
      if (kind == "sqrt") return NevanlinnaFunction::sqrt_model(t);
      if (kind == "reg_sqrt") return NevanlinnaFunction::regularized_sqrt(t);
      if (kind == "krein_sl") return NevanlinnaFunction::krein_sl(t);
      return NevanlinnaFunction::neumann_sl(t);
    });
  }
  if (kind == "sl") {
    check_keys(j, path, {"node", "T", "extension"});
    auto t = t_of();
    const std::string ext =
        j.contains("extension") ? read_string(j["extension"], at(path, "extension")) : "friedrichs";
    const SLModel m = guarded([&] { return SLModel(t); });
    if (ext == "friedrichs") return weyl(m);
    if (ext == "krein") return krein_weyl(m);
    if (ext == "neumann") return neumann_weyl(m);
    if (ext == "regularized") return regularized_weyl(m);
    fail(at(path, "extension"), "expected friedrichs, krein, neumann or regularized");
  }
  if (kind == "krein") {
    check_keys(j, path, {"node", "B", "inner"});
    auto b = decode_hermitian(require(j, "B", path), at(path, "B"));
    auto inner = decode_function(require(j, "inner", path), at(path, "inner"));
    return guarded([&] { return NevanlinnaFunction::krein_transform(b, inner); });
  }
  if (kind == "conj") {
    check_keys(j, path, {"node", "R", "R0", "inner"});
    auto r = decode_matrix(require(j, "R", path), at(path, "R"));
    auto inner = decode_function(require(j, "inner", path), at(path, "inner"));
    auto r0 = j.contains("R0") ? decode_hermitian(j["R0"], at(path, "R0"))
                               : HermitianMatrix::zero(inner.dim());
    return guarded([&] { return NevanlinnaFunction::conjugation(r, r0, inner); });
  }
  if (kind == "sandwich") {
    check_keys(j, path, {"node", "D", "inner"});
    auto d = decode_matrix(require(j, "D", path), at(path, "D"));
    auto inner = decode_function(require(j, "inner", path), at(path, "inner"));
    return guarded([&] { return NevanlinnaFunction::sandwich(d, inner); });
  }
  if (kind == "sum") {
    check_keys(j, path, {"node", "terms", "regularize"});
    const auto& arr = require_array(require(j, "terms", path), at(path, "terms"));
    std::vector<NevanlinnaFunction> terms;
    for (std::size_t k = 0; k < arr.size(); ++k)
      terms.push_back(decode_function(arr[k], at(at(path, "terms"), k)));
    const bool reg = j.contains("regularize") && read_bool(j["regularize"], at(path, "regularize"));
    return guarded([&] { return direct_sum(terms, reg); });
  }
  fail(at(path, "node"), "unknown node kind '" + kind + "'");
}

}  // namespace weylkit::io
