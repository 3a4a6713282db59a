#pragma once

// JSON encoding of matrices, measures, interval sets and function trees.
// Decoders reject unknown keys and report the offending field path in the
// ValidationError message.

#include <initializer_list>
#include <string>
#include <string_view>

#include "json.hpp"
#include "weylkit/interval_set.hpp"
#include "weylkit/matrix.hpp"
#include "weylkit/nevanlinna.hpp"
#include "weylkit/operator_measure.hpp"

namespace weylkit::io {

using Json = nlohmann::json;

// Indented output with arrays of scalars kept on one line. Key order is the
// sorted order of the object, so equal values give equal bytes.
std::string pretty(const Json& j);

// Finite values become numbers; ±∞ and NaN become the strings "inf", "-inf", "nan".
Json number(double x);
double read_number(const Json& j, const std::string& path);
long long read_integer(const Json& j, const std::string& path);
bool read_bool(const Json& j, const std::string& path);
const std::string& read_string(const Json& j, const std::string& path);
const Json& require(const Json& obj, std::string_view key, const std::string& path);
void check_keys(const Json& obj, const std::string& path, std::initializer_list<std::string_view> allowed);

// {"dim": n, "entries": [[re, im], …]} row-major.
Json encode(const ComplexMatrix& m);
inline Json encode(const HermitianMatrix& m) { return encode(m.matrix()); }
ComplexMatrix decode_matrix(const Json& j, const std::string& path);
// Square, Hermitian to 1e−12 relative.
HermitianMatrix decode_hermitian(const Json& j, const std::string& path);

Json encode(const OperatorMeasure& m);
OperatorMeasure decode_measure(const Json& j, const std::string& path);

Json encode(const IntervalSet& s);
IntervalSet decode_interval_set(const Json& j, const std::string& path);

// Node trees. Decoding additionally accepts {"node": "sl", "T": …,
// "extension": "friedrichs" | "krein" | "neumann" | "regularized"} and
// {"node": "sum", "terms": […], "regularize": bool}.
Json encode(const NevanlinnaFunction& f);
NevanlinnaFunction decode_function(const Json& j, const std::string& path);

}  // namespace weylkit::io
