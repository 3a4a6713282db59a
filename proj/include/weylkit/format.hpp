#pragma once

#include <string>

namespace weylkit {

// Shortest decimal string that round-trips to the same double ("inf", "-inf",
// "nan" for the special values).
std::string format_double(double x);

}  // namespace weylkit
