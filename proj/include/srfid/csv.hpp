#pragma once

#include <string>

namespace srfid::csv {

// Shortest decimal string that round-trips to the same double. Keeps CSV
// output byte-stable across runs without losing precision.
std::string format_double(double v);

} // namespace srfid::csv
