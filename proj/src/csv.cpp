#include "srfid/csv.hpp"

#include <charconv>
#include <cmath>

namespace srfid::csv {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace srfid::csv
