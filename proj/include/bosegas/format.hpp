#pragma once

#include <charconv>
#include <string>

namespace bosegas::format {

// Shortest decimal representation that round-trips to the same double,
// scientific notation, at most 17 significant digits.
inline std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific);
    return std::string(buf, res.ptr);
}

}  // namespace bosegas::format
