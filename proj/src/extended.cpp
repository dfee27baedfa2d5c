#include "curvkit/extended.hpp"

#include <charconv>
#include <sstream>

namespace curvkit {

Dimension Dimension::parse(const std::string& token) {
    if (token == "inf" || token == "infinity" || token == "Inf") return infinite();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError("malformed dimension '" + token + "' (expected a positive number or 'inf')");
    return Dimension(v);
}

std::string Dimension::to_string() const {
    if (is_infinite()) return "inf";
    std::ostringstream os;
    os.precision(17);
    os << n_;
    return os.str();
}

}  // namespace curvkit
