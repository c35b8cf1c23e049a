#include "woundsev/severity.hpp"

#include <algorithm>
#include <cctype>

#include "woundsev/errors.hpp"

namespace woundsev {

const std::string& to_string(SeverityClass c) {
    static const std::string names[3] = {"green", "yellow", "red"};
    return names[static_cast<int>(c)];
}

SeverityClass severity_from_string(const std::string& s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
    for (SeverityClass c : kAllSeverities) {
        if (lower == to_string(c)) return c;
    }
    throw UnknownLabel("unknown severity label '" + s +
                       "' (expected green, yellow or red)");
}

}  // namespace woundsev
