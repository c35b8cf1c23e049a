#pragma once

#include <array>
#include <string>

namespace woundsev {

/// Three-level wound severity. The order is total and clinically meaningful:
/// Green < Yellow < Red (green heals with routine care, red needs prompt
/// treatment). Aggregations rely on this order.
enum class SeverityClass { Green = 0, Yellow = 1, Red = 2 };

inline constexpr std::array<SeverityClass, 3> kAllSeverities = {
    SeverityClass::Green, SeverityClass::Yellow, SeverityClass::Red};

const std::string& to_string(SeverityClass c);

/// Accepts "green" / "yellow" / "red" (case-insensitive). Throws UnknownLabel.
SeverityClass severity_from_string(const std::string& s);

inline SeverityClass max_severity(SeverityClass a, SeverityClass b) {
    return static_cast<int>(a) >= static_cast<int>(b) ? a : b;
}

}  // namespace woundsev
