#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "woundsev/severity.hpp"

namespace woundsev::rubric {

/// Dominant wound-bed color pattern.
enum class WoundColor {
    Red100,             // fully red granulation
    YellowGreyUnder50,  // yellow-grey covering less than half
    YellowGrey50to100,  // yellow-grey covering half or more
    BlackBrown,
};

/// Peri-wound skin condition.
enum class Periwound {
    Normal,
    Callus,
    RedUnder1cm,
    RedOver1cm,
    Maceration,
    MacerationAndBreakdown,
};

inline constexpr std::array<WoundColor, 4> kAllColors = {
    WoundColor::Red100, WoundColor::YellowGreyUnder50,
    WoundColor::YellowGrey50to100, WoundColor::BlackBrown};

inline constexpr std::array<Periwound, 6> kAllPeriwounds = {
    Periwound::Normal,       Periwound::Callus,
    Periwound::RedUnder1cm,  Periwound::RedOver1cm,
    Periwound::Maceration,   Periwound::MacerationAndBreakdown};

const std::string& to_string(WoundColor c);
WoundColor color_from_string(const std::string& s);
const std::string& to_string(Periwound p);
Periwound periwound_from_string(const std::string& s);

/// Structured observations entered by a human. Depth uses an explicit
/// minimal/none marker (empty optional) distinct from a measured 0 cm.
struct RubricInput {
    WoundColor color = WoundColor::Red100;
    Periwound periwound = Periwound::Normal;
    double size_cm = 0.0;                 // longest dimension
    std::optional<double> depth_cm = {};  // empty = minimal/none
};

/// Per-characteristic verdicts, one row of the stratification table each.
SeverityClass verdict_color(WoundColor color);
SeverityClass verdict_periwound(Periwound periwound);

/// "2 cm or less" is green (closed bound), (2, 5] yellow, above 5 red.
/// Throws NegativeMeasurement.
SeverityClass verdict_size(double size_cm);

/// Minimal/none is green, a measured depth of 1 cm or less yellow (closed
/// bound), above 1 cm red. Throws NegativeMeasurement.
SeverityClass verdict_depth(const std::optional<double>& depth_cm);

enum class Characteristic { Color, Periwound, Size, Depth };
const std::string& to_string(Characteristic c);

struct CharacteristicVerdict {
    Characteristic characteristic;
    SeverityClass verdict;
};

struct Stratification {
    std::vector<CharacteristicVerdict> verdicts;  // the four rows, in order
    SeverityClass aggregate;                      // the worst of them
};

/// Evaluates all four characteristics and aggregates by maximum severity —
/// the clinically conservative combination (the table itself marks rows
/// independently and prescribes no rule).
Stratification stratify(const RubricInput& input);

/// Line-oriented observation record, one `key: value` pair per line with keys
/// color, periwound, size_cm, depth_cm. Parse errors carry the line number.
RubricInput parse_observation(const std::string& text);

std::string render_stratification(const RubricInput& input,
                                  const Stratification& result);

}  // namespace woundsev::rubric
