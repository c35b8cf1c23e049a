#include "woundsev/rubric.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "woundsev/errors.hpp"

namespace woundsev::rubric {

const std::string& to_string(WoundColor c) {
    static const std::string names[4] = {"red_100", "yellow_grey_under_50",
                                         "yellow_grey_50_to_100",
                                         "black_brown"};
    return names[static_cast<int>(c)];
}

WoundColor color_from_string(const std::string& s) {
    for (WoundColor c : kAllColors) {
        if (s == to_string(c)) return c;
    }
    throw ObservationParseError("unknown wound color '" + s + "'");
}

const std::string& to_string(Periwound p) {
    static const std::string names[6] = {
        "normal",     "callus",     "red_under_1cm",
        "red_over_1cm", "maceration", "maceration_and_breakdown"};
    return names[static_cast<int>(p)];
}

Periwound periwound_from_string(const std::string& s) {
    for (Periwound p : kAllPeriwounds) {
        if (s == to_string(p)) return p;
    }
    throw ObservationParseError("unknown periwound state '" + s + "'");
}

const std::string& to_string(Characteristic c) {
    static const std::string names[4] = {"color", "periwound", "size", "depth"};
    return names[static_cast<int>(c)];
}

SeverityClass verdict_color(WoundColor color) {
    switch (color) {
        case WoundColor::Red100:
            return SeverityClass::Green;
        case WoundColor::YellowGreyUnder50:
            return SeverityClass::Yellow;
        case WoundColor::YellowGrey50to100:
        case WoundColor::BlackBrown:
            return SeverityClass::Red;
    }
    throw PipelineError("unreachable wound color");
}

SeverityClass verdict_periwound(Periwound periwound) {
    switch (periwound) {
        case Periwound::Normal:
            return SeverityClass::Green;
        case Periwound::Callus:
        case Periwound::RedUnder1cm:
        case Periwound::Maceration:
            return SeverityClass::Yellow;
        case Periwound::RedOver1cm:
        case Periwound::MacerationAndBreakdown:
            return SeverityClass::Red;
    }
    throw PipelineError("unreachable periwound state");
}

SeverityClass verdict_size(double size_cm) {
    if (size_cm < 0.0) {
        throw NegativeMeasurement("wound size cannot be negative");
    }
    if (size_cm <= 2.0) return SeverityClass::Green;
    if (size_cm <= 5.0) return SeverityClass::Yellow;
    return SeverityClass::Red;
}

SeverityClass verdict_depth(const std::optional<double>& depth_cm) {
    if (!depth_cm) return SeverityClass::Green;  // minimal/none
    if (*depth_cm < 0.0) {
        throw NegativeMeasurement("wound depth cannot be negative");
    }
    if (*depth_cm <= 1.0) return SeverityClass::Yellow;
    return SeverityClass::Red;
}

Stratification stratify(const RubricInput& input) {
    Stratification out;
    out.verdicts = {
        {Characteristic::Color, verdict_color(input.color)},
        {Characteristic::Periwound, verdict_periwound(input.periwound)},
        {Characteristic::Size, verdict_size(input.size_cm)},
        {Characteristic::Depth, verdict_depth(input.depth_cm)},
    };
    out.aggregate = SeverityClass::Green;
    for (const auto& v : out.verdicts) {
        out.aggregate = max_severity(out.aggregate, v.verdict);
    }
    return out;
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_cm(const std::string& value, size_t line_no) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ObservationParseError("line " + std::to_string(line_no) +
                                    ": expected a measurement in cm, got '" +
                                    value + "'");
    }
}

}  // namespace

RubricInput parse_observation(const std::string& text) {
    RubricInput input;
    bool saw_color = false, saw_periwound = false, saw_size = false,
         saw_depth = false;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const size_t colon = stripped.find(':');
        if (colon == std::string::npos) {
            throw ObservationParseError("line " + std::to_string(line_no) +
                                        ": expected 'key: value'");
        }
        const std::string key = trim(stripped.substr(0, colon));
        const std::string value = trim(stripped.substr(colon + 1));
        try {
            if (key == "color") {
                input.color = color_from_string(value);
                saw_color = true;
            } else if (key == "periwound") {
                input.periwound = periwound_from_string(value);
                saw_periwound = true;
            } else if (key == "size_cm") {
                input.size_cm = parse_cm(value, line_no);
                saw_size = true;
            } else if (key == "depth_cm") {
                if (value == "minimal_none" || value == "none") {
                    input.depth_cm.reset();
                } else {
                    input.depth_cm = parse_cm(value, line_no);
                }
                saw_depth = true;
            } else {
                throw ObservationParseError("line " + std::to_string(line_no) +
                                            ": unknown key '" + key + "'");
            }
        } catch (const ObservationParseError&) {
            throw;
        } catch (const DataError& e) {
            throw ObservationParseError("line " + std::to_string(line_no) +
                                        ": " + e.what());
        }
    }
    if (!saw_color || !saw_periwound || !saw_size || !saw_depth) {
        throw ObservationParseError(
            "observation must provide color, periwound, size_cm and depth_cm");
    }
    return input;
}

std::string render_stratification(const RubricInput& input,
                                  const Stratification& result) {
    std::ostringstream out;
    auto row = [&](const std::string& name, const std::string& value,
                   SeverityClass verdict) {
        out << "  " << name << ": " << value;
        for (size_t i = name.size() + value.size(); i < 40; ++i) out << ' ';
        out << "-> " << to_string(verdict) << "\n";
    };
    row("color", to_string(input.color), result.verdicts[0].verdict);
    row("periwound", to_string(input.periwound), result.verdicts[1].verdict);
    row("size", std::to_string(input.size_cm) + " cm",
        result.verdicts[2].verdict);
    row("depth",
        input.depth_cm ? std::to_string(*input.depth_cm) + " cm"
                       : std::string("minimal_none"),
        result.verdicts[3].verdict);
    std::string agg = to_string(result.aggregate);
    std::transform(agg.begin(), agg.end(), agg.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    out << "severity: " << agg << "\n";
    return out.str();
}

}  // namespace woundsev::rubric
