#include "woundsev/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "woundsev/errors.hpp"

namespace woundsev {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Splits on commas that are not inside [...], so box coordinates survive.
std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    int depth = 0;
    for (char ch : line) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (ch == ',' && depth == 0) {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(trim(cur));
    return fields;
}

int parse_int(const std::string& s, size_t line_no) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw MalformedManifest("line " + std::to_string(line_no) +
                                ": expected integer, got '" + s + "'");
    }
}

BoundingBox parse_box(const std::string& token, size_t line_no) {
    const std::string t = trim(token);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
        throw MalformedManifest("line " + std::to_string(line_no) +
                                ": box must look like [x_min,y_min,x_max,y_max]");
    }
    std::vector<std::string> parts;
    std::stringstream ss(t.substr(1, t.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(trim(item));
    if (parts.size() != 4) {
        throw MalformedManifest("line " + std::to_string(line_no) +
                                ": box needs exactly 4 coordinates");
    }
    BoundingBox box{parse_int(parts[0], line_no), parse_int(parts[1], line_no),
                    parse_int(parts[2], line_no), parse_int(parts[3], line_no)};
    if (!box.well_formed()) {
        throw InvalidBox("line " + std::to_string(line_no) + ": box " +
                         to_string(box) +
                         " violates 0 <= min < max on both axes");
    }
    return box;
}

std::vector<BoundingBox> parse_boxes(const std::string& field, size_t line_no) {
    std::vector<BoundingBox> boxes;
    if (trim(field).empty()) return boxes;  // ROI-level row
    std::stringstream ss(field);
    std::string token;
    while (std::getline(ss, token, ';')) {
        boxes.push_back(parse_box(token, line_no));
    }
    return boxes;
}

}  // namespace

std::vector<ImageRecord> parse_manifest(const std::string& text) {
    std::vector<ImageRecord> records;
    std::set<std::string> seen_ids;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;

        const auto fields = split_fields(stripped);
        if (fields.size() < 3 || fields.size() > 5) {
            throw MalformedManifest(
                "line " + std::to_string(line_no) +
                ": expected 'image_id, path, label[, boxes[, group_id]]'");
        }
        ImageRecord rec;
        rec.image_id = fields[0];
        rec.path = fields[1];
        if (rec.image_id.empty() || rec.path.empty()) {
            throw MalformedManifest("line " + std::to_string(line_no) +
                                    ": image_id and path must be non-empty");
        }
        try {
            rec.label = severity_from_string(fields[2]);
        } catch (const UnknownLabel& e) {
            throw UnknownLabel("line " + std::to_string(line_no) + ": " +
                               e.what());
        }
        if (fields.size() >= 4) rec.boxes = parse_boxes(fields[3], line_no);
        rec.group_id = fields.size() == 5 && !fields[4].empty() ? fields[4]
                                                                : rec.image_id;
        if (!seen_ids.insert(rec.image_id).second) {
            throw DuplicateId("line " + std::to_string(line_no) +
                              ": duplicate image_id '" + rec.image_id + "'");
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<ImageRecord> parse_manifest_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) {
        throw MalformedManifest("cannot open manifest file " + file.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str());
}

std::string serialize_manifest(const std::vector<ImageRecord>& records) {
    std::ostringstream out;
    out << "# image_id, path, label, boxes, group_id\n";
    for (const auto& r : records) {
        out << r.image_id << ", " << r.path << ", " << to_string(r.label)
            << ", ";
        for (size_t i = 0; i < r.boxes.size(); ++i) {
            if (i) out << ';';
            out << to_string(r.boxes[i]);
        }
        out << ", " << r.group_id << "\n";
    }
    return out.str();
}

void write_manifest(const std::vector<ImageRecord>& records,
                    const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        throw PipelineError("cannot write manifest file " + file.string());
    }
    out << serialize_manifest(records);
}

}  // namespace woundsev
