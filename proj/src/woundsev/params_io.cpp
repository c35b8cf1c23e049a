#include "woundsev/params_io.hpp"

#include <cstdint>
#include <fstream>

#include "woundsev/errors.hpp"

namespace woundsev::model {

namespace {

constexpr char kMagic[8] = {'W', 'S', 'E', 'V', 'P', 'A', 'R', '1'};

void write_u64(std::ofstream& out, uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

uint64_t read_u64(std::ifstream& in) {
    uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) throw ArtifactSpecMismatch("truncated parameter blob");
    return v;
}

std::string strip(const std::string& id, const std::string& prefix) {
    if (!prefix.empty() && id.rfind(prefix, 0) == 0) {
        return id.substr(prefix.size());
    }
    return id;
}

}  // namespace

ParamBlob read_params_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw ArtifactSpecMismatch("cannot open parameter blob " + file.string());
    }
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || !std::equal(magic, magic + 8, kMagic)) {
        throw ArtifactSpecMismatch("bad magic in parameter blob " + file.string());
    }
    const uint64_t count = read_u64(in);
    ParamBlob blob;
    for (uint64_t i = 0; i < count; ++i) {
        const uint64_t name_len = read_u64(in);
        std::string name(name_len, '\0');
        in.read(name.data(), static_cast<std::streamsize>(name_len));
        const uint64_t n = read_u64(in);
        std::vector<double> values(n);
        in.read(reinterpret_cast<char*>(values.data()),
                static_cast<std::streamsize>(n * sizeof(double)));
        if (!in) throw ArtifactSpecMismatch("truncated parameter blob");
        blob.emplace(std::move(name), std::move(values));
    }
    return blob;
}

void write_params_file(const std::filesystem::path& file,
                       const ParamBlob& blob) {
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        throw PipelineError("cannot write parameter blob " + file.string());
    }
    out.write(kMagic, sizeof(kMagic));
    write_u64(out, blob.size());
    for (const auto& [name, values] : blob) {
        write_u64(out, name.size());
        out.write(name.data(), static_cast<std::streamsize>(name.size()));
        write_u64(out, values.size());
        out.write(reinterpret_cast<const char*>(values.data()),
                  static_cast<std::streamsize>(values.size() * sizeof(double)));
    }
}

void save_params(const std::filesystem::path& file, const nn::Sequential& net,
                 const std::string& strip_prefix) {
    ParamBlob blob;
    for (const nn::Param* p : net.params()) {
        blob[strip(p->id, strip_prefix)] = p->value;
    }
    write_params_file(file, blob);
}

void load_params(const std::filesystem::path& file, nn::Sequential& net,
                 const std::string& strip_prefix) {
    const ParamBlob blob = read_params_file(file);
    for (nn::Param* p : net.params()) {
        auto it = blob.find(strip(p->id, strip_prefix));
        if (it == blob.end()) {
            throw ArtifactSpecMismatch("parameter '" + p->id +
                                       "' missing from blob " + file.string());
        }
        if (it->second.size() != p->value.size()) {
            throw ArtifactSpecMismatch("parameter '" + p->id +
                                       "' size mismatch in blob " +
                                       file.string());
        }
        p->value = it->second;
    }
}

}  // namespace woundsev::model
