#include "gtc/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gtc {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string digest_hex(const std::string& bytes) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  (unsigned long long)fnv1a64(bytes));
    return buf;
}

std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("digest_file: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return digest_hex(ss.str());
}

std::string iso8601_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_file: cannot open " + path);
    out << content;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string RunManifest::to_json() const {
    std::ostringstream os;
    os << "{\n";
    os << "  \"tool\": \"" << tool << "\",\n";
    os << "  \"version\": \"" << version << "\",\n";
    os << "  \"command\": \"" << command << "\",\n";
    os << "  \"seed\": " << seed << ",\n";
    os << "  \"started_at\": \"" << startedAt << "\",\n";
    os << "  \"finished_at\": \"" << finishedAt << "\",\n";
    os << "  \"config\": " << (configJson.empty() ? "{}" : configJson) << ",\n";
    os << "  \"outputs\": [";
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        if (i) os << ", ";
        os << "{\"path\": \"" << outputs[i].first << "\", \"digest\": \""
           << outputs[i].second << "\"}";
    }
    os << "]\n}\n";
    return os.str();
}

}  // namespace gtc
