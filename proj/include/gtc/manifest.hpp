// Reproducibility record for CLI runs: resolved config, seeds,
// timestamps and output-file digests.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gtc {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a 64-bit content digest (reproducibility checks, not crypto).
std::uint64_t fnv1a64(const std::string& bytes);
std::string digest_hex(const std::string& bytes);
std::string digest_file(const std::string& path);

struct RunManifest {
    std::string tool = "gtc";
    std::string version = kToolVersion;
    std::string command;
    std::string configJson;        // resolved configuration
    std::uint64_t seed = 0;
    std::string startedAt, finishedAt;  // ISO-8601 UTC
    std::vector<std::pair<std::string, std::string>> outputs;  // path, digest

    std::string to_json() const;
};

std::string iso8601_now();
void write_file(const std::string& path, const std::string& content);

// Locale-independent float formatting for CSV/JSON ('.' decimal point).
std::string fmt_double(double v);

}  // namespace gtc
