#include "fbh/report.hpp"
#include "fbh/errors.hpp"

#include <cstdio>
#include <fstream>

namespace fbh::report {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void write_file(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file: " + path);
    for (const auto& line : lines) out << line << '\n';
}

std::vector<std::string> provenance(const std::string& config_text) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(config_text)));
    return {std::string("#config-hash=") + buf, std::string("#version=") + version};
}

} // namespace fbh::report
