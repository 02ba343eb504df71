#ifndef FBH_REPORT_HPP
#define FBH_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace fbh::report {

inline constexpr const char* version = "1.0.0";

// %.17g with '.' decimal separator.
std::string format_double(double v);

std::uint64_t fnv1a(const std::string& data);

// Joins lines with LF and writes the file (no trailing spaces, UTF-8).
void write_file(const std::string& path, const std::vector<std::string>& lines);

// Standard provenance preamble: "#config-hash=...", "#version=...".
std::vector<std::string> provenance(const std::string& config_text);

} // namespace fbh::report

#endif
