#ifndef UED_UTIL_HPP
#define UED_UTIL_HPP

#include <filesystem>
#include <optional>
#include <string>

namespace ued {

// Fixed-point decimal with round-half-even ties, default 6 places.
// -0 is normalized to 0 before formatting.
std::string format_fixed(double value, int decimals = 6);

// The double nearest to format_fixed(value); JSON export uses this so CSV
// and JSON agree on serialized precision.
double quantize(double value, int decimals = 6);

// Writes content to a temporary file in the target directory and renames it
// into place, so interrupted runs never leave a torn file. Throws IoError.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

} // namespace ued

#endif
