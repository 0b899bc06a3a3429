#include "ued/util.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "ued/errors.hpp"

namespace ued {

std::string format_fixed(double value, int decimals) {
    if (value == 0.0) value = 0.0; // collapse -0
    char buf[64];
    // glibc printf rounds the binary value to nearest, ties to even.
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

double quantize(double value, int decimals) {
    return std::stod(format_fixed(value, decimals));
}

void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open for writing: " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("rename failed: " + path.string());
    }
}

} // namespace ued
