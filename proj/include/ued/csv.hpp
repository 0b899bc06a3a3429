#ifndef UED_CSV_HPP
#define UED_CSV_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ued {

// One parsed CSV file: header row plus data rows, all fields as strings.
struct CsvTable {
    std::filesystem::path source;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Index of a header column, or throws MissingColumn.
    std::size_t column(std::string_view name) const;
    bool has_column(std::string_view name) const;
};

// Strict RFC-4180 reader. Accepts LF and CRLF line endings, quoted fields
// with "" escapes and embedded separators/newlines. Every row must have as
// many fields as the header. Throws FileNotFound or MalformedCsv.
CsvTable read_csv(const std::filesystem::path& path);

// Parses CSV text that is already in memory (source name used in errors).
CsvTable parse_csv(std::string_view text, const std::filesystem::path& source = "<string>");

// Quotes a field if it contains a separator, quote, or newline.
std::string csv_escape(std::string_view field);

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

} // namespace ued

#endif
