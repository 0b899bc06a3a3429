#include "ued/csv.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "ued/errors.hpp"

namespace ued {

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw MissingColumn(std::string(name));
}

bool CsvTable::has_column(std::string_view name) const {
    for (const auto& h : header) {
        if (h == name) return true;
    }
    return false;
}

namespace {

// Pulls one record off `text` starting at `pos`. Returns false at end of
// input. `line_no` tracks physical lines so embedded newlines inside quoted
// fields still produce accurate error positions.
bool next_record(std::string_view text, std::size_t& pos, std::size_t& line_no,
                 const std::filesystem::path& source, std::vector<std::string>& out) {
    out.clear();
    if (pos >= text.size()) return false;

    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    const std::size_t record_line = line_no;

    while (pos < text.size()) {
        char c = text[pos];
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field += '"';
                    pos += 2;
                } else {
                    in_quotes = false;
                    ++pos;
                }
            } else {
                if (c == '\n') ++line_no;
                field += c;
                ++pos;
            }
            continue;
        }
        if (c == '"') {
            if (!field.empty() || field_was_quoted) {
                throw MalformedCsv(source.string(), line_no,
                                   "unexpected quote inside unquoted field");
            }
            in_quotes = true;
            field_was_quoted = true;
            ++pos;
        } else if (field_was_quoted && c != ',' && c != '\n' && c != '\r') {
            throw MalformedCsv(source.string(), line_no,
                               "text after closing quote");
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
            field_was_quoted = false;
            ++pos;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r') {
                if (pos + 1 >= text.size() || text[pos + 1] != '\n') {
                    throw MalformedCsv(source.string(), line_no,
                                       "bare carriage return");
                }
                ++pos;
            }
            ++pos;
            ++line_no;
            out.push_back(std::move(field));
            return true;
        } else {
            field += c;
            ++pos;
        }
    }
    if (in_quotes) {
        throw MalformedCsv(source.string(), record_line,
                           "unterminated quoted field");
    }
    // Final record without trailing newline.
    out.push_back(std::move(field));
    return true;
}

} // namespace

CsvTable parse_csv(std::string_view text, const std::filesystem::path& source) {
    CsvTable table;
    table.source = source;

    std::size_t pos = 0;
    std::size_t line_no = 1;
    std::vector<std::string> record;

    if (!next_record(text, pos, line_no, source, record)) {
        throw MalformedCsv(source.string(), 1, "empty file, header row required");
    }
    table.header = std::move(record);

    while (true) {
        const std::size_t row_line = line_no;
        record.clear();
        if (!next_record(text, pos, line_no, source, record)) break;
        if (record.size() == 1 && record[0].empty()) continue; // trailing blank line
        if (record.size() != table.header.size()) {
            throw MalformedCsv(source.string(), row_line,
                               "expected " + std::to_string(table.header.size()) +
                                   " fields, got " + std::to_string(record.size()));
        }
        table.rows.push_back(std::move(record));
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound(path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), path);
}

std::string csv_escape(std::string_view field) {
    bool needs_quotes = false;
    for (char c : field) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs_quotes = true;
            break;
        }
    }
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << csv_escape(fields[i]);
    }
    os << '\n';
}

} // namespace ued
