#include "ued/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>

#include "ued/errors.hpp"

namespace ued {

bool NeutralBand::is_neutral(double score) const {
    return std::abs(score - center) <= half_width;
}

Lexicon::Lexicon(std::string name, std::vector<std::string> dimension_names,
                 ScoreRange range)
    : name_(std::move(name)),
      dimension_names_(std::move(dimension_names)),
      score_range_(range) {
    if (dimension_names_.empty()) {
        throw ConfigError("lexicon needs at least one dimension");
    }
}

std::size_t Lexicon::dimension_index(std::string_view dimension) const {
    for (std::size_t i = 0; i < dimension_names_.size(); ++i) {
        if (dimension_names_[i] == dimension) return i;
    }
    throw UnknownDimension(std::string(dimension));
}

bool Lexicon::has_dimension(std::string_view dimension) const {
    return std::any_of(dimension_names_.begin(), dimension_names_.end(),
                       [&](const std::string& d) { return d == dimension; });
}

std::optional<double> Lexicon::score(std::string_view term, std::string_view dimension) const {
    const std::size_t dim = dimension_index(dimension);
    auto it = entries_.find(std::string(term));
    if (it == entries_.end()) return std::nullopt;
    return it->second[dim];
}

void Lexicon::insert(const std::string& term, std::size_t dim_index, double value) {
    if (!score_range_.contains(value)) {
        throw ScoreOutOfRange("score " + std::to_string(value) + " for term '" + term +
                              "' outside [" + std::to_string(score_range_.lo) + ", " +
                              std::to_string(score_range_.hi) + "]");
    }
    auto [it, inserted] =
        entries_.try_emplace(term, dimension_names_.size(), std::nullopt);
    auto& slot = it->second[dim_index];
    if (slot.has_value()) {
        throw DuplicateEntry(term, dimension_names_[dim_index]);
    }
    slot = value;
}

void Lexicon::rescale_to_signed_unit() {
    for (auto& [term, scores] : entries_) {
        for (auto& s : scores) {
            if (s) s = 2.0 * *s - 1.0;
        }
    }
    score_range_ = {-1.0, 1.0};
}

namespace {

std::string lowercase_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

double parse_score(std::string_view text, const std::string& path, std::size_t line_no) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw MalformedLine(path, line_no, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

Lexicon load_lexicon(const std::filesystem::path& path, LexiconFormat format,
                     Rescale rescale, const std::string& single_dimension_name) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound(path.string());

    const std::string path_str = path.string();

    // Two passes over the rows: the multi-dimension format declares its
    // dimensions implicitly, so collect names first, then fill entries.
    struct Row {
        std::string term;
        std::string dimension;
        double value;
        std::size_t line_no;
    };
    std::vector<Row> rows;
    std::vector<std::string> dims;
    auto declare_dim = [&dims](const std::string& d) {
        if (std::find(dims.begin(), dims.end(), d) == dims.end()) dims.push_back(d);
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty() || line[0] == '#') continue;

        auto fields = split_tabs(line);
        Row row;
        row.line_no = line_no;
        if (format == LexiconFormat::SingleDimension) {
            if (fields.size() != 2) {
                throw MalformedLine(path_str, line_no,
                                    "expected term<TAB>score, got " +
                                        std::to_string(fields.size()) + " fields");
            }
            row.term = lowercase_ascii(fields[0]);
            row.dimension = single_dimension_name;
            row.value = parse_score(fields[1], path_str, line_no);
        } else {
            if (fields.size() != 3) {
                throw MalformedLine(path_str, line_no,
                                    "expected term<TAB>dimension<TAB>score, got " +
                                        std::to_string(fields.size()) + " fields");
            }
            row.term = lowercase_ascii(fields[0]);
            row.dimension = lowercase_ascii(fields[1]);
            row.value = parse_score(fields[2], path_str, line_no);
        }
        if (row.term.empty()) {
            throw MalformedLine(path_str, line_no, "empty term");
        }
        declare_dim(row.dimension);
        rows.push_back(std::move(row));
    }

    if (format == LexiconFormat::SingleDimension && dims.empty()) {
        dims.push_back(single_dimension_name);
    }
    if (dims.empty()) {
        throw MalformedLine(path_str, line_no == 0 ? 1 : line_no,
                            "lexicon file has no entries");
    }

    Lexicon lexicon(path.stem().string(), dims, ScoreRange{0.0, 1.0});
    std::vector<std::size_t> dim_of_row;
    for (const auto& row : rows) {
        std::size_t dim = 0;
        while (dims[dim] != row.dimension) ++dim;
        lexicon.insert(row.term, dim, row.value);
    }

    if (rescale == Rescale::ZeroOneToSigned) {
        lexicon.rescale_to_signed_unit();
    }
    return lexicon;
}

void serialize_lexicon(const Lexicon& lexicon, std::ostream& os) {
    std::map<std::string, const std::vector<std::optional<double>>*> sorted;
    for (const auto& [term, scores] : lexicon.entries()) {
        sorted.emplace(term, &scores);
    }
    char buf[64];
    for (const auto& [term, scores] : sorted) {
        for (std::size_t d = 0; d < lexicon.dimension_names().size(); ++d) {
            if (!(*scores)[d]) continue;
            std::snprintf(buf, sizeof buf, "%.17g", *(*scores)[d]);
            os << term << '\t' << lexicon.dimension_names()[d] << '\t' << buf << '\n';
        }
    }
}

std::optional<double> score_token(const Lexicon& lexicon, std::string_view token,
                                  std::string_view dimension) {
    return lexicon.score(token, dimension);
}

} // namespace ued
