#include "ued/textproc.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ued/errors.hpp"
#include "ued/default_stopwords.hpp"

namespace ued {

namespace {

std::string lowercase_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

// Encodes a Unicode code point as UTF-8.
void append_utf8(std::string& out, unsigned long cp) {
    if (cp <= 0x7F) {
        out += static_cast<char>(cp);
    } else if (cp <= 0x7FF) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp <= 0xFFFF) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp <= 0x10FFFF) {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

struct NamedEntity {
    std::string_view name;
    std::string_view replacement;
};

constexpr std::array<NamedEntity, 7> kNamedEntities = {{
    {"amp", "&"},
    {"lt", "<"},
    {"gt", ">"},
    {"quot", "\""},
    {"apos", "'"},
    {"nbsp", " "},
    {"hellip", "..."},
}};

// Common multi-byte punctuation seen in web text; treated like ASCII
// punctuation when trimming token edges.
constexpr std::array<std::string_view, 10> kUtf8Punct = {
    "‘", "’", "“", "”", "–",
    "—", "…", "«", "»", "¡",
};

bool is_ascii_punct(char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

// Length of the punctuation mark starting at `pos`, 0 if none.
std::size_t punct_len_at(std::string_view token, std::size_t pos) {
    if (is_ascii_punct(token[pos])) return 1;
    for (std::string_view p : kUtf8Punct) {
        if (token.substr(pos, p.size()) == p) return p.size();
    }
    return 0;
}

// Length of the punctuation mark ending just before `end`, 0 if none.
std::size_t punct_len_before(std::string_view token, std::size_t end) {
    if (is_ascii_punct(token[end - 1])) return 1;
    for (std::string_view p : kUtf8Punct) {
        if (end >= p.size() && token.substr(end - p.size(), p.size()) == p) return p.size();
    }
    return 0;
}

std::string_view trim_punctuation(std::string_view token) {
    std::size_t begin = 0;
    std::size_t end = token.size();
    while (begin < end) {
        std::size_t n = punct_len_at(token, begin);
        if (n == 0) break;
        begin += n;
    }
    while (end > begin) {
        std::size_t n = punct_len_before(token, end);
        if (n == 0 || n > end - begin) break;
        end -= n;
    }
    return token.substr(begin, end - begin);
}

} // namespace

std::string unescape_html(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '&') {
            out += text[i++];
            continue;
        }
        std::size_t semi = text.find(';', i + 1);
        if (semi == std::string_view::npos || semi == i + 1 || semi - i > 12) {
            out += text[i++];
            continue;
        }
        std::string_view body = text.substr(i + 1, semi - i - 1);
        if (body[0] == '#') {
            std::string_view digits = body.substr(1);
            int base = 10;
            if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
                digits.remove_prefix(1);
                base = 16;
            }
            unsigned long cp = 0;
            auto [ptr, ec] =
                std::from_chars(digits.data(), digits.data() + digits.size(), cp, base);
            if (ec == std::errc() && ptr == digits.data() + digits.size() &&
                !digits.empty() && cp <= 0x10FFFF) {
                append_utf8(out, cp);
                i = semi + 1;
                continue;
            }
        } else {
            bool replaced = false;
            for (const auto& e : kNamedEntities) {
                if (body == e.name) {
                    out += e.replacement;
                    i = semi + 1;
                    replaced = true;
                    break;
                }
            }
            if (replaced) continue;
        }
        out += text[i++];
    }
    return out;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound(path.string());
    StopwordSet set;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        set.insert(lowercase_ascii(line));
    }
    return set;
}

const StopwordSet& default_stopwords() {
    static const StopwordSet set = [] {
        StopwordSet s;
        std::istringstream in{std::string(detail::kDefaultStopwords)};
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) s.insert(lowercase_ascii(line));
        }
        return s;
    }();
    return set;
}

TokenSequence preprocess(std::string_view raw, const StopwordSet& stopwords,
                         std::string doc_id) {
    TokenSequence seq;
    seq.doc_id = std::move(doc_id);

    // Decode until stable so doubly-escaped scrapes ("&amp;amp;") fully
    // resolve and preprocess stays idempotent. Terminates: every entity
    // replacement is strictly shorter than its source.
    std::string unescaped = unescape_html(raw);
    while (true) {
        std::string next = unescape_html(unescaped);
        if (next == unescaped) break;
        unescaped = std::move(next);
    }

    std::size_t i = 0;
    while (i < unescaped.size()) {
        while (i < unescaped.size() && is_space(unescaped[i])) ++i;
        std::size_t start = i;
        while (i < unescaped.size() && !is_space(unescaped[i])) ++i;
        if (i == start) break;

        std::string_view word = trim_punctuation(
            std::string_view(unescaped).substr(start, i - start));
        if (word.empty()) continue;

        std::string token = lowercase_ascii(word);
        ++seq.n_raw_tokens;
        if (stopwords.count(token)) continue;
        seq.tokens.push_back(std::move(token));
    }
    return seq;
}

std::size_t whitespace_token_count(std::string_view text) {
    std::size_t count = 0;
    bool in_token = false;
    for (char c : text) {
        if (is_space(c)) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++count;
        }
    }
    return count;
}

} // namespace ued
