#ifndef UED_TEXTPROC_HPP
#define UED_TEXTPROC_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace ued {

using StopwordSet = std::unordered_set<std::string>;

// Lowercase, punctuation-free, stopword-free tokens in source order.
struct TokenSequence {
    std::string doc_id;
    std::vector<std::string> tokens;
    std::size_t n_raw_tokens = 0; // count before stopword removal
};

// One term per line, lowercased, duplicates collapsed.
StopwordSet load_stopwords(const std::filesystem::path& path);

// The English list shipped with the tool, used when no file is given.
const StopwordSet& default_stopwords();

// Replaces named (&amp; &lt; ...) and numeric (&#65; &#x41;) entities.
// Unknown entities are left untouched.
std::string unescape_html(std::string_view text);

// Unescapes HTML, splits on whitespace, strips punctuation from token
// edges (word-internal apostrophes survive), drops punctuation-only
// tokens, lowercases, and removes stopwords.
TokenSequence preprocess(std::string_view raw, const StopwordSet& stopwords,
                         std::string doc_id = "");

// Whitespace token count of raw text, no other processing. This is the
// word count used for corpus statistics.
std::size_t whitespace_token_count(std::string_view text);

} // namespace ued

#endif
