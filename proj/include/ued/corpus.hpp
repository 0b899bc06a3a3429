#ifndef UED_CORPUS_HPP
#define UED_CORPUS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ued/textproc.hpp"

namespace ued {

struct Document {
    std::string doc_id;
    std::string text;
    std::string group; // e.g. grade "1".."12" or "adult"
    std::optional<std::string> speaker;
    std::optional<long> seq; // temporal ordinal; file order when absent
};

enum class UnitMode {
    Instance,    // one unit per document
    Speaker,     // one unit per author, documents in temporal order
    MetaSpeaker, // one unit per group, documents pooled in temporal order
};

// One analysis unit: the text the arc is built over plus its group label.
struct AnalysisUnit {
    std::string unit_id;
    UnitMode mode = UnitMode::Instance;
    std::string text; // constituent documents joined in order
    std::string group;
    std::vector<std::string> doc_ids;
};

struct CorpusColumns {
    std::string id_col = "id";
    std::string text_col = "text";
    std::string group_col = "group";
    std::optional<std::string> speaker_col;
    std::optional<std::string> seq_col;
};

// Loads an RFC-4180 CSV with a header row, one Document per row. Duplicate
// doc_id is a hard error. Throws MissingColumn, DuplicateDocId, MalformedCsv.
std::vector<Document> load_corpus(const std::filesystem::path& path,
                                  const CorpusColumns& columns);

// Keeps documents whose stopword-free token count lies in
// [min_words, max_words].
std::vector<Document> filter_by_length(const std::vector<Document>& docs,
                                       std::size_t min_words, std::size_t max_words,
                                       const StopwordSet& stopwords);

// Partitions documents into units for the requested granularity. Speaker
// mode requires a speaker on every document (MissingSpeaker otherwise).
// Constituents are ordered by ascending seq, stable by doc_id on ties.
std::vector<AnalysisUnit> assemble_units(const std::vector<Document>& docs, UnitMode mode);

// Per-group document counts and mean whitespace-word lengths, plus a total.
struct GroupStats {
    std::string group; // "TOTAL" for the summary row
    std::size_t n_docs = 0;
    double mean_words = 0.0;
};

std::vector<GroupStats> corpus_stats(const std::vector<Document>& docs);

// Orders group labels numerically when both parse as integers ("2" before
// "10"), otherwise lexicographically with numeric labels first.
bool group_less(const std::string& a, const std::string& b);

UnitMode parse_unit_mode(const std::string& name); // instance | speaker | meta
std::string to_string(UnitMode mode);

} // namespace ued

#endif
