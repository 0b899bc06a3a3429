#include "ued/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <unordered_set>

#include "ued/csv.hpp"
#include "ued/errors.hpp"

namespace ued {

std::vector<Document> load_corpus(const std::filesystem::path& path,
                                  const CorpusColumns& columns) {
    const CsvTable table = read_csv(path);

    const std::size_t id_idx = table.column(columns.id_col);
    const std::size_t text_idx = table.column(columns.text_col);
    const std::size_t group_idx = table.column(columns.group_col);
    std::optional<std::size_t> speaker_idx;
    if (columns.speaker_col) speaker_idx = table.column(*columns.speaker_col);
    std::optional<std::size_t> seq_idx;
    if (columns.seq_col) seq_idx = table.column(*columns.seq_col);

    std::vector<Document> docs;
    docs.reserve(table.rows.size());
    std::unordered_set<std::string> seen_ids;

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        Document doc;
        doc.doc_id = row[id_idx];
        doc.text = row[text_idx];
        doc.group = row[group_idx];
        if (speaker_idx && !row[*speaker_idx].empty()) {
            doc.speaker = row[*speaker_idx];
        }
        if (seq_idx && !row[*seq_idx].empty()) {
            const std::string& field = row[*seq_idx];
            long value = 0;
            auto [ptr, ec] =
                std::from_chars(field.data(), field.data() + field.size(), value);
            if (ec != std::errc() || ptr != field.data() + field.size()) {
                throw MalformedCsv(path.string(), r + 2,
                                   "seq is not an integer: '" + field + "'");
            }
            doc.seq = value;
        } else {
            doc.seq = static_cast<long>(r); // file order
        }
        if (!seen_ids.insert(doc.doc_id).second) {
            throw DuplicateDocId(doc.doc_id);
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::vector<Document> filter_by_length(const std::vector<Document>& docs,
                                       std::size_t min_words, std::size_t max_words,
                                       const StopwordSet& stopwords) {
    std::vector<Document> kept;
    for (const auto& doc : docs) {
        const std::size_t n = preprocess(doc.text, stopwords).tokens.size();
        if (n >= min_words && n <= max_words) kept.push_back(doc);
    }
    return kept;
}

namespace {

// seq ascending, doc_id breaking ties.
void sort_constituents(std::vector<const Document*>& docs) {
    std::stable_sort(docs.begin(), docs.end(), [](const Document* a, const Document* b) {
        const long sa = a->seq.value_or(0);
        const long sb = b->seq.value_or(0);
        if (sa != sb) return sa < sb;
        return a->doc_id < b->doc_id;
    });
}

AnalysisUnit make_unit(std::string unit_id, UnitMode mode,
                       std::vector<const Document*> docs) {
    sort_constituents(docs);
    AnalysisUnit unit;
    unit.unit_id = std::move(unit_id);
    unit.mode = mode;
    unit.group = docs.front()->group;
    for (const Document* doc : docs) {
        if (!unit.text.empty()) unit.text += '\n';
        unit.text += doc->text;
        unit.doc_ids.push_back(doc->doc_id);
    }
    return unit;
}

} // namespace

std::vector<AnalysisUnit> assemble_units(const std::vector<Document>& docs, UnitMode mode) {
    std::vector<AnalysisUnit> units;

    if (mode == UnitMode::Instance) {
        units.reserve(docs.size());
        for (const auto& doc : docs) {
            units.push_back(make_unit(doc.doc_id, mode, {&doc}));
        }
        return units;
    }

    // Keyed grouping; key order follows first appearance in the corpus.
    std::vector<std::string> key_order;
    std::map<std::string, std::vector<const Document*>> by_key;
    for (const auto& doc : docs) {
        std::string key;
        if (mode == UnitMode::Speaker) {
            if (!doc.speaker) throw MissingSpeaker(doc.doc_id);
            key = *doc.speaker;
        } else {
            key = doc.group;
        }
        auto [it, inserted] = by_key.try_emplace(key);
        if (inserted) key_order.push_back(key);
        it->second.push_back(&doc);
    }

    units.reserve(key_order.size());
    for (const auto& key : key_order) {
        units.push_back(make_unit(key, mode, by_key[key]));
    }
    return units;
}

std::vector<GroupStats> corpus_stats(const std::vector<Document>& docs) {
    if (docs.empty()) return {};

    std::map<std::string, std::pair<std::size_t, std::size_t>, decltype(&group_less)>
        counts(&group_less); // group -> (n_docs, total words)
    std::size_t total_docs = 0;
    std::size_t total_words = 0;

    for (const auto& doc : docs) {
        const std::size_t words = whitespace_token_count(doc.text);
        auto& [n, w] = counts[doc.group];
        ++n;
        w += words;
        ++total_docs;
        total_words += words;
    }

    std::vector<GroupStats> stats;
    stats.reserve(counts.size() + 1);
    for (const auto& [group, nw] : counts) {
        stats.push_back({group, nw.first,
                         static_cast<double>(nw.second) / static_cast<double>(nw.first)});
    }
    stats.push_back({"TOTAL", total_docs,
                     static_cast<double>(total_words) / static_cast<double>(total_docs)});
    return stats;
}

bool group_less(const std::string& a, const std::string& b) {
    auto as_int = [](const std::string& s) -> std::optional<long> {
        if (s.empty()) return std::nullopt;
        long value = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
        return value;
    };
    const auto ia = as_int(a);
    const auto ib = as_int(b);
    if (ia && ib) return *ia < *ib;
    if (ia) return true; // numeric labels sort before named ones
    if (ib) return false;
    return a < b;
}

UnitMode parse_unit_mode(const std::string& name) {
    if (name == "instance") return UnitMode::Instance;
    if (name == "speaker") return UnitMode::Speaker;
    if (name == "meta" || name == "meta-speaker") return UnitMode::MetaSpeaker;
    throw ConfigError("unknown mode: '" + name + "' (expected instance|speaker|meta)");
}

std::string to_string(UnitMode mode) {
    switch (mode) {
        case UnitMode::Instance: return "instance";
        case UnitMode::Speaker: return "speaker";
        case UnitMode::MetaSpeaker: return "meta";
    }
    return "instance";
}

} // namespace ued
