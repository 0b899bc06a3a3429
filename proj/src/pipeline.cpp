#include "ued/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "ued/arcs.hpp"
#include "ued/csv.hpp"
#include "ued/dynamics.hpp"
#include "ued/errors.hpp"
#include "ued/util.hpp"

namespace ued {

using ordered_json = nlohmann::ordered_json;

RescaleMode parse_rescale_mode(const std::string& name) {
    if (name == "auto") return RescaleMode::Auto;
    if (name == "none") return RescaleMode::None;
    if (name == "signed") return RescaleMode::SignedUnit;
    throw ConfigError("unknown rescale mode: '" + name + "' (expected auto|none|signed)");
}

std::string to_string(RescaleMode mode) {
    switch (mode) {
        case RescaleMode::Auto: return "auto";
        case RescaleMode::None: return "none";
        case RescaleMode::SignedUnit: return "signed";
    }
    return "auto";
}

void validate(const RunConfig& config) {
    if (config.window < 1) throw ConfigError("window must be at least 1");
    if (config.step < 1) throw ConfigError("step must be at least 1");
    if (config.min_emotion_words < config.window) {
        throw ConfigError("min_emotion_words (" + std::to_string(config.min_emotion_words) +
                          ") must be >= window (" + std::to_string(config.window) + ")");
    }
    if (config.homebase_k < 0.0) throw ConfigError("homebase_k must be nonnegative");
    if (config.neutral_half_width < 0.0) {
        throw ConfigError("neutral_half_width must be nonnegative");
    }
    if (config.min_units < 1) throw ConfigError("min_units must be at least 1");
    if (config.min_words && config.max_words && *config.min_words > *config.max_words) {
        throw ConfigError("min_words must be <= max_words");
    }
    if (config.lexicon_paths.empty()) throw ConfigError("at least one lexicon is required");
}

std::string config_manifest_json(const RunConfig& config) {
    ordered_json j;
    ordered_json lexicons = ordered_json::array();
    for (const auto& p : config.lexicon_paths) lexicons.push_back(p.string());
    j["lexicons"] = std::move(lexicons);
    j["lexicon_format"] =
        config.lexicon_format == LexiconFormat::SingleDimension ? "single" : "multi";
    j["rescale"] = to_string(config.rescale);
    j["single_dimension_name"] = config.single_dimension_name
                                     ? ordered_json(*config.single_dimension_name)
                                     : ordered_json(nullptr);
    j["dimensions"] = config.dimensions;
    j["window"] = config.window;
    j["step"] = config.step;
    j["min_emotion_words"] = config.min_emotion_words;
    j["homebase_k"] = config.homebase_k;
    j["neutral_center"] = config.neutral_center;
    j["neutral_half_width"] = config.neutral_half_width;
    j["sample_stdev"] = config.sample_stdev;
    j["peak_from_boundary"] = config.peak_from_boundary;
    j["min_units"] = config.min_units;
    j["mode"] = to_string(config.mode);
    j["min_words"] = config.min_words ? ordered_json(*config.min_words) : ordered_json(nullptr);
    j["max_words"] = config.max_words ? ordered_json(*config.max_words) : ordered_json(nullptr);
    j["stopwords"] = config.stopwords_path ? ordered_json(config.stopwords_path->string())
                                           : ordered_json("<built-in>");
    j["id_col"] = config.columns.id_col;
    j["text_col"] = config.columns.text_col;
    j["group_col"] = config.columns.group_col;
    j["speaker_col"] = config.columns.speaker_col ? ordered_json(*config.columns.speaker_col)
                                                  : ordered_json(nullptr);
    j["seq_col"] = config.columns.seq_col ? ordered_json(*config.columns.seq_col)
                                          : ordered_json(nullptr);
    j["threads"] = config.threads;
    return j.dump(2) + "\n";
}

const Lexicon& LexiconSet::lexicon_for(const std::string& dimension) const {
    for (const auto& lex : lexicons) {
        if (lex.has_dimension(dimension)) return lex;
    }
    throw UnknownDimension(dimension);
}

bool LexiconSet::has_dimension(const std::string& dimension) const {
    return std::any_of(lexicons.begin(), lexicons.end(),
                       [&](const Lexicon& l) { return l.has_dimension(dimension); });
}

std::vector<std::string> LexiconSet::all_dimensions() const {
    std::vector<std::string> dims;
    for (const auto& lex : lexicons) {
        for (const auto& d : lex.dimension_names()) dims.push_back(d);
    }
    return dims;
}

namespace {

bool wants_signed_rescale(const Lexicon& lexicon) {
    for (const char* d : {"valence", "arousal", "dominance"}) {
        if (lexicon.has_dimension(d)) return true;
    }
    return false;
}

} // namespace

LexiconSet load_lexicons(const RunConfig& config) {
    LexiconSet set;
    for (const auto& path : config.lexicon_paths) {
        const std::string single_name = config.single_dimension_name
                                            ? *config.single_dimension_name
                                            : path.stem().string();
        Lexicon lex =
            load_lexicon(path, config.lexicon_format, Rescale::None, single_name);
        const bool rescale = config.rescale == RescaleMode::SignedUnit ||
                             (config.rescale == RescaleMode::Auto && wants_signed_rescale(lex));
        if (rescale) lex.rescale_to_signed_unit();

        for (const auto& dim : lex.dimension_names()) {
            if (set.has_dimension(dim)) {
                throw ConfigError("dimension '" + dim + "' declared by more than one lexicon");
            }
        }
        set.lexicons.push_back(std::move(lex));
    }
    return set;
}

namespace {

StopwordSet resolve_stopwords(const RunConfig& config) {
    if (config.stopwords_path) return load_stopwords(*config.stopwords_path);
    return default_stopwords();
}

// Runs fn(i) for i in [0, n) on a small worker pool. Results must be
// written by index; the merge is then input-ordered by construction.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
    std::size_t want = threads ? threads : std::thread::hardware_concurrency();
    if (want == 0) want = 1;
    want = std::min(want, n);
    if (want <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    pool.reserve(want);
    for (std::size_t t = 0; t < want; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace

AnalyzeResult run_analyze(const RunConfig& config, const std::filesystem::path& corpus_path) {
    validate(config);

    const StopwordSet stopwords = resolve_stopwords(config);
    const LexiconSet lexicons = load_lexicons(config);

    std::vector<std::string> dimensions = config.dimensions;
    if (dimensions.empty()) {
        dimensions = lexicons.all_dimensions();
    } else {
        for (const auto& dim : dimensions) {
            if (!lexicons.has_dimension(dim)) {
                throw ConfigError("dimension '" + dim + "' not found in any loaded lexicon");
            }
        }
    }

    std::vector<Document> docs = load_corpus(corpus_path, config.columns);
    if (config.min_words || config.max_words) {
        docs = filter_by_length(docs, config.min_words.value_or(0),
                                config.max_words.value_or(
                                    std::numeric_limits<std::size_t>::max()),
                                stopwords);
    }
    const std::vector<AnalysisUnit> units = assemble_units(docs, config.mode);

    const NeutralBand band{config.neutral_center, config.neutral_half_width};
    const DynamicsOptions dyn_opts{config.homebase_k, config.sample_stdev,
                                   config.peak_from_boundary};

    // One slot per (unit, dimension); empty slots are exclusions.
    std::vector<std::vector<std::optional<PerUnitRecord>>> slots(
        units.size(), std::vector<std::optional<PerUnitRecord>>(dimensions.size()));

    parallel_for(units.size(), config.threads, [&](std::size_t u) {
        const AnalysisUnit& unit = units[u];
        const TokenSequence tokens = preprocess(unit.text, stopwords, unit.unit_id);
        for (std::size_t d = 0; d < dimensions.size(); ++d) {
            const Lexicon& lexicon = lexicons.lexicon_for(dimensions[d]);
            ScoredSequence seq =
                emotion_word_sequence(tokens, lexicon, dimensions[d], band);
            if (seq.scores.size() < config.min_emotion_words) continue;
            const EmotionArc arc = build_arc(seq, config.window, config.step);
            const UedMetrics metrics = ued_metrics(arc, dyn_opts);
            slots[u][d] = make_record(metrics, unit.group, tokens.tokens.size(),
                                      seq.scores.size());
        }
    });

    AnalyzeResult result;
    result.n_units = units.size();
    for (const auto& dim : dimensions) result.excluded.push_back({dim, 0});
    for (std::size_t u = 0; u < units.size(); ++u) {
        for (std::size_t d = 0; d < dimensions.size(); ++d) {
            if (slots[u][d]) {
                result.records.push_back(std::move(*slots[u][d]));
            } else {
                ++result.excluded[d].second;
            }
        }
    }
    return result;
}

AnalyzeResult run_scores(const RunConfig& config, const std::filesystem::path& scores_path,
                         const std::filesystem::path& metadata_path,
                         const std::string& dimension) {
    if (config.window < 1 || config.step < 1) {
        throw ConfigError("window and step must be positive");
    }

    const CsvTable table = read_csv(scores_path);
    const std::size_t doc_idx = table.column("doc_id");
    const std::size_t window_idx = table.column("window_index");
    const std::size_t score_idx = table.column("score");

    // Group rows per document, first-appearance order.
    std::vector<std::string> doc_order;
    std::map<std::string, std::vector<WindowScore>> by_doc;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t line_no = r + 2;
        WindowScore ws;
        ws.doc_id = row[doc_idx];

        const std::string& index_field = row[window_idx];
        auto [iptr, iec] = std::from_chars(
            index_field.data(), index_field.data() + index_field.size(), ws.window_index);
        if (iec != std::errc() || iptr != index_field.data() + index_field.size()) {
            throw MalformedCsv(scores_path.string(), line_no,
                               "window_index is not a nonnegative integer: '" +
                                   index_field + "'");
        }
        const std::string& score_field = row[score_idx];
        auto [sptr, sec] = std::from_chars(
            score_field.data(), score_field.data() + score_field.size(), ws.score);
        if (sec != std::errc() || sptr != score_field.data() + score_field.size()) {
            throw MalformedCsv(scores_path.string(), line_no,
                               "score is not a number: '" + score_field + "'");
        }

        auto [it, inserted] = by_doc.try_emplace(ws.doc_id);
        if (inserted) doc_order.push_back(ws.doc_id);
        it->second.push_back(std::move(ws));
    }

    // Group labels come from the metadata corpus.
    const std::vector<Document> docs = load_corpus(metadata_path, config.columns);
    std::map<std::string, std::string> group_of;
    for (const auto& doc : docs) group_of[doc.doc_id] = doc.group;

    AnalyzeResult result;
    result.n_units = doc_order.size();
    result.excluded.push_back({dimension, 0});

    const DynamicsOptions dyn_opts{config.homebase_k, config.sample_stdev,
                                   config.peak_from_boundary};
    for (const auto& doc_id : doc_order) {
        auto group_it = group_of.find(doc_id);
        if (group_it == group_of.end()) {
            throw Error("scores doc '" + doc_id + "' missing from metadata corpus " +
                        metadata_path.string());
        }
        EmotionArc arc = arc_from_window_scores(by_doc[doc_id], dimension, config.window,
                                                config.step);
        arc.doc_id = doc_id;
        if (arc.empty()) {
            ++result.excluded[0].second;
            continue;
        }
        const UedMetrics metrics = ued_metrics(arc, dyn_opts);
        result.records.push_back(make_record(metrics, group_it->second));
    }
    return result;
}

AggregateResult run_aggregate(const std::filesystem::path& per_unit_path,
                              std::size_t min_units,
                              const std::optional<std::filesystem::path>& adult_ref) {
    const std::vector<PerUnitRecord> records = read_per_unit_csv(per_unit_path);
    AggregateResult result;
    result.summaries = aggregate_by_group(records, min_units);
    if (adult_ref) {
        result.adult = load_reference(*adult_ref);
        result.has_adult = true;
    }
    return result;
}

} // namespace ued
