#ifndef UED_PIPELINE_HPP
#define UED_PIPELINE_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ued/corpus.hpp"
#include "ued/lexicon.hpp"
#include "ued/report.hpp"

namespace ued {

// How raw [0,1] lexicon scores are mapped. Auto applies the signed-unit
// rescale to lexicons declaring any of valence/arousal/dominance and leaves
// intensity lexicons raw.
enum class RescaleMode { Auto, None, SignedUnit };

RescaleMode parse_rescale_mode(const std::string& name);
std::string to_string(RescaleMode mode);

// Everything one batch run depends on. The pipeline is deterministic: no
// seeds, no timestamps, identical config and inputs give identical bytes.
struct RunConfig {
    std::vector<std::filesystem::path> lexicon_paths;
    LexiconFormat lexicon_format = LexiconFormat::MultiDimension;
    RescaleMode rescale = RescaleMode::Auto;
    std::optional<std::string> single_dimension_name; // default: file stem

    std::vector<std::string> dimensions; // empty = all declared

    std::size_t window = 5;
    std::size_t step = 1;
    std::size_t min_emotion_words = 5;
    double homebase_k = 1.0;
    double neutral_center = 0.0;
    double neutral_half_width = 0.0;
    bool sample_stdev = false;
    bool peak_from_boundary = false;

    std::size_t min_units = 5;
    UnitMode mode = UnitMode::Instance;

    std::optional<std::size_t> min_words; // length filter, stopword-free counts
    std::optional<std::size_t> max_words;

    std::optional<std::filesystem::path> stopwords_path; // default: built-in list

    CorpusColumns columns;

    std::size_t threads = 0; // 0 = hardware concurrency
};

// Throws ConfigError on constraint violations (window/step >= 1,
// min_emotion_words >= window, min/max word bounds ordered).
void validate(const RunConfig& config);

// Configuration echo written next to every output file.
std::string config_manifest_json(const RunConfig& config);

// Loaded lexicons with a dimension -> lexicon index so each configured
// dimension resolves unambiguously.
struct LexiconSet {
    std::vector<Lexicon> lexicons;
    const Lexicon& lexicon_for(const std::string& dimension) const;
    std::vector<std::string> all_dimensions() const;
    bool has_dimension(const std::string& dimension) const;
};

LexiconSet load_lexicons(const RunConfig& config);

struct AnalyzeResult {
    std::vector<PerUnitRecord> records;
    std::size_t n_units = 0;
    // dimension -> units excluded for having fewer than min_emotion_words
    std::vector<std::pair<std::string, std::size_t>> excluded;
};

// corpus -> units -> arcs -> metrics over every configured dimension.
AnalyzeResult run_analyze(const RunConfig& config, const std::filesystem::path& corpus_path);

// Same back end fed by precomputed per-window scores; group labels joined
// from the metadata corpus. Token counts are not available on this path.
AnalyzeResult run_scores(const RunConfig& config, const std::filesystem::path& scores_path,
                         const std::filesystem::path& metadata_path,
                         const std::string& dimension);

struct AggregateResult {
    std::vector<GroupSummary> summaries;
    ReferenceTable adult; // empty unless a reference file was given
    bool has_adult = false;
};

AggregateResult run_aggregate(const std::filesystem::path& per_unit_path,
                              std::size_t min_units,
                              const std::optional<std::filesystem::path>& adult_ref);

} // namespace ued

#endif
