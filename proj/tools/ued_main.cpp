// ued — utterance emotion dynamics over document collections.
//
// Subcommands:
//   analyze    corpus CSV + lexicons -> per-unit metrics CSV
//   scores     precomputed window scores -> per-unit metrics CSV
//   aggregate  per-unit CSV -> group summary CSV + plot series JSON
//   stats      corpus CSV -> per-group document counts and mean lengths

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ued/corpus.hpp"
#include "ued/csv.hpp"
#include "ued/errors.hpp"
#include "ued/pipeline.hpp"
#include "ued/report.hpp"
#include "ued/util.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct CommonFlags {
    ued::RunConfig config;
    std::string corpus;
    std::string out;
    std::string rescale = "auto";
    std::string mode = "instance";
    std::string lexicon_format = "multi";
    std::string stopwords;
    std::string speaker_col;
    std::string seq_col;
    long min_words = -1;
    long max_words = -1;
};

void add_corpus_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--corpus", flags.corpus, "corpus CSV with a header row")->required();
    cmd->add_option("--id-col", flags.config.columns.id_col, "document id column")
        ->capture_default_str();
    cmd->add_option("--text-col", flags.config.columns.text_col, "document text column")
        ->capture_default_str();
    cmd->add_option("--group-col", flags.config.columns.group_col, "group label column")
        ->capture_default_str();
    cmd->add_option("--speaker-col", flags.speaker_col, "author key column");
    cmd->add_option("--seq-col", flags.seq_col,
                    "temporal ordinal column (file order when omitted)");
}

void add_dynamics_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--window", flags.config.window, "emotion words per window")
        ->capture_default_str();
    cmd->add_option("--step", flags.config.step, "window step")->capture_default_str();
    cmd->add_option("--homebase-k", flags.config.homebase_k,
                    "home base half-width in standard deviations")
        ->capture_default_str();
    cmd->add_flag("--sample-stdev", flags.config.sample_stdev,
                  "divide by N-1 when computing variability");
    cmd->add_flag("--peak-from-boundary", flags.config.peak_from_boundary,
                  "measure peak distance from the home-base boundary instead of the mean");
}

void finalize_columns(CommonFlags& flags) {
    if (!flags.speaker_col.empty()) flags.config.columns.speaker_col = flags.speaker_col;
    if (!flags.seq_col.empty()) flags.config.columns.seq_col = flags.seq_col;
    if (!flags.stopwords.empty()) flags.config.stopwords_path = flags.stopwords;
    if (flags.min_words >= 0) flags.config.min_words = flags.min_words;
    if (flags.max_words >= 0) flags.config.max_words = flags.max_words;
    flags.config.rescale = ued::parse_rescale_mode(flags.rescale);
    flags.config.mode = ued::parse_unit_mode(flags.mode);
    if (flags.lexicon_format == "single") {
        flags.config.lexicon_format = ued::LexiconFormat::SingleDimension;
    } else if (flags.lexicon_format == "multi") {
        flags.config.lexicon_format = ued::LexiconFormat::MultiDimension;
    } else {
        throw ued::ConfigError("unknown lexicon format: '" + flags.lexicon_format + "'");
    }
}

void print_exclusions(const ued::AnalyzeResult& result, std::size_t min_emotion_words) {
    for (const auto& [dimension, count] : result.excluded) {
        std::cerr << "dimension " << dimension << ": " << count << " of " << result.n_units
                  << " units excluded (fewer than " << min_emotion_words
                  << " emotion words)\n";
    }
}

void write_outputs(const ued::AnalyzeResult& result, const ued::RunConfig& config,
                   const std::string& out) {
    ued::export_per_unit(result.records, ued::ExportFormat::Csv, out);
    ued::atomic_write_file(out + ".manifest.json", ued::config_manifest_json(config));
}

int run_analyze_cmd(CommonFlags& flags, const std::vector<std::string>& lexicons,
                    const std::vector<std::string>& dimensions) {
    finalize_columns(flags);
    for (const auto& p : lexicons) flags.config.lexicon_paths.push_back(p);
    flags.config.dimensions = dimensions;

    const ued::AnalyzeResult result = ued::run_analyze(flags.config, flags.corpus);
    write_outputs(result, flags.config, flags.out);
    print_exclusions(result, flags.config.min_emotion_words);
    std::cerr << "wrote " << result.records.size() << " records to " << flags.out << "\n";
    return kExitOk;
}

int run_scores_cmd(CommonFlags& flags, const std::string& scores_path,
                   const std::string& dimension) {
    finalize_columns(flags);

    const ued::AnalyzeResult result =
        ued::run_scores(flags.config, scores_path, flags.corpus, dimension);
    write_outputs(result, flags.config, flags.out);
    if (result.records.empty()) {
        std::cerr << "warning: no usable window scores in " << scores_path << "\n";
    }
    std::cerr << "wrote " << result.records.size() << " records to " << flags.out << "\n";
    return kExitOk;
}

int run_aggregate_cmd(const std::string& per_unit, std::size_t min_units,
                      const std::string& adult_ref, const std::string& out_group,
                      std::string out_series) {
    std::optional<std::filesystem::path> ref;
    if (!adult_ref.empty()) ref = adult_ref;

    const ued::AggregateResult result = ued::run_aggregate(per_unit, min_units, ref);
    const ued::ReferenceTable* adult = result.has_adult ? &result.adult : nullptr;

    ued::export_group(result.summaries, ued::ExportFormat::Csv, out_group, adult);
    if (out_series.empty()) out_series = out_group + ".series.json";
    ued::atomic_write_file(out_series, ued::series_to_json(result.summaries, adult));
    std::cerr << "wrote " << result.summaries.size() << " summary rows to " << out_group
              << "\n";
    return kExitOk;
}

int run_stats_cmd(CommonFlags& flags, const std::string& out) {
    finalize_columns(flags);
    const auto docs = ued::load_corpus(flags.corpus, flags.config.columns);
    const auto stats = ued::corpus_stats(docs);

    std::string csv = "group,n_docs,mean_words\n";
    for (const auto& row : stats) {
        csv += ued::csv_escape(row.group);
        csv += ',';
        csv += std::to_string(row.n_docs);
        csv += ',';
        csv += ued::format_fixed(row.mean_words, 2);
        csv += '\n';
    }
    if (out.empty()) {
        std::cout << csv;
    } else {
        ued::atomic_write_file(out, csv);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"utterance emotion dynamics metrics over document collections"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::vector<std::string> lexicons;
    std::vector<std::string> dimensions;

    auto* analyze = app.add_subcommand("analyze", "compute per-unit UED metrics");
    add_corpus_flags(analyze, flags);
    analyze->add_option("--lexicon", lexicons, "lexicon TSV (repeatable)")->required();
    analyze->add_option("--lexicon-format", flags.lexicon_format, "single | multi")
        ->capture_default_str();
    analyze->add_option("--rescale", flags.rescale,
                        "auto | none | signed (auto rescales VAD lexicons to [-1,1])")
        ->capture_default_str();
    analyze->add_option("--dimension", dimensions,
                        "dimension to analyze (repeatable; default: all)");
    analyze->add_option("--min-emotion-words", flags.config.min_emotion_words,
                        "exclude units with fewer emotion words")
        ->capture_default_str();
    analyze->add_option("--neutral-center", flags.config.neutral_center,
                        "center of the neutral score band")
        ->capture_default_str();
    analyze->add_option("--neutral-half-width", flags.config.neutral_half_width,
                        "half-width of the neutral score band")
        ->capture_default_str();
    analyze->add_option("--mode", flags.mode, "instance | speaker | meta")
        ->capture_default_str();
    analyze->add_option("--min-words", flags.min_words,
                        "keep units with at least this many stopword-free words")
        ->check(CLI::NonNegativeNumber);
    analyze->add_option("--max-words", flags.max_words,
                        "keep units with at most this many stopword-free words")
        ->check(CLI::NonNegativeNumber);
    analyze->add_option("--stopwords", flags.stopwords,
                        "stopword file, one term per line (default: built-in English list)");
    analyze->add_option("--threads", flags.config.threads,
                        "worker threads (0 = hardware)");
    add_dynamics_flags(analyze, flags);
    analyze->add_option("--out", flags.out, "per-unit metrics CSV")->required();

    std::string scores_path;
    std::string scores_dimension = "valence";
    auto* scores = app.add_subcommand(
        "scores", "compute UED metrics from precomputed window scores");
    scores->add_option("--scores", scores_path,
                       "window scores CSV (doc_id,window_index,score)")
        ->required();
    scores->add_option("--dimension", scores_dimension, "dimension label for the output")
        ->capture_default_str();
    add_corpus_flags(scores, flags); // metadata corpus supplying group labels
    add_dynamics_flags(scores, flags);
    scores->add_option("--out", flags.out, "per-unit metrics CSV")->required();

    std::string per_unit_path;
    std::string adult_ref;
    std::string out_group;
    std::string out_series;
    std::size_t min_units = 5;
    auto* aggregate = app.add_subcommand("aggregate", "aggregate per-unit metrics by group");
    aggregate->add_option("--per-unit", per_unit_path, "per-unit metrics CSV")->required();
    aggregate->add_option("--min-units", min_units,
                          "withhold a group value below this many contributing units")
        ->capture_default_str();
    aggregate->add_option("--adult-ref", adult_ref,
                          "reference CSV (dimension,metric,value) to overlay");
    aggregate->add_option("--out-group", out_group, "group summary CSV")->required();
    aggregate->add_option("--out-series", out_series,
                          "plot-ready series JSON (default: <out-group>.series.json)");

    std::string stats_out;
    auto* stats = app.add_subcommand("stats", "per-group corpus statistics");
    add_corpus_flags(stats, flags);
    stats->add_option("--out", stats_out, "output CSV (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*analyze) return run_analyze_cmd(flags, lexicons, dimensions);
        if (*scores) return run_scores_cmd(flags, scores_path, scores_dimension);
        if (*aggregate) {
            return run_aggregate_cmd(per_unit_path, min_units, adult_ref, out_group,
                                     out_series);
        }
        if (*stats) return run_stats_cmd(flags, stats_out);
    } catch (const ued::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ued::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
