#include "ued/arcs.hpp"

#include <algorithm>

#include "ued/errors.hpp"

namespace ued {

ScoredSequence emotion_word_sequence(const TokenSequence& tokens, const Lexicon& lexicon,
                                     std::string_view dimension, const NeutralBand& band) {
    if (!lexicon.has_dimension(dimension)) {
        throw UnknownDimension(std::string(dimension));
    }
    ScoredSequence seq;
    seq.doc_id = tokens.doc_id;
    seq.dimension = std::string(dimension);
    seq.n_tokens = tokens.tokens.size();
    for (const auto& token : tokens.tokens) {
        auto score = lexicon.score(token, dimension);
        if (!score || band.is_neutral(*score)) continue;
        seq.scores.push_back(*score);
    }
    return seq;
}

EmotionArc build_arc(const ScoredSequence& seq, std::size_t window, std::size_t step) {
    if (window < 1 || step < 1) {
        throw ConfigError("window and step must be positive");
    }
    const std::size_t n = seq.scores.size();
    if (n < window) {
        throw InsufficientEmotionWords(n, window);
    }

    EmotionArc arc;
    arc.doc_id = seq.doc_id;
    arc.dimension = seq.dimension;
    arc.window = window;
    arc.step = step;

    const std::size_t count = (n - window) / step + 1;
    arc.points.reserve(count);
    for (std::size_t w = 0; w < count; ++w) {
        const std::size_t start = w * step;
        double sum = 0.0;
        for (std::size_t i = start; i < start + window; ++i) {
            sum += seq.scores[i];
        }
        arc.points.push_back(sum / static_cast<double>(window));
    }
    return arc;
}

EmotionArc arc_from_window_scores(const std::vector<WindowScore>& records,
                                  std::string_view dimension, std::size_t window,
                                  std::size_t step) {
    EmotionArc arc;
    arc.dimension = std::string(dimension);
    arc.window = window;
    arc.step = step;
    if (records.empty()) return arc;

    arc.doc_id = records.front().doc_id;
    for (const auto& rec : records) {
        if (rec.doc_id != arc.doc_id) {
            throw ConfigError("window scores mix documents: '" + arc.doc_id +
                              "' and '" + rec.doc_id + "'");
        }
        if (rec.score < 0.0 || rec.score > 1.0) {
            throw ScoreOutOfRange("doc " + rec.doc_id + " window " +
                                  std::to_string(rec.window_index) + ": score " +
                                  std::to_string(rec.score) + " outside [0, 1]");
        }
    }

    std::vector<WindowScore> sorted(records);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const WindowScore& a, const WindowScore& b) {
                         return a.window_index < b.window_index;
                     });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0 && sorted[i].window_index == sorted[i - 1].window_index) {
            throw DuplicateIndex("doc " + arc.doc_id + ": duplicate window index " +
                                 std::to_string(sorted[i].window_index));
        }
        if (sorted[i].window_index != i) {
            throw NonContiguousIndices("doc " + arc.doc_id + ": expected window index " +
                                       std::to_string(i) + ", got " +
                                       std::to_string(sorted[i].window_index));
        }
        arc.points.push_back(sorted[i].score);
    }
    return arc;
}

} // namespace ued
