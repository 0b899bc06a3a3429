#ifndef UED_ARCS_HPP
#define UED_ARCS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "ued/lexicon.hpp"
#include "ued/textproc.hpp"

namespace ued {

// Scores of the non-neutral emotion words of one document, in text order.
struct ScoredSequence {
    std::string doc_id;
    std::string dimension;
    std::vector<double> scores;
    std::size_t n_tokens = 0; // tokens the scores were drawn from

    std::size_t emotion_word_count() const { return scores.size(); }
    double coverage() const {
        return n_tokens == 0 ? 0.0
                             : static_cast<double>(scores.size()) /
                                   static_cast<double>(n_tokens);
    }
};

// Ordered window means over an emotion-word sequence. With step 1 each
// index step corresponds to one emotion word, which is how word counts in
// rise/recovery periods are measured.
struct EmotionArc {
    std::string doc_id;
    std::string dimension;
    std::vector<double> points;
    std::size_t window = 5;
    std::size_t step = 1;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

// Keeps, in order, the scores of tokens found in the lexicon whose score is
// non-neutral. Throws UnknownDimension.
ScoredSequence emotion_word_sequence(const TokenSequence& tokens, const Lexicon& lexicon,
                                     std::string_view dimension, const NeutralBand& band);

// Means of fully populated windows; arc length is
// floor((E - window) / step) + 1. Throws InsufficientEmotionWords when
// E < window and ConfigError when window or step is zero.
EmotionArc build_arc(const ScoredSequence& seq, std::size_t window, std::size_t step);

// One externally produced per-window score.
struct WindowScore {
    std::string doc_id;
    std::size_t window_index = 0;
    double score = 0.0;
};

// Builds an arc directly from per-window scores (e.g. an ML model's
// output). Indices must be 0-based, contiguous, and unique; scores in
// [0,1]. Throws NonContiguousIndices, DuplicateIndex, ScoreOutOfRange.
EmotionArc arc_from_window_scores(const std::vector<WindowScore>& records,
                                  std::string_view dimension, std::size_t window = 5,
                                  std::size_t step = 1);

} // namespace ued

#endif
