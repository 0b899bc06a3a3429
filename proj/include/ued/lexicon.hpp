#ifndef UED_LEXICON_HPP
#define UED_LEXICON_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ued {

enum class LexiconFormat {
    SingleDimension, // term<TAB>score
    MultiDimension,  // term<TAB>dimension<TAB>score
};

enum class Rescale {
    None,            // keep raw [0,1] scores
    ZeroOneToSigned, // map v to 2v-1, range becomes [-1,1]
};

struct ScoreRange {
    double lo = 0.0;
    double hi = 1.0;
    bool contains(double v) const { return v >= lo && v <= hi; }
};

// A score is "neutral" iff |score - center| <= half_width. The default band
// only catches scores exactly at the center.
struct NeutralBand {
    double center = 0.0;
    double half_width = 0.0;

    bool is_neutral(double score) const;
};

// Word-to-emotion score table, immutable once loaded. Terms are lowercase
// unigrams; each term carries scores for a subset of the declared dimensions.
class Lexicon {
public:
    Lexicon(std::string name, std::vector<std::string> dimension_names,
            ScoreRange range);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& dimension_names() const { return dimension_names_; }
    const ScoreRange& score_range() const { return score_range_; }
    std::size_t size() const { return entries_.size(); }

    bool has_dimension(std::string_view dimension) const;

    // Stored score, or nullopt when the term is absent for that dimension.
    // Throws UnknownDimension for undeclared dimensions.
    std::optional<double> score(std::string_view term, std::string_view dimension) const;

    // Inserts (term, dimension index) -> score. Throws DuplicateEntry on a
    // repeated pair and ScoreOutOfRange when outside score_range.
    void insert(const std::string& term, std::size_t dim_index, double value);

    // Applies v -> 2v-1 to every stored score; range becomes [-1,1].
    // Only valid on a raw [0,1] lexicon.
    void rescale_to_signed_unit();

    // term -> per-dimension scores, indexed like dimension_names().
    const std::unordered_map<std::string, std::vector<std::optional<double>>>& entries() const {
        return entries_;
    }

private:
    std::size_t dimension_index(std::string_view dimension) const;

    std::string name_;
    std::vector<std::string> dimension_names_;
    ScoreRange score_range_;
    std::unordered_map<std::string, std::vector<std::optional<double>>> entries_;
};

// Loads a tab-separated lexicon file. Lines starting with '#' are skipped;
// LF and CRLF both accepted; raw scores must lie in [0,1]. For the
// single-dimension format the caller names the one dimension.
Lexicon load_lexicon(const std::filesystem::path& path, LexiconFormat format,
                     Rescale rescale, const std::string& single_dimension_name = "score");

// Writes the entry map back out as term<TAB>dimension<TAB>score rows with
// full precision, terms and dimensions sorted.
void serialize_lexicon(const Lexicon& lexicon, std::ostream& os);

// Convenience wrapper matching lookup semantics of Lexicon::score.
std::optional<double> score_token(const Lexicon& lexicon, std::string_view token,
                                  std::string_view dimension);

} // namespace ued

#endif
