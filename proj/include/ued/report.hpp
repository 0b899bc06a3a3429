#ifndef UED_REPORT_HPP
#define UED_REPORT_HPP

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ued/dynamics.hpp"

namespace ued {

enum class Metric { Average, Variability, RiseRate, RecoveryRate };

inline constexpr std::array<Metric, 4> kAllMetrics = {
    Metric::Average, Metric::Variability, Metric::RiseRate, Metric::RecoveryRate};

std::string to_string(Metric metric);
Metric parse_metric(const std::string& name);

// One analysis unit's metrics with its group label and token diagnostics.
// Token counts are absent on the external-window-scores path.
struct PerUnitRecord {
    std::string doc_id;
    std::string group;
    std::string dimension;
    std::optional<std::size_t> n_tokens;
    std::optional<std::size_t> n_emotion_words;
    std::size_t arc_len = 0;
    double average = 0.0;
    double variability = 0.0;
    std::optional<double> rise_rate;
    std::optional<double> recovery_rate;
    std::size_t n_displacements = 0;
    std::size_t n_complete = 0;
    std::size_t n_truncated = 0;

    std::optional<double> metric_value(Metric metric) const;
};

PerUnitRecord make_record(const UedMetrics& metrics, std::string group,
                          std::optional<std::size_t> n_tokens = std::nullopt,
                          std::optional<std::size_t> n_emotion_words = std::nullopt);

// Mean of one metric over the units of one group that define it; value is
// withheld (absent) while fewer than min_units units contribute.
struct GroupSummary {
    std::string group;
    std::string dimension;
    Metric metric = Metric::Average;
    std::optional<double> value;
    std::size_t n_units = 0;
};

// One row per (group, dimension, metric), ordered by dimension, metric,
// then group (numeric labels first).
std::vector<GroupSummary> aggregate_by_group(const std::vector<PerUnitRecord>& per_unit,
                                             std::size_t min_units = 5);

// Reference values per (dimension, metric), e.g. the adult poem constants.
class ReferenceTable {
public:
    void set(const std::string& dimension, Metric metric, double value);
    std::optional<double> get(const std::string& dimension, Metric metric) const;
    bool empty() const { return values_.empty(); }

private:
    std::vector<std::pair<std::pair<std::string, Metric>, double>> values_;
};

// CSV with header dimension,metric,value.
ReferenceTable load_reference(const std::filesystem::path& path);

// Group series for one (dimension, metric) with the reference constant and
// the group whose value lands nearest it.
struct OverlayEntry {
    std::string dimension;
    Metric metric = Metric::Average;
    double adult_value = 0.0;
    std::optional<std::string> nearest_group;
    std::vector<GroupSummary> series;
};

// Throws DimensionMismatch when a summary's (dimension, metric) has no
// reference value.
std::vector<OverlayEntry> reference_overlay(const std::vector<GroupSummary>& summaries,
                                            const ReferenceTable& adult);

enum class ExportFormat { Csv, Json };

// Serializers; floats at 6 decimals, absent values as empty cell / null.
std::string per_unit_to_csv(const std::vector<PerUnitRecord>& records);
std::string per_unit_to_json(const std::vector<PerUnitRecord>& records);
std::string group_to_csv(const std::vector<GroupSummary>& summaries,
                         const ReferenceTable* adult = nullptr);
std::string group_to_json(const std::vector<GroupSummary>& summaries);

// Plot-ready series: one object per (dimension, metric) with the per-group
// values, plus overlay fields when a reference table is supplied.
std::string series_to_json(const std::vector<GroupSummary>& summaries,
                           const ReferenceTable* adult = nullptr);

// Atomic write of either format. Throws IoError.
void export_per_unit(const std::vector<PerUnitRecord>& records, ExportFormat format,
                     const std::filesystem::path& path);
void export_group(const std::vector<GroupSummary>& summaries, ExportFormat format,
                  const std::filesystem::path& path, const ReferenceTable* adult = nullptr);

// Parses a file written by export_per_unit(..., Csv, ...). Throws
// MalformedCsv on schema mismatch.
std::vector<PerUnitRecord> read_per_unit_csv(const std::filesystem::path& path);

inline constexpr const char* kPerUnitHeader =
    "doc_id,group,dimension,n_tokens,n_emotion_words,arc_len,average,variability,"
    "rise_rate,recovery_rate,n_displacements,n_complete,n_truncated";
inline constexpr const char* kGroupHeader = "group,dimension,metric,value,n_units";

} // namespace ued

#endif
