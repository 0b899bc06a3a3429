#include "ued/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ued/corpus.hpp"
#include "ued/csv.hpp"
#include "ued/errors.hpp"
#include "ued/util.hpp"

namespace ued {

using ordered_json = nlohmann::ordered_json;

std::string to_string(Metric metric) {
    switch (metric) {
        case Metric::Average: return "average";
        case Metric::Variability: return "variability";
        case Metric::RiseRate: return "rise_rate";
        case Metric::RecoveryRate: return "recovery_rate";
    }
    return "average";
}

Metric parse_metric(const std::string& name) {
    for (Metric m : kAllMetrics) {
        if (to_string(m) == name) return m;
    }
    throw ConfigError("unknown metric: '" + name + "'");
}

std::optional<double> PerUnitRecord::metric_value(Metric metric) const {
    switch (metric) {
        case Metric::Average: return average;
        case Metric::Variability: return variability;
        case Metric::RiseRate: return rise_rate;
        case Metric::RecoveryRate: return recovery_rate;
    }
    return std::nullopt;
}

PerUnitRecord make_record(const UedMetrics& metrics, std::string group,
                          std::optional<std::size_t> n_tokens,
                          std::optional<std::size_t> n_emotion_words) {
    PerUnitRecord rec;
    rec.doc_id = metrics.doc_id;
    rec.group = std::move(group);
    rec.dimension = metrics.dimension;
    rec.n_tokens = n_tokens;
    rec.n_emotion_words = n_emotion_words;
    rec.arc_len = metrics.arc_len;
    rec.average = metrics.average;
    rec.variability = metrics.variability;
    rec.rise_rate = metrics.rise_rate;
    rec.recovery_rate = metrics.recovery_rate;
    rec.n_displacements = metrics.n_displacements;
    rec.n_complete = metrics.n_complete;
    rec.n_truncated = metrics.n_truncated;
    return rec;
}

std::vector<GroupSummary> aggregate_by_group(const std::vector<PerUnitRecord>& per_unit,
                                             std::size_t min_units) {
    if (min_units < 1) throw ConfigError("min_units must be at least 1");

    struct Accum {
        double sum = 0.0;
        std::size_t n = 0;
    };
    // (dimension, group) -> per-metric accumulator
    std::map<std::pair<std::string, std::string>, std::array<Accum, 4>> buckets;
    for (const auto& rec : per_unit) {
        auto& acc = buckets[{rec.dimension, rec.group}];
        for (std::size_t m = 0; m < kAllMetrics.size(); ++m) {
            if (auto v = rec.metric_value(kAllMetrics[m])) {
                acc[m].sum += *v;
                ++acc[m].n;
            }
        }
    }

    std::vector<GroupSummary> out;
    out.reserve(buckets.size() * kAllMetrics.size());
    for (const auto& [key, acc] : buckets) {
        for (std::size_t m = 0; m < kAllMetrics.size(); ++m) {
            GroupSummary s;
            s.dimension = key.first;
            s.group = key.second;
            s.metric = kAllMetrics[m];
            s.n_units = acc[m].n;
            if (acc[m].n >= min_units) {
                s.value = acc[m].sum / static_cast<double>(acc[m].n);
            }
            out.push_back(std::move(s));
        }
    }

    std::sort(out.begin(), out.end(), [](const GroupSummary& a, const GroupSummary& b) {
        if (a.dimension != b.dimension) return a.dimension < b.dimension;
        if (a.metric != b.metric) return a.metric < b.metric;
        return group_less(a.group, b.group);
    });
    return out;
}

void ReferenceTable::set(const std::string& dimension, Metric metric, double value) {
    for (auto& [key, v] : values_) {
        if (key.first == dimension && key.second == metric) {
            v = value;
            return;
        }
    }
    values_.push_back({{dimension, metric}, value});
}

std::optional<double> ReferenceTable::get(const std::string& dimension, Metric metric) const {
    for (const auto& [key, v] : values_) {
        if (key.first == dimension && key.second == metric) return v;
    }
    return std::nullopt;
}

ReferenceTable load_reference(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    const std::size_t dim_idx = table.column("dimension");
    const std::size_t metric_idx = table.column("metric");
    const std::size_t value_idx = table.column("value");

    ReferenceTable ref;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::string& field = row[value_idx];
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (ec != std::errc() || ptr != field.data() + field.size()) {
            throw MalformedCsv(path.string(), r + 2, "not a number: '" + field + "'");
        }
        ref.set(row[dim_idx], parse_metric(row[metric_idx]), value);
    }
    return ref;
}

std::vector<OverlayEntry> reference_overlay(const std::vector<GroupSummary>& summaries,
                                            const ReferenceTable& adult) {
    // Preserve the (dimension, metric) order of the input.
    std::vector<OverlayEntry> out;
    auto find_entry = [&out](const std::string& dim, Metric metric) -> OverlayEntry* {
        for (auto& e : out) {
            if (e.dimension == dim && e.metric == metric) return &e;
        }
        return nullptr;
    };

    for (const auto& s : summaries) {
        OverlayEntry* entry = find_entry(s.dimension, s.metric);
        if (!entry) {
            const auto adult_value = adult.get(s.dimension, s.metric);
            if (!adult_value) {
                throw DimensionMismatch("no reference value for (" + s.dimension + ", " +
                                        to_string(s.metric) + ")");
            }
            out.push_back(OverlayEntry{s.dimension, s.metric, *adult_value, {}, {}});
            entry = &out.back();
        }
        entry->series.push_back(s);
    }

    for (auto& entry : out) {
        double best = 0.0;
        for (const auto& s : entry.series) {
            if (!s.value) continue;
            const double dist = std::abs(*s.value - entry.adult_value);
            if (!entry.nearest_group || dist < best) {
                entry.nearest_group = s.group;
                best = dist;
            }
        }
    }
    return out;
}

namespace {

std::string opt_count(const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string();
}

std::string opt_fixed(const std::optional<double>& v) {
    return v ? format_fixed(*v) : std::string();
}

ordered_json json_or_null(const std::optional<double>& v) {
    if (!v) return nullptr;
    return quantize(*v);
}

} // namespace

std::string per_unit_to_csv(const std::vector<PerUnitRecord>& records) {
    std::ostringstream os;
    os << kPerUnitHeader << '\n';
    for (const auto& r : records) {
        write_csv_row(os, {r.doc_id, r.group, r.dimension, opt_count(r.n_tokens),
                           opt_count(r.n_emotion_words), std::to_string(r.arc_len),
                           format_fixed(r.average), format_fixed(r.variability),
                           opt_fixed(r.rise_rate), opt_fixed(r.recovery_rate),
                           std::to_string(r.n_displacements), std::to_string(r.n_complete),
                           std::to_string(r.n_truncated)});
    }
    return os.str();
}

std::string per_unit_to_json(const std::vector<PerUnitRecord>& records) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : records) {
        ordered_json obj;
        obj["doc_id"] = r.doc_id;
        obj["group"] = r.group;
        obj["dimension"] = r.dimension;
        obj["n_tokens"] = r.n_tokens ? ordered_json(*r.n_tokens) : ordered_json(nullptr);
        obj["n_emotion_words"] =
            r.n_emotion_words ? ordered_json(*r.n_emotion_words) : ordered_json(nullptr);
        obj["arc_len"] = r.arc_len;
        obj["average"] = quantize(r.average);
        obj["variability"] = quantize(r.variability);
        obj["rise_rate"] = json_or_null(r.rise_rate);
        obj["recovery_rate"] = json_or_null(r.recovery_rate);
        obj["n_displacements"] = r.n_displacements;
        obj["n_complete"] = r.n_complete;
        obj["n_truncated"] = r.n_truncated;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::string group_to_csv(const std::vector<GroupSummary>& summaries,
                         const ReferenceTable* adult) {
    std::ostringstream os;
    os << kGroupHeader;
    if (adult) os << ",adult_value";
    os << '\n';
    for (const auto& s : summaries) {
        std::vector<std::string> fields = {s.group, s.dimension, to_string(s.metric),
                                           opt_fixed(s.value), std::to_string(s.n_units)};
        if (adult) {
            fields.push_back(opt_fixed(adult->get(s.dimension, s.metric)));
        }
        write_csv_row(os, fields);
    }
    return os.str();
}

std::string group_to_json(const std::vector<GroupSummary>& summaries) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : summaries) {
        ordered_json obj;
        obj["group"] = s.group;
        obj["dimension"] = s.dimension;
        obj["metric"] = to_string(s.metric);
        obj["value"] = json_or_null(s.value);
        obj["n_units"] = s.n_units;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::string series_to_json(const std::vector<GroupSummary>& summaries,
                           const ReferenceTable* adult) {
    // Group summaries into one series object per (dimension, metric).
    std::vector<std::pair<std::string, Metric>> order;
    std::map<std::pair<std::string, Metric>, std::vector<const GroupSummary*>> by_series;
    for (const auto& s : summaries) {
        auto key = std::make_pair(s.dimension, s.metric);
        auto [it, inserted] = by_series.try_emplace(key);
        if (inserted) order.push_back(key);
        it->second.push_back(&s);
    }

    ordered_json arr = ordered_json::array();
    for (const auto& key : order) {
        ordered_json obj;
        obj["dimension"] = key.first;
        obj["metric"] = to_string(key.second);
        ordered_json series = ordered_json::array();
        for (const GroupSummary* s : by_series[key]) {
            ordered_json point;
            point["group"] = s->group;
            point["value"] = json_or_null(s->value);
            point["n_units"] = s->n_units;
            series.push_back(std::move(point));
        }
        obj["series"] = std::move(series);
        if (adult) {
            if (auto v = adult->get(key.first, key.second)) {
                obj["adult_value"] = quantize(*v);
                std::optional<std::string> nearest;
                double best = 0.0;
                for (const GroupSummary* s : by_series[key]) {
                    if (!s->value) continue;
                    const double dist = std::abs(*s->value - *v);
                    if (!nearest || dist < best) {
                        nearest = s->group;
                        best = dist;
                    }
                }
                obj["nearest_group"] = nearest ? ordered_json(*nearest) : ordered_json(nullptr);
            }
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

void export_per_unit(const std::vector<PerUnitRecord>& records, ExportFormat format,
                     const std::filesystem::path& path) {
    atomic_write_file(path, format == ExportFormat::Csv ? per_unit_to_csv(records)
                                                        : per_unit_to_json(records));
}

void export_group(const std::vector<GroupSummary>& summaries, ExportFormat format,
                  const std::filesystem::path& path, const ReferenceTable* adult) {
    atomic_write_file(path, format == ExportFormat::Csv ? group_to_csv(summaries, adult)
                                                        : group_to_json(summaries));
}

namespace {

double parse_double_field(const std::string& field, const std::filesystem::path& path,
                          std::size_t line_no) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw MalformedCsv(path.string(), line_no, "not a number: '" + field + "'");
    }
    return value;
}

std::size_t parse_count_field(const std::string& field, const std::filesystem::path& path,
                              std::size_t line_no) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw MalformedCsv(path.string(), line_no, "not a count: '" + field + "'");
    }
    return value;
}

} // namespace

std::vector<PerUnitRecord> read_per_unit_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);

    const CsvTable expected = parse_csv(std::string(kPerUnitHeader) + "\n");
    if (table.header != expected.header) {
        throw MalformedCsv(path.string(), 1, "header does not match per-unit schema");
    }

    std::vector<PerUnitRecord> records;
    records.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::size_t line_no = r + 2;
        PerUnitRecord rec;
        rec.doc_id = row[0];
        rec.group = row[1];
        rec.dimension = row[2];
        if (!row[3].empty()) rec.n_tokens = parse_count_field(row[3], path, line_no);
        if (!row[4].empty()) rec.n_emotion_words = parse_count_field(row[4], path, line_no);
        rec.arc_len = parse_count_field(row[5], path, line_no);
        rec.average = parse_double_field(row[6], path, line_no);
        rec.variability = parse_double_field(row[7], path, line_no);
        if (!row[8].empty()) rec.rise_rate = parse_double_field(row[8], path, line_no);
        if (!row[9].empty()) rec.recovery_rate = parse_double_field(row[9], path, line_no);
        rec.n_displacements = parse_count_field(row[10], path, line_no);
        rec.n_complete = parse_count_field(row[11], path, line_no);
        rec.n_truncated = parse_count_field(row[12], path, line_no);
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace ued
