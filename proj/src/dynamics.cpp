#include "ued/dynamics.hpp"

#include <cmath>

#include "ued/errors.hpp"

namespace ued {

HomeBase home_base(const EmotionArc& arc, double k, bool sample_stdev) {
    if (arc.empty()) throw EmptyArc();
    if (k < 0.0) throw ConfigError("home base k must be nonnegative");

    const auto& p = arc.points;
    const std::size_t n = p.size();

    double sum = 0.0;
    for (double v : p) sum += v;
    const double mean = sum / static_cast<double>(n);

    double sq = 0.0;
    for (double v : p) sq += (v - mean) * (v - mean);
    double stdev = 0.0;
    if (sample_stdev) {
        if (n > 1) stdev = std::sqrt(sq / static_cast<double>(n - 1));
    } else {
        stdev = std::sqrt(sq / static_cast<double>(n));
    }

    return HomeBase{mean, stdev, k};
}

std::vector<Displacement> find_displacements(const EmotionArc& arc, const HomeBase& hb) {
    std::vector<Displacement> out;
    const auto& p = arc.points;
    const std::size_t n = p.size();

    std::size_t i = 0;
    while (i < n) {
        if (hb.contains(p[i])) {
            ++i;
            continue;
        }
        Displacement d;
        d.exit_idx = i;
        d.peak_idx = i;
        double peak_dist = std::abs(p[i] - hb.mean);
        while (i + 1 < n && !hb.contains(p[i + 1])) {
            ++i;
            const double dist = std::abs(p[i] - hb.mean);
            if (dist > peak_dist) { // earliest index wins ties
                peak_dist = dist;
                d.peak_idx = i;
            }
        }
        d.last_idx = i;
        d.direction = p[d.peak_idx] > hb.mean ? PeakDirection::Above : PeakDirection::Below;
        d.truncated_start = d.exit_idx == 0;
        d.truncated_end = d.last_idx == n - 1;
        out.push_back(d);
        ++i;
    }
    return out;
}

namespace {

double peak_distance(const Displacement& d, const EmotionArc& arc, const HomeBase& hb,
                     bool peak_from_boundary) {
    const double from_mean = std::abs(arc.points[d.peak_idx] - hb.mean);
    if (!peak_from_boundary) return from_mean;
    return from_mean - hb.k * hb.stdev;
}

} // namespace

double rise_rate(const Displacement& d, const EmotionArc& arc, const HomeBase& hb,
                 bool peak_from_boundary) {
    if (d.truncated_start) {
        throw TruncatedDisplacement("no pre-exit point: displacement touches arc start");
    }
    const double steps = static_cast<double>(d.peak_idx - d.pre_exit_idx());
    return peak_distance(d, arc, hb, peak_from_boundary) / steps;
}

double recovery_rate(const Displacement& d, const EmotionArc& arc, const HomeBase& hb,
                     bool peak_from_boundary) {
    if (d.truncated_end) {
        throw TruncatedDisplacement("no return point: displacement touches arc end");
    }
    const double steps = static_cast<double>(d.return_idx() - d.peak_idx);
    return peak_distance(d, arc, hb, peak_from_boundary) / steps;
}

UedMetrics ued_metrics(const EmotionArc& arc, const DynamicsOptions& opts) {
    const HomeBase hb = home_base(arc, opts.k, opts.sample_stdev);
    const auto displacements = find_displacements(arc, hb);

    UedMetrics m;
    m.doc_id = arc.doc_id;
    m.dimension = arc.dimension;
    m.average = hb.mean;
    m.variability = hb.stdev;
    m.arc_len = arc.size();
    m.n_displacements = displacements.size();

    // Peak direction is ignored throughout; distances are absolute. Rates
    // average over complete displacements only, so a unit's rise and
    // recovery rates are always defined together.
    double rise_sum = 0.0;
    double recovery_sum = 0.0;
    for (const auto& d : displacements) {
        if (!d.complete()) {
            ++m.n_truncated;
            continue;
        }
        ++m.n_complete;
        rise_sum += rise_rate(d, arc, hb, opts.peak_from_boundary);
        recovery_sum += recovery_rate(d, arc, hb, opts.peak_from_boundary);
    }
    if (m.n_complete > 0) {
        m.rise_rate = rise_sum / static_cast<double>(m.n_complete);
        m.recovery_rate = recovery_sum / static_cast<double>(m.n_complete);
    }
    return m;
}

} // namespace ued
