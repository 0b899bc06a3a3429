#ifndef UED_DYNAMICS_HPP
#define UED_DYNAMICS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ued/arcs.hpp"

namespace ued {

// Interval [mean - k*stdev, mean + k*stdev] around the arc mean; a point is
// in home base iff low <= p <= high, boundaries inclusive.
struct HomeBase {
    double mean = 0.0;
    double stdev = 0.0;
    double k = 1.0;

    double low() const { return mean - k * stdev; }
    double high() const { return mean + k * stdev; }
    bool contains(double p) const { return p >= low() && p <= high(); }
};

enum class PeakDirection { Above, Below };

// One maximal run of consecutive out-of-home arc points. A run touching the
// arc's first point has no pre-exit point (truncated_start); a run still out
// of home at the last point has no return point (truncated_end). A short arc
// can be out of home everywhere (possible for k < 1), truncating both ends.
struct Displacement {
    std::size_t exit_idx = 0;  // first out-of-home index of the run
    std::size_t last_idx = 0;  // last out-of-home index of the run
    std::size_t peak_idx = 0;  // argmax |point - mean|, earliest on ties
    PeakDirection direction = PeakDirection::Above;
    bool truncated_start = false;
    bool truncated_end = false;

    bool complete() const { return !truncated_start && !truncated_end; }

    // Last in-home index before the run. Requires !truncated_start.
    std::size_t pre_exit_idx() const { return exit_idx - 1; }
    // First in-home index after the run. Requires !truncated_end.
    std::size_t return_idx() const { return last_idx + 1; }
};

struct DynamicsOptions {
    double k = 1.0;
    bool sample_stdev = false;       // divide by N-1 instead of N
    bool peak_from_boundary = false; // measure peak distance from the nearer
                                     // home-base boundary instead of the mean
};

// Per-unit summary of the four UED metrics plus diagnostic counts.
// Displacement counts are diagnostics only; they are length-sensitive and
// never aggregated as headline metrics.
struct UedMetrics {
    std::string doc_id;
    std::string dimension;
    double average = 0.0;
    double variability = 0.0;
    std::optional<double> rise_rate;
    std::optional<double> recovery_rate;
    std::size_t n_displacements = 0;
    std::size_t n_complete = 0;
    std::size_t n_truncated = 0;
    std::size_t arc_len = 0;
};

// Mean and spread of the arc points. Population standard deviation by
// default. Throws EmptyArc.
HomeBase home_base(const EmotionArc& arc, double k, bool sample_stdev = false);

// Left-to-right scan; every maximal out-of-home run becomes one
// Displacement. Disjoint and ordered by position.
std::vector<Displacement> find_displacements(const EmotionArc& arc, const HomeBase& hb);

// Peak distance divided by steps from the last in-home point to the peak.
// Throws TruncatedDisplacement when the displacement has no pre-exit point.
double rise_rate(const Displacement& d, const EmotionArc& arc, const HomeBase& hb,
                 bool peak_from_boundary = false);

// Peak distance divided by steps from the peak to the first in-home return.
// Throws TruncatedDisplacement when the displacement has no return point.
double recovery_rate(const Displacement& d, const EmotionArc& arc, const HomeBase& hb,
                     bool peak_from_boundary = false);

// All four metrics for one arc. Rise and recovery rates are averaged over
// complete displacements and absent when there is none. Throws EmptyArc.
UedMetrics ued_metrics(const EmotionArc& arc, const DynamicsOptions& opts = {});

} // namespace ued

#endif
