#pragma once

namespace acstk {

/// Closed real interval [lo, hi].
struct Interval {
    double lo;
    double hi;
    double width() const { return hi - lo; }
    bool contains(double t) const { return lo <= t && t <= hi; }
};

}  // namespace acstk
