// running_stats.hpp: single-pass moment accumulators.

#pragma once

#include <cmath>

namespace rill {

/// Welford mean/variance accumulator. Matches the two-pass batch mean and
/// sample variance (n-1 denominator) to floating-point accuracy.
struct RunningMoments {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        count += 1.0;
        const double delta = x - mean;
        mean += delta / count;
        m2 += delta * (x - mean);
    }

    double sample_variance() const { return count > 1.0 ? m2 / (count - 1.0) : 0.0; }

    double stddev() const { return std::sqrt(sample_variance()); }
};

} // namespace rill
