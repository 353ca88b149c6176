#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace ssdl {

// Sample size, mean and biased variance of a set of target values, kept with
// exact sum / sum-of-squares accumulators so that n * variance equals the
// residual sum of squares.
struct GaussianStats {
    std::size_t n = 0;
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double y) {
        ++n;
        sum += y;
        sum_sq += y * y;
    }

    double mean() const { return n == 0 ? 0.0 : sum / n; }

    // Biased ML estimate, clamped at zero against floating-point cancellation.
    double variance() const {
        if (n == 0) return 0.0;
        const double m = mean();
        const double v = sum_sq / n - m * m;
        return v > 0.0 ? v : 0.0;
    }

    double stddev() const { return std::sqrt(variance()); }

    // RSS around the sample mean.
    double rss() const { return static_cast<double>(n) * variance(); }

    // RSS around an externally fixed mean.
    double rss_about(double mu) const {
        const double r = sum_sq - 2.0 * mu * sum + static_cast<double>(n) * mu * mu;
        return r > 0.0 ? r : 0.0;
    }

    static GaussianStats of(std::span<const double> values) {
        GaussianStats s;
        for (double y : values) s.add(y);
        return s;
    }

    GaussianStats& operator+=(const GaussianStats& o) {
        n += o.n;
        sum += o.sum;
        sum_sq += o.sum_sq;
        return *this;
    }
};

}  // namespace ssdl
