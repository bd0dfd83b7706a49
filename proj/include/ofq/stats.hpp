#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace ofq {

/// Point estimate with a 95% confidence half-width.
struct MeanCi {
    double mean = 0.0;
    double ci_half = 0.0;
    std::size_t count = 0;
};

inline constexpr std::size_t kBatchCount = 20;

// Student-t 0.975 quantile at 19 degrees of freedom (20 batches).
inline constexpr double kT975Df19 = 2.093024054408263;

/// Non-overlapping batch-means estimator over a steady-state series.
/// The mean uses every sample; the half-width comes from kBatchCount equal
/// batches over the leading samples (the < kBatchCount tail is left out of
/// the variance estimate). Fewer than 2 samples per batch yields a zero
/// half-width.
inline MeanCi batch_means_ci(std::span<const double> samples) {
    MeanCi out;
    out.count = samples.size();
    if (samples.empty()) {
        return out;
    }
    double total = 0.0;
    for (double v : samples) total += v;
    out.mean = total / static_cast<double>(samples.size());

    const std::size_t batch_size = samples.size() / kBatchCount;
    if (batch_size < 2) {
        return out;
    }
    double batch_mean[kBatchCount];
    for (std::size_t b = 0; b < kBatchCount; ++b) {
        double sum = 0.0;
        for (std::size_t i = b * batch_size; i < (b + 1) * batch_size; ++i) sum += samples[i];
        batch_mean[b] = sum / static_cast<double>(batch_size);
    }
    double grand = 0.0;
    for (double v : batch_mean) grand += v;
    grand /= static_cast<double>(kBatchCount);
    double var = 0.0;
    for (double v : batch_mean) var += (v - grand) * (v - grand);
    var /= static_cast<double>(kBatchCount - 1);
    out.ci_half = kT975Df19 * std::sqrt(var / static_cast<double>(kBatchCount));
    return out;
}

}  // namespace ofq
