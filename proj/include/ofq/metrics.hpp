#pragma once

namespace ofq {

/// Steady-state summary of one solved queueing node. mean_sojourn_s is tied
/// to mean_queue_len by Little's law at construction.
struct QueueMetrics {
    double utilization = 0.0;     ///< offered load, dimensionless, < 1
    double mean_queue_len = 0.0;  ///< E[N], packets in the node (incl. in service)
    double mean_sojourn_s = 0.0;  ///< E[T], seconds

    /// Builds metrics from E[N] and the arrival rate; E[T] = E[N] / lambda.
    static QueueMetrics from_mean_queue_len(double utilization, double mean_queue_len,
                                            double lambda) {
        return {utilization, mean_queue_len, mean_queue_len / lambda};
    }

    friend bool operator==(const QueueMetrics&, const QueueMetrics&) = default;
};

}  // namespace ofq
