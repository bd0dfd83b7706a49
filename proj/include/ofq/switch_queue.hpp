#pragma once

#include <string>
#include <utility>

#include "ofq/error.hpp"
#include "ofq/hyperexp.hpp"
#include "ofq/metrics.hpp"
#include "ofq/qbd.hpp"

namespace ofq {

struct SwitchSolution {
    StationaryDistribution dist;
    QueueMetrics metrics;
};

inline void require_stable_switch(const HyperExpService& svc, double lambda) {
    const double util = switch_utilization(svc, lambda);
    if (!is_stable_load(util)) {
        throw InstabilityError("switch queue unstable: utilization " + std::to_string(util) +
                                   " >= 1",
                               util);
    }
}

/// Full matrix-geometric solve of one M/H2/1 switch queue.
///
/// E[N] uses the closed geometric form pi_1 (I-R)^{-2} 1 (no truncation);
/// E[T] follows by Little's law.
inline SwitchSolution solve_switch_queue(const HyperExpService& svc, double lambda) {
    const QbdBlocks blocks = build_qbd_blocks(svc, lambda);
    require_stable_switch(svc, lambda);
    const Mat2 r = solve_rate_matrix(blocks);
    StationaryDistribution dist = solve_boundary(blocks, r);

    const Mat2 geo_inv = (Mat2::identity() - r).inverse();
    const double mean_n = (dist.pi1 * (geo_inv * geo_inv)).sum();
    const double util = switch_utilization(svc, lambda);
    return {std::move(dist), QueueMetrics::from_mean_queue_len(util, mean_n, lambda)};
}

/// Pollaczek-Khinchine mean for the M/G/1 class that contains M/H2/1:
/// E[N] = u + lambda^2 E[S^2] / (2 (1 - u)). Serves as the independent
/// analytic route against the matrix-geometric solve.
inline QueueMetrics pollaczek_khinchine_mean(const HyperExpService& svc, double lambda) {
    svc.validate();
    if (!(lambda > 0.0)) {
        throw InvalidParameterError("arrival rate must be positive: " + std::to_string(lambda));
    }
    require_stable_switch(svc, lambda);
    const double util = switch_utilization(svc, lambda);
    const double mean_n = util + lambda * lambda * svc.second_moment() / (2.0 * (1.0 - util));
    return QueueMetrics::from_mean_queue_len(util, mean_n, lambda);
}

}  // namespace ofq
