#pragma once

#include <cmath>
#include <string>

#include "ofq/error.hpp"
#include "ofq/metrics.hpp"

namespace ofq {

/// Controller service rate for packet-in messages. The rate folds the
/// switch-to-controller transmission time into 1/mu_c.
struct ControllerParams {
    double mu_c = 0.0;  ///< messages/second, > 0

    void validate() const {
        if (!(mu_c > 0.0) || !std::isfinite(mu_c)) {
            throw InvalidParameterError("mu_c must be positive and finite: " +
                                        std::to_string(mu_c));
        }
    }

    friend bool operator==(const ControllerParams&, const ControllerParams&) = default;
};

namespace detail {
inline void check_controller_load(const ControllerParams& params, double lambda_c) {
    params.validate();
    if (!(lambda_c >= 0.0) || !std::isfinite(lambda_c)) {
        throw InvalidParameterError("packet-in rate must be nonnegative: " +
                                    std::to_string(lambda_c));
    }
    if (lambda_c >= params.mu_c) {
        throw InstabilityError("controller unstable: packet-in rate " +
                                   std::to_string(lambda_c) + " >= mu_c " +
                                   std::to_string(params.mu_c),
                               lambda_c / params.mu_c);
    }
}
}  // namespace detail

/// M/M/1 mean number of packet-in messages, lambda_c / (mu_c - lambda_c).
inline double controller_mean_queue(const ControllerParams& params, double lambda_c) {
    detail::check_controller_load(params, lambda_c);
    return lambda_c / (params.mu_c - lambda_c);
}

/// M/M/1 mean sojourn 1 / (mu_c - lambda_c); at lambda_c = 0 this is the
/// pure service time.
inline double controller_mean_sojourn(const ControllerParams& params, double lambda_c) {
    detail::check_controller_load(params, lambda_c);
    return 1.0 / (params.mu_c - lambda_c);
}

inline QueueMetrics controller_metrics(const ControllerParams& params, double lambda_c) {
    detail::check_controller_load(params, lambda_c);
    return {lambda_c / params.mu_c, controller_mean_queue(params, lambda_c),
            controller_mean_sojourn(params, lambda_c)};
}

}  // namespace ofq
