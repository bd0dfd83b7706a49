#pragma once

#include <cmath>
#include <string>

#include "ofq/error.hpp"

namespace ofq {

/// Two-phase hyperexponential service law of a switch. A packet is a
/// packet-in with probability p_packet_in and is then served at rate mu1
/// (table miss, controller round trip folded into the rate); otherwise it is
/// forwarded directly at rate mu2.
struct HyperExpService {
    double p_packet_in = 0.0;  ///< probability of the packet-in path, in [0,1]
    double mu1 = 0.0;          ///< packet-in service rate, packets/s, > 0
    double mu2 = 0.0;          ///< direct-forward service rate, packets/s, > 0

    double mean_service_time() const {
        return p_packet_in / mu1 + (1.0 - p_packet_in) / mu2;
    }

    /// E[S^2] of the hyperexponential mixture.
    double second_moment() const {
        return 2.0 * p_packet_in / (mu1 * mu1) + 2.0 * (1.0 - p_packet_in) / (mu2 * mu2);
    }

    bool is_valid() const {
        return p_packet_in >= 0.0 && p_packet_in <= 1.0 && mu1 > 0.0 && mu2 > 0.0 &&
               std::isfinite(mu1) && std::isfinite(mu2) && std::isfinite(p_packet_in) &&
               std::isfinite(mean_service_time()) && mean_service_time() > 0.0;
    }

    void validate() const {
        if (!(p_packet_in >= 0.0 && p_packet_in <= 1.0) || !std::isfinite(p_packet_in)) {
            throw InvalidParameterError("p_packet_in out of [0,1]: " + std::to_string(p_packet_in));
        }
        if (!(mu1 > 0.0) || !std::isfinite(mu1)) {
            throw InvalidParameterError("mu1 must be positive and finite: " + std::to_string(mu1));
        }
        if (!(mu2 > 0.0) || !std::isfinite(mu2)) {
            throw InvalidParameterError("mu2 must be positive and finite: " + std::to_string(mu2));
        }
    }

    friend bool operator==(const HyperExpService&, const HyperExpService&) = default;
};

/// Offered load lambda * E[S] of an M/H2/1 switch queue.
inline double switch_utilization(const HyperExpService& svc, double lambda) {
    return lambda * svc.mean_service_time();
}

/// Stability guard band: loads in [1 - 1e-9, inf) are treated as unstable to
/// keep (I - R) comfortably nonsingular.
inline constexpr double kStabilityGuard = 1e-9;

inline bool is_stable_load(double utilization) {
    return utilization < 1.0 - kStabilityGuard;
}

}  // namespace ofq
