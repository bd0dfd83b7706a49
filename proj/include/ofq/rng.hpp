#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "ofq/error.hpp"
#include "ofq/hyperexp.hpp"

namespace ofq {

/// SplitMix64 mixing function (Steele/Vigna).
inline std::uint64_t splitmix64_mix(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Derives an independent substream seed from a base seed and stream index.
inline std::uint64_t derive_stream_seed(std::uint64_t base_seed, std::uint64_t stream) {
    return splitmix64_mix(base_seed + (stream + 1) * kGoldenGamma);
}

/// Counter-based SplitMix64 generator: output k is mix(seed + (k+1)*gamma).
/// Splittable via derive_stream_seed, trivially reproducible, and the whole
/// state is one counter.
class SplitMix64 {
public:
    static constexpr const char* kAlgorithmName = "splitmix64";

    SplitMix64() = default;
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGoldenGamma;
        return splitmix64_mix(state_);
    }

    /// Uniform draw on the open interval (0,1); never returns 0 or 1.
    double next_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t state_ = 0;
};

enum class ServicePhase { packet_in, direct };

/// Inverse-transform exponential sample -ln(u)/rate.
inline double sample_exponential(double rate, double uniform) {
    if (!(uniform > 0.0 && uniform < 1.0)) {
        throw InvalidParameterError("uniform variate must lie in (0,1) exclusive: " +
                                    std::to_string(uniform));
    }
    return -std::log(uniform) / rate;
}

/// Service time of one packet in the given phase of the hyperexponential law.
inline double sample_service(ServicePhase phase, const HyperExpService& svc, double uniform) {
    svc.validate();
    const double rate = phase == ServicePhase::packet_in ? svc.mu1 : svc.mu2;
    return sample_exponential(rate, uniform);
}

}  // namespace ofq
