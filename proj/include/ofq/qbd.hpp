#pragma once

// Quasi-birth-death model of the M/H2/1 switch queue. The CTMC tracks
// (level, phase): the level counts packets in the node, the phase is the
// service class of the packet at the server. Levels >= 1 repeat with blocks
// (a0, a1, a2); level 0 is the single empty state with its own boundary
// blocks. The stationary distribution is matrix-geometric,
// pi_k = pi_1 * R^(k-1), with R the minimal nonnegative solution of
// R^2*a2 + R*a1 + a0 = 0.

#include <cmath>
#include <cstdint>
#include <string>

#include "ofq/error.hpp"
#include "ofq/hyperexp.hpp"
#include "ofq/mat2.hpp"

namespace ofq {

/// Generator blocks of the level-and-phase chain.
///
/// Repeating part (levels >= 1):
///   a0 = lambda * I             arrivals keep the in-service phase
///   a1 = -diag(lambda + mu_i)   holding rates
///   a2[i][j] = mu_i * beta_j    completion at rate mu_i, next packet's
///                               class drawn i.i.d. from beta = (p, 1-p)
/// Boundary (empty state):
///   b00 = -lambda, b01 = lambda * beta (arriving packet picks its class),
///   b10 = (mu1, mu2)^T (service completion into the empty state).
struct QbdBlocks {
    Mat2 a0;
    Mat2 a1;
    Mat2 a2;
    double boundary_b00 = 0.0;
    Vec2 boundary_b01;
    Vec2 boundary_b10;

    double arrival_rate() const { return a0(0, 0); }

    /// Per-phase service rates, recovered from the a2 row sums.
    Vec2 service_rates() const { return {a2.row_sum(0), a2.row_sum(1)}; }

    /// Phase-selection distribution beta, recovered from a2.
    Vec2 phase_split() const {
        const Vec2 mu = service_rates();
        return {a2(0, 0) / mu[0], a2(0, 1) / mu[0]};
    }

    /// lambda * E[S] of the underlying queue.
    double utilization() const {
        const Vec2 mu = service_rates();
        const Vec2 beta = phase_split();
        return arrival_rate() * (beta[0] / mu[0] + beta[1] / mu[1]);
    }
};

/// Builds the level-and-phase generator blocks of an M/H2/1 queue.
/// Throws InvalidParameterError on lambda <= 0 or invalid service law.
inline QbdBlocks build_qbd_blocks(const HyperExpService& svc, double lambda) {
    svc.validate();
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidParameterError("arrival rate must be positive and finite: " +
                                    std::to_string(lambda));
    }
    const double p = svc.p_packet_in;
    QbdBlocks blocks;
    blocks.a0 = lambda * Mat2::identity();
    blocks.a1 = Mat2::diag(-(lambda + svc.mu1), -(lambda + svc.mu2));
    blocks.a2 = {{{svc.mu1 * p, svc.mu1 * (1.0 - p)}, {svc.mu2 * p, svc.mu2 * (1.0 - p)}}};
    blocks.boundary_b00 = -lambda;
    blocks.boundary_b01 = {lambda * p, lambda * (1.0 - p)};
    blocks.boundary_b10 = {svc.mu1, svc.mu2};
    return blocks;
}

/// Default residual target and iteration cap for solve_rate_matrix.
inline constexpr double kRateMatrixTol = 1e-12;
inline constexpr int kRateMatrixMaxIter = 100000;

// Successive-iterate threshold. The leftover error in R after stopping is
// about diff * sp(R)/(1 - sp(R)), and E[N] amplifies it by another
// 1/(1 - sp(R)); driving the iterates to ~1e-15 keeps E[N] good to ~1e-12
// even at utilization 0.95.
inline constexpr double kRateMatrixDiffTol = 1e-15;

/// Minimal nonnegative solution R of R^2*a2 + R*a1 + a0 = 0 by the fixed
/// point R <- -(a0 + R^2*a2) * a1^{-1} started from R = 0. The iterates
/// increase monotonically to the minimal solution; iteration stops once
/// successive iterates agree to kRateMatrixDiffTol in max norm AND the
/// quadratic residual satisfies ||R^2*a2 + R*a1 + a0||_max <= tol * ||a0||_max.
///
/// Throws InstabilityError when the offered load is at or above the
/// stability guard, ConvergenceError when max_iter is exhausted.
inline Mat2 solve_rate_matrix(const QbdBlocks& blocks, double tol = kRateMatrixTol,
                              int max_iter = kRateMatrixMaxIter) {
    if (!(tol > 0.0)) {
        throw InvalidParameterError("tolerance must be positive");
    }
    const double util = blocks.utilization();
    if (!is_stable_load(util)) {
        throw InstabilityError("queue unstable: utilization " + std::to_string(util) +
                                   " >= 1",
                               util);
    }

    const Mat2 neg_a1_inv = ((-1.0) * blocks.a1).inverse();
    const double residual_target = tol * blocks.a0.max_norm();

    Mat2 r = Mat2::zero();
    double residual = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        const Mat2 next = (blocks.a0 + r * r * blocks.a2) * neg_a1_inv;
        const double diff = (next - r).max_norm();
        r = next;
        residual = (r * r * blocks.a2 + r * blocks.a1 + blocks.a0).max_norm();
        if (diff <= kRateMatrixDiffTol && residual <= residual_target) {
            return r;
        }
    }
    throw ConvergenceError("rate matrix iteration did not reach residual " +
                               std::to_string(residual_target) + " within " +
                               std::to_string(max_iter) + " iterations (residual " +
                               std::to_string(residual) + ")",
                           residual);
}

/// Matrix-geometric stationary distribution of the switch chain:
/// pi_0 scalar, pi_k = pi_1 * R^(k-1) for k >= 1.
struct StationaryDistribution {
    double pi0 = 0.0;
    Vec2 pi1;
    Mat2 rate_matrix_r;
    double spectral_radius_r = 0.0;

    /// Phase-resolved level-k probabilities pi_k.
    Vec2 level_vector(std::uint32_t k) const {
        if (k == 0) {
            return {pi0, 0.0};
        }
        Vec2 v = pi1;
        for (std::uint32_t i = 1; i < k; ++i) v = v * rate_matrix_r;
        return v;
    }

    /// Scalar "probability of k packets" marginal, pi_k * 1.
    double level_probability(std::uint32_t k) const {
        return k == 0 ? pi0 : level_vector(k).sum();
    }

    /// pi_0 + pi_1 (I - R)^{-1} 1; equals 1 after normalization.
    double total_mass() const {
        const Mat2 inv = (Mat2::identity() - rate_matrix_r).inverse();
        return pi0 + (pi1 * inv).sum();
    }
};

/// Solves the boundary of the chain given R and normalizes.
///
/// Level-1 balance with pi_2 = pi_1 R gives
///   pi_1 (a1 + R a2) = -pi_0 * b01,
/// and normalization fixes pi_0 + pi_1 (I-R)^{-1} 1 = 1. Level-0 balance
/// (lambda pi_0 = pi_1 . b10) then holds by generator conservativity.
inline StationaryDistribution solve_boundary(const QbdBlocks& blocks, const Mat2& r) {
    const Mat2 u = blocks.a1 + r * blocks.a2;
    const Vec2 pi1_unnormalized = (-1.0) * (blocks.boundary_b01 * u.inverse());
    const Mat2 geo_inv = (Mat2::identity() - r).inverse();
    const double total = 1.0 + (pi1_unnormalized * geo_inv).sum();

    StationaryDistribution dist;
    dist.pi0 = 1.0 / total;
    dist.pi1 = (1.0 / total) * pi1_unnormalized;
    dist.rate_matrix_r = r;
    dist.spectral_radius_r = r.spectral_radius();
    return dist;
}

}  // namespace ofq
