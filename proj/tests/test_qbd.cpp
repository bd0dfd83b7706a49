#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ofq/qbd.hpp"
#include "ofq/switch_queue.hpp"

using namespace ofq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// p x utilization grid shared by several properties
struct GridPoint {
    HyperExpService svc;
    double lambda;
};

std::vector<GridPoint> stability_grid() {
    std::vector<GridPoint> grid;
    for (double p : {0.0, 0.04, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        for (double util : {0.1, 0.5, 0.9, 0.95}) {
            HyperExpService svc{p, 32000.0, 64000.0};
            grid.push_back({svc, util / svc.mean_service_time()});
        }
    }
    return grid;
}

}  // namespace

TEST_CASE("qbd blocks: identical phases make completion rows symmetric") {
    const QbdBlocks blocks = build_qbd_blocks({0.5, 64000.0, 64000.0}, 20000.0);
    REQUIRE(blocks.a0 == 20000.0 * Mat2::identity());
    REQUIRE(blocks.a2(0, 0) == 32000.0);
    REQUIRE(blocks.a2(0, 1) == 32000.0);
    REQUIRE(blocks.a2(1, 0) == 32000.0);
    REQUIRE(blocks.a2(1, 1) == 32000.0);
}

TEST_CASE("qbd blocks: completion block is mu_i times beta_j") {
    const QbdBlocks blocks = build_qbd_blocks({0.1, 32000.0, 64000.0}, 30000.0);
    REQUIRE(blocks.a2(0, 0) == 3200.0);
    REQUIRE(blocks.a2(0, 1) == 28800.0);
    REQUIRE(blocks.a2(1, 0) == 6400.0);
    REQUIRE(blocks.a2(1, 1) == 57600.0);
    REQUIRE(blocks.a1 == Mat2::diag(-62000.0, -94000.0));
    REQUIRE(blocks.boundary_b01[0] == 3000.0);
    REQUIRE(blocks.boundary_b01[1] == 27000.0);
    REQUIRE(blocks.boundary_b10[0] == 32000.0);
    REQUIRE(blocks.boundary_b10[1] == 64000.0);
}

TEST_CASE("qbd blocks: p=1 zeroes the phase-2 column") {
    const QbdBlocks blocks = build_qbd_blocks({1.0, 32000.0, 64000.0}, 30000.0);
    REQUIRE(blocks.a2(0, 1) == 0.0);
    REQUIRE(blocks.a2(1, 1) == 0.0);
    REQUIRE(blocks.a2(0, 0) == 32000.0);
    REQUIRE(blocks.a2(1, 0) == 64000.0);
    REQUIRE(blocks.boundary_b01[1] == 0.0);
}

TEST_CASE("qbd blocks: invalid parameters are rejected") {
    REQUIRE_THROWS_AS(build_qbd_blocks({0.1, 32000.0, 64000.0}, 0.0), InvalidParameterError);
    REQUIRE_THROWS_AS(build_qbd_blocks({0.1, 32000.0, 64000.0}, -5.0), InvalidParameterError);
    REQUIRE_THROWS_AS(build_qbd_blocks({1.2, 32000.0, 64000.0}, 1000.0), InvalidParameterError);
    REQUIRE_THROWS_AS(build_qbd_blocks({0.1, 0.0, 64000.0}, 1000.0), InvalidParameterError);
    REQUIRE_THROWS_AS(build_qbd_blocks({0.1, 32000.0, -1.0}, 1000.0), InvalidParameterError);
}

TEST_CASE("qbd generator: every row sums to zero") {
    // exact for the round grid rates
    const QbdBlocks blocks = build_qbd_blocks({0.1, 32000.0, 64000.0}, 30000.0);
    REQUIRE(blocks.boundary_b00 + blocks.boundary_b01.sum() == 0.0);
    for (int i = 0; i < 2; ++i) {
        REQUIRE(blocks.boundary_b10[i] + blocks.a1.row_sum(i) + blocks.a0.row_sum(i) == 0.0);
        REQUIRE(blocks.a2.row_sum(i) + blocks.a1.row_sum(i) + blocks.a0.row_sum(i) == 0.0);
    }

    // random parameters stay conservative to rounding noise
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> prob(0.0, 1.0);
    std::uniform_real_distribution<double> rate(10.0, 1e6);
    for (int trial = 0; trial < 300; ++trial) {
        const HyperExpService svc{prob(rng), rate(rng), rate(rng)};
        const double lambda = rate(rng);
        const QbdBlocks b = build_qbd_blocks(svc, lambda);
        const double scale = lambda + svc.mu1 + svc.mu2;
        REQUIRE_THAT(b.boundary_b00 + b.boundary_b01.sum(), WithinAbs(0.0, 1e-9 * scale));
        for (int i = 0; i < 2; ++i) {
            REQUIRE_THAT(b.boundary_b10[i] + b.a1.row_sum(i) + b.a0.row_sum(i),
                         WithinAbs(0.0, 1e-9 * scale));
            REQUIRE_THAT(b.a2.row_sum(i) + b.a1.row_sum(i) + b.a0.row_sum(i),
                         WithinAbs(0.0, 1e-9 * scale));
        }
    }
}

TEST_CASE("rate matrix: degenerate p=1 keeps the geometric ratio on the live phase") {
    const QbdBlocks blocks = build_qbd_blocks({1.0, 32000.0, 64000.0}, 30000.0);
    const Mat2 r = solve_rate_matrix(blocks);

    // live phase: arrivals from empty always pick phase 1, so pi_k follows
    // ratio lambda/mu1 = 0.9375 there
    REQUIRE_THAT(r(0, 0), WithinRel(0.9375, 1e-12));
    REQUIRE_THAT(r(0, 1), WithinAbs(0.0, 1e-15));
    // remaining entries of the minimal solution, frozen from the quadratic
    REQUIRE_THAT(r(1, 0), WithinRel(0.29920212765957444, 1e-10));
    REQUIRE_THAT(r(1, 1), WithinRel(30000.0 / 94000.0, 1e-10));

    const StationaryDistribution dist = solve_boundary(blocks, r);
    REQUIRE_THAT(dist.pi1[1], WithinAbs(0.0, 1e-18));
    for (std::uint32_t k = 1; k <= 6; ++k) {
        REQUIRE_THAT(dist.level_probability(k + 1) / dist.level_probability(k),
                     WithinRel(0.9375, 1e-10));
    }
}

TEST_CASE("rate matrix: identical phases collapse to the M/M/1 level ratio") {
    const QbdBlocks blocks = build_qbd_blocks({0.5, 64000.0, 64000.0}, 20000.0);
    const Mat2 r = solve_rate_matrix(blocks);
    const StationaryDistribution dist = solve_boundary(blocks, r);
    for (std::uint32_t k = 0; k <= 6; ++k) {
        REQUIRE_THAT(dist.level_probability(k + 1) / dist.level_probability(k),
                     WithinRel(0.3125, 1e-11));
    }
}

TEST_CASE("rate matrix: residual, nonnegativity and spectral radius across the grid") {
    for (const auto& [svc, lambda] : stability_grid()) {
        const QbdBlocks blocks = build_qbd_blocks(svc, lambda);
        const Mat2 r = solve_rate_matrix(blocks);
        const double residual =
            (r * r * blocks.a2 + r * blocks.a1 + blocks.a0).max_norm();
        REQUIRE(residual <= kRateMatrixTol * blocks.a0.max_norm());
        REQUIRE(r(0, 0) >= 0.0);
        REQUIRE(r(0, 1) >= 0.0);
        REQUIRE(r(1, 0) >= 0.0);
        REQUIRE(r(1, 1) >= 0.0);
        REQUIRE(r.spectral_radius() < 1.0);
    }
}

TEST_CASE("rate matrix: instability and non-convergence raise") {
    const QbdBlocks unstable = build_qbd_blocks({1.0, 32000.0, 64000.0}, 33000.0);
    REQUIRE_THROWS_AS(solve_rate_matrix(unstable), InstabilityError);
    try {
        solve_rate_matrix(unstable);
        FAIL("expected InstabilityError");
    } catch (const InstabilityError& e) {
        REQUIRE_THAT(e.utilization(), WithinRel(1.03125, 1e-12));
    }

    const QbdBlocks ok = build_qbd_blocks({0.5, 32000.0, 64000.0}, 20000.0);
    REQUIRE_THROWS_AS(solve_rate_matrix(ok, kRateMatrixTol, 2), ConvergenceError);
    REQUIRE_THROWS_AS(solve_rate_matrix(ok, -1.0), InvalidParameterError);
}

TEST_CASE("stationary distribution: normalization, balance and utilization") {
    for (const auto& [svc, lambda] : stability_grid()) {
        const auto [dist, metrics] = solve_switch_queue(svc, lambda);
        REQUIRE_THAT(dist.total_mass(), WithinAbs(1.0, 1e-10));
        // level-0 balance follows from conservativity, so it cross-checks the
        // boundary solve
        const QbdBlocks blocks = build_qbd_blocks(svc, lambda);
        const double out_rate = lambda * dist.pi0;
        const double in_rate = dist.pi1[0] * blocks.boundary_b10[0] +
                               dist.pi1[1] * blocks.boundary_b10[1];
        REQUIRE_THAT(in_rate / out_rate, WithinAbs(1.0, 1e-10));
        // the server idles exactly 1 - utilization of the time
        REQUIRE_THAT(1.0 - dist.pi0, WithinAbs(metrics.utilization, 1e-10));
        REQUIRE(dist.spectral_radius_r < 1.0);
        REQUIRE(dist.pi1[0] >= 0.0);
        REQUIRE(dist.pi1[1] >= 0.0);
    }
}

TEST_CASE("stationary distribution: level marginals form a distribution") {
    const auto [dist, metrics] = solve_switch_queue({0.3, 32000.0, 64000.0}, 25000.0);
    double mass = 0.0;
    double mean = 0.0;
    for (std::uint32_t k = 0; k <= 2000; ++k) {
        const double pk = dist.level_probability(k);
        REQUIRE(pk >= 0.0);
        mass += pk;
        mean += k * pk;
    }
    REQUIRE_THAT(mass, WithinAbs(1.0, 1e-10));
    // truncated first moment approaches the closed-form E[N]
    REQUIRE_THAT(mean, WithinRel(metrics.mean_queue_len, 1e-9));
}
