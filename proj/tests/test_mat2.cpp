#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "ofq/mat2.hpp"

using namespace ofq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("mat2: adjugate inverse solves A * A^-1 = I") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-100.0, 100.0);
    for (int trial = 0; trial < 200; ++trial) {
        Mat2 a{{{u(rng), u(rng)}, {u(rng), u(rng)}}};
        if (std::abs(a.det()) < 1e-6) continue;
        const Mat2 prod = a * a.inverse();
        REQUIRE_THAT(prod(0, 0), WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(prod(1, 1), WithinAbs(1.0, 1e-12));
        REQUIRE_THAT(prod(0, 1), WithinAbs(0.0, 1e-12));
        REQUIRE_THAT(prod(1, 0), WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("mat2: vanishing determinant raises") {
    const Mat2 singular{{{1.0, 2.0}, {2.0, 4.0}}};
    REQUIRE_THROWS_AS(singular.inverse(), SingularMatrixError);
    REQUIRE_THROWS_AS(Mat2::zero().inverse(), SingularMatrixError);
}

TEST_CASE("mat2: spectral radius of known matrices") {
    REQUIRE_THAT(Mat2::diag(0.25, 0.75).spectral_radius(), WithinRel(0.75, 1e-15));
    // [[0,1],[1,0]] has eigenvalues +1/-1
    const Mat2 swap{{{0.0, 1.0}, {1.0, 0.0}}};
    REQUIRE_THAT(swap.spectral_radius(), WithinRel(1.0, 1e-15));
    // nonnegative with known Perron root: [[2,1],[1,2]] -> 3
    const Mat2 m{{{2.0, 1.0}, {1.0, 2.0}}};
    REQUIRE_THAT(m.spectral_radius(), WithinRel(3.0, 1e-14));
}

TEST_CASE("mat2: row-vector and column-vector products") {
    const Mat2 m{{{1.0, 2.0}, {3.0, 4.0}}};
    const Vec2 v{5.0, 6.0};
    const Vec2 row = v * m;  // (5*1+6*3, 5*2+6*4)
    REQUIRE(row[0] == 23.0);
    REQUIRE(row[1] == 34.0);
    const Vec2 col = m * v;  // (1*5+2*6, 3*5+4*6)
    REQUIRE(col[0] == 17.0);
    REQUIRE(col[1] == 39.0);
    REQUIRE(v.sum() == 11.0);
    REQUIRE(m.max_norm() == 4.0);
    REQUIRE(m.row_sum(1) == 7.0);
}
