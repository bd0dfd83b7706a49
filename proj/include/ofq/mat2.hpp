#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "ofq/error.hpp"

namespace ofq {

struct Vec2 {
    double x[2]{0.0, 0.0};

    double& operator[](std::size_t i) { return x[i]; }
    double operator[](std::size_t i) const { return x[i]; }

    double sum() const { return x[0] + x[1]; }

    friend Vec2 operator+(Vec2 a, const Vec2& b) {
        a.x[0] += b.x[0];
        a.x[1] += b.x[1];
        return a;
    }
    friend Vec2 operator*(double s, Vec2 v) {
        v.x[0] *= s;
        v.x[1] *= s;
        return v;
    }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Dense 2x2 matrix, row major. Big enough for the two-phase chain, small
/// enough that every operation is written out explicitly.
struct Mat2 {
    double m[2][2]{{0.0, 0.0}, {0.0, 0.0}};

    static Mat2 identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }
    static Mat2 zero() { return {}; }
    static Mat2 diag(double d0, double d1) { return {{{d0, 0.0}, {0.0, d1}}}; }

    double& operator()(std::size_t r, std::size_t c) { return m[r][c]; }
    double operator()(std::size_t r, std::size_t c) const { return m[r][c]; }

    friend Mat2 operator+(const Mat2& a, const Mat2& b) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
        return r;
    }
    friend Mat2 operator-(const Mat2& a, const Mat2& b) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
        return r;
    }
    friend Mat2 operator*(double s, const Mat2& a) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = s * a.m[i][j];
        return r;
    }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
        return r;
    }
    /// Row vector times matrix.
    friend Vec2 operator*(const Vec2& v, const Mat2& a) {
        Vec2 r;
        r.x[0] = v.x[0] * a.m[0][0] + v.x[1] * a.m[1][0];
        r.x[1] = v.x[0] * a.m[0][1] + v.x[1] * a.m[1][1];
        return r;
    }
    /// Matrix times column vector.
    friend Vec2 operator*(const Mat2& a, const Vec2& v) {
        Vec2 r;
        r.x[0] = a.m[0][0] * v.x[0] + a.m[0][1] * v.x[1];
        r.x[1] = a.m[1][0] * v.x[0] + a.m[1][1] * v.x[1];
        return r;
    }
    friend bool operator==(const Mat2&, const Mat2&) = default;

    double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    double max_norm() const {
        double r = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r = std::max(r, std::abs(m[i][j]));
        return r;
    }

    double row_sum(std::size_t r) const { return m[r][0] + m[r][1]; }

    /// Explicit adjugate inverse; throws when |det| < 1e-300.
    Mat2 inverse() const {
        const double d = det();
        if (std::abs(d) < 1e-300) {
            throw SingularMatrixError("2x2 inverse: determinant magnitude below 1e-300");
        }
        Mat2 r;
        r.m[0][0] = m[1][1] / d;
        r.m[0][1] = -m[0][1] / d;
        r.m[1][0] = -m[1][0] / d;
        r.m[1][1] = m[0][0] / d;
        return r;
    }

    /// Largest eigenvalue magnitude. For the nonnegative matrices used here
    /// the discriminant (a-d)^2 + 4bc is nonnegative and the Perron root is
    /// real; complex pairs fall back to sqrt(|det|).
    double spectral_radius() const {
        const double tr = m[0][0] + m[1][1];
        const double disc = tr * tr - 4.0 * det();
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            return std::max(std::abs((tr + s) / 2.0), std::abs((tr - s) / 2.0));
        }
        return std::sqrt(std::abs(det()));
    }
};

}  // namespace ofq
