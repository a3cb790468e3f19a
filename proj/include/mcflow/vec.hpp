#pragma once

#include <cmath>

namespace mcflow {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
    double operator[](int k) const { return k == 0 ? x : y; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

// Symmetric 2x2 matrix.
struct Mat2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    Mat2() = default;
    Mat2(double xx_, double xy_, double yy_) : xx(xx_), xy(xy_), yy(yy_) {}

    static Mat2 identity() { return {1.0, 0.0, 1.0}; }

    Vec2 apply(Vec2 v) const { return {xx * v.x + xy * v.y, xy * v.x + yy * v.y}; }
    Mat2 operator+(Mat2 o) const { return {xx + o.xx, xy + o.xy, yy + o.yy}; }
    Mat2 operator-(Mat2 o) const { return {xx - o.xx, xy - o.xy, yy - o.yy}; }
    Mat2 operator*(double s) const { return {xx * s, xy * s, yy * s}; }

    // Product of two symmetric matrices is not symmetric in general; this
    // returns A*A which is symmetric for symmetric A.
    Mat2 square() const {
        return {xx * xx + xy * xy, xy * (xx + yy), xy * xy + yy * yy};
    }

    double quad(Vec2 v) const { return v.dot(apply(v)); }
    double max_abs() const {
        return std::max(std::abs(xx), std::max(std::abs(xy), std::abs(yy)));
    }
};

}  // namespace mcflow
