#pragma once

#include <compare>
#include <string>

#include "kpack/rational.hpp"

namespace kpack::geometry {

struct Point {
    Rational x;
    Rational y;

    Point() = default;
    Point(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {}
    Point(long px, long py) : x(px), y(py) {}

    friend bool operator==(const Point& a, const Point& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

    // Lexicographic (x, then y); the library's canonical point order.
    friend bool operator<(const Point& a, const Point& b) {
        int cx = cmp(a.x, b.x);
        if (cx != 0) return cx < 0;
        return a.y < b.y;
    }

    Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }

    std::string str() const { return "(" + rational_str(x) + "," + rational_str(y) + ")"; }
};

inline Rational cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }

// Sign of the signed area of triangle (a, b, c): +1 left turn, -1 right
// turn, 0 collinear.
inline int orientation(const Point& a, const Point& b, const Point& c) {
    return sign(cross(b - a, c - a));
}

// Squared Euclidean distance, exact.
inline Rational dist2(const Point& a, const Point& b) {
    Point d = b - a;
    return d.x * d.x + d.y * d.y;
}

// L-infinity distance, exact.
inline Rational linf_dist(const Point& a, const Point& b) {
    Rational dx = rational_abs(a.x - b.x);
    Rational dy = rational_abs(a.y - b.y);
    return dx > dy ? dx : dy;
}

}  // namespace kpack::geometry
