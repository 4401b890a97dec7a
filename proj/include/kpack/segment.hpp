#pragma once

#include <optional>
#include <utility>

#include "kpack/point.hpp"

namespace kpack::geometry {

struct Segment {
    Point a;
    Point b;
    Segment() = default;
    Segment(Point pa, Point pb) : a(std::move(pa)), b(std::move(pb)) {}
};

enum class SegmentIntersectionKind { Empty, Point, Overlap };

// Exact classification of the intersection of two closed segments:
// nothing, a single point, or a collinear overlapping subsegment.
struct SegmentIntersection {
    SegmentIntersectionKind kind = SegmentIntersectionKind::Empty;
    Point point;        // valid when kind == Point
    Point overlap_a;    // valid when kind == Overlap, overlap_a < overlap_b
    Point overlap_b;

    static SegmentIntersection empty() { return {}; }
    static SegmentIntersection at(Point p) {
        SegmentIntersection r;
        r.kind = SegmentIntersectionKind::Point;
        r.point = std::move(p);
        return r;
    }
    static SegmentIntersection overlap(Point p, Point q) {
        SegmentIntersection r;
        r.kind = SegmentIntersectionKind::Overlap;
        if (q < p) std::swap(p, q);
        r.overlap_a = std::move(p);
        r.overlap_b = std::move(q);
        return r;
    }
};

inline bool point_on_segment(const Point& p, const Segment& s) {
    if (orientation(s.a, s.b, p) != 0) return false;
    return dot(p - s.a, p - s.b) <= 0;
}

// Total function over segments with distinct endpoints.
inline SegmentIntersection segment_intersect(const Segment& s, const Segment& t) {
    Point r = s.b - s.a;
    Point q = t.b - t.a;
    Rational denom = cross(r, q);
    Point ab = t.a - s.a;

    if (sign(denom) != 0) {
        // Lines cross at a unique point; check it lies on both segments.
        Rational u = cross(ab, q) / denom;
        Rational v = cross(ab, r) / denom;
        if (sign(u) < 0 || u > 1 || sign(v) < 0 || v > 1)
            return SegmentIntersection::empty();
        return SegmentIntersection::at({s.a.x + u * r.x, s.a.y + u * r.y});
    }

    // Parallel. Distinct lines: empty.
    if (sign(cross(ab, r)) != 0) return SegmentIntersection::empty();

    // Collinear: project onto the dominant axis of r and intersect intervals.
    auto key = [&](const Point& p) -> Rational {
        return rational_abs(r.x) >= rational_abs(r.y) ? p.x : p.y;
    };
    Point s_lo = s.a, s_hi = s.b, t_lo = t.a, t_hi = t.b;
    if (key(s_hi) < key(s_lo)) std::swap(s_lo, s_hi);
    if (key(t_hi) < key(t_lo)) std::swap(t_lo, t_hi);
    const Point& lo = key(s_lo) >= key(t_lo) ? s_lo : t_lo;
    const Point& hi = key(s_hi) <= key(t_hi) ? s_hi : t_hi;
    int c = cmp(key(lo), key(hi));
    if (c > 0) return SegmentIntersection::empty();
    if (c == 0) return SegmentIntersection::at(lo);
    return SegmentIntersection::overlap(lo, hi);
}

// True iff the segments cross at a single point interior to both.
inline bool proper_crossing(const Segment& s, const Segment& t, Point* where = nullptr) {
    Point r = s.b - s.a;
    Point q = t.b - t.a;
    Rational denom = cross(r, q);
    if (sign(denom) == 0) return false;
    Point ab = t.a - s.a;
    Rational u = cross(ab, q) / denom;
    Rational v = cross(ab, r) / denom;
    if (sign(u) <= 0 || u >= 1 || sign(v) <= 0 || v >= 1) return false;
    if (where) *where = {s.a.x + u * r.x, s.a.y + u * r.y};
    return true;
}

}  // namespace kpack::geometry
