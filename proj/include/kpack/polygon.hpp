#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kpack/errors.hpp"
#include "kpack/segment.hpp"

namespace kpack::geometry {

enum class Membership { Interior, Boundary, Exterior };

// A simple polygon, stored counterclockwise (signed area strictly positive).
// Models a closed region: boundary plus interior.
struct SimplePolygon {
    std::vector<Point> vertices;
    std::string id;

    SimplePolygon() = default;
    explicit SimplePolygon(std::vector<Point> vs, std::string label = "")
        : vertices(std::move(vs)), id(std::move(label)) {}

    size_t size() const { return vertices.size(); }
    const Point& vertex(size_t i) const { return vertices[i % vertices.size()]; }
    Segment edge(size_t i) const { return {vertex(i), vertex(i + 1)}; }

    // Twice the signed area; positive for counterclockwise rings.
    Rational signed_area_2x() const {
        Rational s = 0;
        for (size_t i = 0; i < vertices.size(); ++i) s += cross(vertex(i), vertex(i + 1));
        return s;
    }
    Rational area() const { return signed_area_2x() / 2; }

    bool is_convex() const {
        for (size_t i = 0; i < vertices.size(); ++i)
            if (orientation(vertex(i), vertex(i + 1), vertex(i + 2)) <= 0) return false;
        return true;
    }

    void reverse() { std::reverse(vertices.begin(), vertices.end()); }

    // Rotates the vertex list so it starts at the lexicographically smallest
    // vertex. Canonical form for equality tests.
    void normalize_rotation() {
        if (vertices.empty()) return;
        auto lo = std::min_element(vertices.begin(), vertices.end());
        std::rotate(vertices.begin(), lo, vertices.end());
    }

    Point lowest_leftmost() const { return *std::min_element(vertices.begin(), vertices.end()); }

    // nullopt when valid, else a reason. Checks: >= 3 vertices, consecutive
    // vertices distinct, no three consecutive collinear, positive signed
    // area, and no contact between non-adjacent edges.
    std::optional<std::string> validate() const {
        size_t n = vertices.size();
        if (n < 3) return "fewer than 3 vertices";
        for (size_t i = 0; i < n; ++i) {
            if (vertex(i) == vertex(i + 1)) return "repeated consecutive vertex " + vertex(i).str();
            if (orientation(vertex(i), vertex(i + 1), vertex(i + 2)) == 0)
                return "three consecutive collinear vertices at " + vertex(i + 1).str();
        }
        if (sign(signed_area_2x()) <= 0) return "not counterclockwise (signed area <= 0)";
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = i + 1; j < n; ++j) {
                bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
                auto isect = segment_intersect(edge(i), edge(j));
                if (adjacent) {
                    if (isect.kind == SegmentIntersectionKind::Overlap)
                        return "adjacent edges overlap near " + vertex(j).str();
                    continue;  // the shared endpoint is the expected single point
                }
                if (isect.kind != SegmentIntersectionKind::Empty)
                    return "non-adjacent edges " + std::to_string(i) + "," + std::to_string(j) +
                           " intersect";
            }
        }
        return std::nullopt;
    }
};

// Exact point membership by crossing parity, with explicit boundary handling.
inline Membership contains_point(const SimplePolygon& poly, const Point& p) {
    bool odd = false;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& a = poly.vertex(i);
        const Point& b = poly.vertex(i + 1);
        if (point_on_segment(p, {a, b})) return Membership::Boundary;
        // Count edges crossing the rightward ray from p, half-open in y so a
        // vertex on the ray is counted exactly once.
        bool up = a.y <= p.y && p.y < b.y;
        bool down = b.y <= p.y && p.y < a.y;
        if (up && orientation(a, b, p) < 0) odd = !odd;
        if (down && orientation(a, b, p) > 0) odd = !odd;
    }
    return odd ? Membership::Interior : Membership::Exterior;
}

// All transversal crossing points between the boundaries of two edge sets
// belonging to distinct members. Throws DegenerateContact on any tangential
// touch, shared vertex, endpoint-on-edge, or collinear overlap.
inline std::vector<Point> boundary_crossings(const std::vector<Segment>& as,
                                             const std::vector<Segment>& bs) {
    std::vector<Point> out;
    for (const Segment& ea : as) {
        for (const Segment& eb : bs) {
            if (std::max(ea.a.x, ea.b.x) < std::min(eb.a.x, eb.b.x) ||
                std::max(eb.a.x, eb.b.x) < std::min(ea.a.x, ea.b.x) ||
                std::max(ea.a.y, ea.b.y) < std::min(eb.a.y, eb.b.y) ||
                std::max(eb.a.y, eb.b.y) < std::min(ea.a.y, ea.b.y))
                continue;
            auto isect = segment_intersect(ea, eb);
            switch (isect.kind) {
                case SegmentIntersectionKind::Empty:
                    break;
                case SegmentIntersectionKind::Overlap:
                    throw DegenerateContact("boundaries share a segment near " +
                                            isect.overlap_a.str());
                case SegmentIntersectionKind::Point: {
                    const Point& p = isect.point;
                    if (p == ea.a || p == ea.b || p == eb.a || p == eb.b)
                        throw DegenerateContact("boundaries touch at " + p.str());
                    out.push_back(p);
                    break;
                }
            }
        }
    }
    return out;
}

inline std::vector<Segment> boundary_segments(const SimplePolygon& poly) {
    std::vector<Segment> out;
    out.reserve(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) out.push_back(poly.edge(i));
    return out;
}

// Number of proper boundary crossing points between two simple polygons in
// general position. A pair is a pseudodisc pair when this is at most 2.
inline int crossing_count(const SimplePolygon& a, const SimplePolygon& b) {
    auto pts = boundary_crossings(boundary_segments(a), boundary_segments(b));
    std::set<Point> distinct(pts.begin(), pts.end());
    return static_cast<int>(distinct.size());
}

inline bool is_pseudodisc_pair(const SimplePolygon& a, const SimplePolygon& b) {
    return crossing_count(a, b) <= 2;
}

}  // namespace kpack::geometry
