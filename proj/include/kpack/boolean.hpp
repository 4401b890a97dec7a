#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "kpack/planar.hpp"

namespace kpack::geometry {

namespace detail {

// Boundary cycles of a set of faces in a subdivision, walked with the set
// on the left. Returns one vertex loop per cycle; positive signed area means
// an outer boundary.
struct FaceSetBoundary {
    std::vector<std::vector<Point>> loops;
    std::vector<Rational> areas2x;
};

inline FaceSetBoundary trace_face_set_boundary(const planar::Subdivision& sub,
                                               const std::vector<char>& in_set) {
    FaceSetBoundary out;
    std::vector<char> used(sub.half_edges.size(), 0);
    auto is_boundary = [&](int h) {
        return in_set[sub.face_of(h)] && !in_set[sub.face_of(sub.half_edges[h].twin)];
    };
    for (size_t h0 = 0; h0 < sub.half_edges.size(); ++h0) {
        if (used[h0] || !is_boundary(static_cast<int>(h0))) continue;
        std::vector<Point> loop;
        Rational area2x = 0;
        int h = static_cast<int>(h0);
        do {
            used[h] = 1;
            loop.push_back(sub.vertex_pos[sub.half_edges[h].origin]);
            area2x += cross(sub.vertex_pos[sub.half_edges[h].origin],
                            sub.vertex_pos[sub.half_edges[h].target]);
            int e = sub.half_edges[h].next;
            while (in_set[sub.face_of(sub.half_edges[e].twin)])
                e = sub.half_edges[sub.half_edges[e].twin].next;
            h = e;
        } while (h != static_cast<int>(h0));
        out.loops.push_back(std::move(loop));
        out.areas2x.push_back(std::move(area2x));
    }
    return out;
}

// Removes collinear run-through vertices (subdivision split points that did
// not become corners of the extracted ring).
inline std::vector<Point> strip_collinear(std::vector<Point> loop) {
    std::vector<Point> out;
    size_t n = loop.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& prev = loop[(i + n - 1) % n];
        const Point& cur = loop[i];
        const Point& next = loop[(i + 1) % n];
        if (orientation(prev, cur, next) != 0) out.push_back(cur);
    }
    return out;
}

// Assembles a region from face-set boundary loops: positive loops are
// shells, negative loops become holes of the shell that contains them.
inline Region region_from_boundary(const FaceSetBoundary& boundary) {
    Region region;
    std::vector<size_t> shell_loop_idx;
    for (size_t i = 0; i < boundary.loops.size(); ++i) {
        if (sign(boundary.areas2x[i]) > 0) {
            region.shells.emplace_back(strip_collinear(boundary.loops[i]));
            shell_loop_idx.push_back(i);
        }
    }
    for (size_t i = 0; i < boundary.loops.size(); ++i) {
        if (sign(boundary.areas2x[i]) >= 0) continue;
        SimplePolygon hole(strip_collinear(boundary.loops[i]));
        hole.reverse();  // store counterclockwise
        // owner: the innermost shell strictly containing the hole loop
        int owner = -1;
        Rational owner_area;
        const Point& probe = hole.vertices[0];
        for (size_t s = 0; s < region.shells.size(); ++s) {
            if (planar::detail::point_in_loop(probe, boundary.loops[shell_loop_idx[s]])) {
                const Rational& a = boundary.areas2x[shell_loop_idx[s]];
                if (owner == -1 || a < owner_area) {
                    owner = static_cast<int>(s);
                    owner_area = a;
                }
            }
        }
        if (owner == -1) throw std::logic_error("hole loop outside every shell");
        region.holes.push_back(std::move(hole));
        region.hole_shell.push_back(owner);
    }
    region.normalize();
    return region;
}

}  // namespace detail

// Exact intersection of two closed regions. Throws DegenerateContact when
// the boundaries touch without crossing transversally.
inline Region boolean_intersection(const Region& a, const Region& b) {
    if (a.is_empty() || b.is_empty()) return Region{};
    Family pair;
    pair.members.push_back({"a", a});
    pair.members.push_back({"b", b});
    planar::Subdivision sub;
    try {
        sub = planar::build_subdivision(pair);
    } catch (const GeneralPositionViolation& e) {
        throw DegenerateContact(e.locus);
    }
    std::vector<char> in_set(sub.faces.size(), 0);
    bool any = false;
    for (size_t f = 0; f < sub.faces.size(); ++f) {
        in_set[f] = sub.faces[f].coverage.test(0) && sub.faces[f].coverage.test(1);
        any = any || in_set[f];
    }
    if (!any) return Region{};
    return detail::region_from_boundary(detail::trace_face_set_boundary(sub, in_set));
}

// Y_i = X_i ∩ X_pivot for every member except the pivot, ids preserved,
// empty results retained.
inline std::vector<Member> project_onto(const Family& fam, size_t pivot) {
    if (pivot >= fam.size()) throw std::invalid_argument("pivot out of range");
    std::vector<Member> out;
    for (size_t i = 0; i < fam.size(); ++i) {
        if (i == pivot) continue;
        out.push_back({fam.id(i), boolean_intersection(fam.region(i), fam.region(pivot))});
    }
    return out;
}

}  // namespace kpack::geometry
