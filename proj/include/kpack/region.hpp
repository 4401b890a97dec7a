#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "kpack/polygon.hpp"

namespace kpack::geometry {

// A compact region with finitely many components: outer shells plus hole
// loops, each hole strictly inside one shell. All rings are stored
// counterclockwise; hole orientation is applied contextually. An empty
// region (no shells) is legal and represents the empty set.
struct Region {
    std::vector<SimplePolygon> shells;
    std::vector<SimplePolygon> holes;
    std::vector<int> hole_shell;  // holes[i] lies inside shells[hole_shell[i]]

    Region() = default;
    explicit Region(SimplePolygon shell) { shells.push_back(std::move(shell)); }
    Region(std::vector<SimplePolygon> shells_, std::vector<SimplePolygon> holes_,
           std::vector<int> hole_shell_)
        : shells(std::move(shells_)), holes(std::move(holes_)), hole_shell(std::move(hole_shell_)) {}

    bool is_empty() const { return shells.empty(); }
    int component_count() const { return static_cast<int>(shells.size()); }

    Rational area() const {
        Rational s = 0;
        for (const auto& p : shells) s += p.signed_area_2x();
        for (const auto& p : holes) s -= p.signed_area_2x();
        return s / 2;
    }

    std::vector<Segment> all_boundary_segments() const {
        std::vector<Segment> out;
        for (const auto& p : shells)
            for (size_t i = 0; i < p.size(); ++i) out.push_back(p.edge(i));
        for (const auto& p : holes)
            for (size_t i = 0; i < p.size(); ++i) out.push_back(p.edge(i));
        return out;
    }

    // Shells sorted by lowest-leftmost vertex, rings rotated to start there,
    // holes grouped under their shell in the same order. Canonical form for
    // equality tests.
    void normalize() {
        for (auto& s : shells) s.normalize_rotation();
        for (auto& h : holes) h.normalize_rotation();
        std::vector<int> shell_order(shells.size());
        std::iota(shell_order.begin(), shell_order.end(), 0);
        std::sort(shell_order.begin(), shell_order.end(), [&](int i, int j) {
            return shells[i].lowest_leftmost() < shells[j].lowest_leftmost();
        });
        std::vector<int> shell_rank(shells.size());
        for (size_t r = 0; r < shell_order.size(); ++r) shell_rank[shell_order[r]] = static_cast<int>(r);

        std::vector<SimplePolygon> new_shells;
        new_shells.reserve(shells.size());
        for (int idx : shell_order) new_shells.push_back(std::move(shells[idx]));
        shells = std::move(new_shells);

        std::vector<int> hole_order(holes.size());
        std::iota(hole_order.begin(), hole_order.end(), 0);
        std::sort(hole_order.begin(), hole_order.end(), [&](int i, int j) {
            int si = shell_rank[hole_shell[i]], sj = shell_rank[hole_shell[j]];
            if (si != sj) return si < sj;
            return holes[i].lowest_leftmost() < holes[j].lowest_leftmost();
        });
        std::vector<SimplePolygon> new_holes;
        std::vector<int> new_hole_shell;
        for (int idx : hole_order) {
            new_holes.push_back(std::move(holes[idx]));
            new_hole_shell.push_back(shell_rank[hole_shell[idx]]);
        }
        holes = std::move(new_holes);
        hole_shell = std::move(new_hole_shell);
    }

    friend bool operator==(const Region& a, const Region& b) {
        if (a.shells.size() != b.shells.size() || a.holes.size() != b.holes.size()) return false;
        for (size_t i = 0; i < a.shells.size(); ++i)
            if (a.shells[i].vertices != b.shells[i].vertices) return false;
        for (size_t i = 0; i < a.holes.size(); ++i)
            if (a.holes[i].vertices != b.holes[i].vertices || a.hole_shell[i] != b.hole_shell[i])
                return false;
        return true;
    }

    std::optional<std::string> validate() const {
        if (hole_shell.size() != holes.size()) return "hole/shell assignment size mismatch";
        for (const auto& s : shells)
            if (auto bad = s.validate()) return "shell: " + *bad;
        for (const auto& h : holes)
            if (auto bad = h.validate()) return "hole: " + *bad;
        // Components pairwise disjoint as regions: shell boundaries never
        // meet, and a shell nested inside another must sit inside one of the
        // outer shell's holes.
        auto inside_some_hole_of = [&](size_t shell_idx, const Point& p) {
            for (size_t hi = 0; hi < holes.size(); ++hi)
                if (hole_shell[hi] == static_cast<int>(shell_idx) &&
                    contains_point(holes[hi], p) == Membership::Interior)
                    return true;
            return false;
        };
        for (size_t i = 0; i < shells.size(); ++i) {
            for (size_t j = 0; j < shells.size(); ++j) {
                if (i == j) continue;
                if (j > i) {
                    try {
                        if (!boundary_crossings(boundary_segments(shells[i]),
                                                boundary_segments(shells[j]))
                                 .empty())
                            return "shell boundaries cross";
                    } catch (const DegenerateContact&) {
                        return "shell boundaries touch";
                    }
                }
                if (contains_point(shells[i], shells[j].vertices[0]) == Membership::Interior &&
                    !inside_some_hole_of(i, shells[j].vertices[0]))
                    return "overlapping shells (nested shell not inside a hole)";
            }
        }
        for (size_t i = 0; i < holes.size(); ++i) {
            if (hole_shell[i] < 0 || hole_shell[i] >= static_cast<int>(shells.size()))
                return "hole assigned to missing shell";
            const auto& shell = shells[hole_shell[i]];
            try {
                if (!boundary_crossings(boundary_segments(holes[i]), boundary_segments(shell))
                         .empty())
                    return "hole boundary crosses its shell";
            } catch (const DegenerateContact&) {
                return "hole boundary touches its shell";
            }
            for (const auto& v : holes[i].vertices)
                if (contains_point(shell, v) != Membership::Interior)
                    return "hole not strictly inside its shell";
            for (size_t j = i + 1; j < holes.size(); ++j) {
                try {
                    if (!boundary_crossings(boundary_segments(holes[i]),
                                            boundary_segments(holes[j]))
                             .empty())
                        return "hole boundaries cross";
                } catch (const DegenerateContact&) {
                    return "hole boundaries touch";
                }
                if (hole_shell[i] == hole_shell[j] &&
                    (contains_point(holes[j], holes[i].vertices[0]) != Membership::Exterior ||
                     contains_point(holes[i], holes[j].vertices[0]) != Membership::Exterior))
                    return "nested or overlapping holes of one shell";
            }
        }
        return std::nullopt;
    }
};

struct BBox {
    bool empty = true;
    Rational xmin, xmax, ymin, ymax;

    void expand(const Point& p) {
        if (empty) {
            xmin = xmax = p.x;
            ymin = ymax = p.y;
            empty = false;
            return;
        }
        if (p.x < xmin) xmin = p.x;
        if (p.x > xmax) xmax = p.x;
        if (p.y < ymin) ymin = p.y;
        if (p.y > ymax) ymax = p.y;
    }
    bool overlaps(const BBox& o, const Rational& margin) const {
        if (empty || o.empty) return false;
        return !(xmax + margin < o.xmin || o.xmax + margin < xmin ||
                 ymax + margin < o.ymin || o.ymax + margin < ymin);
    }
    bool contains(const Point& p, const Rational& margin) const {
        if (empty) return false;
        return xmin - margin <= p.x && p.x <= xmax + margin && ymin - margin <= p.y &&
               p.y <= ymax + margin;
    }
};

inline BBox region_bbox(const Region& r) {
    BBox b;
    for (const auto* rings : {&r.shells, &r.holes})
        for (const auto& ring : *rings)
            for (const auto& v : ring.vertices) b.expand(v);
    return b;
}

// Closed-set membership: a point is in the region when it is inside or on a
// shell and not strictly inside any hole of that shell. Components nested
// inside another component's hole are handled by scanning every shell.
inline Membership region_membership(const Region& r, const Point& p) {
    for (size_t si = 0; si < r.shells.size(); ++si) {
        Membership m = contains_point(r.shells[si], p);
        if (m == Membership::Boundary) return Membership::Boundary;
        if (m != Membership::Interior) continue;
        bool in_hole = false;
        for (size_t hi = 0; hi < r.holes.size(); ++hi) {
            if (r.hole_shell[hi] != static_cast<int>(si)) continue;
            Membership hm = contains_point(r.holes[hi], p);
            if (hm == Membership::Boundary) return Membership::Boundary;
            if (hm == Membership::Interior) {
                in_hole = true;
                break;
            }
        }
        if (!in_hole) return Membership::Interior;
    }
    return Membership::Exterior;
}

inline bool region_covers(const Region& r, const Point& p) {
    return region_membership(r, p) != Membership::Exterior;
}

// Nonempty-intersection predicate for two regions in general position:
// boundaries cross, or a shell vertex of one lies in the other. Throws
// DegenerateContact when the boundaries touch without crossing properly.
inline bool region_intersects(const Region& a, const Region& b) {
    if (a.is_empty() || b.is_empty()) return false;
    if (!boundary_crossings(a.all_boundary_segments(), b.all_boundary_segments()).empty())
        return true;
    for (const auto& s : a.shells)
        if (region_covers(b, s.vertices[0])) return true;
    for (const auto& s : b.shells)
        if (region_covers(a, s.vertices[0])) return true;
    return false;
}

}  // namespace kpack::geometry
