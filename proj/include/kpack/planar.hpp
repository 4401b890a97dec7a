#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kpack/family.hpp"

namespace kpack::planar {

using geometry::Family;
using geometry::Point;
using geometry::Segment;

// Membership bitset over family indices.
struct CoverBits {
    std::vector<uint64_t> words;

    explicit CoverBits(size_t n = 0) : words((n + 63) / 64, 0) {}
    bool test(size_t i) const { return (words[i / 64] >> (i % 64)) & 1; }
    void set(size_t i) { words[i / 64] |= uint64_t{1} << (i % 64); }
    void clear(size_t i) { words[i / 64] &= ~(uint64_t{1} << (i % 64)); }
    int count() const {
        int c = 0;
        for (uint64_t w : words) c += __builtin_popcountll(w);
        return c;
    }
    bool operator==(const CoverBits& o) const { return words == o.words; }
    std::vector<int> members() const {
        std::vector<int> out;
        for (size_t w = 0; w < words.size(); ++w)
            for (uint64_t bits = words[w]; bits; bits &= bits - 1)
                out.push_back(static_cast<int>(w * 64 + __builtin_ctzll(bits)));
        return out;
    }
};

// The planar subdivision induced by all member boundaries of a family:
// vertices (ring vertices plus pairwise crossings), twinned half-edges with
// next-links tracing each face with its interior on the left, and faces
// labeled with the exact set of members covering them.
//
// Construction validates general position as a side effect: any tangency,
// shared vertex, overlap, or triple point raises GeneralPositionViolation.
struct Subdivision {
    struct HalfEdge {
        int origin = -1;
        int target = -1;
        int twin = -1;
        int next = -1;
        int member = -1;          // family index of the boundary carrying this edge
        bool member_on_left = false;  // true when the member's region lies left of origin->target
        int cycle = -1;
    };

    struct Cycle {
        std::vector<int> half_edges;
        Rational area2x;      // positive: outer boundary of a bounded face
        int component = -1;
        int face = -1;
    };

    struct Face {
        int outer_cycle = -1;  // -1 for the unbounded face
        std::vector<int> inner_cycles;
        CoverBits coverage;
        Rational area2x;       // meaningful for bounded faces only
        bool bounded() const { return outer_cycle >= 0; }
        int depth() const { return coverage.count(); }
    };

    size_t n_members = 0;
    std::vector<Point> vertex_pos;
    std::vector<HalfEdge> half_edges;
    std::vector<Cycle> cycles;
    std::vector<Face> faces;  // faces[0] is the unbounded face
    int n_components = 0;

    int face_of(int he) const { return cycles[half_edges[he].cycle].face; }
    size_t num_vertices() const { return vertex_pos.size(); }
    size_t num_edges() const { return half_edges.size() / 2; }
    size_t num_faces() const { return faces.size(); }

    int max_depth() const {
        int d = 0;
        for (const auto& f : faces) d = std::max(d, f.depth());
        return d;
    }

    // Bounded faces covered by no member.
    int hole_count() const {
        int h = 0;
        for (const auto& f : faces)
            if (f.bounded() && f.depth() == 0) ++h;
        return h;
    }

    // Arc-connected components of the closed union: faces of depth >= 1
    // merged across shared edges and shared vertices.
    int union_component_count() const;

    // An interior point of a bounded face, exact.
    Point face_interior_point(int face_idx) const;

    // min over bounded faces of 2*area/perimeter, in double precision; a
    // lower-bound style estimate of the smallest face inradius.
    double min_feature_estimate() const;
};

namespace detail {

// CCW angular order of direction vectors starting just above the positive
// x-axis. Returns true when a precedes b strictly.
inline bool direction_less(const Point& a, const Point& b) {
    auto half = [](const Point& d) {
        return (sign(d.y) > 0 || (sign(d.y) == 0 && sign(d.x) > 0)) ? 0 : 1;
    };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return sign(cross(a, b)) > 0;
}

// Parity test of point p against a closed vertex loop; p must not lie on
// the loop.
inline bool point_in_loop(const Point& p, const std::vector<Point>& loop) {
    bool odd = false;
    size_t n = loop.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& a = loop[i];
        const Point& b = loop[(i + 1) % n];
        bool up = a.y <= p.y && p.y < b.y;
        bool down = b.y <= p.y && p.y < a.y;
        if (up && geometry::orientation(a, b, p) < 0) odd = !odd;
        if (down && geometry::orientation(a, b, p) > 0) odd = !odd;
    }
    return odd;
}

struct DirectedSegment {
    Point a;
    Point b;
    int member;
};

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(size_t n) : parent(n) {
        for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace detail

inline Subdivision build_subdivision(const Family& fam) {
    using detail::DirectedSegment;

    Subdivision sub;
    sub.n_members = fam.size();

    // Emit member boundaries with the region on the left: shells as stored
    // (counterclockwise), hole loops reversed.
    std::vector<DirectedSegment> segs;
    for (size_t m = 0; m < fam.size(); ++m) {
        const auto& region = fam.region(m);
        for (const auto& shell : region.shells)
            for (size_t i = 0; i < shell.size(); ++i)
                segs.push_back({shell.vertex(i), shell.vertex(i + 1), static_cast<int>(m)});
        for (const auto& hole : region.holes)
            for (size_t i = 0; i < hole.size(); ++i)
                segs.push_back({hole.vertex(i + 1), hole.vertex(i), static_cast<int>(m)});
    }

    // Pairwise crossings between distinct members; reject every degeneracy.
    std::vector<std::vector<Point>> splits(segs.size());
    std::map<Point, std::pair<int, int>> crossing_owner;
    for (size_t i = 0; i < segs.size(); ++i) {
        for (size_t j = i + 1; j < segs.size(); ++j) {
            if (segs[i].member == segs[j].member) continue;
            // bbox reject
            if (std::max(segs[i].a.x, segs[i].b.x) < std::min(segs[j].a.x, segs[j].b.x) ||
                std::max(segs[j].a.x, segs[j].b.x) < std::min(segs[i].a.x, segs[i].b.x) ||
                std::max(segs[i].a.y, segs[i].b.y) < std::min(segs[j].a.y, segs[j].b.y) ||
                std::max(segs[j].a.y, segs[j].b.y) < std::min(segs[i].a.y, segs[i].b.y))
                continue;
            auto isect = geometry::segment_intersect({segs[i].a, segs[i].b}, {segs[j].a, segs[j].b});
            if (isect.kind == geometry::SegmentIntersectionKind::Empty) continue;
            std::string who = fam.id(segs[i].member) + "," + fam.id(segs[j].member);
            if (isect.kind == geometry::SegmentIntersectionKind::Overlap)
                throw GeneralPositionViolation(who, "shared boundary segment near " +
                                                        isect.overlap_a.str());
            const Point& p = isect.point;
            if (p == segs[i].a || p == segs[i].b || p == segs[j].a || p == segs[j].b)
                throw GeneralPositionViolation(who, "boundaries touch at " + p.str());
            auto [it, fresh] =
                crossing_owner.emplace(p, std::make_pair(segs[i].member, segs[j].member));
            if (!fresh) {
                auto [m1, m2] = it->second;
                if (m1 != segs[i].member || m2 != segs[j].member)
                    throw GeneralPositionViolation(
                        fam.id(m1) + "," + fam.id(m2) + "," + who,
                        "three boundaries through " + p.str());
                throw GeneralPositionViolation(who, "boundaries tangent at " + p.str());
            }
            splits[i].push_back(p);
            splits[j].push_back(p);
        }
    }

    // Intern vertices in lexicographic order for deterministic ids.
    std::vector<Point> all_points;
    for (const auto& s : segs) all_points.push_back(s.a);
    for (const auto& sp : splits) all_points.insert(all_points.end(), sp.begin(), sp.end());
    std::sort(all_points.begin(), all_points.end());
    all_points.erase(std::unique(all_points.begin(), all_points.end()), all_points.end());
    sub.vertex_pos = all_points;
    std::map<Point, int> vertex_id;
    for (size_t i = 0; i < all_points.size(); ++i) vertex_id.emplace(all_points[i], static_cast<int>(i));

    // Split segments and emit twinned half-edges.
    for (size_t i = 0; i < segs.size(); ++i) {
        std::vector<Point> chain;
        chain.push_back(segs[i].a);
        std::sort(splits[i].begin(), splits[i].end(), [&](const Point& p, const Point& q) {
            // order along the segment direction
            Point d = segs[i].b - segs[i].a;
            Rational kp = dot(p - segs[i].a, d), kq = dot(q - segs[i].a, d);
            return kp < kq;
        });
        for (const auto& p : splits[i]) chain.push_back(p);
        chain.push_back(segs[i].b);
        for (size_t c = 0; c + 1 < chain.size(); ++c) {
            int u = vertex_id.at(chain[c]);
            int v = vertex_id.at(chain[c + 1]);
            int h = static_cast<int>(sub.half_edges.size());
            Subdivision::HalfEdge fwd, bwd;
            fwd.origin = u;
            fwd.target = v;
            fwd.twin = h + 1;
            fwd.member = segs[i].member;
            fwd.member_on_left = true;
            bwd.origin = v;
            bwd.target = u;
            bwd.twin = h;
            bwd.member = segs[i].member;
            bwd.member_on_left = false;
            sub.half_edges.push_back(fwd);
            sub.half_edges.push_back(bwd);
        }
    }

    // Sort outgoing half-edges around each vertex counterclockwise.
    std::vector<std::vector<int>> outgoing(sub.vertex_pos.size());
    for (size_t h = 0; h < sub.half_edges.size(); ++h)
        outgoing[sub.half_edges[h].origin].push_back(static_cast<int>(h));
    for (auto& out : outgoing) {
        std::sort(out.begin(), out.end(), [&](int ha, int hb) {
            const auto& ea = sub.half_edges[ha];
            const auto& eb = sub.half_edges[hb];
            Point da = sub.vertex_pos[ea.target] - sub.vertex_pos[ea.origin];
            Point db = sub.vertex_pos[eb.target] - sub.vertex_pos[eb.origin];
            return detail::direction_less(da, db);
        });
        for (size_t i = 1; i < out.size(); ++i) {
            const auto& ea = sub.half_edges[out[i - 1]];
            const auto& eb = sub.half_edges[out[i]];
            Point da = sub.vertex_pos[ea.target] - sub.vertex_pos[ea.origin];
            Point db = sub.vertex_pos[eb.target] - sub.vertex_pos[eb.origin];
            if (!detail::direction_less(da, db))
                throw GeneralPositionViolation(fam.id(ea.member) + "," + fam.id(eb.member),
                                               "coincident edge directions at " +
                                                   sub.vertex_pos[ea.origin].str());
        }
    }

    // next(h): the clockwise-next outgoing edge after twin(h) around the
    // target vertex; traces every face with its interior on the left.
    for (size_t h = 0; h < sub.half_edges.size(); ++h) {
        int v = sub.half_edges[h].target;
        const auto& out = outgoing[v];
        int twin = sub.half_edges[h].twin;
        auto it = std::find(out.begin(), out.end(), twin);
        size_t idx = static_cast<size_t>(it - out.begin());
        sub.half_edges[h].next = out[(idx + out.size() - 1) % out.size()];
    }

    // Trace cycles.
    for (size_t h0 = 0; h0 < sub.half_edges.size(); ++h0) {
        if (sub.half_edges[h0].cycle >= 0) continue;
        Subdivision::Cycle cyc;
        int cyc_id = static_cast<int>(sub.cycles.size());
        int h = static_cast<int>(h0);
        Rational area2x = 0;
        do {
            sub.half_edges[h].cycle = cyc_id;
            cyc.half_edges.push_back(h);
            area2x += cross(sub.vertex_pos[sub.half_edges[h].origin],
                            sub.vertex_pos[sub.half_edges[h].target]);
            h = sub.half_edges[h].next;
        } while (h != static_cast<int>(h0));
        cyc.area2x = area2x;
        sub.cycles.push_back(std::move(cyc));
    }

    // Connected components over vertices.
    detail::DisjointSet dsu(sub.vertex_pos.size());
    for (size_t h = 0; h < sub.half_edges.size(); h += 2)
        dsu.unite(sub.half_edges[h].origin, sub.half_edges[h].target);
    std::map<int, int> comp_id;
    for (auto& cyc : sub.cycles) {
        int root = dsu.find(sub.half_edges[cyc.half_edges[0]].origin);
        auto [it, fresh] = comp_id.emplace(root, static_cast<int>(comp_id.size()));
        cyc.component = it->second;
    }
    sub.n_components = static_cast<int>(comp_id.size());

    // Each component has exactly one negative cycle: its outer contour.
    std::vector<int> hull_of_component(sub.n_components, -1);
    for (size_t c = 0; c < sub.cycles.size(); ++c) {
        if (sign(sub.cycles[c].area2x) == 0)
            throw std::logic_error("degenerate zero-area cycle");
        if (sign(sub.cycles[c].area2x) < 0) {
            if (hull_of_component[sub.cycles[c].component] != -1)
                throw std::logic_error("component with two outer contours");
            hull_of_component[sub.cycles[c].component] = static_cast<int>(c);
        }
    }
    for (int c = 0; c < sub.n_components; ++c)
        if (hull_of_component[c] == -1) throw std::logic_error("component without outer contour");

    // Faces: the unbounded face, then one face per positive cycle, ordered
    // canonically by the rotated vertex sequence of the outer cycle.
    auto cycle_key = [&](int c) {
        std::vector<int> vs;
        for (int h : sub.cycles[c].half_edges) vs.push_back(sub.half_edges[h].origin);
        auto lo = std::min_element(vs.begin(), vs.end());
        std::rotate(vs.begin(), lo, vs.end());
        return vs;
    };
    std::vector<int> positive_cycles;
    for (size_t c = 0; c < sub.cycles.size(); ++c)
        if (sign(sub.cycles[c].area2x) > 0) positive_cycles.push_back(static_cast<int>(c));
    std::sort(positive_cycles.begin(), positive_cycles.end(),
              [&](int a, int b) { return cycle_key(a) < cycle_key(b); });

    sub.faces.emplace_back();  // unbounded
    for (int c : positive_cycles) {
        Subdivision::Face f;
        f.outer_cycle = c;
        f.area2x = sub.cycles[c].area2x;
        sub.cycles[c].face = static_cast<int>(sub.faces.size());
        sub.faces.push_back(std::move(f));
    }

    // Assign every component's outer contour to the face that contains the
    // component: the innermost positive cycle of another component enclosing
    // a representative vertex, or the unbounded face.
    std::vector<std::vector<Point>> cycle_loop(sub.cycles.size());
    for (size_t c = 0; c < sub.cycles.size(); ++c)
        for (int h : sub.cycles[c].half_edges)
            cycle_loop[c].push_back(sub.vertex_pos[sub.half_edges[h].origin]);

    for (int comp = 0; comp < sub.n_components; ++comp) {
        int hull = hull_of_component[comp];
        const Point& rep = sub.vertex_pos[sub.half_edges[sub.cycles[hull].half_edges[0]].origin];
        int best = -1;
        for (int c : positive_cycles) {
            if (sub.cycles[c].component == comp) continue;
            if (!detail::point_in_loop(rep, cycle_loop[c])) continue;
            if (best == -1 || sub.cycles[c].area2x < sub.cycles[best].area2x) best = c;
        }
        int face = best == -1 ? 0 : sub.cycles[best].face;
        sub.cycles[hull].face = face;
        sub.faces[face].inner_cycles.push_back(hull);
        if (face != 0) sub.faces[face].area2x += sub.cycles[hull].area2x;
    }

    // Coverage: breadth-first from the unbounded face, toggling the edge's
    // member when stepping across it. Revisits must agree exactly.
    std::vector<char> visited(sub.faces.size(), 0);
    for (auto& f : sub.faces) f.coverage = CoverBits(fam.size());
    std::queue<int> bfs;
    bfs.push(0);
    visited[0] = 1;
    while (!bfs.empty()) {
        int f = bfs.front();
        bfs.pop();
        std::vector<int> boundary_cycles = sub.faces[f].inner_cycles;
        if (sub.faces[f].outer_cycle >= 0) boundary_cycles.push_back(sub.faces[f].outer_cycle);
        for (int c : boundary_cycles) {
            for (int h : sub.cycles[c].half_edges) {
                const auto& he = sub.half_edges[h];
                int g = sub.face_of(he.twin);
                CoverBits cov = sub.faces[f].coverage;
                if (he.member_on_left) {
                    if (!cov.test(he.member))
                        throw std::logic_error("coverage underflow across edge");
                    cov.clear(he.member);
                } else {
                    if (cov.test(he.member))
                        throw std::logic_error("coverage overflow across edge");
                    cov.set(he.member);
                }
                if (!visited[g]) {
                    visited[g] = 1;
                    sub.faces[g].coverage = cov;
                    bfs.push(g);
                } else if (!(sub.faces[g].coverage == cov)) {
                    throw std::logic_error("inconsistent coverage labeling");
                }
            }
        }
    }
    for (char v : visited)
        if (!v) throw std::logic_error("unreachable face in coverage labeling");
    if (sub.faces[0].depth() != 0) throw std::logic_error("unbounded face has nonzero depth");

    // Euler relation for planar subdivisions, per connected component.
    long long V = static_cast<long long>(sub.num_vertices());
    long long E = static_cast<long long>(sub.num_edges());
    long long F = static_cast<long long>(sub.num_faces());
    if (V - E + F != 1 + sub.n_components)
        throw std::logic_error("Euler relation violated: V-E+F != 1+components");

    return sub;
}

inline int Subdivision::union_component_count() const {
    detail::DisjointSet dsu(faces.size());
    // across edges
    for (size_t h = 0; h < half_edges.size(); h += 2) {
        int f = face_of(static_cast<int>(h));
        int g = face_of(half_edges[h].twin);
        if (faces[f].depth() >= 1 && faces[g].depth() >= 1) dsu.unite(f, g);
    }
    // across vertices
    std::vector<std::vector<int>> faces_at_vertex(vertex_pos.size());
    for (size_t h = 0; h < half_edges.size(); ++h)
        faces_at_vertex[half_edges[h].origin].push_back(face_of(static_cast<int>(h)));
    for (const auto& fs : faces_at_vertex) {
        int first = -1;
        for (int f : fs) {
            if (faces[f].depth() < 1) continue;
            if (first == -1)
                first = f;
            else
                dsu.unite(first, f);
        }
    }
    std::set<int> roots;
    for (size_t f = 0; f < faces.size(); ++f)
        if (faces[f].depth() >= 1) roots.insert(dsu.find(static_cast<int>(f)));
    return static_cast<int>(roots.size());
}

inline Point Subdivision::face_interior_point(int face_idx) const {
    const Face& f = faces[face_idx];
    if (!f.bounded()) throw std::invalid_argument("interior point of unbounded face");
    // A horizontal chord just above the lowest boundary vertex avoids all
    // boundary vertices, so its first crossing interval lies in the face.
    std::vector<int> boundary_cycles = f.inner_cycles;
    boundary_cycles.push_back(f.outer_cycle);
    bool have_y1 = false;
    Rational y1, y2;
    bool have_y2 = false;
    for (int c : boundary_cycles) {
        for (int h : cycles[c].half_edges) {
            const Rational& y = vertex_pos[half_edges[h].origin].y;
            if (!have_y1 || y < y1) {
                if (have_y1 && (!have_y2 || y1 < y2)) {
                    y2 = y1;
                    have_y2 = true;
                }
                y1 = y;
                have_y1 = true;
            } else if (y != y1 && (!have_y2 || y < y2)) {
                y2 = y;
                have_y2 = true;
            }
        }
    }
    if (!have_y2) throw std::logic_error("flat face boundary");
    Rational ystar = (y1 + y2) / 2;
    std::vector<Rational> xs;
    for (int c : boundary_cycles) {
        for (int h : cycles[c].half_edges) {
            const Point& a = vertex_pos[half_edges[h].origin];
            const Point& b = vertex_pos[half_edges[h].target];
            if ((a.y < ystar && ystar < b.y) || (b.y < ystar && ystar < a.y))
                xs.push_back(a.x + (ystar - a.y) * (b.x - a.x) / (b.y - a.y));
        }
    }
    std::sort(xs.begin(), xs.end());
    if (xs.size() < 2) throw std::logic_error("chord misses face");
    return {(xs[0] + xs[1]) / 2, ystar};
}

inline double Subdivision::min_feature_estimate() const {
    double best = -1;
    for (const auto& f : faces) {
        if (!f.bounded()) continue;
        double per = 0;
        std::vector<int> bc = f.inner_cycles;
        bc.push_back(f.outer_cycle);
        for (int c : bc) {
            for (int h : cycles[c].half_edges) {
                const Point& a = vertex_pos[half_edges[h].origin];
                const Point& b = vertex_pos[half_edges[h].target];
                double dx = rational_double(b.x - a.x), dy = rational_double(b.y - a.y);
                per += std::sqrt(dx * dx + dy * dy);
            }
        }
        if (per <= 0) continue;
        double feat = rational_double(f.area2x) / per;  // 2*area/perimeter
        if (best < 0 || feat < best) best = feat;
    }
    return best;
}

}  // namespace kpack::planar
