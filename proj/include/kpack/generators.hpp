#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "kpack/family.hpp"

namespace kpack::generators {

using geometry::Family;
using geometry::Member;
using geometry::Point;
using geometry::Region;
using geometry::SimplePolygon;

// Deterministic randomness: std::mt19937_64 (fully specified by the
// standard) with explicit rejection sampling; std:: distributions are
// implementation-defined and would break bit-reproducibility.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}

    uint64_t below(uint64_t n) {
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = eng();
        } while (v >= limit);
        return v % n;
    }
    long range(long lo, long hi) {  // inclusive ends
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }
    // uniform lattice rational in [lo, hi] with denominator lattice
    Rational lattice(const Rational& lo, const Rational& hi, long denom) {
        Rational l = lo * denom, h = hi * denom;
        mpz_class lz, hz;
        mpz_cdiv_q(lz.get_mpz_t(), l.get_num_mpz_t(), l.get_den_mpz_t());
        mpz_fdiv_q(hz.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
        long a = lz.get_si(), b = hz.get_si();
        if (b < a) throw std::invalid_argument("empty lattice interval");
        return Rational(range(a, b), denom);
    }
    double unit() { return static_cast<double>(below(1ull << 53)) / static_cast<double>(1ull << 53); }
};

struct GeneratorSpec {
    std::string kind;  // discs | fat_triangles | rectangles | grid_bars | k_layers
    long n = 0;        // members (per layer for k_layers)
    long ell = 0;      // grid_bars size
    long k = 1;        // layer count for k_layers
    uint64_t seed = 0;
    long window = 16;                       // members placed in [0,window]^2
    long m_sides = 32;                      // polygonal disc resolution
    Rational min_clearance = Rational(1, 16);  // rejection threshold for near-degeneracies
    double fat_min_angle_deg = 30.0;
    std::string layer_kind = "discs";       // shape used inside k_layers
};

namespace detail {

constexpr long kLattice = 4096;  // coordinate denominator for sampled vertices
constexpr int kRetriesPerMember = 1000;

// Incremental general-position and clearance state: per accepted member,
// its ring vertices plus every crossing point it participates in, behind a
// bounding-box prefilter.
struct PlacementState {
    std::vector<Member> accepted;
    std::vector<geometry::BBox> boxes;
    std::vector<std::vector<Point>> member_points;
    std::vector<std::vector<geometry::Segment>> member_segs;
    Rational min_clearance;

    explicit PlacementState(Rational clearance) : min_clearance(std::move(clearance)) {}

    // Validates the candidate against every accepted member; on success
    // returns the new crossing points, otherwise nullopt.
    std::optional<std::vector<Point>> try_place(const Region& cand, int max_crossings_per_pair,
                                                bool layered,
                                                const std::vector<char>& same_layer) const {
        auto cand_segs = cand.all_boundary_segments();
        geometry::BBox cand_box = geometry::region_bbox(cand);
        std::vector<Point> cand_vertices;
        for (const auto* rings : {&cand.shells, &cand.holes})
            for (const auto& ring : *rings)
                cand_vertices.insert(cand_vertices.end(), ring.vertices.begin(),
                                     ring.vertices.end());

        std::vector<Point> new_crossings;
        for (size_t i = 0; i < accepted.size(); ++i) {
            if (!cand_box.overlaps(boxes[i], min_clearance)) continue;
            for (const auto& q : member_points[i]) {
                if (!cand_box.contains(q, min_clearance)) continue;
                for (const auto& v : cand_vertices)
                    if (geometry::linf_dist(v, q) < min_clearance) return std::nullopt;
            }
            std::vector<Point> pts;
            try {
                pts = geometry::boundary_crossings(member_segs[i], cand_segs);
            } catch (const DegenerateContact&) {
                return std::nullopt;
            }
            if (max_crossings_per_pair >= 0 &&
                static_cast<int>(pts.size()) > max_crossings_per_pair)
                return std::nullopt;
            bool intersects = !pts.empty();
            if (!intersects) intersects = geometry::region_intersects(accepted[i].region, cand);
            if (layered && same_layer[i] && intersects) return std::nullopt;
            for (const auto& p : pts) {
                for (const auto& v : cand_vertices)
                    if (geometry::linf_dist(p, v) < min_clearance) return std::nullopt;
                for (const auto& q : new_crossings)
                    if (geometry::linf_dist(p, q) < min_clearance) return std::nullopt;
                new_crossings.push_back(p);
            }
        }
        // new crossings near features of members other than their own pair
        for (const auto& p : new_crossings) {
            for (size_t j = 0; j < accepted.size(); ++j) {
                if (!boxes[j].contains(p, min_clearance)) continue;
                for (const auto& q : member_points[j])
                    if (geometry::linf_dist(p, q) < min_clearance) return std::nullopt;
            }
        }
        return new_crossings;
    }

    void commit(Member m, const std::vector<Point>& new_crossings) {
        std::vector<Point> pts;
        for (const auto* rings : {&m.region.shells, &m.region.holes})
            for (const auto& ring : *rings)
                pts.insert(pts.end(), ring.vertices.begin(), ring.vertices.end());
        pts.insert(pts.end(), new_crossings.begin(), new_crossings.end());
        boxes.push_back(geometry::region_bbox(m.region));
        member_segs.push_back(m.region.all_boundary_segments());
        member_points.push_back(std::move(pts));
        // a crossing involves one earlier member; index it there as well so
        // later clearance scans see it
        for (const auto& p : new_crossings)
            for (size_t i = 0; i < accepted.size(); ++i)
                if (boxes[i].contains(p, Rational(0))) member_points[i].push_back(p);
        accepted.push_back(std::move(m));
    }
};

inline SimplePolygon sample_disc_polygon(Rng& rng, long window, long m_sides, const Rational& rmin,
                                         const Rational& rmax) {
    Rational margin = rmax + Rational(1, 4);
    Rational cx = rng.lattice(margin, Rational(window) - margin, kLattice);
    Rational cy = rng.lattice(margin, Rational(window) - margin, kLattice);
    Rational r = rng.lattice(rmin, rmax, kLattice);
    double rd = rational_double(r);
    double phase = rng.unit() * 2.0 * M_PI / static_cast<double>(m_sides);
    std::vector<Point> vs;
    vs.reserve(m_sides);
    for (long j = 0; j < m_sides; ++j) {
        double th = phase + 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(m_sides);
        long dx = std::llround(rd * std::cos(th) * kLattice);
        long dy = std::llround(rd * std::sin(th) * kLattice);
        vs.emplace_back(cx + Rational(dx, kLattice), cy + Rational(dy, kLattice));
    }
    return SimplePolygon(std::move(vs));
}

inline SimplePolygon sample_rectangle(Rng& rng, long window) {
    Rational w = rng.lattice(Rational(1, 2), Rational(3), kLattice);
    Rational h = rng.lattice(Rational(1, 2), Rational(3), kLattice);
    Rational x0 = rng.lattice(Rational(1, 4), Rational(window) - w - Rational(1, 4), kLattice);
    Rational y0 = rng.lattice(Rational(1, 4), Rational(window) - h - Rational(1, 4), kLattice);
    return SimplePolygon({{x0, y0}, {x0 + w, y0}, {x0 + w, y0 + h}, {x0, y0 + h}});
}

// cos^2 upper bound for "angle >= requested", nudged up by one lattice step
// so rational vertex rounding cannot make a maximally fat request (e.g. 60
// degrees, whose exact realization has irrational coordinates) unsatisfiable.
inline Rational fatness_cos2_bound(double min_angle_deg) {
    double c = std::cos(min_angle_deg * M_PI / 180.0);
    long scaled = std::llround(c * c * 1048576.0) + 1;
    return Rational(scaled, 1048576);
}

inline bool all_angles_fat(const SimplePolygon& tri, const Rational& cos2_bound) {
    for (size_t i = 0; i < tri.size(); ++i) {
        Point u = tri.vertex(i + tri.size() - 1) - tri.vertex(i);
        Point v = tri.vertex(i + 1) - tri.vertex(i);
        Rational d = dot(u, v);
        if (sign(d) < 0) continue;  // obtuse, certainly above any bound <= 90
        if (d * d > cos2_bound * dot(u, u) * dot(v, v)) return false;
    }
    return true;
}

inline SimplePolygon sample_fat_triangle(Rng& rng, long window, double min_angle_deg) {
    double theta = min_angle_deg * M_PI / 180.0;
    Rational rmax(2);
    Rational margin = rmax + Rational(1, 4);
    Rational cx = rng.lattice(margin, Rational(window) - margin, kLattice);
    Rational cy = rng.lattice(margin, Rational(window) - margin, kLattice);
    Rational r = rng.lattice(Rational(1), rmax, kLattice);
    double rd = rational_double(r);
    // inscribed-angle construction: arcs of at least 2*theta give angles of
    // at least theta
    double slack = 2.0 * M_PI - 6.0 * theta;
    double u1 = rng.unit() * slack, u2 = rng.unit() * slack;
    if (u2 < u1) std::swap(u1, u2);
    double arcs[3] = {2.0 * theta + u1, 2.0 * theta + (u2 - u1), 2.0 * theta + (slack - u2)};
    double psi = rng.unit() * 2.0 * M_PI;
    std::vector<Point> vs;
    for (int i = 0; i < 3; ++i) {
        long dx = std::llround(rd * std::cos(psi) * kLattice);
        long dy = std::llround(rd * std::sin(psi) * kLattice);
        vs.emplace_back(cx + Rational(dx, kLattice), cy + Rational(dy, kLattice));
        psi += arcs[i];
    }
    return SimplePolygon(std::move(vs));
}

inline Family finish(Family fam) {
    if (auto bad = fam.validate()) throw GeneralPositionViolation("family", *bad);
    geometry::require_general_position(fam);
    return fam;
}

}  // namespace detail

// The extremal witness family: ell horizontal unit-width bars crossing ell
// vertical ones. A 2-fold packing whose intersection graph is K_{ell,ell}
// and whose union has exactly (ell-1)^2 holes.
inline Family gen_grid_bars(long ell) {
    if (ell < 1) throw std::invalid_argument("ell must be >= 1");
    Family fam;
    fam.metadata["generator"] = "grid_bars";
    fam.metadata["ell"] = std::to_string(ell);
    long span = 2 * ell + 1;
    for (long j = 1; j <= ell; ++j) {
        SimplePolygon bar({{0, 2 * j - 1}, {span, 2 * j - 1}, {span, 2 * j}, {0, 2 * j}});
        fam.members.push_back({"h" + std::to_string(j), Region(std::move(bar))});
    }
    for (long i = 1; i <= ell; ++i) {
        SimplePolygon bar({{2 * i - 1, 0}, {2 * i, 0}, {2 * i, span}, {2 * i - 1, span}});
        fam.members.push_back({"v" + std::to_string(i), Region(std::move(bar))});
    }
    return detail::finish(std::move(fam));
}

// n polygonal pseudodiscs: regular m-gons with lattice-rational centers and
// radii, resampled until the family is in general position, every pair
// crosses at most twice, and all features clear the clearance threshold.
inline Family gen_discs(long n, uint64_t seed, long m_sides = 32, long window = 0,
                        Rational min_clearance = Rational(1, 64)) {
    if (n < 1 || m_sides < 12) throw std::invalid_argument("need n >= 1 and m_sides >= 12");
    // default sized for moderate overlap: holes appear without flooding the
    // rejection sampler
    if (window <= 0)
        window = std::max<long>(
            4, static_cast<long>(std::ceil(std::sqrt(2.2 * static_cast<double>(n)))));
    Rng rng(seed);
    detail::PlacementState state(min_clearance);
    std::vector<char> none;
    for (long i = 0; i < n; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < detail::kRetriesPerMember; ++attempt) {
            SimplePolygon cand =
                detail::sample_disc_polygon(rng, window, m_sides, Rational(1, 2), Rational(1));
            if (cand.validate()) continue;
            Region region(std::move(cand));
            none.assign(state.accepted.size(), 0);
            auto crossings = state.try_place(region, 2, false, none);
            if (!crossings) continue;
            state.commit({"d" + std::to_string(i + 1), std::move(region)}, *crossings);
            placed = true;
            break;
        }
        if (!placed)
            throw GenerationFailed("gen_discs: no valid placement for member " +
                                   std::to_string(i + 1) + " after " +
                                   std::to_string(detail::kRetriesPerMember) + " attempts");
    }
    Family fam;
    fam.metadata["generator"] = "discs";
    fam.metadata["seed"] = std::to_string(seed);
    fam.metadata["m_sides"] = std::to_string(m_sides);
    fam.members = std::move(state.accepted);
    return detail::finish(std::move(fam));
}

// n triangles with every angle at least the requested bound (checked
// exactly against a rational cosine threshold), in general position.
inline Family gen_fat_triangles(long n, uint64_t seed, double min_angle_deg = 30.0,
                                long window = 16, Rational min_clearance = Rational(1, 16)) {
    if (n < 1 || min_angle_deg <= 0.0 || min_angle_deg > 60.0)
        throw std::invalid_argument("need n >= 1 and a min angle in (0, 60] degrees");
    Rng rng(seed);
    Rational cos2_bound = detail::fatness_cos2_bound(min_angle_deg);
    detail::PlacementState state(min_clearance);
    std::vector<char> none;
    for (long i = 0; i < n; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < detail::kRetriesPerMember; ++attempt) {
            SimplePolygon cand = detail::sample_fat_triangle(rng, window, min_angle_deg);
            if (cand.validate()) continue;
            if (!detail::all_angles_fat(cand, cos2_bound)) continue;
            Region region(std::move(cand));
            none.assign(state.accepted.size(), 0);
            auto crossings = state.try_place(region, -1, false, none);
            if (!crossings) continue;
            state.commit({"t" + std::to_string(i + 1), std::move(region)}, *crossings);
            placed = true;
            break;
        }
        if (!placed)
            throw GenerationFailed("gen_fat_triangles: no valid placement for member " +
                                   std::to_string(i + 1));
    }
    Family fam;
    fam.metadata["generator"] = "fat_triangles";
    fam.metadata["seed"] = std::to_string(seed);
    fam.metadata["min_angle_deg"] = std::to_string(min_angle_deg);
    fam.members = std::move(state.accepted);
    return detail::finish(std::move(fam));
}

// n axis-aligned rectangles in general position, overlaps unconstrained.
inline Family gen_rectangles(long n, uint64_t seed, long window = 16,
                             Rational min_clearance = Rational(1, 16)) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    Rng rng(seed);
    detail::PlacementState state(min_clearance);
    std::vector<char> none;
    for (long i = 0; i < n; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < detail::kRetriesPerMember; ++attempt) {
            SimplePolygon cand = detail::sample_rectangle(rng, window);
            if (cand.validate()) continue;
            Region region(std::move(cand));
            none.assign(state.accepted.size(), 0);
            auto crossings = state.try_place(region, -1, false, none);
            if (!crossings) continue;
            state.commit({"r" + std::to_string(i + 1), std::move(region)}, *crossings);
            placed = true;
            break;
        }
        if (!placed)
            throw GenerationFailed("gen_rectangles: no valid placement for member " +
                                   std::to_string(i + 1));
    }
    Family fam;
    fam.metadata["generator"] = "rectangles";
    fam.metadata["seed"] = std::to_string(seed);
    fam.members = std::move(state.accepted);
    return detail::finish(std::move(fam));
}

// k layers of pairwise-disjoint members; the union of k packings is a k-fold
// packing by construction. The layer assignment (the ground-truth
// decomposition) is recorded in metadata as "layers": "id,id|id,id|...".
inline Family gen_k_layer_packing(long k, long n_per_layer, uint64_t seed,
                                  const std::string& kind = "discs", long window = 16,
                                  Rational min_clearance = Rational(1, 16)) {
    if (k < 1 || n_per_layer < 1) throw std::invalid_argument("need k >= 1 and n_per_layer >= 1");
    Rng rng(seed);
    detail::PlacementState state(min_clearance);
    std::vector<int> layer_of;
    for (long layer = 0; layer < k; ++layer) {
        for (long i = 0; i < n_per_layer; ++i) {
            bool placed = false;
            for (int attempt = 0; attempt < detail::kRetriesPerMember; ++attempt) {
                SimplePolygon cand;
                if (kind == "discs")
                    cand = detail::sample_disc_polygon(rng, window, 32, Rational(1, 2),
                                                       Rational(1));
                else if (kind == "rectangles")
                    cand = detail::sample_rectangle(rng, window);
                else if (kind == "fat_triangles")
                    cand = detail::sample_fat_triangle(rng, window, 30.0);
                else
                    throw std::invalid_argument("unknown layer kind '" + kind + "'");
                if (cand.validate()) continue;
                Region region(std::move(cand));
                std::vector<char> same_layer(state.accepted.size(), 0);
                for (size_t a = 0; a < layer_of.size(); ++a)
                    same_layer[a] = layer_of[a] == layer ? 1 : 0;
                int cross_cap = kind == "discs" ? 2 : -1;
                auto crossings = state.try_place(region, cross_cap, true, same_layer);
                if (!crossings) continue;
                std::string id = "L" + std::to_string(layer + 1) + "m" + std::to_string(i + 1);
                state.commit({id, std::move(region)}, *crossings);
                layer_of.push_back(static_cast<int>(layer));
                placed = true;
                break;
            }
            if (!placed)
                throw GenerationFailed("gen_k_layer_packing: layer " + std::to_string(layer + 1) +
                                       " member " + std::to_string(i + 1) + " would not place");
        }
    }
    Family fam;
    fam.metadata["generator"] = "k_layers";
    fam.metadata["seed"] = std::to_string(seed);
    fam.metadata["k"] = std::to_string(k);
    fam.metadata["kind"] = kind;
    std::string layers;
    for (long layer = 0; layer < k; ++layer) {
        if (layer) layers += "|";
        bool first = true;
        for (size_t a = 0; a < layer_of.size(); ++a) {
            if (layer_of[a] != layer) continue;
            if (!first) layers += ",";
            layers += state.accepted[a].id;
            first = false;
        }
    }
    fam.metadata["layers"] = layers;
    fam.members = std::move(state.accepted);
    return detail::finish(std::move(fam));
}

inline Family generate(const GeneratorSpec& spec) {
    if (spec.kind == "grid_bars") return gen_grid_bars(spec.ell);
    if (spec.kind == "discs")
        return gen_discs(spec.n, spec.seed, spec.m_sides, spec.window, spec.min_clearance);
    if (spec.kind == "fat_triangles")
        return gen_fat_triangles(spec.n, spec.seed, spec.fat_min_angle_deg, spec.window,
                                 spec.min_clearance);
    if (spec.kind == "rectangles")
        return gen_rectangles(spec.n, spec.seed, spec.window, spec.min_clearance);
    if (spec.kind == "k_layers")
        return gen_k_layer_packing(spec.k, spec.n, spec.seed, spec.layer_kind, spec.window,
                                   spec.min_clearance);
    throw std::invalid_argument("unknown generator kind '" + spec.kind + "'");
}

}  // namespace kpack::generators
