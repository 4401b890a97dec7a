#pragma once

#include <optional>
#include <vector>

#include "kpack/boolean.hpp"
#include "kpack/planar.hpp"

namespace kpack::arrangement {

using geometry::Family;
using geometry::Point;
using planar::Subdivision;

// The planar subdivision of a family plus the derived quantities every
// verification concerns itself with: holes of the union, components of the
// union, and per-face coverage depth.
struct Arrangement {
    Family family;
    Subdivision sub;

    static Arrangement build(const Family& fam) {
        Arrangement arr;
        arr.family = fam;
        if (auto bad = fam.validate()) throw std::invalid_argument(*bad);
        arr.sub = planar::build_subdivision(fam);
        return arr;
    }

    int holes() const { return sub.hole_count(); }
    int union_components() const { return sub.union_component_count(); }
    int max_depth() const { return sub.max_depth(); }
    bool is_kfold(int k) const { return max_depth() <= k; }
};

struct DepthProfile {
    int max_depth = 0;
    std::vector<int> face_count_by_depth;       // index = depth
    std::vector<Rational> face_area_by_depth;   // bounded faces only
    bool is_kfold(int k) const { return max_depth <= k; }
};

inline DepthProfile depth_profile(const Arrangement& arr) {
    DepthProfile prof;
    prof.max_depth = arr.max_depth();
    prof.face_count_by_depth.assign(prof.max_depth + 1, 0);
    prof.face_area_by_depth.assign(prof.max_depth + 1, Rational(0));
    for (const auto& f : arr.sub.faces) {
        if (!f.bounded()) continue;
        prof.face_count_by_depth[f.depth()] += 1;
        prof.face_area_by_depth[f.depth()] += f.area2x / 2;
    }
    return prof;
}

inline Arrangement build(const Family& fam) { return Arrangement::build(fam); }

inline int holes(const Family& fam) { return Arrangement::build(fam).holes(); }

inline int union_components(const Family& fam) { return Arrangement::build(fam).union_components(); }

inline DepthProfile max_depth(const Family& fam) { return depth_profile(Arrangement::build(fam)); }

// |Γ(S)| for the locus S of points covered by exactly two members, valid
// only for triple-free families: with empty triple intersections the
// pairwise intersection regions are pairwise disjoint, so their component
// counts add up.
inline int depth2_components(const Family& fam) {
    Arrangement arr = Arrangement::build(fam);
    if (arr.max_depth() >= 3)
        throw TripleIntersection("family has a point in " + std::to_string(arr.max_depth()) +
                                 " members; exactly-two locus undefined by pairwise sum");
    int total = 0;
    for (size_t i = 0; i < fam.size(); ++i)
        for (size_t j = i + 1; j < fam.size(); ++j)
            total += geometry::boolean_intersection(fam.region(i), fam.region(j)).component_count();
    return total;
}

struct LemmaEulerReport {
    int n = 0;
    int max_depth = 0;
    int h = 0;             // holes of the union
    int gamma_S = 0;       // components of the exactly-two locus
    int sum_gamma_Xi = 0;  // total member components
    int rhs = 0;           // gamma_S - sum_gamma_Xi + 1
    bool holds = false;    // h >= rhs
};

// Both sides of the hole lower bound for triple-free families:
// h(union) >= |Γ(S)| - Σ|Γ(X_i)| + 1.
inline LemmaEulerReport lemma_euler_check(const Family& fam) {
    Arrangement arr = Arrangement::build(fam);
    LemmaEulerReport rep;
    rep.n = static_cast<int>(fam.size());
    rep.max_depth = arr.max_depth();
    if (rep.max_depth >= 3)
        throw TripleIntersection("hole bound requires a triple-free family, max depth " +
                                 std::to_string(rep.max_depth));
    rep.h = arr.holes();
    int gamma_S = 0;
    for (size_t i = 0; i < fam.size(); ++i)
        for (size_t j = i + 1; j < fam.size(); ++j)
            gamma_S +=
                geometry::boolean_intersection(fam.region(i), fam.region(j)).component_count();
    rep.gamma_S = gamma_S;
    for (size_t i = 0; i < fam.size(); ++i) rep.sum_gamma_Xi += fam.region(i).component_count();
    rep.rhs = rep.gamma_S - rep.sum_gamma_Xi + 1;
    rep.holds = rep.h >= rep.rhs;
    return rep;
}

struct CommonPointResult {
    bool exists = false;
    std::optional<Point> witness;
};

// True iff some point belongs to every member; under general position the
// full-depth locus, when nonempty, contains a whole face, so the witness is
// a face interior point.
inline CommonPointResult common_point_exists(const Family& fam) {
    Arrangement arr = Arrangement::build(fam);
    CommonPointResult res;
    int n = static_cast<int>(fam.size());
    for (size_t f = 0; f < arr.sub.faces.size(); ++f) {
        if (arr.sub.faces[f].depth() == n && n > 0) {
            res.exists = true;
            res.witness = arr.sub.face_interior_point(static_cast<int>(f));
            return res;
        }
    }
    return res;
}

}  // namespace kpack::arrangement
