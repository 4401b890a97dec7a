#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "kpack/region.hpp"

namespace kpack::geometry {

struct Member {
    std::string id;
    Region region;
};

// A finite ordered family of compact regions, the unit every arrangement,
// graph, and hypergraph operation consumes. Metadata carries provenance
// (generator name, seed, layer assignment) as plain key/value strings.
struct Family {
    std::vector<Member> members;
    std::map<std::string, std::string> metadata;

    size_t size() const { return members.size(); }
    const Region& region(size_t i) const { return members[i].region; }
    const std::string& id(size_t i) const { return members[i].id; }

    int index_of(const std::string& member_id) const {
        for (size_t i = 0; i < members.size(); ++i)
            if (members[i].id == member_id) return static_cast<int>(i);
        return -1;
    }

    std::optional<std::string> validate() const {
        std::set<std::string> seen;
        for (const auto& m : members) {
            if (!seen.insert(m.id).second) return "duplicate member id '" + m.id + "'";
            if (auto bad = m.region.validate()) return "member '" + m.id + "': " + *bad;
        }
        return std::nullopt;
    }

    Family subfamily_without(size_t drop) const {
        Family f;
        f.metadata = metadata;
        for (size_t i = 0; i < members.size(); ++i)
            if (i != drop) f.members.push_back(members[i]);
        return f;
    }
};

struct GeneralPositionReport {
    bool ok = true;
    std::string members;  // ids of the offenders
    std::string locus;    // where they meet
};

// Checks the family-level general position contract: between distinct
// members, boundaries may only cross transversally at points that are not
// ring vertices, every crossing involves exactly one pair of boundaries,
// and no two crossings coincide (no three boundaries through one point).
// Member-internal validity is assumed (see Family::validate).
inline GeneralPositionReport check_general_position(const Family& fam) {
    GeneralPositionReport rep;
    auto fail = [&](const std::string& who, const std::string& where) {
        rep.ok = false;
        rep.members = who;
        rep.locus = where;
        return rep;
    };

    std::vector<std::vector<Segment>> segs(fam.size());
    for (size_t i = 0; i < fam.size(); ++i) segs[i] = fam.region(i).all_boundary_segments();

    std::map<Point, std::pair<size_t, size_t>> crossing_owner;
    for (size_t i = 0; i < fam.size(); ++i) {
        for (size_t j = i + 1; j < fam.size(); ++j) {
            std::vector<Point> pts;
            try {
                pts = boundary_crossings(segs[i], segs[j]);
            } catch (const DegenerateContact& e) {
                return fail(fam.id(i) + "," + fam.id(j), e.what());
            }
            std::set<Point> distinct;
            for (const auto& p : pts) {
                if (!distinct.insert(p).second)
                    return fail(fam.id(i) + "," + fam.id(j),
                                "two crossings coincide at " + p.str());
                auto [it, fresh] = crossing_owner.emplace(p, std::make_pair(i, j));
                if (!fresh)
                    return fail(fam.id(it->second.first) + "," + fam.id(it->second.second) + "," +
                                    fam.id(i) + "," + fam.id(j),
                                "three boundaries through " + p.str());
            }
        }
    }
    return rep;
}

inline void require_general_position(const Family& fam) {
    auto rep = check_general_position(fam);
    if (!rep.ok) throw GeneralPositionViolation(rep.members, rep.locus);
}

}  // namespace kpack::geometry
