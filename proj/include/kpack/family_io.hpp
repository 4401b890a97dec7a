#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "kpack/family.hpp"
#include "kpack/generators.hpp"

namespace kpack::io {

using geometry::Family;
using geometry::Point;
using geometry::Region;
using geometry::SimplePolygon;
using json = nlohmann::ordered_json;

// Exact coordinate encoding: plain JSON integer when the denominator is 1
// and the value fits, otherwise the canonical "p/q" string. Floats are
// rejected on input; they cannot round-trip exactly.
inline json rational_to_json(const Rational& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p())
        return json(static_cast<long long>(q.get_num().get_si()));
    return json(rational_str(q));
}

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ParseError("coordinate must be an integer or a 'p/q' string, got " + j.dump());
}

inline json ring_to_json(const SimplePolygon& ring) {
    json arr = json::array();
    for (const auto& v : ring.vertices)
        arr.push_back(json::array({rational_to_json(v.x), rational_to_json(v.y)}));
    return arr;
}

inline SimplePolygon ring_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("ring must be an array of [x,y] pairs");
    std::vector<Point> vs;
    for (const auto& pt : j) {
        if (!pt.is_array() || pt.size() != 2) throw ParseError("ring vertex must be [x, y]");
        vs.emplace_back(rational_from_json(pt[0]), rational_from_json(pt[1]));
    }
    return SimplePolygon(std::move(vs));
}

inline json family_to_json(const Family& fam) {
    json root;
    root["metadata"] = json::object();
    for (const auto& [k, v] : fam.metadata) root["metadata"][k] = v;
    root["members"] = json::array();
    for (const auto& m : fam.members) {
        json member;
        member["id"] = m.id;
        member["shells"] = json::array();
        for (const auto& s : m.region.shells) member["shells"].push_back(ring_to_json(s));
        member["holes"] = json::array();
        for (const auto& h : m.region.holes) member["holes"].push_back(ring_to_json(h));
        root["members"].push_back(std::move(member));
    }
    return root;
}

// Hole-to-shell assignment is geometric: each hole loop lies strictly
// inside exactly one shell.
inline Region region_from_rings(std::vector<SimplePolygon> shells,
                                std::vector<SimplePolygon> holes) {
    Region r;
    r.shells = std::move(shells);
    for (auto& hole : holes) {
        if (hole.vertices.empty()) throw ParseError("empty hole ring");
        int owner = -1;
        for (size_t s = 0; s < r.shells.size(); ++s) {
            if (geometry::contains_point(r.shells[s], hole.vertices[0]) ==
                geometry::Membership::Interior) {
                owner = static_cast<int>(s);
                break;
            }
        }
        if (owner == -1) throw ParseError("hole ring lies inside no shell");
        r.holes.push_back(std::move(hole));
        r.hole_shell.push_back(owner);
    }
    return r;
}

inline Family family_from_json(const json& root) {
    if (!root.is_object() || !root.contains("members") || !root["members"].is_array())
        throw ParseError("family file must be an object with a 'members' array");
    Family fam;
    if (root.contains("metadata")) {
        if (!root["metadata"].is_object()) throw ParseError("'metadata' must be an object");
        for (const auto& [k, v] : root["metadata"].items()) {
            if (!v.is_string()) throw ParseError("metadata values must be strings");
            fam.metadata[k] = v.get<std::string>();
        }
    }
    for (const auto& mj : root["members"]) {
        if (!mj.is_object() || !mj.contains("id") || !mj["id"].is_string())
            throw ParseError("member must be an object with a string 'id'");
        if (!mj.contains("shells") || !mj["shells"].is_array())
            throw ParseError("member must carry a 'shells' array");
        std::vector<SimplePolygon> shells, holes;
        for (const auto& sj : mj["shells"]) shells.push_back(ring_from_json(sj));
        if (mj.contains("holes"))
            for (const auto& hj : mj["holes"]) holes.push_back(ring_from_json(hj));
        Region region = region_from_rings(std::move(shells), std::move(holes));
        if (auto bad = region.validate())
            throw ParseError("member '" + mj["id"].get<std::string>() + "': " + *bad);
        fam.members.push_back({mj["id"].get<std::string>(), std::move(region)});
    }
    if (auto bad = fam.validate()) throw ParseError(*bad);
    return fam;
}

inline std::string family_to_string(const Family& fam) { return family_to_json(fam).dump(2) + "\n"; }

inline Family family_from_string(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return family_from_json(root);
}

inline void write_family(const Family& fam, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << family_to_string(fam);
}

inline Family read_family(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open family file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return family_from_string(buf.str());
}

inline json spec_to_json(const generators::GeneratorSpec& spec) {
    json j;
    j["kind"] = spec.kind;
    j["n"] = spec.n;
    j["ell"] = spec.ell;
    j["k"] = spec.k;
    j["seed"] = spec.seed;
    j["window"] = spec.window;
    j["m_sides"] = spec.m_sides;
    j["min_clearance"] = rational_str(spec.min_clearance);
    j["fat_min_angle_deg"] = spec.fat_min_angle_deg;
    j["layer_kind"] = spec.layer_kind;
    return j;
}

inline generators::GeneratorSpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("generator spec must be an object with a string 'kind'");
    generators::GeneratorSpec spec;
    spec.kind = j["kind"].get<std::string>();
    auto get_long = [&](const char* key, long dflt) {
        if (!j.contains(key)) return dflt;
        if (!j[key].is_number_integer()) throw ParseError(std::string(key) + " must be an integer");
        return static_cast<long>(j[key].get<long long>());
    };
    spec.n = get_long("n", spec.n);
    spec.ell = get_long("ell", spec.ell);
    spec.k = get_long("k", spec.k);
    spec.window = get_long("window", spec.window);
    spec.m_sides = get_long("m_sides", spec.m_sides);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) throw ParseError("seed must be an integer");
        spec.seed = j["seed"].get<uint64_t>();
    }
    if (j.contains("min_clearance")) {
        if (!j["min_clearance"].is_string())
            throw ParseError("min_clearance must be a rational string");
        spec.min_clearance = parse_rational(j["min_clearance"].get<std::string>());
    }
    if (j.contains("fat_min_angle_deg")) {
        if (!j["fat_min_angle_deg"].is_number())
            throw ParseError("fat_min_angle_deg must be a number");
        spec.fat_min_angle_deg = j["fat_min_angle_deg"].get<double>();
    }
    if (j.contains("layer_kind")) {
        if (!j["layer_kind"].is_string()) throw ParseError("layer_kind must be a string");
        spec.layer_kind = j["layer_kind"].get<std::string>();
    }
    return spec;
}

}  // namespace kpack::io
