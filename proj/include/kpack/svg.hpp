#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "kpack/arrangement.hpp"

namespace kpack::svg {

using arrangement::Arrangement;
using geometry::Family;
using geometry::Point;

// Fixed fill ramp by coverage depth; depths past the end clamp to the last
// entry. Depth 0 stays white so hole hatching reads clearly.
inline const std::vector<std::string>& depth_ramp() {
    static const std::vector<std::string> ramp = {
        "#ffffff", "#c6dbef", "#6baed6", "#3182bd", "#08519c", "#08306b"};
    return ramp;
}

namespace detail {

inline std::string num(const Rational& q) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", rational_double(q));
    return buf;
}

inline std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline void cycle_path(std::ostringstream& os, const planar::Subdivision& sub, int cycle) {
    bool first = true;
    for (int h : sub.cycles[cycle].half_edges) {
        const Point& p = sub.vertex_pos[sub.half_edges[h].origin];
        os << (first ? "M " : "L ") << num(p.x) << ' ' << num(p.y) << ' ';
        first = false;
    }
    os << "Z ";
}

}  // namespace detail

// Deterministic SVG rendering of an arrangement: bounded faces filled by
// depth, member boundaries stroked, holes (bounded depth-0 faces) hatched.
inline std::string render_arrangement(const Arrangement& arr) {
    const auto& sub = arr.sub;
    geometry::BBox box;
    for (const auto& v : sub.vertex_pos) box.expand(v);
    double x0 = box.empty ? 0.0 : rational_double(box.xmin) - 1.0;
    double y0 = box.empty ? 0.0 : rational_double(box.ymin) - 1.0;
    double w = box.empty ? 2.0 : rational_double(box.xmax) - rational_double(box.xmin) + 2.0;
    double h = box.empty ? 2.0 : rational_double(box.ymax) - rational_double(box.ymin) + 2.0;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << detail::num(x0) << ' '
       << detail::num(y0) << ' ' << detail::num(w) << ' ' << detail::num(h)
       << "\" width=\"640\" height=\"" << detail::num(640.0 * h / w) << "\">\n";
    os << "<defs><pattern id=\"hatch\" width=\"0.3\" height=\"0.3\" "
          "patternTransform=\"rotate(45)\" patternUnits=\"userSpaceOnUse\">"
          "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"0.3\" stroke=\"#b30000\" "
          "stroke-width=\"0.08\"/></pattern></defs>\n";
    // flip y so the upward axis points up
    os << "<g transform=\"translate(0," << detail::num(2.0 * y0 + h) << ") scale(1,-1)\">\n";

    const auto& ramp = depth_ramp();
    for (size_t f = 1; f < sub.faces.size(); ++f) {
        const auto& face = sub.faces[f];
        std::ostringstream path;
        detail::cycle_path(path, sub, face.outer_cycle);
        for (int c : face.inner_cycles) detail::cycle_path(path, sub, c);
        size_t depth = std::min<size_t>(face.depth(), ramp.size() - 1);
        os << "<path d=\"" << path.str() << "\" fill=\"" << ramp[depth]
           << "\" fill-rule=\"evenodd\" stroke=\"none\"/>\n";
        if (face.depth() == 0)
            os << "<path d=\"" << path.str()
               << "\" fill=\"url(#hatch)\" fill-rule=\"evenodd\" stroke=\"none\"/>\n";
    }
    for (size_t e = 0; e < sub.half_edges.size(); e += 2) {
        const Point& a = sub.vertex_pos[sub.half_edges[e].origin];
        const Point& b = sub.vertex_pos[sub.half_edges[e].target];
        os << "<line x1=\"" << detail::num(a.x) << "\" y1=\"" << detail::num(a.y) << "\" x2=\""
           << detail::num(b.x) << "\" y2=\"" << detail::num(b.y)
           << "\" stroke=\"#000000\" stroke-width=\"0.04\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

// One color class of a decomposition: the selected members filled, the rest
// of the family outlined.
inline std::string render_member_subset(const Family& fam, const std::vector<int>& selected,
                                        const std::string& fill = "#74c476") {
    geometry::BBox box;
    for (const auto& m : fam.members) {
        auto b = geometry::region_bbox(m.region);
        if (!b.empty) {
            box.expand({b.xmin, b.ymin});
            box.expand({b.xmax, b.ymax});
        }
    }
    double x0 = box.empty ? 0.0 : rational_double(box.xmin) - 1.0;
    double y0 = box.empty ? 0.0 : rational_double(box.ymin) - 1.0;
    double w = box.empty ? 2.0 : rational_double(box.xmax) - rational_double(box.xmin) + 2.0;
    double h = box.empty ? 2.0 : rational_double(box.ymax) - rational_double(box.ymin) + 2.0;

    std::vector<char> chosen(fam.size(), 0);
    for (int i : selected) chosen[i] = 1;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << detail::num(x0) << ' '
       << detail::num(y0) << ' ' << detail::num(w) << ' ' << detail::num(h)
       << "\" width=\"640\" height=\"" << detail::num(640.0 * h / w) << "\">\n";
    os << "<g transform=\"translate(0," << detail::num(2.0 * y0 + h) << ") scale(1,-1)\">\n";
    for (size_t i = 0; i < fam.size(); ++i) {
        std::ostringstream path;
        for (const auto* rings : {&fam.region(i).shells, &fam.region(i).holes}) {
            for (const auto& ring : *rings) {
                bool first = true;
                for (const auto& v : ring.vertices) {
                    path << (first ? "M " : "L ") << detail::num(v.x) << ' ' << detail::num(v.y)
                         << ' ';
                    first = false;
                }
                path << "Z ";
            }
        }
        os << "<path d=\"" << path.str() << "\" fill=\""
           << (chosen[i] ? fill : std::string("none"))
           << "\" fill-rule=\"evenodd\" fill-opacity=\"0.7\" stroke=\"#333333\" "
              "stroke-width=\"0.04\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace kpack::svg
