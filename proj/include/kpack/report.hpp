#pragma once

#include <chrono>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kpack/arrangement.hpp"
#include "kpack/family_io.hpp"
#include "kpack/graphs.hpp"

namespace kpack::report {

using io::json;

inline json lemma_report_json(const arrangement::LemmaEulerReport& rep) {
    json j;
    j["h"] = rep.h;
    j["gamma_S"] = rep.gamma_S;
    j["sum_gamma_Xi"] = rep.sum_gamma_Xi;
    j["rhs"] = rep.rhs;
    j["holds"] = rep.holds;
    j["n"] = rep.n;
    j["max_depth"] = rep.max_depth;
    return j;
}

inline json verify_json(int max_depth, int k) {
    json j;
    j["max_depth"] = max_depth;
    j["is_kfold"] = max_depth <= k;
    j["k"] = k;
    return j;
}

inline json decomposition_json(const graphs::IntersectionGraph& g, const graphs::Decomposition& d,
                               bool packing_certified) {
    json j;
    json order = json::array();
    for (int v : d.elimination_order) order.push_back(g.ids[v]);
    j["order"] = order;
    j["degeneracy"] = d.degeneracy;
    json colors = json::object();
    for (size_t v = 0; v < g.n(); ++v) colors[g.ids[v]] = d.color_of[v];
    j["colors"] = colors;
    j["num_colors"] = d.num_colors;
    j["packing_certified"] = packing_certified;
    return j;
}

// One manifest entry measured end to end. The runtime column is opt-in so
// that scan output stays byte-reproducible by default.
struct ScanRow {
    generators::GeneratorSpec spec;
    bool failed = false;
    std::string error;
    int n = 0;
    int holes = 0;
    int max_depth = 0;
    int min_degree = 0;
    int degeneracy = 0;
    int num_colors = 0;
    bool lemma_applicable = false;
    int lemma_rhs = 0;
    int lemma_h = 0;
    bool lemma_holds = false;
    long long runtime_ms = -1;  // -1: not recorded
};

inline ScanRow run_scan_row(const generators::GeneratorSpec& spec, bool timings) {
    ScanRow row;
    row.spec = spec;
    auto t0 = std::chrono::steady_clock::now();
    try {
        geometry::Family fam = generators::generate(spec);
        row.n = static_cast<int>(fam.size());
        arrangement::Arrangement arr = arrangement::build(fam);
        row.holes = arr.holes();
        row.max_depth = arr.max_depth();
        auto g = graphs::intersection_graph(fam);
        row.min_degree = g.n() ? graphs::min_degree(g).second : 0;
        auto d = graphs::decompose_by_degeneracy(g);
        row.degeneracy = d.degeneracy;
        row.num_colors = d.num_colors;
        if (row.max_depth <= 2) {
            auto rep = arrangement::lemma_euler_check(fam);
            row.lemma_applicable = true;
            row.lemma_rhs = rep.rhs;
            row.lemma_h = rep.h;
            row.lemma_holds = rep.holds;
        }
    } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
    }
    if (timings)
        row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
    return row;
}

inline std::vector<ScanRow> run_scan(const std::vector<generators::GeneratorSpec>& manifest,
                                     bool timings = false) {
    std::vector<ScanRow> rows;
    rows.reserve(manifest.size());
    for (const auto& spec : manifest) rows.push_back(run_scan_row(spec, timings));
    return rows;
}

inline const char* scan_csv_header() {
    return "kind,param,seed,n,k,holes,max_depth,min_degree,degeneracy,num_colors,"
           "lemma_rhs,lemma_h,lemma_holds,runtime_ms,error";
}

inline std::string scan_csv(const std::vector<ScanRow>& rows) {
    std::ostringstream os;
    os << scan_csv_header() << "\n";
    for (const auto& r : rows) {
        std::vector<std::string> f(15);
        f[0] = r.spec.kind;
        f[1] = std::to_string(r.spec.kind == "grid_bars" ? r.spec.ell : r.spec.n);
        f[2] = std::to_string(r.spec.seed);
        if (r.failed) {
            f[14] = r.error;
            for (auto& c : f[14])
                if (c == ',' || c == '\n') c = ';';
        } else {
            f[3] = std::to_string(r.n);
            if (r.spec.kind == "k_layers") f[4] = std::to_string(r.spec.k);
            f[5] = std::to_string(r.holes);
            f[6] = std::to_string(r.max_depth);
            f[7] = std::to_string(r.min_degree);
            f[8] = std::to_string(r.degeneracy);
            f[9] = std::to_string(r.num_colors);
            if (r.lemma_applicable) {
                f[10] = std::to_string(r.lemma_rhs);
                f[11] = std::to_string(r.lemma_h);
                f[12] = r.lemma_holds ? "true" : "false";
            }
        }
        if (r.runtime_ms >= 0) f[13] = std::to_string(r.runtime_ms);
        for (size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
        os << "\n";
    }
    return os.str();
}

// Per (kind, k) aggregates; max observed min_degree is the quantity the
// degree-bound experiments track.
inline json scan_summary_json(const std::vector<ScanRow>& rows) {
    json j;
    j["rows"] = static_cast<int>(rows.size());
    int failures = 0;
    std::map<std::pair<std::string, long>, json> groups;
    for (const auto& r : rows) {
        if (r.failed) {
            ++failures;
            continue;
        }
        auto key = std::make_pair(r.spec.kind, r.spec.kind == "k_layers" ? r.spec.k : 0L);
        auto& g = groups[key];
        if (g.is_null()) {
            g["kind"] = r.spec.kind;
            g["k"] = key.second;
            g["count"] = 0;
            g["max_min_degree"] = 0;
            g["max_degeneracy"] = 0;
            g["max_num_colors"] = 0;
            g["max_holes"] = 0;
        }
        g["count"] = g["count"].get<int>() + 1;
        g["max_min_degree"] = std::max(g["max_min_degree"].get<int>(), r.min_degree);
        g["max_degeneracy"] = std::max(g["max_degeneracy"].get<int>(), r.degeneracy);
        g["max_num_colors"] = std::max(g["max_num_colors"].get<int>(), r.num_colors);
        g["max_holes"] = std::max(g["max_holes"].get<int>(), r.holes);
    }
    j["failures"] = failures;
    j["groups"] = json::array();
    for (auto& [key, g] : groups) j["groups"].push_back(g);
    return j;
}

inline std::vector<generators::GeneratorSpec> manifest_from_string(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid manifest JSON: ") + e.what());
    }
    if (!root.is_array()) throw ParseError("manifest must be a JSON array of generator specs");
    std::vector<generators::GeneratorSpec> specs;
    for (const auto& item : root) specs.push_back(io::spec_from_json(item));
    return specs;
}

}  // namespace kpack::report
