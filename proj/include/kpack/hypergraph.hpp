#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kpack/arrangement.hpp"

namespace kpack::hypergraph {

using geometry::Family;

// k-uniform hypergraph on family members; an edge is a k-tuple of members
// with a common point.
struct IntersectionHypergraph {
    int k = 2;
    std::vector<std::string> ids;
    std::set<std::vector<int>> edges;  // each edge sorted ascending

    size_t n() const { return ids.size(); }
    size_t m() const { return edges.size(); }

    static IntersectionHypergraph on_vertices(int k, std::vector<std::string> ids_) {
        IntersectionHypergraph h;
        h.k = k;
        h.ids = std::move(ids_);
        return h;
    }

    void add_edge(std::vector<int> e) {
        std::sort(e.begin(), e.end());
        if (static_cast<int>(e.size()) != k ||
            std::adjacent_find(e.begin(), e.end()) != e.end())
            throw std::invalid_argument("edge must have k distinct vertices");
        edges.insert(std::move(e));
    }

    // Plain text export: one edge per line as sorted ids.
    std::string to_text() const {
        std::ostringstream os;
        for (const auto& e : edges) {
            for (size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << ids[e[i]];
            os << '\n';
        }
        return os.str();
    }
};

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Edges read off the arrangement: every face covered by d >= k members
// contributes all k-subsets of its coverage set. One subdivision serves
// every k.
inline IntersectionHypergraph build_hypergraph(const Family& fam, int k) {
    if (k < 2) throw std::invalid_argument("uniformity k must be >= 2");
    std::vector<std::string> ids;
    for (const auto& m : fam.members) ids.push_back(m.id);
    IntersectionHypergraph h = IntersectionHypergraph::on_vertices(k, std::move(ids));

    planar::Subdivision sub = planar::build_subdivision(fam);
    for (const auto& face : sub.faces) {
        if (face.depth() < k) continue;
        std::vector<int> cover = face.coverage.members();
        std::vector<int> pick(k);
        // enumerate k-subsets of the coverage set
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            for (int i = 0; i < k; ++i) pick[i] = cover[idx[i]];
            h.edges.insert(pick);
            int i = k - 1;
            while (i >= 0 && idx[i] == static_cast<int>(cover.size()) - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return h;
}

// |E| / C(n,k), exact.
inline Rational tuple_density(const IntersectionHypergraph& h) {
    if (h.n() < static_cast<size_t>(h.k)) throw std::invalid_argument("n < k");
    Rational d(static_cast<long>(h.m()));
    d /= Rational(binomial(h.n(), h.k));
    return d;
}

// The Turán-type guarantee threshold: with fewer than C(n,k)/C(m,k) edges an
// independent set of size m must exist.
inline bool below_kns_threshold(const IntersectionHypergraph& h, int m) {
    Rational bound = Rational(binomial(h.n(), h.k)) / Rational(binomial(m, h.k));
    return Rational(static_cast<long>(h.m())) < bound;
}

inline bool is_independent(const IntersectionHypergraph& h, const std::vector<int>& verts) {
    std::set<int> s(verts.begin(), verts.end());
    for (const auto& e : h.edges) {
        bool inside = true;
        for (int v : e)
            if (!s.count(v)) {
                inside = false;
                break;
            }
        if (inside) return false;
    }
    return true;
}

namespace detail {

inline bool kns_exhaustive(const IntersectionHypergraph& h, size_t m, size_t from,
                           std::vector<int>& acc, long long& budget) {
    if (acc.size() == m) return is_independent(h, acc);
    if (h.n() - from < m - acc.size()) return false;
    for (size_t v = from; v < h.n(); ++v) {
        if (--budget < 0) throw BudgetExceeded("independent set search in hypergraph");
        acc.push_back(static_cast<int>(v));
        // prune: any edge fully inside acc kills the branch
        bool clean = true;
        for (const auto& e : h.edges) {
            if (e.back() != static_cast<int>(v)) continue;
            bool inside = true;
            for (int u : e)
                if (!std::binary_search(acc.begin(), acc.end(), u)) {
                    inside = false;
                    break;
                }
            if (inside) {
                clean = false;
                break;
            }
        }
        if (clean && kns_exhaustive(h, m, v + 1, acc, budget)) return true;
        acc.pop_back();
    }
    return false;
}

}  // namespace detail

// An independent set of size m. Below the C(n,k)/C(m,k) edge threshold the
// greedy max-degree deletion provably succeeds (deleting a max-degree vertex
// keeps the count below C(n-1,k)/C(m,k), down to zero edges at n = m), so
// the result is guaranteed; above it, greedy then exhaustive pruned search,
// returning nullopt only when the search completes empty-handed.
inline std::optional<std::vector<int>> kns_independent_set(const IntersectionHypergraph& h, int m,
                                                           long long budget = 50'000'000) {
    if (m < h.k || h.n() < static_cast<size_t>(m))
        throw std::invalid_argument("need n >= m >= k");
    bool guaranteed = below_kns_threshold(h, m);

    std::vector<char> alive(h.n(), 1);
    size_t alive_count = h.n();
    while (alive_count > static_cast<size_t>(m)) {
        std::vector<long long> deg(h.n(), 0);
        for (const auto& e : h.edges) {
            bool all = true;
            for (int v : e)
                if (!alive[v]) {
                    all = false;
                    break;
                }
            if (all)
                for (int v : e) ++deg[v];
        }
        int pick = -1;
        for (size_t v = 0; v < h.n(); ++v) {
            if (!alive[v]) continue;
            if (pick == -1 || deg[v] > deg[pick]) pick = static_cast<int>(v);
        }
        alive[pick] = 0;
        --alive_count;
    }
    std::vector<int> survivors;
    for (size_t v = 0; v < h.n(); ++v)
        if (alive[v]) survivors.push_back(static_cast<int>(v));
    if (is_independent(h, survivors)) return survivors;
    if (guaranteed)
        throw std::logic_error("greedy deletion failed below the guarantee threshold");

    std::vector<int> acc;
    if (detail::kns_exhaustive(h, m, 0, acc, budget)) return acc;
    return std::nullopt;
}

// Vertex of maximum edge incidence; by averaging its incidence is at least
// |E|*k/n, which the result certifies exactly.
struct PivotDegree {
    int vertex = -1;
    long long incidence = 0;
};

inline PivotDegree pivot_degree(const IntersectionHypergraph& h) {
    if (h.n() < static_cast<size_t>(h.k)) throw std::invalid_argument("n < k");
    if (h.m() == 0) throw EmptyHypergraph("pivot_degree on edgeless hypergraph");
    std::vector<long long> deg(h.n(), 0);
    for (const auto& e : h.edges)
        for (int v : e) ++deg[v];
    PivotDegree p;
    for (size_t v = 0; v < h.n(); ++v) {
        if (p.vertex == -1 || deg[v] > p.incidence) {
            p.vertex = static_cast<int>(v);
            p.incidence = deg[v];
        }
    }
    // averaging certificate: incidence * n >= |E| * k
    if (p.incidence * static_cast<long long>(h.n()) <
        static_cast<long long>(h.m()) * static_cast<long long>(h.k))
        throw std::logic_error("averaging certificate failed");
    return p;
}

}  // namespace kpack::hypergraph
