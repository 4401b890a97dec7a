#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kpack/family.hpp"

namespace kpack::graphs {

using geometry::Family;

// Simple graph on family members; an edge joins two members exactly when
// their regions intersect.
struct IntersectionGraph {
    std::vector<std::string> ids;
    std::vector<std::set<int>> adj;

    size_t n() const { return ids.size(); }
    size_t m() const {
        size_t total = 0;
        for (const auto& a : adj) total += a.size();
        return total / 2;
    }
    bool has_edge(int u, int v) const { return adj[u].count(v) > 0; }
    void add_edge(int u, int v) {
        if (u == v) return;
        adj[u].insert(v);
        adj[v].insert(u);
    }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }

    static IntersectionGraph on_vertices(std::vector<std::string> ids_) {
        IntersectionGraph g;
        g.ids = std::move(ids_);
        g.adj.assign(g.ids.size(), {});
        return g;
    }

    // Plain adjacency-list text: one line per vertex, id then neighbor ids.
    std::string to_text() const {
        std::ostringstream os;
        for (size_t v = 0; v < n(); ++v) {
            os << ids[v];
            for (int u : adj[v]) os << ' ' << ids[u];
            os << '\n';
        }
        return os.str();
    }
};

inline IntersectionGraph intersection_graph(const Family& fam) {
    geometry::require_general_position(fam);
    std::vector<std::string> ids;
    for (const auto& m : fam.members) ids.push_back(m.id);
    IntersectionGraph g = IntersectionGraph::on_vertices(std::move(ids));
    for (size_t i = 0; i < fam.size(); ++i)
        for (size_t j = i + 1; j < fam.size(); ++j)
            if (geometry::region_intersects(fam.region(i), fam.region(j)))
                g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
}

// A vertex of minimum degree, ties broken by smallest id.
inline std::pair<int, int> min_degree(const IntersectionGraph& g) {
    if (g.n() == 0) throw EmptyGraph("min_degree on empty graph");
    int best = 0;
    for (size_t v = 1; v < g.n(); ++v) {
        if (g.degree(static_cast<int>(v)) < g.degree(best) ||
            (g.degree(static_cast<int>(v)) == g.degree(best) && g.ids[v] < g.ids[best]))
            best = static_cast<int>(v);
    }
    return {best, g.degree(best)};
}

struct Decomposition {
    std::vector<int> elimination_order;  // repeated min-degree removal
    int degeneracy = 0;                  // max removal degree seen
    std::vector<int> color_of;
    int num_colors = 0;
};

// Smallest-last ordering with first-fit greedy coloring in reverse order.
// Uses at most degeneracy+1 colors; every color class is an independent set,
// i.e. a packing of the originating family.
inline Decomposition decompose_by_degeneracy(const IntersectionGraph& g) {
    Decomposition d;
    size_t n = g.n();
    d.color_of.assign(n, -1);
    std::vector<int> deg(n);
    std::vector<char> removed(n, 0);
    for (size_t v = 0; v < n; ++v) deg[v] = g.degree(static_cast<int>(v));
    for (size_t step = 0; step < n; ++step) {
        int pick = -1;
        for (size_t v = 0; v < n; ++v) {
            if (removed[v]) continue;
            if (pick == -1 || deg[v] < deg[pick] ||
                (deg[v] == deg[pick] && g.ids[v] < g.ids[pick]))
                pick = static_cast<int>(v);
        }
        d.degeneracy = std::max(d.degeneracy, deg[pick]);
        d.elimination_order.push_back(pick);
        removed[pick] = 1;
        for (int u : g.adj[pick])
            if (!removed[u]) --deg[u];
    }
    for (auto it = d.elimination_order.rbegin(); it != d.elimination_order.rend(); ++it) {
        std::set<int> used;
        for (int u : g.adj[*it])
            if (d.color_of[u] >= 0) used.insert(d.color_of[u]);
        int c = 0;
        while (used.count(c)) ++c;
        d.color_of[*it] = c;
        d.num_colors = std::max(d.num_colors, c + 1);
    }
    if (n > 0 && d.num_colors == 0) d.num_colors = 1;
    return d;
}

inline std::vector<std::vector<int>> color_classes(const Decomposition& d) {
    std::vector<std::vector<int>> classes(d.num_colors);
    for (size_t v = 0; v < d.color_of.size(); ++v) classes[d.color_of[v]].push_back(static_cast<int>(v));
    return classes;
}

// Geometric packing certificate: every color class is pairwise disjoint in
// the family, checked by the region predicate rather than the graph.
inline bool certify_packing(const Decomposition& d, const Family& fam) {
    for (const auto& cls : color_classes(d))
        for (size_t i = 0; i < cls.size(); ++i)
            for (size_t j = i + 1; j < cls.size(); ++j)
                if (geometry::region_intersects(fam.region(cls[i]), fam.region(cls[j])))
                    return false;
    return true;
}

struct Biclique {
    std::vector<int> left;
    std::vector<int> right;
};

namespace detail {

struct SearchBudget {
    long long remaining;
    void spend(const char* what) {
        if (--remaining < 0) throw BudgetExceeded(std::string("search budget exhausted in ") + what);
    }
};

// Finds t pairwise nonadjacent vertices within `candidates`.
inline bool pick_independent(const IntersectionGraph& g, const std::vector<int>& candidates,
                             size_t t, size_t from, std::vector<int>& acc, SearchBudget& budget) {
    if (acc.size() == t) return true;
    if (candidates.size() - from < t - acc.size()) return false;
    for (size_t i = from; i < candidates.size(); ++i) {
        budget.spend("independent set search");
        int v = candidates[i];
        bool ok = true;
        for (int u : acc)
            if (g.has_edge(u, v)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        acc.push_back(v);
        if (pick_independent(g, candidates, t, i + 1, acc, budget)) return true;
        acc.pop_back();
    }
    return false;
}

inline bool ktt_extend(const IntersectionGraph& g, int t, bool induced, size_t from,
                       std::vector<int>& left, std::vector<int>& common, Biclique& out,
                       SearchBudget& budget) {
    if (static_cast<int>(left.size()) == t) {
        std::vector<int> pool;
        for (int v : common)
            if (!std::binary_search(left.begin(), left.end(), v)) pool.push_back(v);
        if (static_cast<int>(pool.size()) < t) return false;
        if (!induced) {
            out.left = left;
            out.right.assign(pool.begin(), pool.begin() + t);
            return true;
        }
        std::vector<int> acc;
        if (pick_independent(g, pool, t, 0, acc, budget)) {
            out.left = left;
            out.right = acc;
            return true;
        }
        return false;
    }
    for (size_t i = from; i < g.n(); ++i) {
        budget.spend("biclique search");
        int v = static_cast<int>(i);
        if (g.degree(v) < t) continue;
        if (induced) {
            bool indep = true;
            for (int u : left)
                if (g.has_edge(u, v)) {
                    indep = false;
                    break;
                }
            if (!indep) continue;
        }
        std::vector<int> next_common;
        if (left.empty()) {
            next_common.assign(g.adj[v].begin(), g.adj[v].end());
        } else {
            std::set_intersection(common.begin(), common.end(), g.adj[v].begin(), g.adj[v].end(),
                                  std::back_inserter(next_common));
        }
        // the right class must fit in the common neighborhood
        if (static_cast<int>(next_common.size()) < t) continue;
        left.push_back(v);
        if (ktt_extend(g, t, induced, i + 1, left, next_common, out, budget)) return true;
        left.pop_back();
    }
    return false;
}

}  // namespace detail

// Searches for a K_{t,t}: two disjoint t-classes with every cross pair
// adjacent. By default a subgraph (classes may contain internal edges);
// with `induced` both classes must additionally be independent sets.
// Exhaustive with common-neighborhood pruning; throws BudgetExceeded when
// the pruned search exceeds `budget` nodes (instance too large, not absence).
inline std::optional<Biclique> ktt_find(const IntersectionGraph& g, int t, bool induced = false,
                                        long long budget = 50'000'000) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    detail::SearchBudget b{budget};
    std::vector<int> left, common;
    Biclique out;
    if (detail::ktt_extend(g, t, induced, 0, left, common, out, b)) return out;
    return std::nullopt;
}

namespace detail {

inline bool mis_extend(const IntersectionGraph& g, size_t ell, size_t from, std::vector<int>& acc,
                       SearchBudget& budget) {
    if (acc.size() == ell) return true;
    if (g.n() - from < ell - acc.size()) return false;
    for (size_t i = from; i < g.n(); ++i) {
        budget.spend("independent set search");
        int v = static_cast<int>(i);
        bool ok = true;
        for (int u : acc)
            if (g.has_edge(u, v)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        acc.push_back(v);
        if (mis_extend(g, ell, i + 1, acc, budget)) return true;
        acc.pop_back();
    }
    return false;
}

}  // namespace detail

// An independent set of ell vertices (a packing of the family), or nullopt
// after exhaustive pruned search.
inline std::optional<std::vector<int>> max_independent_set(const IntersectionGraph& g, int ell,
                                                           long long budget = 50'000'000) {
    if (ell < 1) throw std::invalid_argument("ell must be >= 1");
    detail::SearchBudget b{budget};
    std::vector<int> acc;
    if (detail::mis_extend(g, static_cast<size_t>(ell), 0, acc, b)) return acc;
    return std::nullopt;
}

struct PlanarityCheck {
    size_t n = 0;
    size_t m = 0;
    bool satisfies_3n_minus_6 = false;
};

// Edge-count consequence of planarity: m <= 3n-6. Necessary, not sufficient.
inline PlanarityCheck planarity_necessary_check(const IntersectionGraph& g) {
    if (g.n() < 3) throw std::invalid_argument("planarity edge bound needs n >= 3");
    PlanarityCheck c;
    c.n = g.n();
    c.m = g.m();
    c.satisfies_3n_minus_6 = c.m <= 3 * c.n - 6;
    return c;
}

}  // namespace kpack::graphs
