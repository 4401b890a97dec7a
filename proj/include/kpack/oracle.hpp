#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <vector>

#include "kpack/family.hpp"

namespace kpack::oracle {

using geometry::Family;
using geometry::Point;
using geometry::Region;
using geometry::SimplePolygon;

namespace detail {

// Closed-set membership of every point (xs[c], y) in one ring's disk,
// reported as parity plus explicit boundary hits, by an exact scan-line:
// non-horizontal edges contribute crossings under the half-open rule,
// horizontal edges and vertices on the line are boundary hits.
struct RingRow {
    std::vector<Rational> crossings;                    // sorted
    std::vector<std::pair<Rational, Rational>> spans;   // horizontal edges on the line
    std::vector<Rational> vertex_hits;                  // sorted
};

inline RingRow ring_row(const SimplePolygon& ring, const Rational& y) {
    RingRow row;
    size_t n = ring.size();
    for (size_t i = 0; i < n; ++i) {
        const Point& a = ring.vertex(i);
        const Point& b = ring.vertex(i + 1);
        if (a.y == y) row.vertex_hits.push_back(a.x);
        if (a.y == b.y) {
            if (a.y == y) row.spans.emplace_back(std::min(a.x, b.x), std::max(a.x, b.x));
            continue;
        }
        bool up = a.y <= y && y < b.y;
        bool down = b.y <= y && y < a.y;
        if (up || down) row.crossings.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    std::sort(row.crossings.begin(), row.crossings.end());
    std::sort(row.vertex_hits.begin(), row.vertex_hits.end());
    return row;
}

// inside-or-boundary flags for sorted sample xs against one ring.
inline void ring_row_membership(const RingRow& row, const std::vector<Rational>& xs,
                                std::vector<char>& inside, std::vector<char>& boundary) {
    inside.assign(xs.size(), 0);
    boundary.assign(xs.size(), 0);
    size_t ci = 0;
    bool odd = false;
    for (size_t c = 0; c < xs.size(); ++c) {
        while (ci < row.crossings.size() && row.crossings[ci] < xs[c]) {
            odd = !odd;
            ++ci;
        }
        if (ci < row.crossings.size() && row.crossings[ci] == xs[c]) boundary[c] = 1;
        inside[c] = odd ? 1 : 0;
    }
    for (const auto& v : row.vertex_hits) {
        auto it = std::lower_bound(xs.begin(), xs.end(), v);
        if (it != xs.end() && *it == v) boundary[it - xs.begin()] = 1;
    }
    for (const auto& [lo, hi] : row.spans) {
        auto first = std::lower_bound(xs.begin(), xs.end(), lo);
        for (auto it = first; it != xs.end() && *it <= hi; ++it) boundary[it - xs.begin()] = 1;
    }
}

// Per-cell closed membership of a whole region along one row. Matches
// region_membership(region, (xs[c], y)) != Exterior for every sample.
inline std::vector<char> region_row_coverage(const Region& region, const Rational& y,
                                             const std::vector<Rational>& xs) {
    std::vector<char> covered(xs.size(), 0);
    std::vector<std::vector<char>> shell_in(region.shells.size());
    std::vector<char> tmp_boundary;
    for (size_t s = 0; s < region.shells.size(); ++s) {
        ring_row_membership(ring_row(region.shells[s], y), xs, shell_in[s], tmp_boundary);
        for (size_t c = 0; c < xs.size(); ++c)
            if (tmp_boundary[c]) covered[c] = 1;
    }
    std::vector<std::vector<char>> hole_in(region.holes.size());
    for (size_t h = 0; h < region.holes.size(); ++h) {
        ring_row_membership(ring_row(region.holes[h], y), xs, hole_in[h], tmp_boundary);
        for (size_t c = 0; c < xs.size(); ++c)
            if (tmp_boundary[c]) covered[c] = 1;
    }
    for (size_t c = 0; c < xs.size(); ++c) {
        if (covered[c]) continue;
        for (size_t s = 0; s < region.shells.size() && !covered[c]; ++s) {
            if (!shell_in[s][c]) continue;
            bool in_hole = false;
            for (size_t h = 0; h < region.holes.size(); ++h)
                if (region.hole_shell[h] == static_cast<int>(s) && hole_in[h][c]) {
                    in_hole = true;
                    break;
                }
            if (!in_hole) covered[c] = 1;
        }
    }
    return covered;
}

}  // namespace detail

struct OracleResult {
    int holes = 0;
    int union_components = 0;
    int max_depth_sampled = 0;
    long grid_width = 0;
    long grid_height = 0;
};

// Rasterizing counterpart of the exact arrangement statistics: samples exact
// closed-set membership at cell centers on a grid of `resolution` cells per
// unit, then labels 4-connected components of the covered cells and of the
// complement. Approximate by nature; adequate only when every feature spans
// several cells, which `min_feature` (estimated smallest face inradius, when
// known) guards with the 3-cell rule.
inline OracleResult flood_fill_oracle(const Family& fam, long resolution,
                                      std::optional<double> min_feature = std::nullopt) {
    if (resolution < 1) throw std::invalid_argument("resolution must be >= 1");
    if (min_feature && *min_feature * static_cast<double>(resolution) <= 3.0)
        throw ResolutionTooCoarse("smallest feature " + std::to_string(*min_feature) +
                                  " spans <= 3 cells at resolution " + std::to_string(resolution));

    OracleResult res;
    bool any = false;
    Rational xmin, xmax, ymin, ymax;
    for (const auto& m : fam.members) {
        for (const auto* rings : {&m.region.shells, &m.region.holes}) {
            for (const auto& ring : *rings) {
                for (const auto& v : ring.vertices) {
                    if (!any) {
                        xmin = xmax = v.x;
                        ymin = ymax = v.y;
                        any = true;
                    } else {
                        if (v.x < xmin) xmin = v.x;
                        if (v.x > xmax) xmax = v.x;
                        if (v.y < ymin) ymin = v.y;
                        if (v.y > ymax) ymax = v.y;
                    }
                }
            }
        }
    }
    if (!any) return res;  // empty family: no holes, no components

    Rational r(resolution);
    auto floor_times = [&](const Rational& q) {
        Rational v = q * r;
        mpz_class z;
        mpz_fdiv_q(z.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
        return z.get_si();
    };
    long i0 = floor_times(xmin) - 2;
    long i1 = floor_times(xmax) + 3;
    long j0 = floor_times(ymin) - 2;
    long j1 = floor_times(ymax) + 3;
    long nx = i1 - i0 + 1;
    long ny = j1 - j0 + 1;
    res.grid_width = nx;
    res.grid_height = ny;

    std::vector<Rational> xs(nx);
    for (long i = 0; i < nx; ++i) xs[i] = Rational(2 * (i0 + i) + 1, 1) / (2 * r);

    std::vector<int> depth(static_cast<size_t>(nx) * ny, 0);
    for (long j = 0; j < ny; ++j) {
        Rational y = Rational(2 * (j0 + j) + 1, 1) / (2 * r);
        for (const auto& m : fam.members) {
            auto covered = detail::region_row_coverage(m.region, y, xs);
            for (long i = 0; i < nx; ++i)
                if (covered[i]) ++depth[j * nx + i];
        }
    }
    for (int d : depth) res.max_depth_sampled = std::max(res.max_depth_sampled, d);

    // 4-connected labeling; complement components touching the border are
    // unbounded, the rest are holes.
    std::vector<int> label(depth.size(), -1);
    auto bfs = [&](long si, long sj, int id, bool want_covered, bool* touches_border) {
        std::queue<std::pair<long, long>> q;
        q.push({si, sj});
        label[sj * nx + si] = id;
        while (!q.empty()) {
            auto [ci, cj] = q.front();
            q.pop();
            if (touches_border && (ci == 0 || cj == 0 || ci == nx - 1 || cj == ny - 1))
                *touches_border = true;
            const long di[4] = {1, -1, 0, 0};
            const long dj[4] = {0, 0, 1, -1};
            for (int d4 = 0; d4 < 4; ++d4) {
                long ni = ci + di[d4], nj = cj + dj[d4];
                if (ni < 0 || nj < 0 || ni >= nx || nj >= ny) continue;
                size_t idx = nj * nx + ni;
                if (label[idx] >= 0) continue;
                if ((depth[idx] > 0) != want_covered) continue;
                label[idx] = id;
                q.push({ni, nj});
            }
        }
    };
    int next_label = 0;
    for (long j = 0; j < ny; ++j) {
        for (long i = 0; i < nx; ++i) {
            size_t idx = j * nx + i;
            if (label[idx] >= 0) continue;
            bool covered = depth[idx] > 0;
            if (covered) {
                bfs(i, j, next_label++, true, nullptr);
                ++res.union_components;
            } else {
                bool touches = false;
                bfs(i, j, next_label++, false, &touches);
                if (!touches) ++res.holes;
            }
        }
    }
    return res;
}

}  // namespace kpack::oracle
