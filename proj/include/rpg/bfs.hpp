#pragma once

#include <queue>

#include "rpg/graph.hpp"

namespace rpg {

inline std::vector<u32> bfs_distances(const Graph& g, u32 source) {
    assert(source < g.n());
    std::vector<u32> dist(g.n(), kInfDist);
    std::vector<u32> queue;
    queue.reserve(g.n());
    dist[source] = 0;
    queue.push_back(source);
    for (size_t head = 0; head < queue.size(); ++head) {
        u32 u = queue[head];
        u32 du = dist[u];
        for (u32 v : g.neighbors(u)) {
            if (dist[v] == kInfDist) {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

namespace detail {

// BFS into caller-owned buffers; returns (eccentricity, #reached).
inline std::pair<u32, u32> bfs_ecc(const Graph& g, u32 source, std::vector<u32>& dist,
                                   std::vector<u32>& queue) {
    std::fill(dist.begin(), dist.end(), kInfDist);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source);
    u32 ecc = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
        u32 u = queue[head];
        u32 du = dist[u];
        for (u32 v : g.neighbors(u)) {
            if (dist[v] == kInfDist) {
                dist[v] = du + 1;
                ecc = du + 1;
                queue.push_back(v);
            }
        }
    }
    return {ecc, static_cast<u32>(queue.size())};
}

}  // namespace detail

// Exact diameter via iFUB: double-sweep lower bound, then fringe vertices of
// a root BFS processed by decreasing level until the remaining pairs are
// provably closer than the best eccentricity seen. Returns kInfDist when the
// graph is disconnected; 0 for n <= 1.
inline u32 exact_diameter(const Graph& g) {
    u32 n = g.n();
    if (n <= 1) return 0;
    std::vector<u32> dist(n), queue;
    queue.reserve(n);
    auto [ecc0, reach0] = detail::bfs_ecc(g, 0, dist, queue);
    if (reach0 != n) return kInfDist;
    if (g.edge_count() == static_cast<u64>(n) * (n - 1) / 2) return 1;

    // Double sweep: BFS from the farthest vertex found, twice.
    u32 a = queue.back();
    auto [ecc_a, ra] = detail::bfs_ecc(g, a, dist, queue);
    (void)ra;
    u32 b = queue.back();
    u32 lower = ecc_a;

    // Root for iFUB: midpoint of the a->b sweep path works well; we settle
    // for the max-degree vertex among the middle level of the sweep.
    std::vector<u32> dist_a = dist;
    auto [ecc_b, rb] = detail::bfs_ecc(g, b, dist, queue);
    (void)rb;
    lower = std::max(lower, ecc_b);
    u32 root = a, best_gap = kInfDist;
    for (u32 v = 0; v < n; ++v) {
        if (dist[v] == kInfDist) continue;
        u32 gap = dist[v] > dist_a[v] ? dist[v] - dist_a[v] : dist_a[v] - dist[v];
        if (gap < best_gap || (gap == best_gap && g.degree(v) > g.degree(root))) {
            best_gap = gap;
            root = v;
        }
    }

    auto [ecc_r, rr] = detail::bfs_ecc(g, root, dist, queue);
    (void)rr;
    std::vector<std::vector<u32>> levels(ecc_r + 1);
    for (u32 v = 0; v < n; ++v) levels[dist[v]].push_back(v);
    u32 best = std::max(lower, ecc_r);
    for (u32 i = ecc_r; i >= 1; --i) {
        if (best >= 2 * i) return best;  // remaining pairs are within 2i
        for (u32 v : levels[i]) {
            auto [e, r2] = detail::bfs_ecc(g, v, dist, queue);
            (void)r2;
            best = std::max(best, e);
        }
        // After level i is done, every unprocessed vertex sits at depth < i.
        if (best >= 2 * (i - 1)) return best;
    }
    return best;
}

inline bool is_connected(const Graph& g) {
    if (g.n() <= 1) return true;
    std::vector<u32> dist(g.n()), queue;
    return detail::bfs_ecc(g, 0, dist, queue).second == g.n();
}

// Connected components as sorted vertex sets.
inline std::vector<VertexSet> connected_components(const Graph& g) {
    std::vector<VertexSet> comps;
    std::vector<u32> seen(g.n(), 0), queue;
    for (u32 s = 0; s < g.n(); ++s) {
        if (seen[s]) continue;
        VertexSet comp;
        queue.assign(1, s);
        seen[s] = 1;
        while (!queue.empty()) {
            u32 u = queue.back();
            queue.pop_back();
            comp.push_back(u);
            for (u32 v : g.neighbors(u))
                if (!seen[v]) {
                    seen[v] = 1;
                    queue.push_back(v);
                }
        }
        sort_unique(comp);
        comps.push_back(std::move(comp));
    }
    return comps;
}

struct SmallDiameterResult {
    bool connected = false;
    u32 diameter = kInfDist;   // exact when decided or when <= 3
    bool decided = false;      // true when `diameter` is exact
};

// Exact decision procedure specialised for diameters <= 3: a two-hop scan
// from every vertex. For each source u it marks B2(u) and then confirms that
// every vertex outside B2(u) still has a neighbor inside it (distance 3).
// Costs sum(deg^2) overall, which beats iFUB when level sets are fat.
// If some pair sits at distance >= 4, falls back to full iFUB.
inline SmallDiameterResult diameter_leq3_check(const Graph& g) {
    SmallDiameterResult res;
    u32 n = g.n();
    if (n <= 1) return {true, 0, true};
    {
        std::vector<u32> dist(n), queue;
        auto [e0, r0] = detail::bfs_ecc(g, 0, dist, queue);
        (void)e0;
        if (r0 != n) return {false, kInfDist, true};
    }
    res.connected = true;
    const u32 words = (n + 63) / 64;
    std::vector<u64> ball(words, 0);
    std::vector<u32> stamp(n, kInfDist);
    u32 diam = 1;
    for (u32 u = 0; u < n; ++u) {
        std::fill(ball.begin(), ball.end(), 0);
        auto mark = [&](u32 x) {
            if (stamp[x] != u) {
                stamp[x] = u;
                ball[x >> 6] |= 1ULL << (x & 63);
            }
        };
        mark(u);
        for (u32 w : g.neighbors(u)) mark(w);
        for (u32 w : g.neighbors(u))
            for (u32 x : g.neighbors(w)) mark(x);
        // Every unmarked vertex must have a marked neighbor (distance 3).
        for (u32 wi = 0; wi < words; ++wi) {
            u64 miss = ~ball[wi];
            if (wi == words - 1 && (n & 63)) miss &= (1ULL << (n & 63)) - 1;
            while (miss) {
                u32 v = (wi << 6) + static_cast<u32>(__builtin_ctzll(miss));
                miss &= miss - 1;
                bool hit = false;
                for (u32 x : g.neighbors(v)) {
                    if (stamp[x] == u) {
                        hit = true;
                        break;
                    }
                }
                if (!hit) {
                    // Distance >= 4 somewhere; hand over to the general solver.
                    res.diameter = exact_diameter(g);
                    res.decided = true;
                    return res;
                }
                diam = 3;
            }
        }
        if (diam < 2 && static_cast<u64>(g.degree(u)) + 1 < n) diam = 2;
    }
    res.diameter = diam;
    res.decided = true;
    return res;
}

}  // namespace rpg
