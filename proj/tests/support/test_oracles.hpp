#pragma once

// Test-only oracles, kept independent of the library implementations they
// cross-check: plain subset enumeration and Floyd-Warshall, nothing shared
// with the code under test.

#include "rpg/families.hpp"
#include "rpg/graph.hpp"

namespace test_oracles {

using rpg::Graph;
using rpg::u32;
using rpg::u64;
using rpg::VertexSet;

// Maximum independent set by direct enumeration of all 2^n subsets.
inline u32 brute_independence_number(const Graph& g) {
    u32 n = g.n();
    if (n > 24) throw std::runtime_error("brute oracle limited to n <= 24");
    u32 best = 0;
    for (u64 mask = 0; mask < (1ULL << n); ++mask) {
        bool ok = true;
        for (u32 u = 0; u < n && ok; ++u) {
            if (!(mask & (1ULL << u))) continue;
            for (u32 v : g.neighbors(u))
                if (v > u && (mask & (1ULL << v))) {
                    ok = false;
                    break;
                }
        }
        if (ok) best = std::max(best, static_cast<u32>(__builtin_popcountll(mask)));
    }
    return best;
}

// All-pairs shortest paths, O(n^3).
inline std::vector<std::vector<u32>> floyd_warshall(const Graph& g) {
    u32 n = g.n();
    const u32 inf = rpg::kInfDist / 2;
    std::vector<std::vector<u32>> d(n, std::vector<u32>(n, inf));
    for (u32 v = 0; v < n; ++v) d[v][v] = 0;
    for (u32 u = 0; u < n; ++u)
        for (u32 v : g.neighbors(u)) d[u][v] = 1;
    for (u32 k = 0; k < n; ++k)
        for (u32 i = 0; i < n; ++i)
            for (u32 j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

inline u32 floyd_diameter(const Graph& g) {
    if (g.n() <= 1) return 0;
    auto d = floyd_warshall(g);
    const u32 inf = rpg::kInfDist / 2;
    u32 diam = 0;
    for (u32 i = 0; i < g.n(); ++i)
        for (u32 j = 0; j < g.n(); ++j) {
            if (d[i][j] >= inf) return rpg::kInfDist;
            diam = std::max(diam, d[i][j]);
        }
    return diam;
}

inline bool connected_after_removal(const Graph& g, u64 removed_mask) {
    u32 n = g.n();
    u32 start = n;
    for (u32 v = 0; v < n; ++v)
        if (!(removed_mask & (1ULL << v))) {
            start = v;
            break;
        }
    if (start == n) return true;  // nothing left counts as connected
    std::vector<char> seen(n, 0);
    std::vector<u32> stack{start};
    seen[start] = 1;
    u32 reached = 1, total = 0;
    for (u32 v = 0; v < n; ++v) total += !(removed_mask & (1ULL << v));
    while (!stack.empty()) {
        u32 u = stack.back();
        stack.pop_back();
        for (u32 v : g.neighbors(u)) {
            if ((removed_mask & (1ULL << v)) || seen[v]) continue;
            seen[v] = 1;
            ++reached;
            stack.push_back(v);
        }
    }
    return reached == total;
}

// kappa(g) >= k decided by enumerating every vertex subset of size < k.
inline bool exhaustive_connectivity_at_least(const Graph& g, u32 k) {
    u32 n = g.n();
    if (n > 20) throw std::runtime_error("exhaustive connectivity limited to n <= 20");
    if (g.is_complete()) return k <= (n == 0 ? 0 : n - 1);
    std::vector<u32> subset;
    // Enumerate subsets of size 0 .. k-1 via recursion.
    std::function<bool(u32, u64, u32)> any_separator = [&](u32 start, u64 mask,
                                                           u32 remaining) -> bool {
        if (!connected_after_removal(g, mask)) return true;
        if (remaining == 0) return false;
        for (u32 v = start; v < n; ++v)
            if (any_separator(v + 1, mask | (1ULL << v), remaining - 1)) return true;
        return false;
    };
    return !any_separator(0, 0, k == 0 ? 0 : k - 1);
}

inline Graph petersen() {
    // Outer C5 (0..4), inner pentagram (5..9), spokes i -- i+5.
    std::vector<std::pair<u32, u32>> es;
    for (u32 i = 0; i < 5; ++i) {
        es.emplace_back(i, (i + 1) % 5);
        es.emplace_back(i, i + 5);
        es.emplace_back(i + 5, 5 + (i + 2) % 5);
    }
    return Graph::from_edges(10, es);
}

// Uniformly random simple graph on n vertices with edge probability p,
// deliberately decoupled from the library samplers.
inline Graph random_graph(u32 n, double p, u64 seed) {
    std::vector<std::pair<u32, u32>> es;
    u64 state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    auto next = [&]() {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        return state * 0x2545F4914F6CDD1DULL;
    };
    for (u32 u = 0; u < n; ++u)
        for (u32 v = u + 1; v < n; ++v)
            if (static_cast<double>(next() >> 11) * 0x1.0p-53 < p) es.emplace_back(u, v);
    return Graph::from_sorted_unique_edges(n, es);
}

}  // namespace test_oracles
