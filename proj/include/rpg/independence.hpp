#pragma once

#include <set>
#include <tuple>

#include "rpg/graph.hpp"
#include "rpg/rng.hpp"

namespace rpg {

namespace detail {

// Max independent set on <= 64 vertices, branch-and-bound over bitmasks.
// Branches on a max-degree vertex of the residual graph; the complement
// clique-ish bound |chosen| + |residual| prunes enough at oracle scale.
class MisSolver {
public:
    MisSolver(const std::vector<u64>& adj) : adj_(adj) {}

    u32 solve(u64 all) {
        best_ = 0;
        recurse(all, 0);
        return best_;
    }

private:
    void recurse(u64 avail, u32 chosen) {
        u32 cnt = static_cast<u32>(__builtin_popcountll(avail));
        if (chosen + cnt <= best_) return;
        if (cnt == 0) {
            best_ = std::max(best_, chosen);
            return;
        }
        // Pick the available vertex with most available neighbors.
        u32 pick = 0, pick_deg = 0;
        bool found = false;
        for (u64 m = avail; m; m &= m - 1) {
            u32 v = static_cast<u32>(__builtin_ctzll(m));
            u32 d = static_cast<u32>(__builtin_popcountll(adj_[v] & avail));
            if (!found || d > pick_deg) {
                pick = v;
                pick_deg = d;
                found = true;
            }
        }
        if (pick_deg <= 1) {
            // Residual graph is a matching plus isolated vertices: greedy is
            // exact, one vertex per component.
            u32 extra = 0;
            u64 rest = avail;
            while (rest) {
                u32 v = static_cast<u32>(__builtin_ctzll(rest));
                rest &= ~(adj_[v] | (1ULL << v));
                ++extra;
            }
            best_ = std::max(best_, chosen + extra);
            return;
        }
        recurse(avail & ~(adj_[pick] | (1ULL << pick)), chosen + 1);  // take
        recurse(avail & ~(1ULL << pick), chosen);                     // skip
    }

    const std::vector<u64>& adj_;
    u32 best_ = 0;
};

}  // namespace detail

// Exact independence number; exponential-time oracle for small graphs.
inline u32 exact_independence_number(const Graph& g, u32 cap = 60) {
    if (g.n() > cap || g.n() > 64)
        throw OracleCapExceeded("exact_independence_number: n=" + std::to_string(g.n()) +
                                " exceeds cap " + std::to_string(std::min<u32>(cap, 64)));
    std::vector<u64> adj(g.n(), 0);
    for (u32 u = 0; u < g.n(); ++u)
        for (u32 v : g.neighbors(u)) adj[u] |= 1ULL << v;
    u64 all = g.n() == 64 ? ~0ULL : (1ULL << g.n()) - 1;
    return detail::MisSolver(adj).solve(all);
}

// Randomized min-degree greedy maximal independent set. Equal-degree ties are
// broken by a seeded priority, lowest vertex id last, so a fixed seed is
// fully reproducible. The result is a lower bound on alpha(g); reporting only.
inline u32 greedy_independence_lower_bound(const Graph& g, u64 seed) {
    u32 n = g.n();
    if (n == 0) return 0;
    Rng rng(seed, 0x6d69730aULL);
    std::vector<u32> priority(n);
    std::iota(priority.begin(), priority.end(), 0);
    fisher_yates(priority, rng);
    std::vector<u32> deg(n);
    std::vector<char> alive(n, 1);
    std::set<std::tuple<u32, u32, u32>> heap;  // (degree, priority, id)
    for (u32 v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        heap.emplace(deg[v], priority[v], v);
    }
    u32 size = 0;
    auto drop = [&](u32 x) {
        if (!alive[x]) return;
        alive[x] = 0;
        heap.erase({deg[x], priority[x], x});
        for (u32 w : g.neighbors(x))
            if (alive[w]) {
                heap.erase({deg[w], priority[w], w});
                --deg[w];
                heap.emplace(deg[w], priority[w], w);
            }
    };
    while (!heap.empty()) {
        u32 best = std::get<2>(*heap.begin());
        ++size;
        auto nbrs = g.neighbors(best);
        std::vector<u32> to_drop(nbrs.begin(), nbrs.end());
        drop(best);
        for (u32 w : to_drop) drop(w);
    }
    return size;
}

struct DegeneracyResult {
    bool complete = false;   // true when every vertex was peeled
    std::vector<u32> order;  // peel order; each has < threshold later neighbors
    VertexSet residual;      // nonempty witness with min degree >= threshold
};

// Repeatedly peels vertices whose current degree is below `threshold`
// (min-degree first, lowest id on ties). Either peels everything or stops at
// the nonempty residual core Z with delta(g[Z]) >= threshold.
inline DegeneracyResult degeneracy_order(const Graph& g, u32 threshold) {
    u32 n = g.n();
    DegeneracyResult res;
    std::vector<u32> deg(n);
    std::vector<char> alive(n, 1);
    std::set<std::pair<u32, u32>> heap;  // (degree, id); lowest id wins ties
    for (u32 v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        heap.emplace(deg[v], v);
    }
    u32 peeled = 0;
    while (!heap.empty() && heap.begin()->first < threshold) {
        u32 pick = heap.begin()->second;
        heap.erase(heap.begin());
        alive[pick] = 0;
        ++peeled;
        res.order.push_back(pick);
        for (u32 w : g.neighbors(pick)) {
            if (!alive[w]) continue;
            heap.erase({deg[w], w});
            --deg[w];
            heap.emplace(deg[w], w);
        }
    }
    if (peeled == n) {
        res.complete = true;
    } else {
        for (u32 v = 0; v < n; ++v)
            if (alive[v]) res.residual.push_back(v);
    }
    return res;
}

}  // namespace rpg
