#pragma once

#include <string>
#include <unordered_set>

#include "rpg/graph.hpp"
#include "rpg/rng.hpp"

namespace rpg {

inline Graph empty_graph(u32 n) { return Graph::from_sorted_unique_edges(n, {}); }

inline Graph complete_graph(u32 n) {
    std::vector<std::pair<u32, u32>> es;
    es.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (u32 u = 0; u < n; ++u)
        for (u32 v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return Graph::from_sorted_unique_edges(n, es);
}

inline Graph path_graph(u32 n) {
    std::vector<std::pair<u32, u32>> es;
    for (u32 v = 0; v + 1 < n; ++v) es.emplace_back(v, v + 1);
    return Graph::from_sorted_unique_edges(n, es);
}

inline Graph cycle_graph(u32 n) {
    if (n < 3) throw BadSpec("cycle needs n >= 3");
    std::vector<std::pair<u32, u32>> es;
    es.emplace_back(0, 1);
    es.emplace_back(0, n - 1);
    for (u32 v = 1; v + 1 < n; ++v) es.emplace_back(v, v + 1);
    return Graph::from_edges(n, es);
}

inline Graph complete_bipartite(u32 a, u32 b) {
    std::vector<std::pair<u32, u32>> es;
    es.reserve(static_cast<size_t>(a) * b);
    for (u32 u = 0; u < a; ++u)
        for (u32 v = a; v < a + b; ++v) es.emplace_back(u, v);
    return Graph::from_sorted_unique_edges(a + b, es);
}

// Disjoint union of floor(n/(k+1)) cliques with balanced sizes in
// [k+1, ceil(n/r)], covering all n vertices. alpha = number of cliques and
// every vertex has degree >= k.
inline Graph disjoint_cliques(u32 n, u32 k) {
    if (k + 1 > n) throw BadSpec("disjoint_cliques: k+1 > n");
    u32 r = n / (k + 1);
    std::vector<std::pair<u32, u32>> es;
    u32 start = 0;
    for (u32 i = 0; i < r; ++i) {
        u32 size = n / r + (i < n % r ? 1 : 0);
        for (u32 u = start; u < start + size; ++u)
            for (u32 v = u + 1; v < start + size; ++v) es.emplace_back(u, v);
        start += size;
    }
    return Graph::from_sorted_unique_edges(n, es);
}

inline u32 disjoint_cliques_count(u32 n, u32 k) { return n / (k + 1); }

// Circulant graph: v adjacent to v +- d (mod n) for each offset d.
// Vertex-transitive by construction.
inline Graph circulant_graph(u32 n, const std::vector<u32>& offsets) {
    std::vector<std::pair<u32, u32>> es;
    for (u32 d : offsets) {
        if (d == 0 || d >= n) throw BadSpec("circulant offset out of range");
        for (u32 v = 0; v < n; ++v) {
            u32 w = (v + d) % n;
            es.emplace_back(std::min(v, w), std::max(v, w));
        }
    }
    return Graph::from_edges(n, es);
}

// Random d-regular simple graph: configuration-model pairing followed by
// edge-switch repair of self-loops and parallel pairs. Plain rejection has
// vanishing acceptance once d^2 is comparable to n, so conflicts are repaired
// by seeded switches instead; degrees are preserved exactly.
inline Graph random_regular(u32 n, u32 d, Seed seed) {
    if (static_cast<u64>(n) * d % 2 != 0) throw BadSpec("random_regular: n*d must be even");
    if (d >= n) throw BadSpec("random_regular: d >= n");
    Rng rng(seed.value, mix64(seed.stream, 0x72656775ULL));
    std::vector<u32> stubs(static_cast<size_t>(n) * d);
    for (u32 v = 0; v < n; ++v)
        for (u32 i = 0; i < d; ++i) stubs[static_cast<size_t>(v) * d + i] = v;
    fisher_yates(stubs, rng);
    size_t half = stubs.size() / 2;
    auto end_a = [&](size_t e) -> u32& { return stubs[2 * e]; };
    auto end_b = [&](size_t e) -> u32& { return stubs[2 * e + 1]; };

    auto make_key = [](u32 u, u32 v) {
        return (static_cast<u64>(std::min(u, v)) << 32) | std::max(u, v);
    };
    std::unordered_set<u64> present;
    present.reserve(2 * half);
    std::vector<size_t> bad_stack;
    std::vector<char> is_bad(half, 0);
    for (size_t e = 0; e < half; ++e) {
        u32 u = end_a(e), v = end_b(e);
        if (u == v || !present.insert(make_key(u, v)).second) {
            is_bad[e] = 1;
            bad_stack.push_back(e);
        }
    }
    // Repair: 2-swap a conflicting pair against a random partner pair,
    // accepting only swaps that leave both pairs simple and fresh.
    size_t guard = 0, bad_count = bad_stack.size();
    while (bad_count > 0) {
        if (guard++ > 400 * stubs.size())
            throw BadSpec("random_regular: repair did not converge");
        while (!bad_stack.empty() && !is_bad[bad_stack.back()]) bad_stack.pop_back();
        size_t e = bad_stack.back();
        size_t f = rng.next_below(half);
        if (f == e) continue;
        u32 a = end_a(e), b = end_b(e), c = end_a(f), dd = end_b(f);
        if (a == dd || c == b) continue;
        u64 k_new1 = make_key(a, dd), k_new2 = make_key(c, b);
        if (k_new1 == k_new2 || present.count(k_new1) || present.count(k_new2)) continue;
        if (!is_bad[f]) present.erase(make_key(c, dd));
        std::swap(end_b(e), end_b(f));
        present.insert(k_new1);
        present.insert(k_new2);
        --bad_count;
        is_bad[e] = 0;
        bad_stack.pop_back();
        if (is_bad[f]) {
            is_bad[f] = 0;
            --bad_count;
        }
    }
    std::vector<std::pair<u32, u32>> es;
    es.reserve(half);
    for (size_t e = 0; e < half; ++e)
        es.emplace_back(std::min(end_a(e), end_b(e)), std::max(end_a(e), end_b(e)));
    return Graph::from_edges(n, es);
}

// Declarative family spec for harness configs / CLI.
struct FamilySpec {
    std::string family;           // disjoint-cliques | circulant | complete-bipartite |
                                  // path | cycle | complete | empty | random-regular | gnp
    u32 n = 0;
    u32 k = 0;                    // clique parameter (size k+1) for disjoint-cliques
    u32 a = 0, b = 0;             // complete-bipartite sides
    u32 d = 0;                    // regular degree
    std::vector<u32> offsets;     // circulant offsets
    double p = 0.0;               // gnp probability
};

}  // namespace rpg
