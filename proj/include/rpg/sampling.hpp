#pragma once

#include <cmath>

#include "rpg/graph.hpp"
#include "rpg/rng.hpp"

namespace rpg {

// G(n, p) sampler. Below the density cutoff it geometrically skips over the
// row-major upper-triangle pair stream, so expected time is O(n + m); above
// it, a dense per-pair Bernoulli sweep. Both paths are pure in (n, p, seed).
inline Graph sample_gnp(u32 n, double p, Seed seed) {
    if (p < 0.0 || p > 1.0) throw BadSpec("sample_gnp: p outside [0,1]");
    std::vector<std::pair<u32, u32>> edges;
    if (n >= 2 && p > 0.0) {
        Rng rng(seed.value, mix64(seed.stream, 0x676e7000ULL));
        if (p >= 1.0) {
            edges.reserve(static_cast<size_t>(n) * (n - 1) / 2);
            for (u32 u = 0; u < n; ++u)
                for (u32 v = u + 1; v < n; ++v) edges.emplace_back(u, v);
        } else if (p >= 0.01) {
            edges.reserve(static_cast<size_t>(p * n * (n - 1) / 2 * 1.1) + 16);
            for (u32 u = 0; u < n; ++u)
                for (u32 v = u + 1; v < n; ++v)
                    if (rng.bernoulli(p)) edges.emplace_back(u, v);
        } else {
            const double log1mp = std::log1p(-p);
            u64 total = static_cast<u64>(n) * (n - 1) / 2;
            edges.reserve(static_cast<size_t>(p * static_cast<double>(total) * 1.2) + 16);
            u64 idx = 0;
            while (true) {
                double skip = std::floor(std::log(rng.next_unit()) / log1mp);
                if (skip >= static_cast<double>(total)) break;
                idx += static_cast<u64>(skip);
                if (idx >= total) break;
                // Invert the row-major flat index into (u, v).
                // idx counts pairs (u, v), u < v, rows of length n-1-u.
                u32 u = 0;
                {
                    double nf = n;
                    double approx = nf - 0.5 - std::sqrt((nf - 0.5) * (nf - 0.5) - 2.0 * static_cast<double>(idx));
                    u = static_cast<u32>(std::max(0.0, approx));
                    auto row_start = [&](u32 r) {
                        return static_cast<u64>(r) * n - static_cast<u64>(r) * (r + 1) / 2;
                    };
                    while (u > 0 && row_start(u) > idx) --u;
                    while (row_start(u + 1) <= idx) ++u;
                    u64 off = idx - row_start(u);
                    edges.emplace_back(u, static_cast<u32>(u + 1 + off));
                }
                ++idx;
            }
        }
    }
    return Graph::from_sorted_unique_edges(n, edges);
}

// Union of g with an independent G(n, p) sample on the same vertex set.
inline Graph perturb(const Graph& g, double p, Seed seed) {
    if (p <= 0.0) return g;
    return g.union_with(sample_gnp(g.n(), p, seed));
}

// Isomorphic copy under a uniformly random permutation.
inline Graph uniform_relabel(const Graph& g, Seed seed) {
    Rng rng(seed.value, mix64(seed.stream, 0x72656c61ULL));
    std::vector<u32> perm(g.n());
    std::iota(perm.begin(), perm.end(), 0);
    fisher_yates(perm, rng);
    std::vector<std::pair<u32, u32>> es;
    es.reserve(g.edge_count());
    for (u32 u = 0; u < g.n(); ++u)
        for (u32 v : g.neighbors(u))
            if (u < v) es.emplace_back(std::min(perm[u], perm[v]), std::max(perm[u], perm[v]));
    return Graph::from_edges(g.n(), es);
}

// Ordered sequence of k disjoint ell-subsets of [0, n), sampled in
// succession, uniformly without replacement, never touching `forbidden`.
struct Ensemble {
    std::vector<VertexSet> sets;
    u32 ambient_n = 0;

    VertexSet all_vertices() const {
        VertexSet out;
        for (const auto& s : sets) out.insert(out.end(), s.begin(), s.end());
        sort_unique(out);
        return out;
    }
};

inline Ensemble sample_ensemble(u32 n, u32 k, u32 ell, const VertexSet& forbidden, Seed seed) {
    if (static_cast<u64>(k) * ell + forbidden.size() > n)
        throw InsufficientVertices("sample_ensemble: k*ell exceeds available vertices");
    Rng rng(seed.value, mix64(seed.stream, 0x656e7300ULL));
    std::vector<u32> pool;
    pool.reserve(n);
    {
        std::vector<char> banned(n, 0);
        for (u32 v : forbidden) banned[v] = 1;
        for (u32 v = 0; v < n; ++v)
            if (!banned[v]) pool.push_back(v);
    }
    Ensemble e;
    e.ambient_n = n;
    size_t avail = pool.size();
    for (u32 i = 0; i < k; ++i) {
        VertexSet s;
        s.reserve(ell);
        for (u32 j = 0; j < ell; ++j) {
            size_t pick = rng.next_below(avail);
            s.push_back(pool[pick]);
            std::swap(pool[pick], pool[--avail]);
        }
        sort_unique(s);
        e.sets.push_back(std::move(s));
    }
    return e;
}

// Parameters of the (k, ell)-ensemble construction:
//   ell = max{ (2/gamma) sqrt(alpha_G), (32/gamma) ln n },  k = floor(gamma n / ell).
// Also evaluates the lemma's admissibility constraint gamma^2 >= 2 alpha_G/n.
struct EnsembleParams {
    double gamma = 0.0;
    u32 alpha_G = 0;
    u64 n = 0;
    u64 ell = 0;
    u64 k = 0;
    double ell_sqrt_branch = 0.0;
    double ell_log_branch = 0.0;
    bool alpha_constraint_ok = false;  // gamma^2 * (n / alpha_G) >= 2
};

inline EnsembleParams ensemble_params(u64 n, u32 alpha_G, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0 / 12.0))
        throw GammaOutOfRange("ensemble_params: gamma must lie in (0, 1/12)");
    if (alpha_G < 1 || n < 2) throw BadSpec("ensemble_params: need alpha_G >= 1, n >= 2");
    EnsembleParams out;
    out.gamma = gamma;
    out.alpha_G = alpha_G;
    out.n = n;
    out.ell_sqrt_branch = (2.0 / gamma) * std::sqrt(static_cast<double>(alpha_G));
    out.ell_log_branch = (32.0 / gamma) * std::log(static_cast<double>(n));
    out.ell = static_cast<u64>(std::ceil(std::max(out.ell_sqrt_branch, out.ell_log_branch)));
    out.k = static_cast<u64>(std::floor(gamma * static_cast<double>(n) / out.ell));
    out.alpha_constraint_ok = gamma * gamma * (static_cast<double>(n) / alpha_G) >= 2.0;
    return out;
}

}  // namespace rpg
