#pragma once

#include <optional>
#include <set>

#include "rpg/bfs.hpp"
#include "rpg/certificates.hpp"
#include "rpg/independence.hpp"
#include "rpg/sampling.hpp"

namespace rpg {

struct PackingShortfall : std::runtime_error {
    u32 achieved = 0;
    explicit PackingShortfall(u32 got, u32 want)
        : std::runtime_error("pack_stars: packed " + std::to_string(got) + " stars, wanted " +
                             std::to_string(want)),
          achieved(got) {}
};

struct MinDegCoreResult {
    VertexSet core;
    VertexSet removed;
    bool size_ok = false;  // |core| >= 0.8 n whenever |u| >= 0.9 n
};

// Fixed point of "repeatedly remove vertices of degree < c_half inside r[u]".
inline MinDegCoreResult min_degree_core(const Graph& r, const VertexSet& u, u32 c_half) {
    auto [sub, back] = r.induced(u);
    auto peel = degeneracy_order(sub, c_half);
    MinDegCoreResult res;
    for (u32 v : peel.residual) res.core.push_back(back[v]);
    for (u32 v : peel.order) res.removed.push_back(back[v]);
    sort_unique(res.core);
    sort_unique(res.removed);
    res.size_ok = 10 * static_cast<u64>(res.core.size()) >= 8 * static_cast<u64>(r.n());
    return res;
}

struct DiamCoreResult {
    VertexSet core;
    VertexSet removed;
    bool size_ok = false;
    bool diameter_bound_met = false;
    double bound = 0.0;                 // 3 log2 n of the ambient graph
    std::optional<u32> exact_diameter_value;  // filled when it had to be computed
};

// Peel to min degree >= c/2, then certify diam(r[core]) <= 3 log2 n. A single
// eccentricity often settles the bound; the exact solver runs only when the
// cheap bounds straddle it.
inline DiamCoreResult diameter_core(const Graph& r, const VertexSet& u, u32 c) {
    DiamCoreResult res;
    auto mdc = min_degree_core(r, u, (c + 1) / 2);
    res.core = std::move(mdc.core);
    res.removed = std::move(mdc.removed);
    res.size_ok = mdc.size_ok;
    res.bound = 3.0 * std::log2(std::max<double>(2.0, r.n()));
    if (res.core.empty()) return res;
    auto [sub, back] = r.induced(res.core);
    (void)back;
    std::vector<u32> dist(sub.n()), queue;
    auto [ecc, reached] = detail::bfs_ecc(sub, 0, dist, queue);
    if (reached != sub.n()) return res;  // disconnected: diameter infinite
    if (2.0 * ecc <= res.bound) {
        res.diameter_bound_met = true;
        return res;
    }
    if (static_cast<double>(ecc) > res.bound) return res;  // ecc alone breaks it
    u32 d = exact_diameter(sub);
    res.exact_diameter_value = d;
    res.diameter_bound_met = static_cast<double>(d) <= res.bound;
    return res;
}

// Heuristic falsifier for the small-set edge-span property
// e(X) < bound_c |X| / 8 for all |X| <= size_cap: peel by minimum degree and
// test every suffix that fits the cap. Exhaustive checking is exponential;
// a found set is a genuine violation, absence is evidence only.
struct EdgeSpanResult {
    bool ok = true;
    VertexSet violating;
    u64 violating_edges = 0;
};

inline EdgeSpanResult check_edge_span(const Graph& r, u32 bound_c,
                                      std::optional<u64> size_cap_opt = std::nullopt) {
    u64 size_cap = size_cap_opt.value_or(
        static_cast<u64>(static_cast<double>(r.n()) / std::exp(10.0)));
    EdgeSpanResult res;
    if (size_cap == 0) return res;
    u32 n = r.n();
    std::vector<u32> deg(n);
    std::vector<char> alive(n, 1);
    std::set<std::pair<u32, u32>> heap;
    u64 edges = r.edge_count();
    u64 remaining = n;
    for (u32 v = 0; v < n; ++v) {
        deg[v] = r.degree(v);
        heap.emplace(deg[v], v);
    }
    auto check_now = [&]() {
        if (remaining == 0 || remaining > size_cap) return false;
        return 8 * edges >= static_cast<u64>(bound_c) * remaining;
    };
    if (check_now()) {
        for (u32 v = 0; v < n; ++v)
            if (alive[v]) res.violating.push_back(v);
        res.violating_edges = edges;
        res.ok = false;
        return res;
    }
    while (remaining > 1) {
        auto [d, v] = *heap.begin();
        heap.erase(heap.begin());
        alive[v] = 0;
        --remaining;
        edges -= d;
        for (u32 w : r.neighbors(v)) {
            if (!alive[w]) continue;
            heap.erase({deg[w], w});
            --deg[w];
            heap.emplace(deg[w], w);
        }
        if (check_now()) {
            for (u32 x = 0; x < n; ++x)
                if (alive[x]) res.violating.push_back(x);
            res.violating_edges = edges;
            res.ok = false;
            return res;
        }
    }
    return res;
}

struct StarPacking {
    std::vector<std::pair<u32, VertexSet>> stars;  // (center, leaves)
    VertexSet side_x, side_y;                      // bipartition used
};

// Local-search max cut (single-vertex moves to a local optimum, which already
// gives cross-degree >= deg/2 for every vertex), then greedy maximal disjoint
// stars K_{1,ceil(s/4)} with centers on the smaller side.
inline StarPacking pack_stars(const Graph& g, u32 s) {
    u32 n = g.n();
    if (s < 8 || static_cast<u64>(s) * s > n)
        throw BadSpec("pack_stars: requires 64 <= s^2 <= n");
    if (g.min_degree() < s) throw BadSpec("pack_stars: requires min degree >= s");

    std::vector<char> side(n, 0);
    for (u32 v = 0; v < n; ++v) side[v] = v & 1;  // deterministic start
    std::vector<u32> cross(n, 0);
    auto recount = [&]() {
        for (u32 v = 0; v < n; ++v) {
            u32 c = 0;
            for (u32 w : g.neighbors(v)) c += side[w] != side[v];
            cross[v] = c;
        }
    };
    recount();
    bool moved = true;
    while (moved) {
        moved = false;
        for (u32 v = 0; v < n; ++v) {
            u32 d = g.degree(v);
            if (2 * cross[v] < d) {  // strictly more same-side neighbors: flip
                side[v] ^= 1;
                cross[v] = d - cross[v];
                for (u32 w : g.neighbors(v)) {
                    if (side[w] != side[v])
                        ++cross[w];
                    else
                        --cross[w];
                }
                moved = true;
            }
        }
    }

    StarPacking out;
    u64 zeros = 0;
    for (u32 v = 0; v < n; ++v) zeros += side[v] == 0;
    char x_side = (2 * zeros <= n) ? 0 : 1;
    for (u32 v = 0; v < n; ++v)
        (side[v] == x_side ? out.side_x : out.side_y).push_back(v);

    u32 leaves_needed = (s + 3) / 4;
    u32 stars_needed = s / 8;
    std::vector<char> used(n, 0);
    for (u32 c : out.side_x) {
        if (used[c]) continue;
        VertexSet leaves;
        for (u32 w : g.neighbors(c)) {
            if (side[w] == x_side || used[w]) continue;
            leaves.push_back(w);
            if (leaves.size() == leaves_needed) break;
        }
        if (leaves.size() < leaves_needed) continue;
        used[c] = 1;
        for (u32 w : leaves) used[w] = 1;
        out.stars.emplace_back(c, std::move(leaves));
    }
    if (out.stars.size() < stars_needed)
        throw PackingShortfall(static_cast<u32>(out.stars.size()), stars_needed);
    return out;
}

struct RouteOptions {
    double big_c = 30.0;            // the "sufficiently large" C; calibration default
    std::optional<u32> ell_override;
};

struct RouteMetrics {
    u32 ell_target = 0;
    u32 order = 0;             // branch vertices of the emitted certificate
    bool full = false;         // all C(ell,2) pairs routed
    u32 pairs_routed = 0;
    u32 step1_failures = 0;
    std::vector<u32> failures_per_star;
    u64 path_vertices_used = 0;
    double vertex_budget = 0.0;  // C(ell,2) * (3 log2 n + 1)
    u64 exposed_edges = 0;
    bool min_degree_warned = false;
};

struct RouteResult {
    SubdivisionCertificate cert;
    Graph host;  // g union the exposed part of the perturbation
    RouteMetrics metrics;
};

// Theorem-4 routing loop. The perturbation is exposed pair-by-pair through a
// keyed Bernoulli source, so exposure order cannot change the sample: edges
// inside Z are revealed up front, edges at a leaf only when that leaf is
// scanned. Certificate paths run center -> leaf -> (R-path inside U_k) ->
// leaf -> center; used path vertices leave Z as the proof prescribes.
inline RouteResult route_subdivision(const Graph& g, double p, Seed seed,
                                     const RouteOptions& opts = {}) {
    u32 n = g.n();
    u32 delta = g.min_degree();
    RouteResult res;
    auto& mt = res.metrics;
    if (n < 4) throw BadSpec("route_subdivision: graph too small");
    if (delta < 16) throw BadSpec("route_subdivision: requires min degree >= 16");
    mt.min_degree_warned = delta < 64;
    double ell_space = std::sqrt(static_cast<double>(n) / (60.0 * std::log2(std::max<double>(2.0, n))));
    u32 ell = opts.ell_override.value_or(
        static_cast<u32>(std::min(static_cast<double>(delta) / 8.0, ell_space)));
    ell = std::max<u32>(ell, 2);
    mt.ell_target = ell;
    mt.vertex_budget = (static_cast<double>(ell) * (ell - 1) / 2.0) *
                       (3.0 * std::log2(std::max<double>(2.0, n)) + 1.0);

    StarPacking packing = pack_stars(g, 8 * ell);
    std::vector<u32> centers;
    std::vector<std::vector<u32>> leaf_lists;
    for (u32 i = 0; i < ell; ++i) {
        centers.push_back(packing.stars[i].first);
        leaf_lists.push_back(
            {packing.stars[i].second.begin(), packing.stars[i].second.end()});
    }
    mt.failures_per_star.assign(ell, 0);

    std::vector<char> in_z(n, 1);
    for (u32 i = 0; i < ell; ++i) {
        in_z[centers[i]] = 0;
        for (u32 v : leaf_lists[i]) in_z[v] = 0;
    }

    PairExposure expose(seed.derived(0x31), p);
    // Upfront exposure over Z x Z.
    std::vector<u32> z_list;
    for (u32 v = 0; v < n; ++v)
        if (in_z[v]) z_list.push_back(v);
    std::vector<std::pair<u32, u32>> rz_edges;
    for (size_t a = 0; a < z_list.size(); ++a)
        for (size_t b = a + 1; b < z_list.size(); ++b)
            if (expose.edge(z_list[a], z_list[b])) rz_edges.emplace_back(z_list[a], z_list[b]);
    Graph r_z = Graph::from_sorted_unique_edges(n, rz_edges);
    std::vector<std::pair<u32, u32>> exposed_edges = rz_edges;  // for the host graph

    std::vector<char> z_alive = in_z;
    u32 pairs_total = ell * (ell - 1) / 2;
    u32 routed = 0;
    bool terminated = false;
    std::map<std::pair<u32, u32>, std::vector<u32>> routed_paths;

    // Colex order (pairs grouped by their larger index) so that a terminated
    // run still leaves a fully-routed prefix of stars.
    for (u32 jj = 1; jj < ell && !terminated; ++jj) {
        for (u32 ii = 0; ii < jj && !terminated; ++ii) {
            // Step 1: a low-diameter routing core inside the remaining Z.
            VertexSet zk;
            for (u32 v : z_list)
                if (z_alive[v]) zk.push_back(v);
            DiamCoreResult core = diameter_core(r_z, zk, static_cast<u32>(opts.big_c));
            if (!core.diameter_bound_met || !core.size_ok) {
                ++mt.step1_failures;
                terminated = true;
                break;
            }
            std::vector<char> in_core(n, 0);
            for (u32 v : core.core) in_core[v] = 1;

            // Steps 2-3: scan leaves for an exposed edge into the core.
            auto scan_star = [&](u32 star) -> std::optional<std::pair<u32, u32>> {
                auto& leaves = leaf_lists[star];
                while (!leaves.empty()) {
                    u32 y = leaves.front();
                    leaves.erase(leaves.begin());
                    u32 hit = kInfDist;
                    for (u32 z : core.core) {
                        if (expose.edge(y, z)) {
                            if (z < hit) hit = z;
                            exposed_edges.emplace_back(std::min(y, z), std::max(y, z));
                        }
                    }
                    if (hit != kInfDist) return std::make_pair(y, hit);
                    ++mt.failures_per_star[star];
                }
                return std::nullopt;
            };
            auto pick_i = scan_star(ii);
            if (!pick_i) {
                terminated = true;
                break;
            }
            auto pick_j = scan_star(jj);
            if (!pick_j) {
                terminated = true;
                break;
            }
            auto [y_i, z_i] = *pick_i;
            auto [y_j, z_j] = *pick_j;

            // Step 4: shortest z_i -> z_j path inside the core, in R edges only.
            std::vector<u32> interior;
            if (z_i == z_j) {
                interior = {z_i};
            } else {
                std::vector<u32> parent(n, kInfDist), dist(n, kInfDist);
                std::vector<u32> queue{z_i};
                dist[z_i] = 0;
                for (size_t head = 0; head < queue.size() && dist[z_j] == kInfDist; ++head) {
                    u32 u = queue[head];
                    for (u32 w : r_z.neighbors(u)) {
                        if (!in_core[w] || dist[w] != kInfDist) continue;
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    }
                }
                if (dist[z_j] == kInfDist) {
                    // Bound was certified, so the core is connected; only a
                    // logic error can land here.
                    throw std::logic_error("route_subdivision: core path missing");
                }
                for (u32 v = z_j; v != kInfDist; v = parent[v]) interior.push_back(v);
                std::reverse(interior.begin(), interior.end());
            }

            std::vector<u32> full_path;
            full_path.push_back(centers[ii]);
            full_path.push_back(y_i);
            full_path.insert(full_path.end(), interior.begin(), interior.end());
            full_path.push_back(y_j);
            full_path.push_back(centers[jj]);
            routed_paths[{ii, jj}] = full_path;
            ++routed;
            mt.path_vertices_used += full_path.size();

            // Step 5: the used path interior leaves Z.
            for (u32 v : interior) z_alive[v] = 0;
        }
    }

    // Largest fully-routed star prefix.
    u32 q = 1;
    for (u32 m = 2; m <= ell; ++m) {
        bool all = true;
        for (u32 jj = 1; jj < m && all; ++jj)
            for (u32 ii = 0; ii < jj && all; ++ii) all = routed_paths.count({ii, jj}) > 0;
        if (all)
            q = m;
        else
            break;
    }
    res.cert.branch_vertices.assign(centers.begin(), centers.begin() + q);
    for (u32 jj = 1; jj < q; ++jj)
        for (u32 ii = 0; ii < jj; ++ii) res.cert.paths[{ii, jj}] = routed_paths[{ii, jj}];

    std::sort(exposed_edges.begin(), exposed_edges.end());
    exposed_edges.erase(std::unique(exposed_edges.begin(), exposed_edges.end()),
                        exposed_edges.end());
    res.host = g.union_with(Graph::from_sorted_unique_edges(n, exposed_edges));
    mt.exposed_edges = exposed_edges.size();
    mt.order = q;
    mt.full = q == ell && routed == pairs_total;
    mt.pairs_routed = routed;
    auto chk = verify_subdivision_certificate(res.host, res.cert);
    if (!chk.ok) throw std::logic_error("route_subdivision cert invalid: " + chk.violation);
    return res;
}

}  // namespace rpg
