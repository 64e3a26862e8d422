#pragma once

#include "rpg/graph.hpp"

namespace rpg {

namespace detail {

// Scan-first-search forest iteration (Cheriyan–Thurimella): the union of k
// successive scan-first forests preserves every local vertex connectivity up
// to k. Shrinks the flow instances from m to at most k*n edges.
inline Graph sparse_k_certificate(const Graph& g, u32 k) {
    u32 n = g.n();
    u64 m = g.edge_count();
    if (k == 0 || m <= static_cast<u64>(k) * n / 2) return g;
    // Edge-indexed adjacency.
    std::vector<u64> off(n + 1, 0);
    for (u32 v = 0; v < n; ++v) off[v + 1] = off[v] + g.degree(v);
    std::vector<u32> nbr(2 * m), eid(2 * m);
    {
        std::vector<u64> fill(off.begin(), off.end() - 1);
        u32 next_eid = 0;
        for (u32 u = 0; u < n; ++u)
            for (u32 v : g.neighbors(u)) {
                if (u < v) {
                    nbr[fill[u]] = v;
                    eid[fill[u]++] = next_eid;
                    nbr[fill[v]] = u;
                    eid[fill[v]++] = next_eid;
                    ++next_eid;
                }
            }
    }
    std::vector<char> used(m, 0);
    std::vector<std::pair<u32, u32>> cert_edges;
    cert_edges.reserve(std::min<u64>(m, static_cast<u64>(k) * n));
    std::vector<u32> visited(n, 0), queue;
    queue.reserve(n);
    for (u32 round = 1; round <= k; ++round) {
        bool took_any = false;
        for (u32 s = 0; s < n; ++s) {
            if (visited[s] == round) continue;
            visited[s] = round;
            queue.assign(1, s);
            for (size_t head = 0; head < queue.size(); ++head) {
                u32 u = queue[head];
                for (u64 i = off[u]; i < off[u + 1]; ++i) {
                    u32 v = nbr[i];
                    if (used[eid[i]] || visited[v] == round) continue;
                    used[eid[i]] = 1;
                    visited[v] = round;
                    queue.push_back(v);
                    cert_edges.emplace_back(std::min(u, v), std::max(u, v));
                    took_any = true;
                }
            }
        }
        if (!took_any) break;
    }
    return Graph::from_edges(n, std::move(cert_edges));
}

// Unit-capacity max flow on the vertex-split network; used both for the
// connectivity decision and for extracting minimum vertex cuts.
class UnitVertexFlow {
public:
    explicit UnitVertexFlow(const Graph& g) : n_(g.n()) {
        u32 nodes = 2 * n_;
        std::vector<u32> deg(nodes, 0);
        for (u32 v = 0; v < n_; ++v) {
            deg[in(v)] += 1 + g.degree(v);   // internal arc + reverse arcs
            deg[out(v)] += 1 + g.degree(v);  // internal reverse + forward arcs
        }
        head_.assign(nodes + 1, 0);
        for (u32 x = 0; x < nodes; ++x) head_[x + 1] = head_[x] + deg[x];
        u64 arcs = head_[nodes];
        to_.resize(arcs);
        pair_.resize(arcs);
        base_cap_.resize(arcs);
        std::vector<u64> fill(head_.begin(), head_.end() - 1);
        auto add_arc = [&](u32 a, u32 b, u32 c) {
            u64 i = fill[a]++, j = fill[b]++;
            to_[i] = b;
            to_[j] = a;
            pair_[i] = j;
            pair_[j] = i;
            base_cap_[i] = c;
            base_cap_[j] = 0;
        };
        for (u32 v = 0; v < n_; ++v) add_arc(in(v), out(v), 1);
        for (u32 u = 0; u < n_; ++u)
            for (u32 v : g.neighbors(u)) add_arc(out(u), in(v), 1);
        cap_.resize(arcs);
        level_.resize(nodes);
        iter_.resize(nodes);
        queue_.reserve(nodes);
    }

    // Max flow from out(s) to in(t), stopping once `cap_limit` is reached.
    u32 max_flow(u32 s, u32 t, u32 cap_limit) {
        cap_ = base_cap_;
        // Forbid flow through the interior of s and t themselves.
        src_ = out(s);
        dst_ = in(t);
        cap_[internal_arc(s)] = 0;
        cap_[internal_arc(t)] = 0;
        u32 flow = 0;
        while (flow < cap_limit) {
            if (!bfs_levels()) break;
            std::fill(iter_.begin(), iter_.end(), 0);
            while (flow < cap_limit) {
                u32 pushed = dfs(src_, 1);
                if (pushed == 0) break;
                flow += pushed;
            }
        }
        return flow;
    }

    // After a max_flow call that failed to reach its cap: vertices whose
    // internal arc crosses the residual reachability boundary.
    VertexSet min_cut() const {
        std::vector<char> reach(level_.size(), 0);
        std::vector<u32> q{src_};
        reach[src_] = 1;
        for (size_t h = 0; h < q.size(); ++h) {
            u32 x = q[h];
            for (u64 i = head_[x]; i < head_[x + 1]; ++i)
                if (cap_[i] > 0 && !reach[to_[i]]) {
                    reach[to_[i]] = 1;
                    q.push_back(to_[i]);
                }
        }
        VertexSet cut;
        for (u32 v = 0; v < n_; ++v)
            if (reach[in(v)] && !reach[out(v)]) cut.push_back(v);
        return cut;
    }

private:
    static u32 in(u32 v) { return 2 * v; }
    static u32 out(u32 v) { return 2 * v + 1; }
    u64 internal_arc(u32 v) const { return head_[in(v)]; }  // first arc of in(v)

    bool bfs_levels() {
        std::fill(level_.begin(), level_.end(), kInfDist);
        queue_.clear();
        queue_.push_back(src_);
        level_[src_] = 0;
        for (size_t h = 0; h < queue_.size(); ++h) {
            u32 x = queue_[h];
            if (x == dst_) return true;
            for (u64 i = head_[x]; i < head_[x + 1]; ++i)
                if (cap_[i] > 0 && level_[to_[i]] == kInfDist) {
                    level_[to_[i]] = level_[x] + 1;
                    queue_.push_back(to_[i]);
                }
        }
        return level_[dst_] != kInfDist;
    }

    u32 dfs(u32 x, u32 limit) {
        if (x == dst_) return limit;
        for (u64& i = iter_[x]; i < head_[x + 1] - head_[x]; ++i) {
            u64 a = head_[x] + i;
            u32 y = to_[a];
            if (cap_[a] == 0 || level_[y] != level_[x] + 1) continue;
            u32 pushed = dfs(y, std::min(limit, cap_[a]));
            if (pushed > 0) {
                cap_[a] -= pushed;
                cap_[pair_[a]] += pushed;
                return pushed;
            }
        }
        level_[x] = kInfDist;
        return 0;
    }

    u32 n_ = 0, src_ = 0, dst_ = 0;
    std::vector<u64> head_, pair_, iter_;
    std::vector<u32> to_, base_cap_, cap_, level_;
    std::vector<u32> queue_;
};

// Internal arc bookkeeping relies on in(v)'s arcs being laid out with the
// internal arc first; add_arc above inserts it first for every vertex.

}  // namespace detail

struct ConnectivityResult {
    bool at_least = false;
    // On failure: a separating set of size < k whose removal disconnects g.
    // Empty when g is already disconnected (or complete, where no separator
    // exists and kappa = n-1 by convention).
    VertexSet separator;
};

// Decides kappa(g) >= k exactly. Peels one source per level: level j fixes a
// source s_j, certifies kappa(s_j, u) >= k-j for every non-neighbor u of the
// current graph, then removes s_j (insurance against s_j lying inside a
// separator). Per-source certification seeds on N[s] and grows a certified
// set A by the fan rule: a vertex with k distinct A-neighbors cannot be cut
// from s by fewer than k vertices. Stalls are resolved by real max-flow runs
// on a sparse k-connectivity certificate.
inline ConnectivityResult vertex_connectivity_at_least(const Graph& g, u32 k) {
    u32 n = g.n();
    if (k == 0) return {true, {}};
    if (g.is_complete()) return {k <= (n == 0 ? 0 : n - 1), {}};
    {
        // Minimum-degree shortcut: N(v) separates v from its non-neighbors.
        u32 v_min = 0;
        for (u32 v = 1; v < n; ++v)
            if (g.degree(v) < g.degree(v_min)) v_min = v;
        if (g.degree(v_min) < k) {
            auto nb = g.neighbors(v_min);
            return {false, VertexSet(nb.begin(), nb.end())};
        }
    }

    std::vector<char> removed(n, 0);
    VertexSet removed_list;
    for (u32 level = 0; level < k; ++level) {
        u32 k_level = k - level;
        VertexSet keep;
        keep.reserve(n - level);
        for (u32 v = 0; v < n; ++v)
            if (!removed[v]) keep.push_back(v);
        auto [h, back_map] = g.induced(keep);
        if (!is_connected(h)) return {false, removed_list};
        if (h.is_complete()) return {true, {}};  // kappa only shrinks by 1 per removal

        // Source: minimum degree in the current graph.
        u32 s = 0;
        for (u32 v = 1; v < h.n(); ++v)
            if (h.degree(v) < h.degree(s)) s = v;

        // Fan closure from A = N[s].
        std::vector<char> certified(h.n(), 0);
        std::vector<u32> fan_count(h.n(), 0);
        std::vector<u32> frontier;
        auto certify = [&](u32 x) {
            certified[x] = 1;
            frontier.push_back(x);
        };
        certify(s);
        for (u32 w : h.neighbors(s)) certify(w);
        for (size_t head = 0; head < frontier.size(); ++head) {
            u32 x = frontier[head];
            for (u32 w : h.neighbors(x)) {
                if (certified[w]) continue;
                if (++fan_count[w] >= k_level) certify(w);
            }
        }

        Graph cert = detail::sparse_k_certificate(h, k_level);
        std::optional<detail::UnitVertexFlow> flow_cert, flow_full;
        while (frontier.size() < h.n()) {
            // Most-constrained uncertified vertex first.
            u32 pick = kInfDist;
            for (u32 v = 0; v < h.n(); ++v)
                if (!certified[v] && (pick == kInfDist || fan_count[v] > fan_count[pick]))
                    pick = v;
            if (!flow_cert) flow_cert.emplace(cert);
            u32 val = flow_cert->max_flow(s, pick, k_level);
            if (val < k_level) {
                // Confirm on the uncompressed graph; the certificate only
                // guarantees cut values, not cut sets.
                if (!flow_full) flow_full.emplace(h);
                u32 full_val = flow_full->max_flow(s, pick, k_level);
                if (full_val < k_level) {
                    VertexSet cut = flow_full->min_cut();
                    VertexSet sep = removed_list;
                    for (u32 c : cut) sep.push_back(back_map[c]);
                    sort_unique(sep);
                    return {false, sep};
                }
                val = full_val;
            }
            certify(pick);
            for (size_t head = frontier.size() - 1; head < frontier.size(); ++head) {
                u32 x = frontier[head];
                for (u32 w : h.neighbors(x)) {
                    if (certified[w]) continue;
                    if (++fan_count[w] >= k_level) certify(w);
                }
            }
        }
        u32 s_orig = back_map[s];
        removed[s_orig] = 1;
        removed_list.push_back(s_orig);
    }
    return {true, {}};
}

}  // namespace rpg
