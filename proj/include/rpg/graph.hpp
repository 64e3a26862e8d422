#pragma once

#include <cassert>
#include <numeric>
#include <span>
#include <utility>

#include "rpg/common.hpp"

namespace rpg {

// Immutable simple undirected graph in CSR form. Vertices are 0..n-1,
// neighbor lists are sorted, adjacency is symmetric and loop-free.
class Graph {
public:
    Graph() = default;

    // Builds from an edge list; duplicates are merged, self-loops rejected.
    static Graph from_edges(u32 n, std::vector<std::pair<u32, u32>> edges) {
        for (auto& [u, v] : edges) {
            if (u == v) throw BadSpec("self-loop in edge list");
            if (u >= n || v >= n) throw BadSpec("vertex id out of range");
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return from_sorted_unique_edges(n, edges);
    }

    // Fast path for edge streams already sorted by (u, v) with u < v and no
    // duplicates (samplers produce these). Produces sorted rows in O(n + m).
    static Graph from_sorted_unique_edges(u32 n, const std::vector<std::pair<u32, u32>>& edges) {
        Graph g;
        g.n_ = n;
        g.m_ = edges.size();
        g.offsets_.assign(static_cast<size_t>(n) + 1, 0);
        for (const auto& [u, v] : edges) {
            ++g.offsets_[u + 1];
            ++g.offsets_[v + 1];
        }
        for (u32 i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
        g.neighbors_.resize(2 * edges.size());
        std::vector<u64> fill(g.offsets_.begin(), g.offsets_.end() - 1);
        for (const auto& [u, v] : edges) {
            g.neighbors_[fill[u]++] = v;
            g.neighbors_[fill[v]++] = u;
        }
        return g;
    }

    u32 n() const { return n_; }
    u64 edge_count() const { return m_; }

    std::span<const u32> neighbors(u32 v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    u32 degree(u32 v) const { return static_cast<u32>(offsets_[v + 1] - offsets_[v]); }

    bool has_edge(u32 u, u32 v) const {
        if (u == v) return false;
        if (degree(u) > degree(v)) std::swap(u, v);
        auto row = neighbors(u);
        return std::binary_search(row.begin(), row.end(), v);
    }

    u32 min_degree() const {
        u32 d = n_ == 0 ? 0 : kInfDist;
        for (u32 v = 0; v < n_; ++v) d = std::min(d, degree(v));
        return n_ == 0 ? 0 : d;
    }
    u32 max_degree() const {
        u32 d = 0;
        for (u32 v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    bool is_complete() const { return m_ == static_cast<u64>(n_) * (n_ - 1) / 2; }

    std::vector<std::pair<u32, u32>> edges() const {
        std::vector<std::pair<u32, u32>> out;
        out.reserve(m_);
        for (u32 u = 0; u < n_; ++u)
            for (u32 v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    // Union with another graph on the same vertex set (row-wise merge).
    Graph union_with(const Graph& other) const {
        assert(n_ == other.n_);
        Graph g;
        g.n_ = n_;
        g.offsets_.assign(static_cast<size_t>(n_) + 1, 0);
        g.neighbors_.reserve(neighbors_.size() + other.neighbors_.size());
        for (u32 v = 0; v < n_; ++v) {
            auto a = neighbors(v);
            auto b = other.neighbors(v);
            size_t i = 0, j = 0;
            while (i < a.size() || j < b.size()) {
                u32 x;
                if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
                    x = a[i];
                    if (j < b.size() && b[j] == x) ++j;
                    ++i;
                } else {
                    x = b[j++];
                }
                g.neighbors_.push_back(x);
            }
            g.offsets_[v + 1] = g.neighbors_.size();
        }
        g.m_ = g.neighbors_.size() / 2;
        return g;
    }

    // Induced subgraph on `keep` (sorted); returns the subgraph plus the map
    // from new ids back to original ids.
    std::pair<Graph, std::vector<u32>> induced(const VertexSet& keep) const {
        std::vector<u32> local(n_, kInfDist);
        for (u32 i = 0; i < keep.size(); ++i) local[keep[i]] = i;
        std::vector<std::pair<u32, u32>> es;
        for (u32 u : keep)
            for (u32 v : neighbors(u))
                if (u < v && local[v] != kInfDist) es.emplace_back(local[u], local[v]);
        std::sort(es.begin(), es.end());
        return {from_sorted_unique_edges(static_cast<u32>(keep.size()), es), keep};
    }

private:
    u32 n_ = 0;
    u64 m_ = 0;
    std::vector<u64> offsets_;
    std::vector<u32> neighbors_;
};

}  // namespace rpg
