#pragma once

#include <map>
#include <optional>

#include "rpg/bfs.hpp"
#include "rpg/graph.hpp"

namespace rpg {

// Witness for a K_r minor: r disjoint connected branch sets plus one host
// edge per branch-set pair.
struct MinorCertificate {
    Partition branch_sets;
    // Key (i, j) with i < j indexing branch_sets.blocks; value is a host edge
    // with one endpoint in block i and the other in block j.
    std::map<std::pair<u32, u32>, std::pair<u32, u32>> witness_edges;

    u32 order() const { return static_cast<u32>(branch_sets.blocks.size()); }
};

// Witness for a K_ell subdivision: ell branch vertices plus internally
// disjoint host paths, one per pair.
struct SubdivisionCertificate {
    std::vector<u32> branch_vertices;
    std::map<std::pair<u32, u32>, std::vector<u32>> paths;  // key indexes branch_vertices

    u32 order() const { return static_cast<u32>(branch_vertices.size()); }
};

struct VerifyResult {
    bool ok = true;
    std::string violation;  // names the first violated clause

    static VerifyResult fail(std::string why) { return {false, std::move(why)}; }
    static VerifyResult pass() { return {}; }
};

// Independent checker; trusts nothing about how the certificate was found.
inline VerifyResult verify_minor_certificate(const Graph& g, const MinorCertificate& cert) {
    const auto& blocks = cert.branch_sets.blocks;
    if (blocks.empty()) return VerifyResult::fail("no branch sets");
    std::vector<u32> owner(g.n(), kInfDist);
    for (u32 i = 0; i < blocks.size(); ++i) {
        if (blocks[i].empty()) return VerifyResult::fail("empty branch set");
        for (u32 v : blocks[i]) {
            if (v >= g.n()) return VerifyResult::fail("branch set vertex out of range");
            if (owner[v] != kInfDist) return VerifyResult::fail("branch sets overlap");
            owner[v] = i;
        }
    }
    // Connectivity of each branch set inside the host.
    std::vector<u32> queue;
    std::vector<char> seen(g.n(), 0);
    for (u32 i = 0; i < blocks.size(); ++i) {
        queue.assign(1, blocks[i][0]);
        seen[blocks[i][0]] = 2;
        size_t reached = 1;
        while (!queue.empty()) {
            u32 u = queue.back();
            queue.pop_back();
            for (u32 v : g.neighbors(u)) {
                if (owner[v] == i && seen[v] != 2) {
                    seen[v] = 2;
                    ++reached;
                    queue.push_back(v);
                }
            }
        }
        for (u32 v : blocks[i]) seen[v] = 0;
        if (reached != blocks[i].size()) return VerifyResult::fail("branch set not connected");
    }
    // Every pair needs a valid witness edge.
    for (u32 i = 0; i < blocks.size(); ++i) {
        for (u32 j = i + 1; j < blocks.size(); ++j) {
            auto it = cert.witness_edges.find({i, j});
            if (it == cert.witness_edges.end())
                return VerifyResult::fail("missing witness edge for a block pair");
            auto [u, v] = it->second;
            if (u >= g.n() || v >= g.n()) return VerifyResult::fail("witness edge out of range");
            bool straight = owner[u] == i && owner[v] == j;
            bool flipped = owner[u] == j && owner[v] == i;
            if (!straight && !flipped)
                return VerifyResult::fail("witness edge endpoints not in the right blocks");
            if (!g.has_edge(u, v)) return VerifyResult::fail("witness edge not in host graph");
        }
    }
    return VerifyResult::pass();
}

inline VerifyResult verify_subdivision_certificate(const Graph& g,
                                                   const SubdivisionCertificate& cert) {
    const auto& bv = cert.branch_vertices;
    if (bv.empty()) return VerifyResult::fail("no branch vertices");
    std::vector<char> is_branch(g.n(), 0);
    for (u32 v : bv) {
        if (v >= g.n()) return VerifyResult::fail("branch vertex out of range");
        if (is_branch[v]) return VerifyResult::fail("duplicate branch vertex");
        is_branch[v] = 1;
    }
    std::vector<char> used_interior(g.n(), 0);
    for (u32 i = 0; i < bv.size(); ++i) {
        for (u32 j = i + 1; j < bv.size(); ++j) {
            auto it = cert.paths.find({i, j});
            if (it == cert.paths.end()) return VerifyResult::fail("missing path for a branch pair");
            const auto& path = it->second;
            if (path.size() < 2) return VerifyResult::fail("path too short");
            if (path.front() != bv[i] || path.back() != bv[j])
                return VerifyResult::fail("path endpoints mismatch branch vertices");
            for (size_t t = 0; t + 1 < path.size(); ++t) {
                if (path[t] >= g.n() || path[t + 1] >= g.n())
                    return VerifyResult::fail("path vertex out of range");
                if (!g.has_edge(path[t], path[t + 1]))
                    return VerifyResult::fail("path uses a non-edge");
            }
            for (size_t t = 1; t + 1 < path.size(); ++t) {
                u32 v = path[t];
                if (is_branch[v]) return VerifyResult::fail("path interior touches a branch vertex");
                if (used_interior[v]) return VerifyResult::fail("interior overlap");
                used_interior[v] = 1;
            }
        }
    }
    return VerifyResult::pass();
}

}  // namespace rpg
