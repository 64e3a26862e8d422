#pragma once

#include "rpg/certificates.hpp"
#include "rpg/graph.hpp"

namespace rpg {

// Quotient graph on the partition blocks: block pair adjacent iff some host
// edge crosses. Vertices outside every block are dropped.
inline Graph contract_blocks(const Graph& g, const Partition& p) {
    u32 b = static_cast<u32>(p.blocks.size());
    std::vector<u32> owner(g.n(), kInfDist);
    for (u32 i = 0; i < b; ++i)
        for (u32 v : p.blocks[i]) {
            if (v >= g.n()) throw BadSpec("contract_blocks: vertex out of range");
            if (owner[v] != kInfDist) throw BlockOverlap("contract_blocks: blocks overlap");
            owner[v] = i;
        }
    std::vector<std::pair<u32, u32>> es;
    for (u32 u = 0; u < g.n(); ++u) {
        if (owner[u] == kInfDist) continue;
        for (u32 v : g.neighbors(u)) {
            if (u >= v || owner[v] == kInfDist || owner[u] == owner[v]) continue;
            es.emplace_back(std::min(owner[u], owner[v]), std::max(owner[u], owner[v]));
        }
    }
    return Graph::from_edges(b, es);
}

namespace detail {

// Exhaustive Hadwiger search on <= 64 vertices via branch-set assignment.
// Vertices are taken in id order; each is either discarded or placed into an
// existing block it touches, or opens a new block. Prunes on the optimistic
// bound blocks + unassigned.
class HadwigerSolver {
public:
    explicit HadwigerSolver(const Graph& g) : n_(g.n()), adj_(g.n(), 0) {
        for (u32 u = 0; u < n_; ++u)
            for (u32 v : g.neighbors(u)) adj_[u] |= 1ULL << v;
    }

    u32 solve() {
        best_ = n_ > 0 ? 1 : 0;
        if (n_ == 0) return 0;
        blocks_.clear();
        recurse(0, n_);
        return best_;
    }

private:
    // Canonical enumeration: vertex v joins an existing block (any, since a
    // block may be temporarily disconnected) or opens block #|blocks|, or is
    // discarded. Connectivity and pairwise adjacency are checked at leaves.
    void recurse(u32 v, u32 remaining) {
        if (static_cast<u32>(blocks_.size()) + remaining <= best_) return;
        if (v == n_) {
            if (static_cast<u32>(blocks_.size()) > best_ && valid_leaf())
                best_ = static_cast<u32>(blocks_.size());
            return;
        }
        u64 bit = 1ULL << v;
        for (size_t i = 0; i < blocks_.size(); ++i) {
            blocks_[i] |= bit;
            recurse(v + 1, remaining - 1);
            blocks_[i] &= ~bit;
        }
        blocks_.push_back(bit);
        recurse(v + 1, remaining - 1);
        blocks_.pop_back();
        recurse(v + 1, remaining - 1);  // discard v
    }

    bool connected_mask(u64 mask) const {
        u64 seen = mask & (~mask + 1);  // lowest set bit
        while (true) {
            u64 grow = seen;
            for (u64 m = seen; m;) {
                u32 x = static_cast<u32>(__builtin_ctzll(m));
                m &= m - 1;
                grow |= adj_[x] & mask;
            }
            if (grow == seen) break;
            seen = grow;
        }
        return seen == mask;
    }

    bool valid_leaf() const {
        for (size_t i = 0; i < blocks_.size(); ++i) {
            u64 reach_i = 0;
            for (u64 m = blocks_[i]; m;) {
                u32 x = static_cast<u32>(__builtin_ctzll(m));
                m &= m - 1;
                reach_i |= adj_[x];
            }
            for (size_t j = i + 1; j < blocks_.size(); ++j)
                if (!(reach_i & blocks_[j])) return false;
        }
        for (u64 b : blocks_)
            if (!connected_mask(b)) return false;
        return true;
    }

    u32 n_;
    std::vector<u64> adj_;
    std::vector<u64> blocks_;
    u32 best_ = 0;
};

}  // namespace detail

// Exact Hadwiger number for tiny graphs; exists to validate the heuristics.
inline u32 exact_hadwiger(const Graph& g, u32 cap = 9) {
    if (g.n() > cap)
        throw OracleCapExceeded("exact_hadwiger: n=" + std::to_string(g.n()) + " exceeds cap " +
                                std::to_string(cap));
    return detail::HadwigerSolver(g).solve();
}

}  // namespace rpg
