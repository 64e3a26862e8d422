#pragma once

#include <functional>
#include <optional>

#include "rpg/bfs.hpp"
#include "rpg/connectivity.hpp"
#include "rpg/families.hpp"
#include "rpg/independence.hpp"
#include "rpg/sampling.hpp"

namespace rpg {

struct DecompositionFailed : std::runtime_error {
    explicit DecompositionFailed(const std::string& what) : std::runtime_error(what) {}
};

struct MaderDecomposition {
    std::vector<VertexSet> parts;  // each verified s/16-connected
    std::vector<u32> w_order;      // degeneracy (peel) order of the residual W
    u32 s = 0;
    bool forward_degree_ok = false;  // every w_i has >= 3s/4 neighbors among
                                     // parts and earlier w's (holds when
                                     // delta(g) >= s)
};

// Heuristic Mader-style decomposition: dense cores are located as residuals
// of s/4-degeneracy peeling, certified s/16-connected by the flow oracle, and
// split along returned separators when certification fails. Every part is
// machine-verified before being returned; DecompositionFailed signals that a
// dense residual resisted certification.
inline MaderDecomposition mader_decompose(const Graph& g, u32 s) {
    if (s == 0) throw BadSpec("mader_decompose: s must be positive");
    u32 n = g.n();
    u32 peel_threshold = (s + 3) / 4;   // s/4
    u32 kappa_target = (s + 15) / 16;   // s/16
    MaderDecomposition out;
    out.s = s;
    std::vector<char> pooled(n, 1);
    while (true) {
        VertexSet pool;
        for (u32 v = 0; v < n; ++v)
            if (pooled[v]) pool.push_back(v);
        auto [sub, back] = g.induced(pool);
        auto peel = degeneracy_order(sub, peel_threshold);
        if (peel.complete) {
            for (u32 v : peel.order) out.w_order.push_back(back[v]);
            break;
        }
        // Dense residual: certify connected chunks, splitting at separators.
        std::vector<VertexSet> queue;
        {
            auto [zg, zback] = sub.induced(peel.residual);
            for (auto& comp : connected_components(zg)) {
                VertexSet mapped;
                for (u32 v : comp) mapped.push_back(back[zback[v]]);
                sort_unique(mapped);
                queue.push_back(std::move(mapped));
            }
        }
        size_t found = 0;
        while (!queue.empty()) {
            VertexSet cand = std::move(queue.back());
            queue.pop_back();
            if (cand.size() <= kappa_target) continue;  // cannot be s/16-connected
            auto [cg, cback] = g.induced(cand);
            auto conn = vertex_connectivity_at_least(cg, kappa_target);
            if (conn.at_least) {
                out.parts.push_back(cand);
                for (u32 v : cand) pooled[v] = 0;
                ++found;
                continue;
            }
            // Split off the separator and recurse into the components.
            std::vector<char> cut(cg.n(), 0);
            for (u32 v : conn.separator) cut[v] = 1;
            VertexSet rest;
            for (u32 v = 0; v < cg.n(); ++v)
                if (!cut[v]) rest.push_back(v);
            if (rest.empty()) continue;
            auto [rg, rback] = cg.induced(rest);
            for (auto& comp : connected_components(rg)) {
                if (comp.size() <= kappa_target) continue;
                VertexSet mapped;
                for (u32 v : comp) mapped.push_back(cback[rback[v]]);
                sort_unique(mapped);
                queue.push_back(std::move(mapped));
            }
        }
        if (found == 0)
            throw DecompositionFailed(
                "mader_decompose: dense residual of size " +
                std::to_string(peel.residual.size()) + " yielded no certifiable part (s=" +
                std::to_string(s) + ")");
    }
    // Forward-degree property of the W order (reported, not enforced: it is
    // only guaranteed when delta(g) >= s).
    {
        std::vector<char> placed(n, 0);
        for (const auto& part : out.parts)
            for (u32 v : part) placed[v] = 1;
        out.forward_degree_ok = true;
        u64 need = (3ULL * s + 3) / 4;  // ceil(3s/4)
        for (u32 w : out.w_order) {
            u64 deg_fwd = 0;
            for (u32 x : g.neighbors(w)) deg_fwd += placed[x];
            if (deg_fwd < need) out.forward_degree_ok = false;
            placed[w] = 1;
        }
    }
    return out;
}

struct ABPartition {
    VertexSet a, b;
    std::vector<u32> i1;  // part indices seeding side A
};

// Deterministic A/B split: parts seed the sides by I1, then the W order is
// scanned once, each w joining A iff it already has >= 3s/8 neighbors there.
inline ABPartition ab_partition(const Graph& g, const MaderDecomposition& d,
                                const std::vector<u32>& i1) {
    u32 t = static_cast<u32>(d.parts.size());
    if (i1.empty() || i1.size() >= t)
        throw TrivialPartition("ab_partition: I1 must be a nonempty proper subset");
    std::vector<char> in_i1(t, 0);
    for (u32 i : i1) {
        if (i >= t) throw BadSpec("ab_partition: part index out of range");
        in_i1[i] = 1;
    }
    u32 n = g.n();
    std::vector<char> in_a(n, 0), assigned(n, 0);
    ABPartition out;
    out.i1 = i1;
    for (u32 i = 0; i < t; ++i)
        for (u32 v : d.parts[i]) {
            assigned[v] = 1;
            in_a[v] = in_i1[i];
        }
    u64 need = 3ULL * d.s;  // compare deg * 8 >= 3s
    for (u32 w : d.w_order) {
        u64 deg_a = 0;
        for (u32 x : g.neighbors(w)) deg_a += assigned[x] && in_a[x];
        assigned[w] = 1;
        in_a[w] = 8 * deg_a >= need;
    }
    for (u32 v = 0; v < n; ++v) {
        if (!assigned[v]) continue;
        (in_a[v] ? out.a : out.b).push_back(v);
    }
    return out;
}

struct MatchingReport {
    bool pass = false;
    u32 k = 0;
    u32 min_matching = kInfDist;   // capped at k; exact below k
    u64 partitions_checked = 0;
    bool exhaustive = false;
    std::optional<std::vector<u32>> failing_i1;
};

namespace detail {

// Maximum matching among cross edges of r between A and B, capped at `cap`:
// greedy pass first, Hungarian-style augmentation only if greedy stalls.
inline u32 cross_matching_capped(const Graph& r, const std::vector<char>& in_a,
                                 const std::vector<char>& eligible, u32 cap) {
    u32 n = r.n();
    std::vector<u32> match(n, kInfDist);
    u32 size = 0;
    for (u32 u = 0; u < n && size < cap; ++u) {
        if (!eligible[u] || !in_a[u] || match[u] != kInfDist) continue;
        for (u32 v : r.neighbors(u)) {
            if (!eligible[v] || in_a[v] || match[v] != kInfDist) continue;
            match[u] = v;
            match[v] = u;
            ++size;
            break;
        }
    }
    if (size >= cap) return cap;
    // Augment from unmatched A vertices.
    std::vector<u32> visit(n, kInfDist);
    u32 stamp = 0;
    std::function<bool(u32)> try_augment = [&](u32 u) -> bool {
        for (u32 v : r.neighbors(u)) {
            if (!eligible[v] || in_a[v] || visit[v] == stamp) continue;
            visit[v] = stamp;
            if (match[v] == kInfDist || try_augment(match[v])) {
                match[u] = v;
                match[v] = u;
                return true;
            }
        }
        return false;
    };
    for (u32 u = 0; u < n && size < cap; ++u) {
        if (!eligible[u] || !in_a[u] || match[u] != kInfDist) continue;
        ++stamp;
        if (try_augment(u)) ++size;
    }
    return size;
}

}  // namespace detail

// Property M_k of the random graph r against a Mader decomposition of g:
// every nontrivial I1/I2 split of the parts induces an A/B partition that r
// must cross with a k-matching. Exhaustive for t <= exhaustive_limit,
// uniformly sampled otherwise. Reported matching sizes are capped at k.
inline MatchingReport check_matching_property(const Graph& g, const Graph& r,
                                              const MaderDecomposition& d, u32 k,
                                              u32 exhaustive_limit = 20, u64 samples = 10000,
                                              Seed seed = {}) {
    if (k == 0) throw BadSpec("check_matching_property: k must be >= 1");
    u32 t = static_cast<u32>(d.parts.size());
    MatchingReport rep;
    rep.k = k;
    if (t < 2) {
        // No nontrivial partition exists; vacuously true.
        rep.pass = true;
        rep.exhaustive = true;
        rep.min_matching = k;
        return rep;
    }
    u32 n = g.n();
    std::vector<char> eligible(n, 0);
    auto run_one = [&](const std::vector<u32>& i1) {
        ABPartition ab = ab_partition(g, d, i1);
        std::vector<char> in_a(n, 0);
        std::fill(eligible.begin(), eligible.end(), 0);
        for (u32 v : ab.a) {
            in_a[v] = 1;
            eligible[v] = 1;
        }
        for (u32 v : ab.b) eligible[v] = 1;
        u32 m = detail::cross_matching_capped(r, in_a, eligible, k);
        ++rep.partitions_checked;
        if (m < rep.min_matching) {
            rep.min_matching = m;
            if (m < k) rep.failing_i1 = i1;
        }
    };
    if (t <= exhaustive_limit) {
        rep.exhaustive = true;
        // Every nontrivial split once: I1 is the side containing part 0,
        // encoded by a mask over parts 1..t-1; the full mask is trivial.
        u64 full = (1ULL << (t - 1)) - 1;
        for (u64 mask = 0; mask < full && rep.min_matching >= k; ++mask) {
            std::vector<u32> i1{0};
            for (u32 b = 0; b + 1 < t; ++b)
                if (mask & (1ULL << b)) i1.push_back(b + 1);
            run_one(i1);
        }
    } else {
        rep.exhaustive = false;
        Rng rng(seed.value, mix64(seed.stream, 0x6d6b00ULL));
        for (u64 it = 0; it < samples && rep.min_matching >= k; ++it) {
            std::vector<u32> i1;
            while (i1.empty() || i1.size() == t) {
                i1.clear();
                for (u32 i = 0; i < t; ++i)
                    if (rng.next_u64() & 1) i1.push_back(i);
            }
            run_one(i1);
        }
    }
    rep.pass = rep.min_matching >= k;
    return rep;
}

struct ConnectivityTrial {
    u64 stream = 0;
    bool kappa_ok = false;
    VertexSet separator;
};

struct ConnectivityExperiment {
    std::vector<ConnectivityTrial> trials;
    u32 successes = 0;
};

// Theorem 5(a) harness: perturb then decide kappa >= k, trial by trial.
inline ConnectivityExperiment connectivity_experiment(const Graph& g, u32 k, double p, u32 trials,
                                                      Seed base_seed, bool enforce_ratio = true) {
    if (enforce_ratio && 17ULL * k > g.min_degree())
        throw BadSpec("connectivity_experiment: requires k <= delta(g)/17 (override to bypass)");
    ConnectivityExperiment out;
    for (u32 t = 0; t < trials; ++t) {
        Seed s = base_seed.derived(0x7472ULL + t);
        Graph host = perturb(g, p, s);
        auto res = vertex_connectivity_at_least(host, k);
        ConnectivityTrial tr;
        tr.stream = s.stream;
        tr.kappa_ok = res.at_least;
        tr.separator = res.separator;
        out.successes += tr.kappa_ok;
        out.trials.push_back(std::move(tr));
    }
    return out;
}

struct LowerBoundFamily {
    Graph graph;
    u32 cliques = 0;          // r = floor(n/(s+1))
    double isolation_p = 0.0;  // log(n/s) / (n s), the isolation threshold scale
};

// Theorem 5(b)/6(b) extremal family: balanced disjoint cliques with min
// degree >= s. Fewer than k*r/2 added edges can never make it k-connected.
inline LowerBoundFamily connectivity_lower_bound_family(u32 n, u32 s) {
    if (s + 1 > n) throw BadSpec("connectivity_lower_bound_family: s+1 > n");
    LowerBoundFamily out;
    out.graph = disjoint_cliques(n, s);
    out.cliques = n / (s + 1);
    out.isolation_p = std::log(static_cast<double>(n) / s) / (static_cast<double>(n) * s);
    return out;
}

struct Radius2Partition {
    std::vector<VertexSet> blocks;
    std::vector<u32> centers;
};

// Maximal disjoint stars with >= k edges, then leftover vertices attach to a
// block holding one of their neighbors; every block ends up with >= k+1
// vertices and radius <= 2 around its center.
inline Radius2Partition radius2_partition(const Graph& g, u32 k) {
    if (k < 1) throw BadSpec("radius2_partition: k must be >= 1");
    if (g.min_degree() < k)
        throw MinDegreeTooLow("radius2_partition: requires min degree >= k");
    u32 n = g.n();
    Radius2Partition out;
    std::vector<u32> block_of(n, kInfDist);
    std::vector<VertexSet> star_core;  // original star vertex sets
    for (u32 c = 0; c < n; ++c) {
        if (block_of[c] != kInfDist) continue;
        VertexSet leaves;
        for (u32 w : g.neighbors(c))
            if (block_of[w] == kInfDist) leaves.push_back(w);
        if (leaves.size() < k) continue;
        u32 idx = static_cast<u32>(star_core.size());
        block_of[c] = idx;
        for (u32 w : leaves) block_of[w] = idx;
        out.centers.push_back(c);
        leaves.push_back(c);
        sort_unique(leaves);
        star_core.push_back(std::move(leaves));
    }
    if (star_core.empty())
        throw MinDegreeTooLow("radius2_partition: no star found despite min degree");
    out.blocks = star_core;
    for (u32 u = 0; u < n; ++u) {
        if (block_of[u] != kInfDist) continue;
        u32 target = kInfDist;
        for (u32 w : g.neighbors(u)) {
            // Attach to the original star of w, not its extension.
            if (block_of[w] != kInfDist) {
                auto const& core = star_core[block_of[w]];
                if (std::binary_search(core.begin(), core.end(), w)) {
                    target = std::min(target, block_of[w]);
                }
            }
        }
        if (target == kInfDist)
            throw std::logic_error("radius2_partition: leftover vertex has no star neighbor");
        out.blocks[target].push_back(u);
        block_of[u] = target;
    }
    for (auto& b : out.blocks) sort_unique(b);
    return out;
}

struct DiameterReport {
    u32 measured = kInfDist;      // exact diameter of the perturbed graph
    u32 diam_h = kInfDist;        // diameter of the auxiliary block graph
    double lower_formula = 0.0;   // L = log(n/k) / log(n q / k)
    double upper_formula = 0.0;   // U = log(n/k) / log(n q / (2k))
    double q = 0.0;               // 1 - (1-p)^{k^2}
    bool h_connected = false;
    bool assembly_ok = true;      // measured <= 5 diam_h + 4 whenever H connected
    u32 subblocks = 0;
    u64 host_edges = 0;
};

// Theorem 6(a) pipeline: radius-2 blocks refined into [k, 2k]-sized
// sub-blocks, the auxiliary graph H over sub-blocks with an edge per crossing
// random edge, and the deterministic assembly bound against the measured
// diameter.
inline DiameterReport diameter_upper_pipeline(const Graph& g, u32 k, double p, Seed seed) {
    Radius2Partition r2 = radius2_partition(g, k);
    DiameterReport rep;
    std::vector<VertexSet> sub;
    for (const auto& u_block : r2.blocks) {
        u64 m_i = (u_block.size() + 2ULL * k - 1) / (2ULL * k);  // ceil(|U|/2k)
        u64 base = u_block.size() / m_i, extra = u_block.size() % m_i;
        size_t at = 0;
        for (u64 j = 0; j < m_i; ++j) {
            u64 len = base + (j < extra ? 1 : 0);
            sub.emplace_back(u_block.begin() + at, u_block.begin() + at + len);
            at += len;
        }
    }
    rep.subblocks = static_cast<u32>(sub.size());
    u32 n = g.n();
    std::vector<u32> owner(n, kInfDist);
    for (u32 i = 0; i < sub.size(); ++i)
        for (u32 v : sub[i]) owner[v] = i;

    Graph r = sample_gnp(n, p, seed.derived(0x6400ULL));
    std::vector<std::pair<u32, u32>> h_edges;
    for (u32 u = 0; u < n; ++u)
        for (u32 v : r.neighbors(u)) {
            if (u >= v || owner[u] == owner[v]) continue;
            h_edges.emplace_back(std::min(owner[u], owner[v]), std::max(owner[u], owner[v]));
        }
    Graph h = Graph::from_edges(rep.subblocks, h_edges);
    rep.diam_h = exact_diameter(h);
    rep.h_connected = rep.diam_h != kInfDist;

    Graph host = g.union_with(r);
    rep.host_edges = host.edge_count();
    rep.measured = exact_diameter(host);

    double kk = static_cast<double>(k);
    rep.q = 1.0 - std::pow(1.0 - p, kk * kk);
    double log_nk = std::log(static_cast<double>(n) / kk);
    rep.lower_formula = log_nk / std::log(static_cast<double>(n) * rep.q / kk);
    rep.upper_formula = log_nk / std::log(static_cast<double>(n) * rep.q / (2.0 * kk));
    if (rep.h_connected && rep.measured != kInfDist)
        rep.assembly_ok = rep.measured <= 5ULL * rep.diam_h + 4ULL;
    else if (rep.h_connected)
        rep.assembly_ok = false;  // H connected but host is not: impossible by construction
    return rep;
}

struct GnpDiameterTrial {
    u64 stream = 0;
    u32 diameter = kInfDist;
    bool connected = false;
};

struct GnpDiameterCheck {
    std::vector<GnpDiameterTrial> trials;
    double formula = 0.0;  // log n / log(np)
    u32 disconnected = 0;
};

// Theorem 7.1 spot check: exact diameters of G(n, p) across seeds. Small
// diameters (the regime of interest) are decided by the two-hop certifier;
// anything larger falls back to the general solver.
inline GnpDiameterCheck gnp_diameter_check(u32 n, double p, u32 trials, Seed base_seed) {
    GnpDiameterCheck out;
    out.formula = std::log(static_cast<double>(n)) / std::log(static_cast<double>(n) * p);
    for (u32 t = 0; t < trials; ++t) {
        Seed s = base_seed.derived(0x676e70ULL + t);
        Graph r = sample_gnp(n, p, s);
        GnpDiameterTrial tr;
        tr.stream = s.stream;
        // A quick eccentricity probe decides which solver fits.
        if (r.n() >= 1) {
            std::vector<u32> dist(r.n()), queue;
            auto [ecc, reached] = detail::bfs_ecc(r, 0, dist, queue);
            if (reached != r.n()) {
                tr.connected = false;
                tr.diameter = kInfDist;
            } else if (ecc <= 3) {
                auto res = diameter_leq3_check(r);
                tr.connected = res.connected;
                tr.diameter = res.diameter;
            } else {
                tr.connected = true;
                tr.diameter = exact_diameter(r);
            }
        }
        out.disconnected += !tr.connected;
        out.trials.push_back(tr);
    }
    return out;
}

}  // namespace rpg
