#include <catch2/catch_amalgamated.hpp>

#include "rpg/robustness.hpp"
#include "support/test_oracles.hpp"

using namespace rpg;
namespace to = test_oracles;

TEST_CASE("mader_decompose: disjoint cliques become the parts") {
    const u32 s = 16;
    Graph g = disjoint_cliques(68, s);  // four K_17
    auto d = mader_decompose(g, s);
    REQUIRE(d.parts.size() == 4);
    REQUIRE(d.w_order.empty());
    // Each part is verified s/16-connected; re-check independently.
    for (const auto& part : d.parts) {
        auto [sub, back] = g.induced(part);
        (void)back;
        REQUIRE(vertex_connectivity_at_least(sub, (s + 15) / 16).at_least);
    }
    REQUIRE(d.forward_degree_ok);  // vacuous: W empty
}

TEST_CASE("mader_decompose: trees yield no parts and a full ordering") {
    Graph tree = path_graph(30);
    auto d = mader_decompose(tree, 8);  // peel threshold 2 clears a path
    REQUIRE(d.parts.empty());
    REQUIRE(d.w_order.size() == 30);
    REQUIRE_FALSE(d.forward_degree_ok);  // delta(tree) < s, reported not fatal
}

TEST_CASE("ab_partition: examples") {
    const u32 s = 16;
    Graph g = disjoint_cliques(34, s);  // two K_17
    auto d = mader_decompose(g, s);
    REQUIRE(d.parts.size() == 2);
    auto ab = ab_partition(g, d, {0});
    REQUIRE(ab.a == d.parts[0]);
    REQUIRE(ab.b == d.parts[1]);
    // Determinism.
    auto ab2 = ab_partition(g, d, {0});
    REQUIRE(ab.a == ab2.a);
    REQUIRE(ab.b == ab2.b);
    REQUIRE_THROWS_AS(ab_partition(g, d, {}), TrivialPartition);
    REQUIRE_THROWS_AS(ab_partition(g, d, {0, 1}), TrivialPartition);
}

TEST_CASE("ab_partition: W vertex adjacent only into V_0 follows the 3s/8 threshold") {
    // Two K_17 cliques plus one vertex with 6 = 3s/8 edges into clique 0.
    // The decomposition is built by hand: ab_partition consumes any valid
    // decomposition, and the interesting case is a W vertex the heuristic
    // would otherwise absorb into a part.
    const u32 s = 16;
    std::vector<std::pair<u32, u32>> es;
    for (u32 c = 0; c < 2; ++c)
        for (u32 u = 17 * c; u < 17 * (c + 1); ++u)
            for (u32 v = u + 1; v < 17 * (c + 1); ++v) es.emplace_back(u, v);
    u32 w = 34;
    for (u32 u = 0; u < 6; ++u) es.emplace_back(u, w);
    Graph g = Graph::from_edges(35, es);
    MaderDecomposition d;
    d.s = s;
    d.parts.resize(2);
    for (u32 u = 0; u < 17; ++u) d.parts[0].push_back(u);
    for (u32 u = 17; u < 34; ++u) d.parts[1].push_back(u);
    d.w_order = {w};
    auto ab = ab_partition(g, d, {0});
    REQUIRE(std::binary_search(ab.a.begin(), ab.a.end(), w));  // 6 >= 3s/8
    auto ab2 = ab_partition(g, d, {1});
    REQUIRE(std::binary_search(ab2.b.begin(), ab2.b.end(), w));  // 0 < 3s/8 into A
}

TEST_CASE("check_matching_property: examples") {
    const u32 s = 16;
    Graph g = disjoint_cliques(68, s);
    auto d = mader_decompose(g, s);
    REQUIRE(d.parts.size() == 4);

    auto pass = check_matching_property(g, complete_graph(68), d, 1);
    REQUIRE(pass.pass);
    REQUIRE(pass.exhaustive);

    auto fail = check_matching_property(g, empty_graph(68), d, 1);
    REQUIRE_FALSE(fail.pass);
    REQUIRE(fail.min_matching == 0);
    REQUIRE(fail.failing_i1.has_value());
}

TEST_CASE("matching property vs separator search: the proof's cross-validation") {
    // With delta(G) >= s, k <= s/17, and M_k holding exhaustively, the
    // perturbed graph must be k-connected; disagreement would mirror the
    // proof's contradiction and is asserted away here.
    const u32 s = 17, k = 1;
    Graph g = disjoint_cliques(90, s);  // five K_18
    auto d = mader_decompose(g, s);
    for (u32 t = 0; t < 10; ++t) {
        Graph r = sample_gnp(90, 0.01 + 0.01 * t, Seed{70, t});
        auto rep = check_matching_property(g, r, d, k);
        REQUIRE(rep.exhaustive);
        Graph host = g.union_with(r);
        bool kconn = vertex_connectivity_at_least(host, k).at_least;
        if (rep.pass) REQUIRE(kconn);
        if (!kconn) REQUIRE_FALSE(rep.pass);
    }
}

TEST_CASE("connectivity_experiment: degenerate probabilities") {
    Graph g = disjoint_cliques(72, 17);
    auto always = connectivity_experiment(g, 1, 1.0, 3, Seed{71, 0});
    REQUIRE(always.successes == 3);
    auto never = connectivity_experiment(g, 1, 0.0, 3, Seed{72, 0});
    REQUIRE(never.successes == 0);
    for (const auto& tr : never.trials) REQUIRE(tr.separator.empty());
    REQUIRE_THROWS_AS(connectivity_experiment(g, 5, 0.5, 1, Seed{73, 0}), BadSpec);
    REQUIRE_NOTHROW(connectivity_experiment(g, 5, 1.0, 1, Seed{73, 0}, false));
}

TEST_CASE("connectivity_lower_bound_family: examples") {
    auto fam = connectivity_lower_bound_family(12, 3);
    REQUIRE(fam.cliques == 3);
    REQUIRE(fam.graph.n() == 12);
    REQUIRE(fam.graph.min_degree() >= 3);
    // delta >= s always, across a few sizes.
    for (u32 t = 1; t <= 5; ++t) {
        auto f = connectivity_lower_bound_family(100 * t + 7, 9 + t);
        REQUIRE(f.graph.min_degree() >= 9 + t);
    }
    // Edge-count obstruction: fewer than k*r/2 edges can never k-connect.
    // Sanity-check the k=1 consequence: with zero added edges kappa = 0.
    REQUIRE_FALSE(vertex_connectivity_at_least(fam.graph, 1).at_least);
}

TEST_CASE("radius2_partition: examples and invariants") {
    Graph star = complete_bipartite(1, 9);  // K_{1,9}
    auto r1 = radius2_partition(star, 1);
    REQUIRE(r1.blocks.size() == 1);
    REQUIRE(r1.blocks[0].size() == 10);

    const u32 k = 4;
    Graph dc = disjoint_cliques(30, k);  // six K_5
    auto rd = radius2_partition(dc, k);
    REQUIRE(rd.blocks.size() == 6);

    REQUIRE_THROWS_AS(radius2_partition(path_graph(10), 3), MinDegreeTooLow);

    // Fuzz invariants: exact cover, size >= k+1, radius <= 2 from center.
    for (u32 t = 0; t < 10; ++t) {
        u32 kk = 2 + t % 3;
        u32 n = 60 + 10 * t;
        u32 d = kk + 2 + t % 4;
        if ((static_cast<u64>(n) * d) % 2) ++n;
        Graph g = random_regular(n, d, Seed{74, t});
        auto rp = radius2_partition(g, kk);
        std::vector<char> seen(g.n(), 0);
        for (u32 b = 0; b < rp.blocks.size(); ++b) {
            REQUIRE(rp.blocks[b].size() >= kk + 1);
            auto [sub, back] = g.induced(rp.blocks[b]);
            u32 center_local = kInfDist;
            for (u32 i = 0; i < back.size(); ++i)
                if (back[i] == rp.centers[b]) center_local = i;
            REQUIRE(center_local != kInfDist);
            auto dist = bfs_distances(sub, center_local);
            for (u32 dv : dist) REQUIRE(dv <= 2);
            for (u32 v : rp.blocks[b]) {
                REQUIRE_FALSE(seen[v]);
                seen[v] = 1;
            }
        }
        for (u32 v = 0; v < g.n(); ++v) REQUIRE(seen[v]);
    }
}

TEST_CASE("diameter_upper_pipeline: examples") {
    Graph g = disjoint_cliques(60, 5);
    auto rep = diameter_upper_pipeline(g, 5, 1.0, Seed{75, 0});
    REQUIRE(rep.measured == 1);  // p = 1 makes the host complete
    REQUIRE(rep.assembly_ok);

    // Assembly inequality holds on random trials whenever H is connected.
    for (u32 t = 0; t < 8; ++t) {
        Graph base = disjoint_cliques(200, 6);
        auto r = diameter_upper_pipeline(base, 6, 0.002 + 0.002 * t, Seed{76, t});
        if (r.h_connected) {
            REQUIRE(r.measured != kInfDist);
            REQUIRE(r.measured <= 5 * r.diam_h + 4);
        }
        REQUIRE(r.subblocks >= 200 / 12);  // m in [n/2k, n/k]
        REQUIRE(r.subblocks <= 200 / 6);
    }
}

TEST_CASE("gnp_diameter_check: examples") {
    auto one = gnp_diameter_check(40, 1.0, 2, Seed{77, 0});
    for (const auto& tr : one.trials) REQUIRE(tr.diameter == 1);

    // Disconnected samples flagged and recorded as infinity.
    auto sparse = gnp_diameter_check(60, 0.01, 5, Seed{78, 0});
    bool some_disc = sparse.disconnected > 0;
    for (const auto& tr : sparse.trials)
        if (!tr.connected) REQUIRE(tr.diameter == kInfDist);
    REQUIRE(some_disc);  // p far below the connectivity threshold

    // Exactness against the oracle at small n.
    for (u32 t = 0; t < 10; ++t) {
        Graph g = sample_gnp(40, 0.15, Seed{79, t});
        auto chk = gnp_diameter_check(40, 0.15, 1, Seed{79, t});
        (void)chk;  // distribution helper; direct diameter check below
        u32 d_lib = exact_diameter(g);
        REQUIRE(d_lib == to::floyd_diameter(g));
    }
}
