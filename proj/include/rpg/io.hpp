#pragma once

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "rpg/certificates.hpp"
#include "rpg/graph.hpp"

namespace rpg {

using ordered_json = nlohmann::ordered_json;

// 64-bit FNV-1a over the sorted edge list, each endpoint as 4 little-endian
// bytes; bit-exact across platforms.
inline u64 host_digest(const Graph& g) {
    u64 h = 14695981039346656037ULL;
    auto feed = [&](u32 x) {
        for (int b = 0; b < 4; ++b) {
            h ^= (x >> (8 * b)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    for (u32 u = 0; u < g.n(); ++u)
        for (u32 v : g.neighbors(u))
            if (u < v) {
                feed(u);
                feed(v);
            }
    return h;
}

// Edge-list file: header "n m", then m lines "u v" with 0 <= u < v < n.
inline void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open for writing: " + path);
    out << g.n() << ' ' << g.edge_count() << '\n';
    for (u32 u = 0; u < g.n(); ++u)
        for (u32 v : g.neighbors(u))
            if (u < v) out << u << ' ' << v << '\n';
    if (!out) throw IoFailure("write failed: " + path);
}

inline Graph read_edge_list(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open for reading: " + path);
    u64 n = 0, m = 0;
    if (!(in >> n >> m)) throw IoFailure("bad header in " + path);
    std::vector<std::pair<u32, u32>> edges;
    edges.reserve(m);
    for (u64 i = 0; i < m; ++i) {
        u64 u = 0, v = 0;
        if (!(in >> u >> v)) throw IoFailure("truncated edge list in " + path);
        if (u >= v || v >= n) throw IoFailure("malformed edge in " + path);
        edges.emplace_back(static_cast<u32>(u), static_cast<u32>(v));
    }
    return Graph::from_edges(static_cast<u32>(n), std::move(edges));
}

inline ordered_json minor_certificate_to_json(const Graph& host, const MinorCertificate& cert) {
    ordered_json j;
    j["kind"] = "minor";
    j["order"] = cert.order();
    ordered_json sets = ordered_json::array();
    for (const auto& b : cert.branch_sets.blocks) sets.push_back(b);
    j["branch_sets"] = std::move(sets);
    ordered_json wit = ordered_json::array();
    for (const auto& [key, edge] : cert.witness_edges)
        wit.push_back({key.first, key.second, edge.first, edge.second});
    j["witness_edges"] = std::move(wit);
    j["host_digest"] = host_digest(host);
    return j;
}

inline ordered_json subdivision_certificate_to_json(const Graph& host,
                                                    const SubdivisionCertificate& cert) {
    ordered_json j;
    j["kind"] = "subdivision";
    j["order"] = cert.order();
    j["branch_vertices"] = cert.branch_vertices;
    ordered_json paths = ordered_json::array();
    for (const auto& [key, path] : cert.paths) {
        ordered_json entry;
        entry["pair"] = {key.first, key.second};
        entry["path"] = path;
        paths.push_back(std::move(entry));
    }
    j["paths"] = std::move(paths);
    j["host_digest"] = host_digest(host);
    return j;
}

inline MinorCertificate minor_certificate_from_json(const ordered_json& j) {
    if (j.at("kind") != "minor") throw IoFailure("certificate kind mismatch");
    MinorCertificate cert;
    for (const auto& b : j.at("branch_sets")) {
        VertexSet s = b.get<VertexSet>();
        sort_unique(s);
        cert.branch_sets.blocks.push_back(std::move(s));
    }
    for (const auto& w : j.at("witness_edges")) {
        cert.witness_edges[{w.at(0).get<u32>(), w.at(1).get<u32>()}] = {w.at(2).get<u32>(),
                                                                        w.at(3).get<u32>()};
    }
    return cert;
}

inline SubdivisionCertificate subdivision_certificate_from_json(const ordered_json& j) {
    if (j.at("kind") != "subdivision") throw IoFailure("certificate kind mismatch");
    SubdivisionCertificate cert;
    cert.branch_vertices = j.at("branch_vertices").get<std::vector<u32>>();
    for (const auto& entry : j.at("paths")) {
        auto pr = entry.at("pair");
        cert.paths[{pr.at(0).get<u32>(), pr.at(1).get<u32>()}] =
            entry.at("path").get<std::vector<u32>>();
    }
    return cert;
}

// Hop counts serialize as numbers, unreachable as the string "inf".
inline ordered_json distance_to_json(u32 d) {
    if (d == kInfDist) return "inf";
    return d;
}

inline u32 distance_from_json(const ordered_json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInfDist;
        throw IoFailure("bad distance value");
    }
    return j.get<u32>();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoFailure("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace rpg
