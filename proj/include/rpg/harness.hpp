#pragma once

#include <atomic>
#include <charconv>
#include <cmath>
#include <thread>

#include "rpg/io.hpp"
#include "rpg/minor_pipeline.hpp"
#include "rpg/robustness.hpp"
#include "rpg/topo_pipeline.hpp"

namespace rpg {

inline u64 fnv64_string(const std::string& s) {
    u64 h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Float metrics are serialized at 12 significant digits so that records stay
// byte-stable across re-runs and worker counts.
inline double round_sig12(double x) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    double mag = std::floor(std::log10(std::fabs(x)));
    double scale = std::pow(10.0, 11.0 - mag);
    return std::round(x * scale) / scale;
}

inline std::string double_to_string(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, ptr);
}

struct PRuleSpec {
    std::string rule = "explicit";  // explicit | one-plus-eps-over-n | sparse-8-over-nk |
                                    // conn-c-k-log-over-ns | diam-m-log-over-nk
    double value = 0.0;             // p for "explicit", multiplier for the last two rules
};

struct ExperimentConfig {
    std::string kind;  // minor | minor-sparse | topo | connectivity | diameter |
                       // gnp-diameter | hadwiger-vs-chi
    FamilySpec family;
    std::vector<u32> n_values;
    PRuleSpec p_rule;
    u32 k = 0;
    u32 s = 0;
    double epsilon = 0.0;
    double big_c = 30.0;
    u32 trials = 1;
    u64 base_seed = 0;
    u32 workers = 1;
    std::optional<u32> alpha_bound;
    std::optional<u32> ell_override;
    std::string cert_dir;  // when set, certificates are written here
};

struct TrialRecord {
    u32 cell = 0;
    u32 trial = 0;
    u64 seed_value = 0;
    u64 stream = 0;
    u32 n = 0;
    double p = 0.0;
    ordered_json measured;  // kind-specific quantities
    std::optional<u64> cert_digest;
    std::string error;  // nonempty when the trial failed; sweeps never abort
};

inline double resolve_p(const ExperimentConfig& cfg, u32 n) {
    const auto& r = cfg.p_rule;
    double nn = n;
    if (r.rule == "explicit") return r.value;
    if (r.rule == "one-plus-eps-over-n") return (1.0 + cfg.epsilon) / nn;
    if (r.rule == "sparse-8-over-nk") return 8.0 / (nn * cfg.k);
    if (r.rule == "conn-c-k-log-over-ns")
        return r.value * (cfg.k + std::log(nn / cfg.s)) / (nn * cfg.s);
    if (r.rule == "diam-m-log-over-nk") return r.value * std::log(nn / cfg.k) / (nn * cfg.k);
    throw BadSpec("unknown p rule: " + r.rule);
}

inline Graph build_family(const FamilySpec& f, u32 n, Seed seed) {
    if (f.family == "disjoint-cliques") return disjoint_cliques(n, f.k);
    if (f.family == "circulant") return circulant_graph(n, f.offsets);
    if (f.family == "complete-bipartite") return complete_bipartite(f.a, f.b);
    if (f.family == "path") return path_graph(n);
    if (f.family == "cycle") return cycle_graph(n);
    if (f.family == "complete") return complete_graph(n);
    if (f.family == "empty") return empty_graph(n);
    if (f.family == "random-regular") return random_regular(n, f.d, seed.derived(0xfa11ULL));
    if (f.family == "gnp") return sample_gnp(n, f.p, seed.derived(0xfa12ULL));
    throw BadSpec("unknown family: " + f.family);
}

inline u32 default_alpha_bound(const ExperimentConfig& cfg, u32 n) {
    if (cfg.alpha_bound) return *cfg.alpha_bound;
    if (cfg.family.family == "disjoint-cliques")
        return disjoint_cliques_count(n, cfg.family.k);
    if (cfg.family.family == "empty") return n;
    return std::max<u32>(1, n);  // trivially valid upper bound
}

// Greedy (Welsh-Powell) proper coloring upper bound on the chromatic number.
inline u32 greedy_chromatic_upper_bound(const Graph& g) {
    u32 n = g.n();
    std::vector<u32> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](u32 a, u32 b) {
        if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
        return a < b;
    });
    std::vector<u32> color(n, kInfDist);
    std::vector<u32> taken(n + 1, kInfDist);
    u32 used = 0;
    for (u32 v : order) {
        for (u32 w : g.neighbors(v))
            if (color[w] != kInfDist) taken[color[w]] = v;
        u32 c = 0;
        while (taken[c] == v) ++c;
        color[v] = c;
        used = std::max(used, c + 1);
    }
    return used;
}

inline ExperimentConfig config_from_json(const ordered_json& j) {
    ExperimentConfig cfg;
    cfg.kind = j.at("kind").get<std::string>();
    if (j.contains("family")) {
        const auto& f = j.at("family");
        cfg.family.family = f.value("family", std::string{});
        cfg.family.k = f.value("k", 0u);
        cfg.family.a = f.value("a", 0u);
        cfg.family.b = f.value("b", 0u);
        cfg.family.d = f.value("d", 0u);
        cfg.family.p = f.value("p", 0.0);
        if (f.contains("offsets")) cfg.family.offsets = f.at("offsets").get<std::vector<u32>>();
    }
    cfg.n_values = j.at("n_values").get<std::vector<u32>>();
    if (j.contains("p_rule")) {
        cfg.p_rule.rule = j.at("p_rule").value("rule", std::string("explicit"));
        cfg.p_rule.value = j.at("p_rule").value("value", 0.0);
    }
    cfg.k = j.value("k", 0u);
    cfg.s = j.value("s", 0u);
    cfg.epsilon = j.value("epsilon", 0.0);
    cfg.big_c = j.value("C", 30.0);
    cfg.trials = j.value("trials", 1u);
    cfg.base_seed = j.value("seed", 0ull);
    cfg.workers = j.value("workers", 1u);
    if (j.contains("alpha_bound")) cfg.alpha_bound = j.at("alpha_bound").get<u32>();
    if (j.contains("ell")) cfg.ell_override = j.at("ell").get<u32>();
    cfg.cert_dir = j.value("cert_dir", std::string{});
    if (cfg.n_values.empty()) throw BadSpec("config: n_values must be nonempty");
    return cfg;
}

inline ordered_json config_to_json(const ExperimentConfig& cfg) {
    ordered_json j;
    j["kind"] = cfg.kind;
    ordered_json f;
    f["family"] = cfg.family.family;
    if (cfg.family.k) f["k"] = cfg.family.k;
    if (cfg.family.a) f["a"] = cfg.family.a;
    if (cfg.family.b) f["b"] = cfg.family.b;
    if (cfg.family.d) f["d"] = cfg.family.d;
    if (cfg.family.p != 0.0) f["p"] = cfg.family.p;
    if (!cfg.family.offsets.empty()) f["offsets"] = cfg.family.offsets;
    j["family"] = std::move(f);
    j["n_values"] = cfg.n_values;
    j["p_rule"] = {{"rule", cfg.p_rule.rule}, {"value", cfg.p_rule.value}};
    j["k"] = cfg.k;
    j["s"] = cfg.s;
    j["epsilon"] = cfg.epsilon;
    j["C"] = cfg.big_c;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.base_seed;
    j["workers"] = cfg.workers;
    if (cfg.alpha_bound) j["alpha_bound"] = *cfg.alpha_bound;
    if (cfg.ell_override) j["ell"] = *cfg.ell_override;
    if (!cfg.cert_dir.empty()) j["cert_dir"] = cfg.cert_dir;
    return j;
}

inline TrialRecord run_trial(const ExperimentConfig& cfg, u32 cell, u32 trial) {
    TrialRecord rec;
    rec.cell = cell;
    rec.trial = trial;
    rec.n = cfg.n_values[cell];
    rec.seed_value = cfg.base_seed;
    rec.stream = mix64(0x63656c6cULL, cell, trial);
    Seed seed{cfg.base_seed, rec.stream};
    try {
        u32 n = rec.n;
        rec.p = resolve_p(cfg, n);
        if (cfg.kind == "gnp-diameter") {
            Graph r = sample_gnp(n, rec.p, seed);
            u32 d;
            bool connected;
            {
                std::vector<u32> dist(std::max<u32>(r.n(), 1)), queue;
                auto [ecc, reached] = rpg::detail::bfs_ecc(r, 0, dist, queue);
                if (reached != r.n()) {
                    connected = false;
                    d = kInfDist;
                } else if (ecc <= 3) {
                    auto res = diameter_leq3_check(r);
                    connected = res.connected;
                    d = res.diameter;
                } else {
                    connected = true;
                    d = exact_diameter(r);
                }
            }
            rec.measured["connected"] = connected;
            rec.measured["diameter"] = distance_to_json(d);
            rec.measured["formula"] =
                round_sig12(std::log(static_cast<double>(n)) / std::log(n * rec.p));
            return rec;
        }

        Graph base = build_family(cfg.family, n, seed);
        if (cfg.kind == "minor" || cfg.kind == "minor-sparse" || cfg.kind == "hadwiger-vs-chi") {
            FindMinorOptions opts;
            opts.alpha_bound = default_alpha_bound(cfg, n);
            MinorPipelineResult res;
            bool sparse_route = cfg.kind == "minor-sparse" ||
                                (cfg.kind == "hadwiger-vs-chi" && cfg.k >= 2 &&
                                 cfg.p_rule.rule == "sparse-8-over-nk");
            if (sparse_route) {
                res = find_minor_sparse(base, cfg.k, seed, opts);
            } else {
                res = find_minor_with_p(base, rec.p, seed, opts);
            }
            const auto& m = res.metrics;
            rec.p = m.p;
            rec.measured["order"] = m.order;
            rec.measured["mode"] = m.mode;
            rec.measured["path_len"] = m.path_len;
            rec.measured["ell"] = m.ell;
            rec.measured["k"] = m.k;
            rec.measured["h_vertices"] = m.h_vertices;
            rec.measured["h_edges"] = m.h_edges;
            rec.measured["inner_order"] = m.inner_order;
            rec.measured["host_edges"] = m.host_edges;
            rec.measured["e1_pass"] = m.e1_pass;
            rec.measured["e2_min_hits"] = m.e2_min_hits;
            bool budget = static_cast<u64>(m.order) * (m.order - 1) / 2 <= m.host_edges;
            rec.measured["edge_budget_ok"] = budget;
            if (cfg.family.family == "disjoint-cliques") {
                double ratio = m.order / std::sqrt(static_cast<double>(n) * cfg.family.k);
                rec.measured["ratio_r_sqrt_nk"] = round_sig12(ratio);
            }
            if (cfg.kind == "hadwiger-vs-chi") {
                u32 chi = greedy_chromatic_upper_bound(res.host);
                u32 alpha = *opts.alpha_bound;
                double prop41 = (1.0 + std::log(static_cast<double>(n))) *
                                static_cast<double>(n) / alpha;
                rec.measured["chi_greedy"] = chi;
                rec.measured["prop41_bound"] = round_sig12(prop41);
                rec.measured["hadwiger_holds"] = m.order >= chi;
            }
            std::string cert_text = minor_certificate_to_json(res.host, res.cert).dump();
            rec.cert_digest = fnv64_string(cert_text);
            if (!cfg.cert_dir.empty()) {
                char name[32];
                std::snprintf(name, sizeof name, "%016llx",
                              static_cast<unsigned long long>(*rec.cert_digest));
                write_text_file(cfg.cert_dir + "/" + name + ".json", cert_text);
            }
            return rec;
        }
        if (cfg.kind == "topo") {
            RouteOptions opts;
            opts.big_c = cfg.big_c;
            opts.ell_override = cfg.ell_override;
            RouteResult res = route_subdivision(base, rec.p, seed, opts);
            const auto& m = res.metrics;
            rec.measured["ell_target"] = m.ell_target;
            rec.measured["order"] = m.order;
            rec.measured["full"] = m.full;
            rec.measured["pairs_routed"] = m.pairs_routed;
            rec.measured["step1_failures"] = m.step1_failures;
            rec.measured["path_vertices_used"] = m.path_vertices_used;
            rec.measured["vertex_budget"] = round_sig12(m.vertex_budget);
            rec.measured["exposed_edges"] = m.exposed_edges;
            rec.measured["host_edges"] = res.host.edge_count();
            std::string cert_text = subdivision_certificate_to_json(res.host, res.cert).dump();
            rec.cert_digest = fnv64_string(cert_text);
            if (!cfg.cert_dir.empty()) {
                char name[32];
                std::snprintf(name, sizeof name, "%016llx",
                              static_cast<unsigned long long>(*rec.cert_digest));
                write_text_file(cfg.cert_dir + "/" + name + ".json", cert_text);
            }
            return rec;
        }
        if (cfg.kind == "connectivity") {
            Graph host = perturb(base, rec.p, seed.derived(0x636f6eULL));
            auto res = vertex_connectivity_at_least(host, cfg.k);
            rec.measured["kappa_ok"] = res.at_least;
            rec.measured["separator_size"] =
                res.at_least ? ordered_json(nullptr) : ordered_json(res.separator.size());
            rec.measured["host_edges"] = host.edge_count();
            return rec;
        }
        if (cfg.kind == "diameter") {
            DiameterReport rep = diameter_upper_pipeline(base, cfg.k, rec.p, seed);
            rec.measured["diameter"] = distance_to_json(rep.measured);
            rec.measured["diam_h"] = distance_to_json(rep.diam_h);
            rec.measured["L"] = round_sig12(rep.lower_formula);
            rec.measured["U"] = round_sig12(rep.upper_formula);
            rec.measured["q"] = round_sig12(rep.q);
            rec.measured["h_connected"] = rep.h_connected;
            rec.measured["assembly_ok"] = rep.assembly_ok;
            bool in_bracket = false;
            if (rep.measured != kInfDist) {
                double lo = std::floor(rep.lower_formula);
                double hi = std::ceil(6.0 * rep.upper_formula);
                in_bracket = rep.measured >= lo && rep.measured <= hi;
            }
            rec.measured["in_bracket"] = in_bracket;
            rec.measured["host_edges"] = rep.host_edges;
            return rec;
        }
        throw BadSpec("unknown experiment kind: " + cfg.kind);
    } catch (const std::exception& e) {
        rec.error = e.what();
        return rec;
    }
}

// All cells x trials, deterministically: per-trial streams depend only on
// (cell, trial), results land in preassigned slots, so any worker count and
// any scheduling produce the same record vector.
inline std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.n_values.empty()) throw BadSpec("run_experiment: empty grid");
    u32 cells = static_cast<u32>(cfg.n_values.size());
    u64 total = static_cast<u64>(cells) * cfg.trials;
    std::vector<TrialRecord> records(total);
    std::atomic<u64> next{0};
    u32 workers = std::max<u32>(1, cfg.workers);
    auto work = [&]() {
        while (true) {
            u64 job = next.fetch_add(1);
            if (job >= total) break;
            u32 cell = static_cast<u32>(job / cfg.trials);
            u32 trial = static_cast<u32>(job % cfg.trials);
            records[job] = run_trial(cfg, cell, trial);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (u32 w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return records;
}

inline ordered_json record_to_json(const TrialRecord& r) {
    ordered_json j;
    j["cell"] = r.cell;
    j["trial"] = r.trial;
    j["seed"] = r.seed_value;
    j["stream"] = r.stream;
    j["n"] = r.n;
    j["p"] = round_sig12(r.p);
    j["measured"] = r.measured;
    if (r.cert_digest) j["cert_digest"] = *r.cert_digest;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

inline std::string records_to_jsonl(const std::vector<TrialRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        out += record_to_json(r).dump();
        out += '\n';
    }
    return out;
}

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::vector<std::pair<double, double>> points;  // (x, median y) per cell
};

namespace detail {

inline double median_of(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

inline std::pair<double, double> least_squares(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double m = pts.size();
    double denom = m * sxx - sx * sx;
    double slope = (m * sxy - sx * sy) / denom;
    return {slope, (sy - slope * sx) / m};
}

}  // namespace detail

// Log-log least squares of per-cell median y against per-cell x, with a
// seeded bootstrap CI over trial resampling.
inline ScalingFit fit_scaling(const std::vector<TrialRecord>& records, const std::string& x_field,
                              const std::string& y_field, u32 bootstrap = 200, u64 boot_seed = 1) {
    std::map<u32, std::pair<double, std::vector<double>>> cells;  // cell -> (x, y samples)
    for (const auto& r : records) {
        if (!r.error.empty()) continue;
        double x;
        if (x_field == "n")
            x = r.n;
        else if (x_field == "p")
            x = r.p;
        else if (r.measured.contains(x_field))
            x = r.measured.at(x_field).get<double>();
        else
            continue;
        if (!r.measured.contains(y_field)) continue;
        double y = r.measured.at(y_field).get<double>();
        auto& cell = cells[r.cell];
        cell.first = x;
        cell.second.push_back(y);
    }
    std::set<double> xs;
    for (auto& [c, v] : cells) xs.insert(v.first);
    if (xs.size() < 4)
        throw InsufficientPoints("fit_scaling: need >= 4 distinct x values, have " +
                                 std::to_string(xs.size()));
    ScalingFit fit;
    std::vector<std::pair<double, double>> pts;
    for (auto& [c, v] : cells) {
        double med = detail::median_of(v.second);
        fit.points.emplace_back(v.first, med);
        pts.emplace_back(std::log(v.first), std::log(std::max(med, 1e-300)));
    }
    auto [slope, intercept] = detail::least_squares(pts);
    fit.slope = slope;
    fit.intercept = intercept;
    // Bootstrap over trials within each cell.
    Rng rng(boot_seed, 0x626f6f74ULL);
    std::vector<double> slopes;
    slopes.reserve(bootstrap);
    for (u32 b = 0; b < bootstrap; ++b) {
        std::vector<std::pair<double, double>> bp;
        for (auto& [c, v] : cells) {
            std::vector<double> sample;
            sample.reserve(v.second.size());
            for (size_t i = 0; i < v.second.size(); ++i)
                sample.push_back(v.second[rng.next_below(v.second.size())]);
            bp.emplace_back(std::log(v.first),
                            std::log(std::max(detail::median_of(sample), 1e-300)));
        }
        slopes.push_back(detail::least_squares(bp).first);
    }
    std::sort(slopes.begin(), slopes.end());
    fit.ci_low = slopes[static_cast<size_t>(0.025 * (slopes.size() - 1))];
    fit.ci_high = slopes[static_cast<size_t>(0.975 * (slopes.size() - 1))];
    return fit;
}

struct TightnessReport {
    bool per_record_budget_ok = true;  // r(r-1)/2 <= e(host) on every record
    std::vector<double> cell_ratios;   // median of order/sqrt(nk) per cell
    double max_ratio = 0.0;
    double max_deviation = 0.0;  // max |ratio - mean| / mean over cells
    bool stable = false;         // within +-30%
};

inline TightnessReport tightness_check(const std::vector<TrialRecord>& records) {
    TightnessReport rep;
    std::map<u32, std::vector<double>> ratios;
    for (const auto& r : records) {
        if (!r.error.empty()) continue;
        if (!r.measured.value("edge_budget_ok", true)) rep.per_record_budget_ok = false;
        if (r.measured.contains("ratio_r_sqrt_nk"))
            ratios[r.cell].push_back(r.measured.at("ratio_r_sqrt_nk").get<double>());
    }
    double sum = 0;
    for (auto& [c, v] : ratios) {
        double med = detail::median_of(v);
        rep.cell_ratios.push_back(med);
        rep.max_ratio = std::max(rep.max_ratio, med);
        sum += med;
    }
    if (!rep.cell_ratios.empty()) {
        double mean = sum / rep.cell_ratios.size();
        for (double v : rep.cell_ratios)
            rep.max_deviation = std::max(rep.max_deviation, std::fabs(v - mean) / mean);
        rep.stable = rep.max_deviation <= 0.30;
    }
    return rep;
}

struct HadwigerChiReport {
    u32 trials = 0;
    u32 holds = 0;  // h_cert >= chi_greedy
    double median_h = 0.0;
    double median_chi = 0.0;
    double median_prop41 = 0.0;
};

inline HadwigerChiReport hadwiger_vs_chi(const std::vector<TrialRecord>& records) {
    HadwigerChiReport rep;
    std::vector<double> hs, chis, props;
    for (const auto& r : records) {
        if (!r.error.empty() || !r.measured.contains("chi_greedy")) continue;
        ++rep.trials;
        rep.holds += r.measured.value("hadwiger_holds", false) ? 1 : 0;
        hs.push_back(r.measured.at("order").get<double>());
        chis.push_back(r.measured.at("chi_greedy").get<double>());
        props.push_back(r.measured.at("prop41_bound").get<double>());
    }
    rep.median_h = detail::median_of(hs);
    rep.median_chi = detail::median_of(chis);
    rep.median_prop41 = detail::median_of(props);
    return rep;
}

// CSV emission: one row per cell with median/quartiles per numeric field and
// success rates per boolean field. Values print in shortest round-trip form,
// so the bundled loader reads them back bit-exactly.
inline void emit_tables(const std::vector<TrialRecord>& records, const std::string& csv_path,
                        const std::string& summary_path, const std::string& schema_path) {
    std::set<std::string> num_fields, bool_fields;
    for (const auto& r : records) {
        for (auto it = r.measured.begin(); it != r.measured.end(); ++it) {
            if (it.value().is_number())
                num_fields.insert(it.key());
            else if (it.value().is_boolean())
                bool_fields.insert(it.key());
        }
    }
    std::map<u32, std::vector<const TrialRecord*>> grouped;
    for (const auto& r : records) grouped[r.cell].push_back(&r);

    std::string csv = "cell,n,p,trials,errors";
    for (const auto& f : num_fields) csv += "," + f + "_median," + f + "_q25," + f + "_q75";
    for (const auto& f : bool_fields) csv += "," + f + "_rate";
    csv += "\n";
    ordered_json summary = ordered_json::array();
    for (auto& [cell, rs] : grouped) {
        u32 errors = 0;
        for (auto* r : rs) errors += !r->error.empty();
        csv += std::to_string(cell) + "," + std::to_string(rs[0]->n) + "," +
               double_to_string(rs[0]->p) + "," + std::to_string(rs.size()) + "," +
               std::to_string(errors);
        ordered_json cell_summary;
        cell_summary["cell"] = cell;
        cell_summary["n"] = rs[0]->n;
        cell_summary["trials"] = rs.size();
        cell_summary["errors"] = errors;
        for (const auto& f : num_fields) {
            std::vector<double> vals;
            for (auto* r : rs)
                if (r->error.empty() && r->measured.contains(f) && r->measured.at(f).is_number())
                    vals.push_back(r->measured.at(f).get<double>());
            if (vals.empty()) {
                csv += ",,,";
                continue;
            }
            std::sort(vals.begin(), vals.end());
            double med = detail::median_of(vals);
            double q25 = vals[static_cast<size_t>(0.25 * (vals.size() - 1))];
            double q75 = vals[static_cast<size_t>(0.75 * (vals.size() - 1))];
            csv += "," + double_to_string(med) + "," + double_to_string(q25) + "," +
                   double_to_string(q75);
            cell_summary[f + "_median"] = med;
        }
        for (const auto& f : bool_fields) {
            u32 yes = 0, tot = 0;
            for (auto* r : rs)
                if (r->error.empty() && r->measured.contains(f) &&
                    r->measured.at(f).is_boolean()) {
                    ++tot;
                    yes += r->measured.at(f).get<bool>() ? 1 : 0;
                }
            csv += "," + (tot ? double_to_string(static_cast<double>(yes) / tot) : std::string());
            if (tot) cell_summary[f + "_rate"] = static_cast<double>(yes) / tot;
        }
        csv += "\n";
        summary.push_back(std::move(cell_summary));
    }
    write_text_file(csv_path, csv);
    write_text_file(summary_path, summary.dump(2) + "\n");
    std::string schema =
        "cell: grid cell index\n"
        "n: vertex count of the cell\n"
        "p: perturbation probability of the cell\n"
        "trials: trials executed\n"
        "errors: trials that raised an error\n"
        "<field>_median/_q25/_q75: per-cell order statistics of a measured quantity\n"
        "<field>_rate: success fraction of a boolean measured quantity\n"
        "Values are shortest-round-trip decimal; the loader restores them bit-exactly.\n";
    write_text_file(schema_path, schema);
}

// Loader for the emitted CSV; doubles parse back to the exact bits printed.
inline std::vector<std::map<std::string, std::string>> load_csv(const std::string& path) {
    std::string text = read_text_file(path);
    std::vector<std::map<std::string, std::string>> rows;
    std::vector<std::string> header;
    size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        size_t fpos = 0;
        while (true) {
            size_t comma = line.find(',', fpos);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(fpos));
                break;
            }
            fields.push_back(line.substr(fpos, comma - fpos));
            fpos = comma + 1;
        }
        if (first) {
            header = fields;
            first = false;
        } else {
            std::map<std::string, std::string> row;
            for (size_t i = 0; i < fields.size() && i < header.size(); ++i)
                row[header[i]] = fields[i];
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace rpg
