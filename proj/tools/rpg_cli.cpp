// Command-line front end: certificate pipelines over edge-list files plus the
// experiment harness (sweeps, fits, calibration).

#include <iostream>

#include "CLI11.hpp"
#include "rpg/harness.hpp"

namespace {

using namespace rpg;

int cmd_gen(const std::string& family, u32 n, u32 k, u32 d, const std::string& offsets_csv,
            u64 seed, u64 stream, const std::string& out) {
    FamilySpec f;
    f.family = family;
    f.n = n;
    f.k = k;
    f.d = d;
    if (!offsets_csv.empty()) {
        size_t pos = 0;
        while (pos < offsets_csv.size()) {
            size_t comma = offsets_csv.find(',', pos);
            if (comma == std::string::npos) comma = offsets_csv.size();
            f.offsets.push_back(static_cast<u32>(std::stoul(offsets_csv.substr(pos, comma - pos))));
            pos = comma + 1;
        }
    }
    Graph g = build_family(f, n, Seed{seed, stream});
    write_edge_list(g, out);
    std::cerr << "wrote " << out << " (n=" << g.n() << ", m=" << g.edge_count() << ")\n";
    return 0;
}

int cmd_find_minor(const std::string& input, double epsilon, u64 seed, u64 stream,
                   const std::string& out, std::optional<u32> alpha) {
    Graph g = read_edge_list(input);
    FindMinorOptions opts;
    opts.alpha_bound = alpha;
    MinorPipelineResult res = find_minor_perturbed(g, epsilon, Seed{seed, stream}, opts);
    if (!out.empty())
        write_text_file(out, minor_certificate_to_json(res.host, res.cert).dump(2) + "\n");
    ordered_json m;
    m["order"] = res.metrics.order;
    m["mode"] = res.metrics.mode;
    m["path_len"] = res.metrics.path_len;
    m["ell"] = res.metrics.ell;
    m["k"] = res.metrics.k;
    m["host_edges"] = res.metrics.host_edges;
    m["e1_pass"] = res.metrics.e1_pass;
    m["e2_min_hits"] = res.metrics.e2_min_hits;
    m["p"] = round_sig12(res.metrics.p);
    std::cout << m.dump() << "\n";
    return 0;
}

int cmd_find_minor_sparse(const std::string& input, u32 k, u64 seed, u64 stream,
                          const std::string& out, std::optional<u32> alpha) {
    Graph g = read_edge_list(input);
    FindMinorOptions opts;
    opts.alpha_bound = alpha;
    MinorPipelineResult res = find_minor_sparse(g, k, Seed{seed, stream}, opts);
    if (!out.empty())
        write_text_file(out, minor_certificate_to_json(res.host, res.cert).dump(2) + "\n");
    ordered_json m;
    m["order"] = res.metrics.order;
    m["mode"] = res.metrics.mode;
    m["gamma_level_nodes"] = res.metrics.gamma_level_nodes;
    m["host_edges"] = res.metrics.host_edges;
    m["p"] = round_sig12(res.metrics.p);
    std::cout << m.dump() << "\n";
    return 0;
}

int cmd_find_topo(const std::string& input, double cp, double p_explicit, u64 seed, u64 stream,
                  const std::string& out, std::optional<u32> ell) {
    Graph g = read_edge_list(input);
    double p = p_explicit > 0 ? p_explicit : cp / g.n();
    RouteOptions opts;
    opts.big_c = cp;
    opts.ell_override = ell;
    RouteResult res = route_subdivision(g, p, Seed{seed, stream}, opts);
    if (!out.empty())
        write_text_file(out, subdivision_certificate_to_json(res.host, res.cert).dump(2) + "\n");
    ordered_json m;
    m["ell_target"] = res.metrics.ell_target;
    m["order"] = res.metrics.order;
    m["full"] = res.metrics.full;
    m["pairs_routed"] = res.metrics.pairs_routed;
    m["step1_failures"] = res.metrics.step1_failures;
    m["p"] = round_sig12(p);
    std::cout << m.dump() << "\n";
    return 0;
}

int cmd_connectivity(const std::string& input, u32 k, double p, u32 trials, u64 seed,
                     bool no_enforce) {
    Graph g = read_edge_list(input);
    auto exp = connectivity_experiment(g, k, p, trials, Seed{seed, 0}, !no_enforce);
    for (const auto& tr : exp.trials) {
        ordered_json j;
        j["stream"] = tr.stream;
        j["kappa_ok"] = tr.kappa_ok;
        if (!tr.kappa_ok) j["separator_size"] = tr.separator.size();
        std::cout << j.dump() << "\n";
    }
    std::cerr << "successes " << exp.successes << "/" << trials << "\n";
    return 0;
}

int cmd_diameter(const std::string& input, u32 k, double p, u64 seed, u64 stream) {
    Graph g = read_edge_list(input);
    DiameterReport rep = diameter_upper_pipeline(g, k, p, Seed{seed, stream});
    ordered_json j;
    j["diameter"] = distance_to_json(rep.measured);
    j["diam_h"] = distance_to_json(rep.diam_h);
    j["L"] = round_sig12(rep.lower_formula);
    j["U"] = round_sig12(rep.upper_formula);
    j["q"] = round_sig12(rep.q);
    j["assembly_ok"] = rep.assembly_ok;
    j["h_connected"] = rep.h_connected;
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_lab_run(const std::string& config_path, const std::string& out_path) {
    ordered_json cfg_json;
    try {
        cfg_json = ordered_json::parse(read_text_file(config_path));
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    ExperimentConfig cfg;
    try {
        cfg = config_from_json(cfg_json);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    auto records = run_experiment(cfg);
    std::string jsonl = records_to_jsonl(records);
    if (out_path.empty())
        std::cout << jsonl;
    else
        write_text_file(out_path, jsonl);
    u64 failures = 0;
    for (const auto& r : records) failures += !r.error.empty();
    if (failures) {
        std::cerr << failures << " trial(s) failed\n";
        return 3;
    }
    return 0;
}

std::vector<TrialRecord> records_from_jsonl(const std::string& text) {
    std::vector<TrialRecord> records;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) continue;
        ordered_json j = ordered_json::parse(line);
        TrialRecord r;
        r.cell = j.value("cell", 0u);
        r.trial = j.value("trial", 0u);
        r.seed_value = j.value("seed", 0ull);
        r.stream = j.value("stream", 0ull);
        r.n = j.value("n", 0u);
        r.p = j.value("p", 0.0);
        r.measured = j.value("measured", ordered_json::object());
        if (j.contains("cert_digest")) r.cert_digest = j.at("cert_digest").get<u64>();
        r.error = j.value("error", std::string{});
        records.push_back(std::move(r));
    }
    return records;
}

int cmd_lab_fit(const std::string& records_path, const std::string& x, const std::string& y) {
    auto records = records_from_jsonl(read_text_file(records_path));
    try {
        ScalingFit fit = fit_scaling(records, x, y);
        ordered_json j;
        j["slope"] = round_sig12(fit.slope);
        j["ci_low"] = round_sig12(fit.ci_low);
        j["ci_high"] = round_sig12(fit.ci_high);
        ordered_json pts = ordered_json::array();
        for (auto [px, py] : fit.points) pts.push_back({px, py});
        j["points"] = std::move(pts);
        std::cout << j.dump() << "\n";
    } catch (const InsufficientPoints& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}

int cmd_lab_tables(const std::string& records_path, const std::string& prefix) {
    auto records = records_from_jsonl(read_text_file(records_path));
    emit_tables(records, prefix + ".csv", prefix + "_summary.json", prefix + "_schema.txt");
    std::cerr << "wrote " << prefix << ".csv\n";
    return 0;
}

int cmd_lab_calibrate(const std::string& out_path);

}  // namespace

#include "calibrate.inc"

int main(int argc, char** argv) {
    CLI::App app{"randomly perturbed graph constructions and experiments"};
    app.require_subcommand(1);

    std::string input, out, config_path, records_path, offsets_csv, family = "disjoint-cliques";
    std::string fit_x = "n", fit_y = "order", prefix = "tables";
    double epsilon = 0.5, p = 0.0, cp = 30.0;
    u64 seed = 0, stream = 0;
    u32 n = 0, k = 0, d = 0, trials = 1;
    std::optional<u32> alpha, ell;
    bool no_enforce = false;

    auto* gen = app.add_subcommand("gen", "generate a graph family into an edge-list file");
    gen->add_option("--family", family, "family name");
    gen->add_option("--n", n, "vertex count")->required();
    gen->add_option("--k", k, "clique parameter");
    gen->add_option("--d", d, "regular degree");
    gen->add_option("--offsets", offsets_csv, "circulant offsets, comma separated");
    gen->add_option("--seed", seed);
    gen->add_option("--stream", stream);
    gen->add_option("--out", out)->required();

    auto* fm = app.add_subcommand("find-minor", "Theorem-1 pipeline on an edge-list graph");
    fm->add_option("--input", input)->required();
    fm->add_option("--epsilon", epsilon);
    fm->add_option("--seed", seed);
    fm->add_option("--stream", stream);
    fm->add_option("--out", out);
    fm->add_option("--alpha", alpha, "trusted upper bound on alpha(G)");

    auto* fms = app.add_subcommand("find-minor-sparse", "Theorem-2 pipeline");
    fms->add_option("--input", input)->required();
    fms->add_option("--k", k)->required();
    fms->add_option("--seed", seed);
    fms->add_option("--stream", stream);
    fms->add_option("--out", out);
    fms->add_option("--alpha", alpha);

    auto* ft = app.add_subcommand("find-topo", "Theorem-4 subdivision routing");
    ft->add_option("--input", input)->required();
    ft->add_option("--cp", cp, "C parameter; p defaults to C/n");
    ft->add_option("--p", p, "explicit p (overrides C/n)");
    ft->add_option("--ell", ell, "override the subdivision order target");
    ft->add_option("--seed", seed);
    ft->add_option("--stream", stream);
    ft->add_option("--out", out);

    auto* conn = app.add_subcommand("connectivity", "perturbed vertex-connectivity trials");
    conn->add_option("--input", input)->required();
    conn->add_option("--k", k)->required();
    conn->add_option("--p", p)->required();
    conn->add_option("--trials", trials);
    conn->add_option("--seed", seed);
    conn->add_flag("--no-enforce", no_enforce, "skip the k <= delta/17 regime check");

    auto* diam = app.add_subcommand("diameter", "Theorem-6 diameter pipeline");
    diam->add_option("--input", input)->required();
    diam->add_option("--k", k)->required();
    diam->add_option("--p", p)->required();
    diam->add_option("--seed", seed);
    diam->add_option("--stream", stream);

    auto* lab = app.add_subcommand("lab", "experiment harness");
    lab->require_subcommand(1);
    auto* lab_run = lab->add_subcommand("run", "run a sweep from a JSON config");
    lab_run->add_option("--config", config_path)->required();
    lab_run->add_option("--out", out);
    auto* lab_fit = lab->add_subcommand("fit", "log-log scaling fit over records");
    lab_fit->add_option("--records", records_path)->required();
    lab_fit->add_option("--x", fit_x);
    lab_fit->add_option("--y", fit_y);
    auto* lab_tables = lab->add_subcommand("tables", "emit CSV/summary tables from records");
    lab_tables->add_option("--records", records_path)->required();
    lab_tables->add_option("--prefix", prefix);
    auto* lab_cal = lab->add_subcommand("calibrate", "pilot sweeps pinning statistical goldens");
    lab_cal->add_option("--out", out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen(family, n, k, d, offsets_csv, seed, stream, out);
        if (fm->parsed()) return cmd_find_minor(input, epsilon, seed, stream, out, alpha);
        if (fms->parsed()) return cmd_find_minor_sparse(input, k, seed, stream, out, alpha);
        if (ft->parsed()) return cmd_find_topo(input, cp, p, seed, stream, out, ell);
        if (conn->parsed()) return cmd_connectivity(input, k, p, trials, seed, no_enforce);
        if (diam->parsed()) return cmd_diameter(input, k, p, seed, stream);
        if (lab_run->parsed()) return cmd_lab_run(config_path, out);
        if (lab_fit->parsed()) return cmd_lab_fit(records_path, fit_x, fit_y);
        if (lab_tables->parsed()) return cmd_lab_tables(records_path, prefix);
        if (lab_cal->parsed()) return cmd_lab_calibrate(out);
    } catch (const BadSpec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
