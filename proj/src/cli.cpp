#include "curvkit/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "curvkit/bounds.hpp"
#include "curvkit/curvature.hpp"
#include "curvkit/errors.hpp"
#include "curvkit/graph.hpp"
#include "curvkit/metric.hpp"
#include "curvkit/semigroup.hpp"
#include "curvkit/serialize.hpp"

namespace curvkit::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::string gen;
    std::string input;
    std::string format = "edge-list";
    std::string measure = "counting";
    std::string n = "inf";
    double tau_cd = kDefaultTauCd;
    double solver_tol = 1e-6;
    std::string output;
    std::uint64_t seed = 0;

    // metrics
    std::string kind = "huang";
    std::vector<std::string> pairs;
    std::string table;
    bool check_intrinsic = false;

    // verify
    std::string check = "lmp16";
    int samples = 50;
    double big_t = 0.5;
    double t_max = 2.0;
    std::optional<double> k;
    std::optional<double> k0;
    std::optional<double> r;
    std::string w;
    std::string x;
    std::string metric = "scaled-combinatorial";

    // bounds
    std::string csv;
    bool sweep = false;
};

WeightedGraph load_input(const RunConfig& cfg) {
    const auto mode = parse_measure_mode(cfg.measure);
    if (!cfg.gen.empty() && !cfg.input.empty()) throw ParseError("use either --gen or --input, not both");
    if (!cfg.gen.empty()) return generate(parse_generator(cfg.gen), mode);
    if (cfg.input.empty()) throw ParseError("missing input: pass --gen or --input");
    GraphFormat format;
    if (cfg.format == "edge-list") format = GraphFormat::edge_list;
    else if (cfg.format == "json") format = GraphFormat::json;
    else throw ParseError("unknown format '" + cfg.format + "'");
    return load_graph_file(cfg.input, format, mode);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) parts.push_back(cur);
    return parts;
}

MetricTable build_metric(const WeightedGraph& g, const std::string& kind, const std::string& table) {
    switch (parse_metric_kind(kind)) {
        case MetricKind::huang: return huang_metric(g);
        case MetricKind::scaled_combinatorial: return scaled_combinatorial_metric(g);
        case MetricKind::custom: {
            if (table.empty()) throw ParseError("custom metric needs --table");
            auto t = load_metric_table_file(g, table);
            intrinsic_check(g, t);
            return t;
        }
        case MetricKind::resistance: break;
    }
    throw ParseError("resistance tables are not intrinsic metrics; use metrics --kind resistance");
}

void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw ParseError("cannot write '" + cfg.output + "'");
    f << text;
}

int cmd_curvature(const RunConfig& cfg, std::ostream& out) {
    const auto g = load_input(cfg);
    const auto profile = curvature_profile(g, Dimension::parse(cfg.n), cfg.tau_cd);
    write_output(cfg, dump(to_json(g, profile)), out);
    return kPass;
}

int cmd_metrics(const RunConfig& cfg, std::ostream& out) {
    const auto g = load_input(cfg);
    const auto kind = parse_metric_kind(cfg.kind);
    if (kind == MetricKind::resistance) {
        require_connected(g, "metrics");
        std::vector<std::pair<VertexId, VertexId>> pairs;
        if (cfg.pairs.empty()) {
            for (VertexId u = 0; u < g.size(); ++u)
                for (VertexId v = u + 1; v < g.size(); ++v) pairs.emplace_back(u, v);
        }
        for (const auto& p : cfg.pairs) {
            const auto parts = split(p, ',');
            if (parts.size() != 2) throw ParseError("--pairs expects u,v");
            if (!g.contains(parts[0]) || !g.contains(parts[1])) throw ParseError("--pairs names an unknown vertex");
            pairs.emplace_back(g.id(parts[0]), g.id(parts[1]));
        }
        json rows = json::array();
        double diam = 0.0;
        for (auto [u, v] : pairs) {
            const auto r = resistance_metric(g, u, v, {.tol = cfg.solver_tol});
            diam = std::max(diam, r.value);
            rows.push_back({{"u", g.name(u)}, {"v", g.name(v)}, {"d", r.value}, {"upper_bound", r.upper_bound}});
        }
        json doc{{"kind", "resistance"}, {"tol", cfg.solver_tol}, {"entries", std::move(rows)}, {"max_d", diam}};
        write_output(cfg, dump(doc), out);
        return kPass;
    }
    auto table = build_metric(g, cfg.kind, cfg.table);
    auto doc = to_json(g, table);
    doc["diameter"] = diameter_under(table);
    doc["intrinsic"] = table.is_intrinsic();
    write_output(cfg, dump(doc), out);
    if (cfg.check_intrinsic && !table.is_intrinsic()) return kFailure;
    return kPass;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const auto g = load_input(cfg);
    const auto n = Dimension::parse(cfg.n);
    if (cfg.samples < 1) throw ParseError("--samples must be >= 1");
    if (!(cfg.t_max > 0.0)) throw ParseError("--t-max must be > 0");
    const auto profile = curvature_profile(g, n, cfg.tau_cd);
    const auto spectral = spectral_decompose(g);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> time(0.0, cfg.t_max);
    std::uniform_int_distribution<std::size_t> vertex(0, g.size() - 1);
    auto random_function = [&] {
        VertexFunction f(g.size());
        for (auto& v : f) v = unit(rng);
        return f;
    };

    json rows = json::array();
    bool all_pass = true;
    json constants;
    if (cfg.check == "lmp16") {
        const double k = cfg.k.value_or(profile.min_value());
        constants = {{"K", k}, {"N", to_json(n)}};
        for (int i = 0; i < cfg.samples; ++i) {
            const auto f = random_function();
            const double t = time(rng);
            const VertexId x = vertex(rng);
            const auto row = verify_gradient_bound(g, spectral, profile, k, f, t, x);
            all_pass = all_pass && row.pass;
            rows.push_back(to_json(row, {{"t", t}, {"x", g.name(x)}}));
        }
    } else if (cfg.check == "sgc") {
        if (!profile.k_pos) throw HypothesisError("sgc: no vertex with positive curvature");
        const double k = cfg.k.value_or(*profile.k_pos);
        const double k0 = cfg.k0.value_or(profile.k_neg);
        constants = {{"K", k}, {"K0", k0}, {"N", to_json(n)}, {"T", cfg.big_t}};
        for (int i = 0; i < cfg.samples; ++i) {
            const auto f = random_function();
            const VertexId x = vertex(rng);
            const auto row = verify_refined_gradient_bound(g, spectral, profile, k, k0, f, cfg.big_t, x);
            all_pass = all_pass && row.pass;
            rows.push_back(to_json(row, {{"T", cfg.big_t}, {"x", g.name(x)}}));
        }
    } else if (cfg.check == "pt1") {
        if (n.is_infinite()) throw ParseError("pt1 needs a finite --N");
        const double k0 = cfg.k0.value_or(profile.k_neg);
        auto rho = build_metric(g, cfg.metric, cfg.table);
        std::vector<VertexId> w_ids;
        if (cfg.w.empty()) w_ids.push_back(g.size() - 1);
        for (const auto& name : split(cfg.w, ',')) {
            if (!g.contains(name)) throw ParseError("--W names an unknown vertex");
            w_ids.push_back(g.id(name));
        }
        const VertexSet w(std::move(w_ids));
        std::vector<VertexId> candidates;
        if (!cfg.x.empty()) {
            if (!g.contains(cfg.x)) throw ParseError("--x names an unknown vertex");
            candidates.push_back(g.id(cfg.x));
        } else {
            for (VertexId v = 0; v < g.size(); ++v)
                if (rho_distance_to_set(rho, v, w) > 0.0) candidates.push_back(v);
        }
        if (candidates.empty()) throw HypothesisError("pt1: no vertex at positive distance from W");
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        constants = {{"K0", k0}, {"N", to_json(n)}, {"metric", cfg.metric}};
        for (int i = 0; i < cfg.samples; ++i) {
            const VertexId x = candidates[pick(rng)];
            const double t = time(rng);
            const double r = cfg.r.value_or(rho_distance_to_set(rho, x, w));
            const auto row = verify_pt1(g, spectral, profile, k0, w, rho, x, t, r);
            all_pass = all_pass && row.pass;
            rows.push_back(to_json(row, {{"t", t}, {"x", g.name(x)}, {"R", r}}));
        }
    } else {
        throw ParseError("unknown check '" + cfg.check + "' (lmp16, sgc, pt1)");
    }
    json doc{{"check", cfg.check},   {"graph", g.label()}, {"seed", cfg.seed},
             {"constants", constants}, {"rows", std::move(rows)}, {"pass", all_pass}};
    write_output(cfg, dump(doc), out);
    return all_pass ? kPass : kFailure;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
    const auto g = load_input(cfg);
    const auto n = Dimension::parse(cfg.n);
    auto metric = build_metric(g, cfg.metric, cfg.table);
    const auto cert = check_main_theorem(g, n, std::move(metric), {.tau_cd = cfg.tau_cd});
    auto doc = to_json(cert);
    if (cfg.sweep && cert.which == TheoremCase::iv && cert.k) {
        const auto s = radius_sweep(*cert.k, cert.k0, n.value(), cert.r_rho);
        doc["sweep"] = {{"default_T", s.default_t}, {"default_R", s.default_r}, {"default_radius", s.default_radius},
                        {"best_T", s.best_t},       {"best_R", s.best_r},       {"best_radius", s.best_radius}};
    }
    write_output(cfg, dump(doc), out);
    if (!cfg.csv.empty()) {
        std::ofstream f(cfg.csv, std::ios::binary);
        if (!f) throw ParseError("cannot write '" + cfg.csv + "'");
        f << slack_csv(cert);
    }
    if (!cert.hypotheses_ok) return kHypothesis;
    return cert.pass ? kPass : kFailure;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--gen", cfg.gen, "generator: path:n, cycle:n, complete:n, hypercube:d, bridge:d,l");
    sub->add_option("--input", cfg.input, "graph file");
    sub->add_option("--format", cfg.format, "edge-list or json")->capture_default_str();
    sub->add_option("--measure", cfg.measure, "explicit, normalized or counting")->capture_default_str();
    sub->add_option("--N", cfg.n, "dimension parameter (number or inf)")->capture_default_str();
    sub->add_option("--tau-cd", cfg.tau_cd, "V0 classification tolerance")->capture_default_str();
    sub->add_option("--output", cfg.output, "write JSON here instead of stdout");
    sub->add_option("--seed", cfg.seed, "seed for sampled checks")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Bakry-Emery curvature, intrinsic metrics and distance bounds on finite graphs", "curvkit"};
    app.require_subcommand(1);

    auto* curvature = app.add_subcommand("curvature", "pointwise curvature profile");
    add_common(curvature, cfg);

    auto* metrics = app.add_subcommand("metrics", "intrinsic and resistance metrics");
    add_common(metrics, cfg);
    metrics->add_option("--kind", cfg.kind, "huang, scaled-combinatorial, resistance or custom")->capture_default_str();
    metrics->add_option("--pairs", cfg.pairs, "vertex pair u,v for resistance (repeatable)");
    metrics->add_option("--table", cfg.table, "custom metric table JSON");
    metrics->add_flag("--check-intrinsic", cfg.check_intrinsic, "exit 1 unless the table is intrinsic");
    metrics->add_option("--solver-tol", cfg.solver_tol, "resistance solver tolerance")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "sampled semigroup inequalities");
    add_common(verify, cfg);
    verify->add_option("--check", cfg.check, "lmp16, sgc or pt1")->capture_default_str();
    verify->add_option("--samples", cfg.samples)->capture_default_str();
    verify->add_option("--T", cfg.big_t, "time horizon for sgc")->capture_default_str();
    verify->add_option("--t-max", cfg.t_max, "sampled times are uniform in [0, t-max]")->capture_default_str();
    verify->add_option("--K", cfg.k, "override the curvature constant");
    verify->add_option("--K0", cfg.k0, "override the negative-part constant");
    verify->add_option("--R", cfg.r, "pt1 radius (default rho(x, W))");
    verify->add_option("--W", cfg.w, "pt1 target set, comma separated (default: last vertex)");
    verify->add_option("--x", cfg.x, "pt1 base vertex (default: sampled)");
    verify->add_option("--metric", cfg.metric, "pt1 intrinsic metric")->capture_default_str();
    verify->add_option("--table", cfg.table, "custom metric table JSON");

    auto* bounds = app.add_subcommand("bounds", "distance/diameter theorem certificate");
    add_common(bounds, cfg);
    bounds->add_option("--metric", cfg.metric, "huang, scaled-combinatorial or custom")->capture_default_str();
    bounds->add_option("--table", cfg.table, "custom metric table JSON");
    bounds->add_option("--csv", cfg.csv, "write per-vertex slack CSV");
    bounds->add_flag("--sweep", cfg.sweep, "case iv: sweep the (T, R) choices of the semigroup argument");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kParseError;
    }

    try {
        if (curvature->parsed()) return cmd_curvature(cfg, out);
        if (metrics->parsed()) return cmd_metrics(cfg, out);
        if (verify->parsed()) return cmd_verify(cfg, out);
        if (bounds->parsed()) return cmd_bounds(cfg, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParseError;
    } catch (const ParameterError& e) {
        err << "parameter error: " << e.what() << "\n";
        return kParseError;
    } catch (const StructuralError& e) {
        err << "structural error: " << e.what() << "\n";
        return kStructural;
    } catch (const HypothesisError& e) {
        err << "hypothesis violated: " << e.what() << "\n";
        return kHypothesis;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kParseError;
}

}  // namespace curvkit::cli
