#include "curvkit/serialize.hpp"

#include <sstream>

namespace curvkit {

using nlohmann::json;

json to_json(const ExtendedReal& v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

json to_json(const Dimension& n) {
    if (n.is_infinite()) return "inf";
    return n.value();
}

json to_json(const WeightedGraph& g, const CurvatureProfile& p) {
    json values = json::array();
    for (VertexId v = 0; v < g.size(); ++v) values.push_back({{"vertex", g.name(v)}, {"K", to_json(p.values[v])}});
    json v0 = json::array();
    for (VertexId v : p.v0.ids()) v0.push_back(g.name(v));
    json out;
    out["N"] = to_json(p.n);
    out["values"] = std::move(values);
    out["v0"] = std::move(v0);
    out["K_pos"] = p.k_pos ? json(*p.k_pos) : json(nullptr);
    out["K_neg"] = p.k_neg;
    return out;
}

json to_json(const WeightedGraph& g, const MetricTable& t) {
    json entries = json::array();
    for (VertexId u = 0; u < t.size(); ++u)
        for (VertexId v = u + 1; v < t.size(); ++v)
            entries.push_back({{"u", g.name(u)}, {"v", g.name(v)}, {"d", t(u, v)}});
    json out;
    out["kind"] = std::string(to_string(t.kind()));
    out["jump_size"] = t.jump_size();
    out["intrinsic_margin"] = t.intrinsic_margin() ? json(*t.intrinsic_margin()) : json(nullptr);
    out["entries"] = std::move(entries);
    return out;
}

json to_json(const WeightedGraph& g, const LocalForms& lf) {
    auto names = [&](const std::vector<VertexId>& ids) {
        json a = json::array();
        for (VertexId v : ids) a.push_back(g.name(v));
        return a;
    };
    json q = json::array();
    for (std::size_t i = 0; i < lf.dim(); ++i) {
        const auto r = lf.q.row(i);
        q.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return {{"center", g.name(lf.center)}, {"N", to_json(lf.n)}, {"s1", names(lf.s1)}, {"s2", names(lf.s2)},
            {"B", lf.b_diag}, {"delta_row", lf.delta_row}, {"Q", std::move(q)}};
}

json to_json(const Certificate& c) {
    json out;
    out["case"] = std::string(to_string(c.which));
    out["graph"] = c.graph;
    out["N"] = to_json(c.n);
    out["metric"] = std::string(to_string(c.metric));
    out["K"] = c.k ? json(*c.k) : json(nullptr);
    out["K0"] = c.k0;
    out["K_neg"] = c.k_neg;
    out["deg_max"] = c.deg_max;
    out["r_rho"] = c.r_rho;
    out["intrinsic_margin"] = c.intrinsic_margin;
    out["bound"] = c.bound;
    out["bound_corollary"] = c.bound_corollary ? json(*c.bound_corollary) : json(nullptr);
    out["empirical"] = c.empirical;
    out["slack"] = c.slack;
    out["hypotheses_ok"] = c.hypotheses_ok;
    out["pass"] = c.pass;
    out["v0"] = c.v0;
    out["notes"] = c.notes;
    out["decisions"] = c.decisions;
    return out;
}

json to_json(const VerifierRow& row, const json& params) {
    return {{"check", row.check},       {"params", params},       {"lhs", row.lhs},
            {"rhs", row.rhs},           {"residual", row.residual}, {"allowed", row.allowed},
            {"quadrature_error", row.quadrature_error}, {"pass", row.pass}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string slack_csv(const Certificate& c) {
    std::ostringstream os;
    os.precision(17);
    os << "vertex,value,bound,slack\n";
    for (const auto& r : c.per_vertex) os << r.vertex << ',' << r.value << ',' << r.bound << ',' << r.slack << '\n';
    return os.str();
}

}  // namespace curvkit
