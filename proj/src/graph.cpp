#include "curvkit/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "curvkit/errors.hpp"

namespace curvkit {

MeasureMode parse_measure_mode(std::string_view s) {
    if (s == "explicit") return MeasureMode::explicit_;
    if (s == "normalized") return MeasureMode::normalized;
    if (s == "counting") return MeasureMode::counting;
    throw ParseError("unknown measure mode '" + std::string(s) + "'");
}

std::string_view to_string(MeasureMode m) {
    switch (m) {
        case MeasureMode::explicit_: return "explicit";
        case MeasureMode::normalized: return "normalized";
        case MeasureMode::counting: return "counting";
    }
    return "?";
}

// --- builder ---------------------------------------------------------------

VertexId WeightedGraph::Builder::add_vertex(const std::string& name) {
    if (name.empty()) throw ParseError("empty vertex identifier");
    auto [it, inserted] = index_.try_emplace(name, names_.size());
    if (inserted) {
        names_.push_back(name);
        adj_.emplace_back();
        measure_.emplace_back();
    }
    return it->second;
}

void WeightedGraph::Builder::add_edge(const std::string& u, const std::string& v, double w) {
    if (!std::isfinite(w)) throw ParseError("non-finite weight on edge " + u + " " + v);
    if (w < 0.0) throw ParseError("negative weight on edge " + u + " " + v);
    if (u == v) throw ParseError("self-loop at vertex " + u);
    const VertexId a = add_vertex(u);
    const VertexId b = add_vertex(v);
    auto existing = std::find_if(adj_[a].begin(), adj_[a].end(),
                                 [b](const Neighbor& n) { return n.id == b; });
    if (existing != adj_[a].end()) {
        if (existing->weight != w)
            throw ParseError("conflicting weights for edge " + u + " " + v);
        return;
    }
    adj_[a].push_back({b, w});
    adj_[b].push_back({a, w});
}

void WeightedGraph::Builder::set_measure(const std::string& v, double m) {
    if (!(m > 0.0) || !std::isfinite(m)) throw ParseError("nonpositive measure at vertex " + v);
    const VertexId id = add_vertex(v);
    if (measure_[id] && *measure_[id] != m) throw ParseError("conflicting measures for vertex " + v);
    measure_[id] = m;
}

WeightedGraph WeightedGraph::Builder::build(MeasureMode mode) && {
    WeightedGraph g;
    g.names_ = std::move(names_);
    g.index_ = std::move(index_);
    g.adj_.resize(g.names_.size());
    for (std::size_t v = 0; v < adj_.size(); ++v) {
        // Zero weights mean "no edge"; they only register the vertices.
        for (const auto& n : adj_[v])
            if (n.weight > 0.0) g.adj_[v].push_back(n);
        std::sort(g.adj_[v].begin(), g.adj_[v].end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    }
    g.measure_.resize(g.names_.size());
    for (std::size_t v = 0; v < g.names_.size(); ++v) {
        double m = 1.0;
        switch (mode) {
            case MeasureMode::counting: m = 1.0; break;
            case MeasureMode::normalized:
                m = 0.0;
                for (const auto& n : g.adj_[v]) m += n.weight;
                break;
            case MeasureMode::explicit_:
                if (!measure_[v]) throw ParseError("missing measure for vertex " + g.names_[v]);
                m = *measure_[v];
                break;
        }
        if (!(m > 0.0)) throw ParseError("nonpositive measure at vertex " + g.names_[v]);
        g.measure_[v] = m;
    }
    return g;
}

// --- graph -----------------------------------------------------------------

VertexId WeightedGraph::id(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw ParameterError("unknown vertex '" + std::string(name) + "'");
    return it->second;
}

bool WeightedGraph::contains(std::string_view name) const {
    return index_.contains(std::string(name));
}

double WeightedGraph::weight(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    for (const auto& n : adj_[u])
        if (n.id == v) return n.weight;
    return 0.0;
}

std::size_t WeightedGraph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& a : adj_) twice += a.size();
    return twice / 2;
}

void WeightedGraph::check_vertex(VertexId v) const {
    if (v >= names_.size()) throw ParameterError("unknown vertex id " + std::to_string(v));
}

// --- vertex sets -----------------------------------------------------------

VertexSet::VertexSet(std::vector<VertexId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool VertexSet::contains(VertexId v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
}

VertexFunction VertexSet::indicator(std::size_t n) const {
    VertexFunction f(n, 0.0);
    for (VertexId v : ids_) f.at(v) = 1.0;
    return f;
}

// --- I/O -------------------------------------------------------------------

namespace {

double parse_number(const std::string& token, std::size_t line_no) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ParseError("line " + std::to_string(line_no) + ": malformed number '" + token + "'");
    return value;
}

WeightedGraph load_edge_list(std::istream& in, MeasureMode mode) {
    WeightedGraph::Builder b;
    bool in_measures = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            std::istringstream hs(line.substr(first + 1));
            std::string word;
            hs >> word;
            if (word == "measures") in_measures = true;
            continue;
        }
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string t; ls >> t;) tokens.push_back(t);
        if (in_measures) {
            if (tokens.size() != 2)
                throw ParseError("line " + std::to_string(line_no) + ": expected 'vertex measure'");
            b.set_measure(tokens[0], parse_number(tokens[1], line_no));
        } else {
            if (tokens.size() < 2 || tokens.size() > 3)
                throw ParseError("line " + std::to_string(line_no) + ": expected 'u v [w]'");
            const double w = tokens.size() == 3 ? parse_number(tokens[2], line_no) : 1.0;
            b.add_edge(tokens[0], tokens[1], w);
        }
    }
    return std::move(b).build(mode);
}

std::string json_id(const nlohmann::json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw ParseError("vertex identifiers must be strings or integers");
}

WeightedGraph load_json(std::istream& in, MeasureMode mode) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    WeightedGraph::Builder b;
    try {
        if (doc.contains("vertices")) {
            for (const auto& v : doc.at("vertices")) {
                const std::string id = json_id(v.at("id"));
                b.add_vertex(id);
                if (v.contains("m")) b.set_measure(id, v.at("m").get<double>());
            }
        }
        if (doc.contains("edges")) {
            for (const auto& e : doc.at("edges")) {
                const double w = e.contains("w") ? e.at("w").get<double>() : 1.0;
                b.add_edge(json_id(e.at("u")), json_id(e.at("v")), w);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed graph JSON: ") + e.what());
    }
    return std::move(b).build(mode);
}

}  // namespace

WeightedGraph load_graph(std::istream& in, GraphFormat format, MeasureMode mode) {
    return format == GraphFormat::json ? load_json(in, mode) : load_edge_list(in, mode);
}

WeightedGraph load_graph_string(std::string_view text, GraphFormat format, MeasureMode mode) {
    std::istringstream in{std::string(text)};
    return load_graph(in, format, mode);
}

WeightedGraph load_graph_file(const std::string& path, GraphFormat format, MeasureMode mode) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file '" + path + "'");
    auto g = load_graph(in, format, mode);
    g.set_label(path);
    return g;
}

// --- generators ------------------------------------------------------------

GeneratorSpec parse_generator(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) throw ParseError("generator spec must look like family:params");
    const std::string family(spec.substr(0, colon));
    const std::string params(spec.substr(colon + 1));

    auto to_int = [&](std::string_view s) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw ParseError("malformed generator parameter '" + std::string(s) + "'");
        return v;
    };

    GeneratorSpec out{};
    if (family == "bridge") {
        const auto comma = params.find(',');
        if (comma == std::string::npos) throw ParseError("bridge needs two parameters: bridge:d,l");
        out.family = Family::bridge;
        out.a = to_int(std::string_view(params).substr(0, comma));
        out.b = to_int(std::string_view(params).substr(comma + 1));
        return out;
    }
    if (family == "path") out.family = Family::path;
    else if (family == "cycle") out.family = Family::cycle;
    else if (family == "complete") out.family = Family::complete;
    else if (family == "hypercube") out.family = Family::hypercube;
    else throw ParseError("unknown graph family '" + family + "'");
    out.a = to_int(params);
    return out;
}

std::string to_string(const GeneratorSpec& spec) {
    switch (spec.family) {
        case Family::path: return "path:" + std::to_string(spec.a);
        case Family::cycle: return "cycle:" + std::to_string(spec.a);
        case Family::complete: return "complete:" + std::to_string(spec.a);
        case Family::hypercube: return "hypercube:" + std::to_string(spec.a);
        case Family::bridge: return "bridge:" + std::to_string(spec.a) + "," + std::to_string(spec.b);
    }
    return "?";
}

namespace {

// a, b, ..., z, aa, ab, ... (bijective base 26)
std::string letter_name(std::size_t i) {
    std::string s;
    ++i;
    while (i > 0) {
        --i;
        s.insert(s.begin(), static_cast<char>('a' + i % 26));
        i /= 26;
    }
    return s;
}

std::string bits(std::size_t v, int d) {
    std::string s(static_cast<std::size_t>(d), '0');
    for (int k = 0; k < d; ++k)
        if (v >> (d - 1 - k) & 1U) s[static_cast<std::size_t>(k)] = '1';
    return s;
}

void add_cube(WeightedGraph::Builder& b, int d, const std::string& prefix) {
    const std::size_t n = std::size_t{1} << d;
    for (std::size_t v = 0; v < n; ++v) b.add_vertex(prefix + bits(v, d));
    for (std::size_t v = 0; v < n; ++v)
        for (int k = 0; k < d; ++k) {
            const std::size_t u = v ^ (std::size_t{1} << k);
            if (v < u) b.add_edge(prefix + bits(v, d), prefix + bits(u, d), 1.0);
        }
}

}  // namespace

WeightedGraph generate(const GeneratorSpec& spec, MeasureMode mode) {
    if (mode == MeasureMode::explicit_) throw ParameterError("generated graphs use counting or normalized measure");
    WeightedGraph::Builder b;
    const int n = spec.a;
    switch (spec.family) {
        case Family::path:
            if (n < 1) throw ParameterError("path needs n >= 1");
            for (int i = 0; i < n; ++i) b.add_vertex(letter_name(i));
            for (int i = 0; i + 1 < n; ++i) b.add_edge(letter_name(i), letter_name(i + 1), 1.0);
            break;
        case Family::cycle:
            if (n < 3) throw ParameterError("cycle needs n >= 3");
            for (int i = 0; i < n; ++i) b.add_edge(letter_name(i), letter_name((i + 1) % n), 1.0);
            break;
        case Family::complete:
            if (n < 1) throw ParameterError("complete graph needs n >= 1");
            for (int i = 0; i < n; ++i) b.add_vertex(letter_name(i));
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) b.add_edge(letter_name(i), letter_name(j), 1.0);
            break;
        case Family::hypercube:
            if (n < 1 || n > 16) throw ParameterError("hypercube needs 1 <= d <= 16");
            add_cube(b, n, "");
            break;
        case Family::bridge: {
            const int len = spec.b;
            if (n < 1 || n > 12 || len < 1) throw ParameterError("bridge needs 1 <= d <= 12 and l >= 1");
            add_cube(b, n, "L");
            add_cube(b, n, "R");
            std::string prev = "L" + bits(0, n);
            for (int i = 1; i < len; ++i) {
                const std::string cur = "p" + std::to_string(i);
                b.add_edge(prev, cur, 1.0);
                prev = cur;
            }
            b.add_edge(prev, "R" + bits(0, n), 1.0);
            break;
        }
    }
    auto g = std::move(b).build(mode);
    g.set_label(to_string(spec));
    return g;
}

// --- combinatorics ---------------------------------------------------------

double degree(const WeightedGraph& g, VertexId x) {
    g.check_vertex(x);
    double s = 0.0;
    for (const auto& n : g.neighbors(x)) s += n.weight;
    return s / g.measure(x);
}

double max_degree(const WeightedGraph& g) {
    if (g.size() == 0) throw StructuralError("max_degree: empty graph");
    double best = 0.0;
    for (VertexId v = 0; v < g.size(); ++v) best = std::max(best, degree(g, v));
    return best;
}

std::vector<std::size_t> bfs_distances(const WeightedGraph& g, VertexId source) {
    g.check_vertex(source);
    std::vector<std::size_t> dist(g.size(), kUnreachable);
    std::deque<VertexId> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const VertexId u = queue.front();
        queue.pop_front();
        for (const auto& n : g.neighbors(u)) {
            if (dist[n.id] == kUnreachable) {
                dist[n.id] = dist[u] + 1;
                queue.push_back(n.id);
            }
        }
    }
    return dist;
}

std::optional<std::size_t> graph_distance(const WeightedGraph& g, VertexId x, VertexId y) {
    g.check_vertex(y);
    const auto d = bfs_distances(g, x)[y];
    if (d == kUnreachable) return std::nullopt;
    return d;
}

bool is_connected(const WeightedGraph& g) {
    if (g.size() == 0) return false;
    const auto d = bfs_distances(g, 0);
    return std::none_of(d.begin(), d.end(), [](std::size_t v) { return v == kUnreachable; });
}

void require_connected(const WeightedGraph& g, std::string_view operation) {
    if (!is_connected(g))
        throw StructuralError(std::string(operation) + ": graph must be nonempty and connected");
}

VertexSet ball(const WeightedGraph& g, VertexId x, double r) {
    return tube(g, VertexSet({x}), r);
}

VertexSet tube(const WeightedGraph& g, const VertexSet& centers, double r) {
    if (centers.empty()) throw ParameterError("tube: empty center set");
    if (r < 0.0) throw ParameterError("tube: negative radius");
    std::vector<VertexId> out;
    std::vector<bool> seen(g.size(), false);
    for (VertexId c : centers.ids()) {
        const auto d = bfs_distances(g, c);
        for (VertexId v = 0; v < g.size(); ++v)
            if (!seen[v] && d[v] != kUnreachable && static_cast<double>(d[v]) <= r) {
                seen[v] = true;
                out.push_back(v);
            }
    }
    return VertexSet(std::move(out));
}

}  // namespace curvkit
