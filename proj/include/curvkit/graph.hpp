#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace curvkit {

using VertexId = std::size_t;

/// Real-valued function on the vertices, indexed by dense vertex id.
using VertexFunction = std::vector<double>;

enum class MeasureMode { explicit_, normalized, counting };
enum class GraphFormat { edge_list, json };

MeasureMode parse_measure_mode(std::string_view s);
std::string_view to_string(MeasureMode m);

struct Neighbor {
    VertexId id;
    double weight;
};

/// Finite weighted graph G = (V, w, m): symmetric nonnegative edge weights,
/// strictly positive vertex measure, no self-loops. Immutable once built.
class WeightedGraph {
public:
    /// Builder used by loaders and generators.
    class Builder {
    public:
        /// Registers a vertex (idempotent) and returns its id.
        VertexId add_vertex(const std::string& name);
        /// Adds an undirected edge. A repeated edge must carry the same weight.
        void add_edge(const std::string& u, const std::string& v, double w);
        void set_measure(const std::string& v, double m);
        WeightedGraph build(MeasureMode mode) &&;

    private:
        std::vector<std::string> names_;
        std::unordered_map<std::string, VertexId> index_;
        std::vector<std::vector<Neighbor>> adj_;
        std::vector<std::optional<double>> measure_;
    };

    WeightedGraph() = default;

    [[nodiscard]] std::size_t size() const { return names_.size(); }
    [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
    [[nodiscard]] const std::string& name(VertexId v) const { return names_.at(v); }
    /// Dense id of a named vertex; throws ParameterError if unknown.
    [[nodiscard]] VertexId id(std::string_view name) const;
    [[nodiscard]] bool contains(std::string_view name) const;

    [[nodiscard]] double measure(VertexId v) const { return measure_[v]; }
    [[nodiscard]] std::span<const double> measures() const { return measure_; }
    /// Neighbors sorted by id; only strictly positive weights are stored.
    [[nodiscard]] std::span<const Neighbor> neighbors(VertexId v) const { return adj_[v]; }
    /// w(u, v); zero when not adjacent.
    [[nodiscard]] double weight(VertexId u, VertexId v) const;
    [[nodiscard]] std::size_t edge_count() const;
    [[nodiscard]] const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    /// Throws ParameterError if v is not a vertex id.
    void check_vertex(VertexId v) const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, VertexId> index_;
    std::vector<std::vector<Neighbor>> adj_;
    std::vector<double> measure_;
    std::string label_;
};

/// Subset of vertices in canonical (ascending id) order.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::vector<VertexId> ids);

    [[nodiscard]] const std::vector<VertexId>& ids() const { return ids_; }
    [[nodiscard]] bool empty() const { return ids_.empty(); }
    [[nodiscard]] std::size_t size() const { return ids_.size(); }
    [[nodiscard]] bool contains(VertexId v) const;
    /// 0/1 indicator function on a graph with n vertices.
    [[nodiscard]] VertexFunction indicator(std::size_t n) const;

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    std::vector<VertexId> ids_;
};

// --- I/O -------------------------------------------------------------------

/// Edge list: "u v [w]" per line, optional "# measures" section of "u m"
/// lines. JSON: {"vertices":[{"id","m"?}], "edges":[{"u","v","w"?}]}.
WeightedGraph load_graph(std::istream& in, GraphFormat format, MeasureMode mode);
WeightedGraph load_graph_string(std::string_view text, GraphFormat format, MeasureMode mode);
WeightedGraph load_graph_file(const std::string& path, GraphFormat format, MeasureMode mode);

// --- generators ------------------------------------------------------------

enum class Family { path, cycle, complete, hypercube, bridge };

struct GeneratorSpec {
    Family family;
    int a = 0;  // n for path/cycle/complete, d for hypercube/bridge
    int b = 0;  // bridge length
};

/// Parses "path:5", "cycle:6", "complete:4", "hypercube:3", "bridge:2,3".
GeneratorSpec parse_generator(std::string_view spec);
std::string to_string(const GeneratorSpec& spec);

/// Unit-weight member of a family. Path/cycle/complete vertices are named
/// a, b, ..., z, aa, ab, ...; hypercube vertices by bit strings; bridge(d, l)
/// joins L0..0 and R0..0 of two d-cubes by a path through p1..p{l-1}.
WeightedGraph generate(const GeneratorSpec& spec, MeasureMode mode);

// --- combinatorics ---------------------------------------------------------

/// Deg(x) = (1/m(x)) sum_y w(x,y).
double degree(const WeightedGraph& g, VertexId x);
/// Maximum weighted degree; throws on an empty graph.
double max_degree(const WeightedGraph& g);

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// BFS hop distances from a source; kUnreachable for other components.
std::vector<std::size_t> bfs_distances(const WeightedGraph& g, VertexId source);
/// Hop distance, std::nullopt when x and y lie in different components.
std::optional<std::size_t> graph_distance(const WeightedGraph& g, VertexId x, VertexId y);
bool is_connected(const WeightedGraph& g);
/// Throws StructuralError naming the operation if g is not connected.
void require_connected(const WeightedGraph& g, std::string_view operation);

class MetricTable;

/// {y : dist(x, y) <= r} under the combinatorial distance.
VertexSet ball(const WeightedGraph& g, VertexId x, double r);
VertexSet ball(const MetricTable& t, VertexId x, double r);
/// Union of balls of radius r around each vertex of `centers` (nonempty).
VertexSet tube(const WeightedGraph& g, const VertexSet& centers, double r);
VertexSet tube(const MetricTable& t, const VertexSet& centers, double r);

}  // namespace curvkit
