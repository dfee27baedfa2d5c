#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvkit/graph.hpp"
#include "curvkit/linalg.hpp"

namespace curvkit {

enum class MetricKind { huang, scaled_combinatorial, resistance, custom };

MetricKind parse_metric_kind(std::string_view s);
std::string_view to_string(MetricKind k);

/// Threshold above 1 tolerated by the intrinsic flag.
inline constexpr double kIntrinsicSlack = 1e-12;

/// Symmetric distance table on the vertices of one graph.
class MetricTable {
public:
    MetricTable(MetricKind kind, Matrix dist);

    [[nodiscard]] MetricKind kind() const { return kind_; }
    [[nodiscard]] std::size_t size() const { return dist_.rows(); }
    [[nodiscard]] double operator()(VertexId x, VertexId y) const { return dist_(x, y); }
    [[nodiscard]] const Matrix& matrix() const { return dist_; }

    /// max over edges x ~ y of dist(x, y); set by with_graph_data().
    [[nodiscard]] double jump_size() const { return jump_size_; }
    /// max over x, z of Gamma(dist(x, .))(z); set once intrinsic_check ran.
    [[nodiscard]] std::optional<double> intrinsic_margin() const { return margin_; }
    [[nodiscard]] bool is_intrinsic() const { return margin_ && *margin_ <= 1.0 + kIntrinsicSlack; }

    void set_jump_size(double j) { jump_size_ = j; }
    void set_intrinsic_margin(double m) { margin_ = m; }

private:
    MetricKind kind_;
    Matrix dist_;
    double jump_size_ = 0.0;
    std::optional<double> margin_;
};

/// rho(x,y) = inf over paths of sum (Deg(x_i) v Deg(x_{i+1}))^{-1/2} (Dijkstra).
MetricTable huang_metric(const WeightedGraph& g);
/// rho = d * sqrt(2 / Deg_max).
MetricTable scaled_combinatorial_metric(const WeightedGraph& g);
/// Combinatorial hop distance as a table (kind custom).
MetricTable combinatorial_metric(const WeightedGraph& g);

/// max over x, z of Gamma(t(x, .))(z). Also records the margin and jump
/// size on the table.
double intrinsic_check(const WeightedGraph& g, MetricTable& t);
double jump_size(const WeightedGraph& g, const MetricTable& t);

struct ResistanceOptions {
    double tol = 1e-6;
    int max_iterations = 100000;
};

struct ResistanceResult {
    /// Objective of a feasible function: certified lower bound on sigma.
    double value = 0.0;
    /// Dual objective: certified upper bound on sigma.
    double upper_bound = 0.0;
    int iterations = 0;
    /// Best feasible objective after each Newton step (nondecreasing).
    std::vector<double> trace;
    /// The maximizing function, f(x) = 0.
    VertexFunction potential;
};

/// sigma(x, y) = sup{ f(y) - f(x) : Gamma f <= 1 everywhere }.
ResistanceResult resistance_metric(const WeightedGraph& g, VertexId x, VertexId y,
                                   const ResistanceOptions& opts = {});

double diameter_under(const MetricTable& t);
double rho_distance_to_set(const MetricTable& t, VertexId x, const VertexSet& set);

/// Loads {"entries":[{"u","v","d"}]} against the vertex names of g. Missing
/// diagonal entries are zero; every off-diagonal pair must be present.
MetricTable load_metric_table(const WeightedGraph& g, std::istream& in);
MetricTable load_metric_table_file(const WeightedGraph& g, const std::string& path);

}  // namespace curvkit
