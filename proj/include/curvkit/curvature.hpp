#pragma once

#include <optional>
#include <vector>

#include "curvkit/extended.hpp"
#include "curvkit/graph.hpp"
#include "curvkit/local_calculus.hpp"

namespace curvkit {

inline constexpr double kDefaultTauCd = 1e-8;

/// K_{G,x}(N) = sup{K : CD(K, N, x)}; +infinity for an isolated vertex.
ExtendedReal curvature_at(const WeightedGraph& g, VertexId x, Dimension n);
/// Same, from pre-assembled local forms.
ExtendedReal curvature_from_forms(const LocalForms& lf);

/// CD(K, N, x) up to tau: K <= K_{G,x}(N) + tau.
bool cd_holds(const WeightedGraph& g, VertexId x, double k, Dimension n, double tau_cd = kDefaultTauCd);

struct CurvatureProfile {
    Dimension n = Dimension::infinite();
    double tau_cd = kDefaultTauCd;
    std::vector<ExtendedReal> values;
    /// {x : K_x(N) <= tau_cd}
    VertexSet v0;
    /// min over V \ V0; empty when V0 = V.
    std::optional<double> k_pos;
    /// max(0, -min over V).
    double k_neg = 0.0;

    [[nodiscard]] double min_value() const;
    [[nodiscard]] bool all_nonpositive() const { return v0.size() == values.size(); }
};

/// Curvature at every vertex (parallel over vertices, capped by CURV_THREADS).
CurvatureProfile curvature_profile(const WeightedGraph& g, Dimension n, double tau_cd = kDefaultTauCd);

struct DimensionShiftReport {
    double s = 0.0;
    double shifted_n = 0.0;  // 2 Deg_max / s
    /// min over x of K_x(2Deg_max/s) - (K_x(inf) - s)
    double worst_margin = 0.0;
    VertexId worst_vertex = 0;
    bool holds = false;
};

/// Checks CD(K, inf) => CD(K - s, 2 Deg_max / s) vertexwise.
DimensionShiftReport dimension_shift_check(const WeightedGraph& g, double s, double tau_cd = kDefaultTauCd);

/// Number of worker threads: hardware concurrency capped by CURV_THREADS.
unsigned worker_threads();

}  // namespace curvkit
