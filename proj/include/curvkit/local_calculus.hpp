#pragma once

#include <span>
#include <vector>

#include "curvkit/extended.hpp"
#include "curvkit/graph.hpp"
#include "curvkit/linalg.hpp"

namespace curvkit {

// Pointwise Laplace and Gamma calculus. Functions are dense vectors indexed
// by vertex id; only the values on the relevant ball are read.

/// Delta f(x) = (1/m(x)) sum_y w(x,y) (f(y) - f(x)).
double laplacian_at(const WeightedGraph& g, std::span<const double> f, VertexId x);
/// Delta f on every vertex.
VertexFunction laplacian(const WeightedGraph& g, std::span<const double> f);

/// Gamma(f, h)(x) = (1/2m(x)) sum_y w(x,y) (f(y)-f(x)) (h(y)-h(x)).
double gamma_at(const WeightedGraph& g, std::span<const double> f, std::span<const double> h, VertexId x);
double gamma_sq_at(const WeightedGraph& g, std::span<const double> f, VertexId x);
/// Gamma(f) on every vertex.
VertexFunction gamma_sq(const WeightedGraph& g, std::span<const double> f);

/// Gamma_2(f)(x) = 1/2 (Delta Gamma(f) - 2 Gamma(f, Delta f))(x), evaluated
/// from the definition. Reads f on the 2-ball around x.
double gamma2_at(const WeightedGraph& g, std::span<const double> f, VertexId x);

/// Quadratic forms entering CD(K, N, x), localized at x in the gauge f(x) = 0.
///
/// Local coordinates are s1 (distance-1 vertices) followed by s2 (distance-2
/// vertices). For f vanishing at x:
///   Gamma(f)(x)                         = f1^T B f1           (B diagonal)
///   Delta f(x)                          = delta_row . f1
///   Gamma_2(f)(x) - (1/N) (Delta f(x))^2 = f^T Q f             (Q22 diagonal)
struct LocalForms {
    VertexId center = 0;
    std::vector<VertexId> s1;
    std::vector<VertexId> s2;
    std::vector<double> b_diag;     // |s1|
    std::vector<double> delta_row;  // |s1|
    Matrix q;                       // (|s1|+|s2|) square
    Dimension n = Dimension::infinite();

    [[nodiscard]] std::size_t inner() const { return s1.size(); }
    [[nodiscard]] std::size_t outer() const { return s2.size(); }
    [[nodiscard]] std::size_t dim() const { return s1.size() + s2.size(); }
    [[nodiscard]] Matrix q11() const;
    [[nodiscard]] Matrix q12() const;
    [[nodiscard]] Matrix q22() const;

    /// Embeds local coordinates into a function on the whole graph that
    /// vanishes off s1 and s2 (in particular at the center).
    [[nodiscard]] VertexFunction embed(std::span<const double> local, std::size_t graph_size) const;
    /// Restriction of a global function to local coordinates, after
    /// subtracting f(center).
    [[nodiscard]] std::vector<double> restrict(std::span<const double> f) const;
};

LocalForms local_forms(const WeightedGraph& g, VertexId x, Dimension n);

}  // namespace curvkit
