#pragma once

#include <span>
#include <string>
#include <vector>

#include "curvkit/curvature.hpp"
#include "curvkit/graph.hpp"
#include "curvkit/linalg.hpp"
#include "curvkit/metric.hpp"

namespace curvkit {

/// Eigen-decomposition of the symmetrized Laplacian M^{1/2} Delta M^{-1/2}.
struct SpectralData {
    std::vector<double> eigenvalues;  // ascending, all <= 0
    Matrix eigenvectors;              // orthonormal columns
    std::vector<double> measure_roots;
};

SpectralData spectral_decompose(const WeightedGraph& g);

/// P_t f = e^{t Delta} f.
VertexFunction semigroup_apply(const SpectralData& s, double t, std::span<const double> f);

/// Heat kernel with P_t f(x) = sum_y p(t,x,y) f(y) m(y); symmetric in x, y.
double heat_kernel(const SpectralData& s, double t, VertexId x, VertexId y);

/// Transition matrix entries P_t[x][y] = p(t,x,y) m(y).
Matrix transition_matrix(const SpectralData& s, double t);

/// One evaluated inequality LHS <= RHS.
struct VerifierRow {
    std::string check;
    double lhs = 0.0;
    double rhs = 0.0;
    /// rhs - lhs
    double residual = 0.0;
    /// Tolerance the residual is compared against (already scaled).
    double allowed = 0.0;
    /// Quadrature error estimate, zero where no integral is involved.
    double quadrature_error = 0.0;
    bool pass = false;
};

inline constexpr double kResidualTol = 1e-8;

/// scale = 1 + |lhs| + |rhs|
double residual_scale(double lhs, double rhs);

/// Gamma P_t f(x) <= e^{-2Kt} P_t Gamma f(x) - (1 - e^{-2Kt})/(KN) (Delta P_t f)^2(x).
/// Requires CD(K, N) globally, checked against `profile`.
VerifierRow verify_gradient_bound(const WeightedGraph& g, const SpectralData& s, const CurvatureProfile& profile,
                                  double k, std::span<const double> f, double t, VertexId x);

/// Gradient bound with a non-positively curved set V0: adds
/// 2(K0+K) ||Gamma f||_inf e^{2 K0 T} int_0^T e^{-2(K+K0)s} P_s 1_{V0}(x) ds.
/// Requires K > 0, CD(-K0, N) on V and CD(K, N) off V0.
VerifierRow verify_refined_gradient_bound(const WeightedGraph& g, const SpectralData& s,
                                          const CurvatureProfile& profile, double k, double k0,
                                          std::span<const double> f, double big_t, VertexId x);

/// P_t 1_W(x) <= (sqrt(N)/R)(t sqrt(K0) + sqrt(2t)) whenever rho(x, W) >= R,
/// rho intrinsic and CD(-K0, N) globally.
VerifierRow verify_pt1(const WeightedGraph& g, const SpectralData& s, const CurvatureProfile& profile,
                       double k0, const VertexSet& w, const MetricTable& rho, VertexId x, double t, double r);

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

/// Composite Simpson on [a, b], starting at `panels` and doubling until the
/// relative change drops below rel_tol or max_panels is reached.
template <class F>
QuadratureResult composite_simpson(F&& f, double a, double b, double rel_tol = 1e-9, int panels = 64,
                                   int max_panels = 1 << 14);

}  // namespace curvkit

#include "curvkit/detail/simpson.hpp"
