#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvkit/curvature.hpp"
#include "curvkit/graph.hpp"
#include "curvkit/metric.hpp"

namespace curvkit {

/// H(K, K0, T) = 2(K0+K) e^{2 K0 T} int_0^T e^{-2(K0+K)s} (s sqrt(K0) + sqrt(2s)) ds.
double h_function(double k, double k0, double big_t);

/// Closed-form upper estimate e^{2 K0 T} (1/2)(sqrt(K0)/(K0+K) + sqrt(pi/(K0+K))).
double h_upper_estimate(double k, double k0, double big_t);

/// H(K, K0, t) <= e^{2 K0 (t - T)} H(K, K0, T) within rel_slack, for 0 < t < T.
bool h_ratio_check(double k, double k0, double t, double big_t, double rel_slack = 1e-9);

/// Adaptive Simpson on [a, b] to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth = 50);

// Explicit distance bounds.
double bound_case_i(double deg_max, double k0);              // 2 sqrt(2 Deg_max) / K0
double bound_case_ii(double n, double k0);                   // pi sqrt(N / K0)
double bound_case_iii(double deg_max, double k, double k0);  // 1 + 18.2 sqrt2 e^{4K0/K} Deg_max / sqrt(K K0)
double bound_corollary(double deg_max, double k, double k0); // 1 + 26 e^{4K0/K} Deg_max / sqrt(K K0)
double bound_case_iv(double r_rho, double n, double k, double k0);  // R_rho + 18.2 e^{2K0/K} sqrt(N/(K+K0))

/// Radius R_rho + R + r from the semigroup argument before the final
/// simplifications, for a chosen time T and separation R. Infinity when the
/// argument does not close (nonpositive denominator).
double tube_radius_estimate(double k, double k0, double n, double r_rho, double big_t, double sep_r);

struct RadiusSweep {
    double default_t = 0.0;
    double default_r = 0.0;
    double default_radius = 0.0;
    double best_t = 0.0;
    double best_r = 0.0;
    double best_radius = 0.0;
};

/// Evaluates tube_radius_estimate on a multiplicative grid around the
/// defaults T = 1/K, R = 4 sqrt(N) H(K, K0, 1/K).
RadiusSweep radius_sweep(double k, double k0, double n, double r_rho);

enum class TheoremCase { i, ii, iii, iv, vacuous };
std::string_view to_string(TheoremCase c);

struct VertexSlack {
    std::string vertex;
    double value = 0.0;  // eccentricity for (i)/(ii), distance to V0 for (iii)/(iv)
    double bound = 0.0;
    double slack = 0.0;
};

struct Certificate {
    TheoremCase which = TheoremCase::vacuous;
    std::string graph;
    Dimension n = Dimension::infinite();
    MetricKind metric = MetricKind::scaled_combinatorial;
    std::optional<double> k;   // curvature bound off V0 (case iii/iv) or K0 (case i/ii)
    double k0 = 0.0;           // constant actually used in the bound
    double k_neg = 0.0;        // max(0, -min curvature)
    double deg_max = 0.0;
    double r_rho = 0.0;
    double intrinsic_margin = 0.0;
    double bound = 0.0;
    std::optional<double> bound_corollary;
    double empirical = 0.0;
    double slack = 0.0;
    bool hypotheses_ok = true;
    bool pass = false;
    std::vector<std::string> v0;
    std::vector<std::string> notes;
    std::map<std::string, std::string> decisions;
    std::vector<VertexSlack> per_vertex;
};

inline constexpr double kCertificateTol = 1e-9;

struct TheoremOptions {
    double tau_cd = kDefaultTauCd;
};

/// Runs the distance/diameter theorem for g. The metric table is used for
/// cases (i), (ii), (iv); case (iii) is stated for the combinatorial distance.
Certificate check_main_theorem(const WeightedGraph& g, Dimension n, MetricTable metric,
                               const TheoremOptions& opts = {});
/// Builds the named metric (huang or scaled-combinatorial) first.
Certificate check_main_theorem(const WeightedGraph& g, Dimension n, MetricKind kind,
                               const TheoremOptions& opts = {});

}  // namespace curvkit
