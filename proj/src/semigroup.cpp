#include "curvkit/semigroup.hpp"

#include <algorithm>
#include <cmath>

#include "curvkit/errors.hpp"
#include "curvkit/local_calculus.hpp"

namespace curvkit {

SpectralData spectral_decompose(const WeightedGraph& g) {
    require_connected(g, "spectral_decompose");
    const std::size_t n = g.size();
    SpectralData s;
    s.measure_roots.resize(n);
    for (VertexId v = 0; v < n; ++v) s.measure_roots[v] = std::sqrt(g.measure(v));

    Matrix sym(n, n);
    for (VertexId v = 0; v < n; ++v) {
        double total = 0.0;
        for (const auto& nb : g.neighbors(v)) {
            total += nb.weight;
            sym(v, nb.id) = nb.weight / (s.measure_roots[v] * s.measure_roots[nb.id]);
        }
        sym(v, v) = -total / g.measure(v);
    }
    auto eig = jacobi_eigen(std::move(sym));
    s.eigenvalues = std::move(eig.values);
    s.eigenvectors = std::move(eig.vectors);
    return s;
}

VertexFunction semigroup_apply(const SpectralData& s, double t, std::span<const double> f) {
    if (t < 0.0) throw ParameterError("semigroup_apply: t must be >= 0");
    const std::size_t n = s.measure_roots.size();
    if (f.size() != n) throw ParameterError("semigroup_apply: function size mismatch");
    if (t == 0.0) return VertexFunction(f.begin(), f.end());
    std::vector<double> coeff(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double c = 0.0;
        for (std::size_t v = 0; v < n; ++v) c += s.eigenvectors(v, k) * s.measure_roots[v] * f[v];
        coeff[k] = c * std::exp(t * s.eigenvalues[k]);
    }
    VertexFunction out(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += s.eigenvectors(v, k) * coeff[k];
        out[v] = acc / s.measure_roots[v];
    }
    return out;
}

double heat_kernel(const SpectralData& s, double t, VertexId x, VertexId y) {
    if (!(t > 0.0)) throw ParameterError("heat_kernel: t must be > 0");
    const std::size_t n = s.measure_roots.size();
    if (x >= n || y >= n) throw ParameterError("heat_kernel: unknown vertex");
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        acc += s.eigenvectors(x, k) * s.eigenvectors(y, k) * std::exp(t * s.eigenvalues[k]);
    return acc / (s.measure_roots[x] * s.measure_roots[y]);
}

Matrix transition_matrix(const SpectralData& s, double t) {
    const std::size_t n = s.measure_roots.size();
    Matrix p(n, n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            p(x, y) = heat_kernel(s, t, x, y) * s.measure_roots[y] * s.measure_roots[y];
    return p;
}

double residual_scale(double lhs, double rhs) { return 1.0 + std::abs(lhs) + std::abs(rhs); }

namespace {

VerifierRow make_row(std::string check, double lhs, double rhs, double allowed, double quad_err = 0.0) {
    VerifierRow r;
    r.check = std::move(check);
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = rhs - lhs;
    r.allowed = allowed;
    r.quadrature_error = quad_err;
    r.pass = r.residual >= -allowed;
    return r;
}

// (1 - e^{-2Kt}) / K, continuous at K = 0.
double damping(double k, double t) {
    if (k == 0.0) return 2.0 * t;
    return -std::expm1(-2.0 * k * t) / k;
}

void check_size(const WeightedGraph& g, std::span<const double> f) {
    if (f.size() != g.size()) throw ParameterError("function size does not match graph");
}

}  // namespace

VerifierRow verify_gradient_bound(const WeightedGraph& g, const SpectralData& s, const CurvatureProfile& profile,
                                  double k, std::span<const double> f, double t, VertexId x) {
    g.check_vertex(x);
    check_size(g, f);
    if (t < 0.0) throw ParameterError("gradient bound: t must be >= 0");
    if (k > profile.min_value() + profile.tau_cd)
        throw HypothesisError("gradient bound: CD(K, N) fails, K exceeds the minimal curvature");

    const auto pt_f = semigroup_apply(s, t, f);
    const auto pt_gamma = semigroup_apply(s, t, gamma_sq(g, f));
    const double lhs = gamma_sq_at(g, pt_f, x);
    const double lap = laplacian_at(g, pt_f, x);
    const double rhs = std::exp(-2.0 * k * t) * pt_gamma[x] - damping(k, t) * profile.n.inverse() * lap * lap;
    return make_row("lmp16", lhs, rhs, kResidualTol * residual_scale(lhs, rhs));
}

VerifierRow verify_refined_gradient_bound(const WeightedGraph& g, const SpectralData& s,
                                          const CurvatureProfile& profile, double k, double k0,
                                          std::span<const double> f, double big_t, VertexId x) {
    g.check_vertex(x);
    check_size(g, f);
    if (!(k > 0.0) || k0 < 0.0) throw ParameterError("refined gradient bound: need K > 0 and K0 >= 0");
    if (big_t < 0.0) throw ParameterError("refined gradient bound: T must be >= 0");
    if (-k0 > profile.min_value() + profile.tau_cd)
        throw HypothesisError("refined gradient bound: CD(-K0, N) fails somewhere");
    if (profile.k_pos && k > *profile.k_pos + profile.tau_cd)
        throw HypothesisError("refined gradient bound: CD(K, N) fails outside V0");

    const auto pt_f = semigroup_apply(s, big_t, f);
    const auto gamma_f = gamma_sq(g, f);
    const auto pt_gamma = semigroup_apply(s, big_t, gamma_f);
    const double lhs = gamma_sq_at(g, pt_f, x);
    const double lap = laplacian_at(g, pt_f, x);
    const double sup_gamma = *std::max_element(gamma_f.begin(), gamma_f.end());

    // P_s 1_{V0}(x) = sum_k c_k e^{lambda_k s}.
    const std::size_t n = g.size();
    const auto ind = profile.v0.indicator(n);
    std::vector<double> c(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double proj = 0.0;
        for (std::size_t v = 0; v < n; ++v) proj += s.eigenvectors(v, j) * s.measure_roots[v] * ind[v];
        c[j] = proj * s.eigenvectors(x, j) / s.measure_roots[x];
    }
    const double rate = 2.0 * (k + k0);
    auto integrand = [&](double u) {
        double ps = 0.0;
        for (std::size_t j = 0; j < n; ++j) ps += c[j] * std::exp(s.eigenvalues[j] * u);
        return std::exp(-rate * u) * ps;
    };
    const auto quad = composite_simpson(integrand, 0.0, big_t);
    const double prefactor = 2.0 * (k0 + k) * sup_gamma * std::exp(2.0 * k0 * big_t);

    const double rhs = std::exp(-2.0 * k * big_t) * pt_gamma[x] -
                       damping(k, big_t) * profile.n.inverse() * lap * lap + prefactor * quad.value;
    const double quad_err = prefactor * quad.error;
    return make_row("sgc", lhs, rhs, (kResidualTol + quad_err) * residual_scale(lhs, rhs), quad_err);
}

VerifierRow verify_pt1(const WeightedGraph& g, const SpectralData& s, const CurvatureProfile& profile,
                       double k0, const VertexSet& w, const MetricTable& rho, VertexId x, double t, double r) {
    g.check_vertex(x);
    if (w.empty()) throw ParameterError("pt1: W must be nonempty");
    if (t < 0.0) throw ParameterError("pt1: t must be >= 0");
    if (profile.n.is_infinite()) throw ParameterError("pt1: needs finite N");
    if (k0 < 0.0) throw ParameterError("pt1: K0 must be >= 0");
    if (!(r > 0.0)) throw HypothesisError("pt1: R must be > 0 (x must lie outside W)");
    if (!rho.is_intrinsic()) throw HypothesisError("pt1: metric is not intrinsic");
    if (r > rho_distance_to_set(rho, x, w) + 1e-12)
        throw HypothesisError("pt1: R exceeds rho(x, W)");
    if (-k0 > profile.min_value() + profile.tau_cd) throw HypothesisError("pt1: CD(-K0, N) fails somewhere");

    const double lhs = semigroup_apply(s, t, w.indicator(g.size()))[x];
    const double rhs = std::sqrt(profile.n.value()) / r * (t * std::sqrt(k0) + std::sqrt(2.0 * t));
    return make_row("pt1", lhs, rhs, kResidualTol);
}

}  // namespace curvkit
