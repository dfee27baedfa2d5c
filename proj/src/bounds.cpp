#include "curvkit/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "curvkit/errors.hpp"

namespace curvkit {

namespace {

double simpson_rule(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

double adaptive_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_rule(fa, flm, fm, m - a);
    const double right = simpson_rule(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(what) + " must be > 0");
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
    if (b <= a) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    // Split once up front so a vanishing midpoint cannot stop refinement early.
    const double m = 0.5 * (a + b);
    const double flm = f(0.5 * (a + m));
    const double frm = f(0.5 * (m + b));
    const double left = simpson_rule(fa, flm, fm, m - a);
    const double right = simpson_rule(fm, frm, fb, b - m);
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, max_depth) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, max_depth);
}

double h_upper_estimate(double k, double k0, double big_t) {
    const double a = k0 + k;
    return std::exp(2.0 * k0 * big_t) * 0.5 * (std::sqrt(k0) / a + std::sqrt(std::numbers::pi / a));
}

double h_function(double k, double k0, double big_t) {
    require_positive(k, "H: K");
    if (k0 < 0.0) throw ParameterError("H: K0 must be >= 0");
    if (big_t < 0.0) throw ParameterError("H: T must be >= 0");
    if (big_t == 0.0) return 0.0;
    const double a = k0 + k;
    const double sqrt_k0 = std::sqrt(k0);
    // s = u^2 removes the sqrt(s) endpoint behaviour.
    auto integrand = [&](double u) {
        const double s = u * u;
        return std::exp(2.0 * k0 * big_t - 2.0 * a * s) * (s * sqrt_k0 + std::numbers::sqrt2 * u) * 2.0 * u;
    };
    const double magnitude = std::max(h_upper_estimate(k, k0, big_t) / (2.0 * a), 1e-300);
    return 2.0 * a * adaptive_simpson(integrand, 0.0, std::sqrt(big_t), 1e-13 * magnitude);
}

bool h_ratio_check(double k, double k0, double t, double big_t, double rel_slack) {
    if (!(t > 0.0)) throw ParameterError("H ratio: t must be > 0");
    if (t >= big_t) throw ParameterError("H ratio: need t < T");
    const double lhs = h_function(k, k0, t);
    const double rhs = std::exp(2.0 * k0 * (t - big_t)) * h_function(k, k0, big_t);
    return lhs <= rhs * (1.0 + rel_slack);
}

double bound_case_i(double deg_max, double k0) {
    require_positive(deg_max, "Deg_max");
    require_positive(k0, "K0");
    return 2.0 * std::sqrt(2.0 * deg_max) / k0;
}

double bound_case_ii(double n, double k0) {
    require_positive(n, "N");
    require_positive(k0, "K0");
    return std::numbers::pi * std::sqrt(n / k0);
}

double bound_case_iii(double deg_max, double k, double k0) {
    require_positive(deg_max, "Deg_max");
    require_positive(k, "K");
    require_positive(k0, "K0");
    return 1.0 + 18.2 * std::numbers::sqrt2 * std::exp(4.0 * k0 / k) * deg_max / std::sqrt(k * k0);
}

double bound_corollary(double deg_max, double k, double k0) {
    require_positive(deg_max, "Deg_max");
    require_positive(k, "K");
    require_positive(k0, "K0");
    return 1.0 + 26.0 * std::exp(4.0 * k0 / k) * deg_max / std::sqrt(k * k0);
}

double bound_case_iv(double r_rho, double n, double k, double k0) {
    require_positive(r_rho, "R_rho");
    require_positive(n, "N");
    require_positive(k, "K");
    require_positive(k0, "K0");
    return r_rho + 18.2 * std::exp(2.0 * k0 / k) * std::sqrt(n / (k + k0));
}

double tube_radius_estimate(double k, double k0, double n, double r_rho, double big_t, double sep_r) {
    require_positive(k, "K");
    require_positive(n, "N");
    require_positive(big_t, "T");
    require_positive(sep_r, "R");
    if (k0 < 0.0) throw ParameterError("K0 must be >= 0");
    const double root_n = std::sqrt(n);
    const double a = std::exp(-2.0 * k * big_t) + root_n * h_function(k, k0, big_t) / sep_r;
    if (a >= 1.0) return std::numeric_limits<double>::infinity();

    // t = u^2; the 1/sqrt(t) singularity becomes the finite limit sqrt(2N) at u = 0.
    auto integrand = [&](double u) {
        if (u == 0.0) return std::sqrt(2.0 * n);
        const double t = u * u;
        const double grad = std::exp(-2.0 * k * t) + root_n * h_function(k, k0, t) / sep_r;
        return std::sqrt(grad) * 2.0 * u * std::sqrt(k * n / -std::expm1(-2.0 * k * t));
    };
    const double numerator = 2.0 * adaptive_simpson(integrand, 0.0, std::sqrt(big_t), 1e-9 * std::sqrt(n / k), 30);
    return r_rho + sep_r + numerator / (1.0 - std::sqrt(a));
}

RadiusSweep radius_sweep(double k, double k0, double n, double r_rho) {
    RadiusSweep out;
    out.default_t = 1.0 / k;
    out.default_r = 4.0 * std::sqrt(n) * h_function(k, k0, out.default_t);
    out.default_radius = tube_radius_estimate(k, k0, n, r_rho, out.default_t, out.default_r);
    out.best_t = out.default_t;
    out.best_r = out.default_r;
    out.best_radius = out.default_radius;
    for (double ct : {0.25, 0.5, 1.0, 2.0, 4.0})
        for (double cr : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const double t = ct * out.default_t;
            const double r = cr * out.default_r;
            const double radius = tube_radius_estimate(k, k0, n, r_rho, t, r);
            if (radius < out.best_radius) {
                out.best_radius = radius;
                out.best_t = t;
                out.best_r = r;
            }
        }
    return out;
}

std::string_view to_string(TheoremCase c) {
    switch (c) {
        case TheoremCase::i: return "i";
        case TheoremCase::ii: return "ii";
        case TheoremCase::iii: return "iii";
        case TheoremCase::iv: return "iv";
        case TheoremCase::vacuous: return "vacuous";
    }
    return "?";
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

Certificate check_main_theorem(const WeightedGraph& g, Dimension n, MetricKind kind, const TheoremOptions& opts) {
    switch (kind) {
        case MetricKind::huang: return check_main_theorem(g, n, huang_metric(g), opts);
        case MetricKind::scaled_combinatorial: return check_main_theorem(g, n, scaled_combinatorial_metric(g), opts);
        default: throw ParameterError("main theorem: custom and resistance metrics need an explicit table");
    }
}

Certificate check_main_theorem(const WeightedGraph& g, Dimension n, MetricTable metric, const TheoremOptions& opts) {
    require_connected(g, "check_main_theorem");
    if (metric.size() != g.size()) throw ParameterError("metric table does not match graph");
    if (!metric.intrinsic_margin()) intrinsic_check(g, metric);

    const auto profile = curvature_profile(g, n, opts.tau_cd);
    Certificate c;
    c.graph = g.label();
    c.n = n;
    c.metric = metric.kind();
    c.deg_max = max_degree(g);
    c.k_neg = profile.k_neg;
    c.r_rho = jump_size(g, metric);
    c.intrinsic_margin = *metric.intrinsic_margin();
    for (VertexId v : profile.v0.ids()) c.v0.push_back(g.name(v));
    c.decisions["tau_cd"] = fmt(opts.tau_cd);
    c.decisions["constants"] = "K = min curvature off V0, K0 = max(0, -min curvature)";
    c.decisions["pass_rule"] = "empirical <= bound + " + fmt(kCertificateTol);

    if (profile.all_nonpositive()) {
        c.which = TheoremCase::vacuous;
        c.pass = true;
        c.notes.push_back("every vertex has K_x(N) <= 0; the theorem is vacuous");
        return c;
    }
    const double k_pos = *profile.k_pos;
    const bool v0_empty = profile.v0.empty();

    auto require_intrinsic = [&] {
        if (!metric.is_intrinsic()) {
            c.hypotheses_ok = false;
            c.notes.push_back("metric is not intrinsic (margin " + fmt(c.intrinsic_margin) + ")");
        }
    };

    if (v0_empty) {
        // Diameter bounds: K0 is the global positive lower curvature bound.
        c.which = n.is_infinite() ? TheoremCase::i : TheoremCase::ii;
        c.k = k_pos;
        c.k0 = k_pos;
        c.bound = n.is_infinite() ? bound_case_i(c.deg_max, k_pos) : bound_case_ii(n.value(), k_pos);
        require_intrinsic();
        for (VertexId x = 0; x < g.size(); ++x) {
            double ecc = 0.0;
            for (VertexId y = 0; y < g.size(); ++y) ecc = std::max(ecc, metric(x, y));
            c.per_vertex.push_back({g.name(x), ecc, c.bound, c.bound - ecc});
        }
        c.empirical = diameter_under(metric);
    } else if (n.is_infinite()) {
        c.which = TheoremCase::iii;
        c.k = k_pos;
        // Any K0 >= K_neg satisfies CD(-K0, inf); the bound is minimized at K0 = K/8.
        c.k0 = std::max(profile.k_neg, k_pos / 8.0);
        c.decisions["k0_choice"] = "K0 = max(K_neg, K/8), the admissible value minimizing the bound";
        c.bound = bound_case_iii(c.deg_max, k_pos, c.k0);
        c.bound_corollary = bound_corollary(c.deg_max, k_pos, c.k0);
        c.notes.push_back("distance to V0 measured combinatorially");
        const auto hops = combinatorial_metric(g);
        for (VertexId x = 0; x < g.size(); ++x) {
            const double d = rho_distance_to_set(hops, x, profile.v0);
            c.per_vertex.push_back({g.name(x), d, c.bound, c.bound - d});
            c.empirical = std::max(c.empirical, d);
        }
    } else {
        c.which = TheoremCase::iv;
        c.k = k_pos;
        c.k0 = profile.k_neg;
        if (c.k0 == 0.0) {
            // The bound increases with K0 and the hypotheses hold for every
            // K0 > 0, so the K0 -> 0 limit is valid.
            c.decisions["k0_choice"] = "K_neg = 0: bound evaluated at the K0 -> 0+ limit";
        }
        require_intrinsic();
        if (!(c.r_rho > 0.0)) {
            c.hypotheses_ok = false;
            c.notes.push_back("jump size must be positive");
        }
        c.bound = c.r_rho + 18.2 * std::exp(2.0 * c.k0 / k_pos) * std::sqrt(n.value() / (k_pos + c.k0));
        for (VertexId x = 0; x < g.size(); ++x) {
            const double d = rho_distance_to_set(metric, x, profile.v0);
            c.per_vertex.push_back({g.name(x), d, c.bound, c.bound - d});
            c.empirical = std::max(c.empirical, d);
        }
    }
    c.slack = c.bound - c.empirical;
    c.pass = c.hypotheses_ok && c.empirical <= c.bound + kCertificateTol;
    return c;
}

}  // namespace curvkit
