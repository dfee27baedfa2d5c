#include "curvkit/curvature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "curvkit/errors.hpp"
#include "curvkit/linalg.hpp"

namespace curvkit {

ExtendedReal curvature_from_forms(const LocalForms& lf) {
    const std::size_t n1 = lf.inner();
    const std::size_t n2 = lf.outer();
    if (n1 == 0) return ExtendedReal::infinity();

    // Minimizing over the s2 coordinates leaves the Schur complement
    // S = Q11 - Q12 Q22^{-1} Q21; Q22 is diagonal by construction.
    Matrix s = lf.q11();
    std::vector<double> q22_diag(n2);
    for (std::size_t k = 0; k < n2; ++k) {
        const double d = lf.q(n1 + k, n1 + k);
        if (!(d > 0.0)) throw ConvergenceError("local forms: Q22 not positive definite");
        q22_diag[k] = d;
        for (std::size_t l = 0; l < n2; ++l)
            if (l != k && lf.q(n1 + k, n1 + l) != 0.0)
                throw ConvergenceError("local forms: Q22 not diagonal");
    }
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n2; ++k) acc += lf.q(i, n1 + k) * lf.q(j, n1 + k) / q22_diag[k];
            s(i, j) -= acc;
        }

    // K = lambda_min(B^{-1/2} S B^{-1/2}).
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) s(i, j) /= std::sqrt(lf.b_diag[i] * lf.b_diag[j]);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = i + 1; j < n1; ++j) {
            const double avg = 0.5 * (s(i, j) + s(j, i));
            s(i, j) = s(j, i) = avg;
        }
    return ExtendedReal(min_eigenvalue(s));
}

ExtendedReal curvature_at(const WeightedGraph& g, VertexId x, Dimension n) {
    return curvature_from_forms(local_forms(g, x, n));
}

bool cd_holds(const WeightedGraph& g, VertexId x, double k, Dimension n, double tau_cd) {
    const auto kx = curvature_at(g, x, n);
    return kx.is_infinite() || k <= kx.value() + tau_cd;
}

double CurvatureProfile::min_value() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& v : values) m = std::min(m, v.as_double());
    return m;
}

unsigned worker_threads() {
    unsigned n = std::max(1U, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("CURV_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

CurvatureProfile curvature_profile(const WeightedGraph& g, Dimension n, double tau_cd) {
    require_connected(g, "curvature_profile");
    if (!(tau_cd > 0.0)) throw ParameterError("tau_cd must be > 0");

    CurvatureProfile p;
    p.n = n;
    p.tau_cd = tau_cd;
    p.values.resize(g.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t v; (v = next.fetch_add(1)) < g.size();) {
            try {
                p.values[v] = curvature_at(g, v, n);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const unsigned threads = std::min<unsigned>(worker_threads(), static_cast<unsigned>(g.size()));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<VertexId> v0;
    double kmin = std::numeric_limits<double>::infinity();
    for (VertexId v = 0; v < g.size(); ++v) {
        const double k = p.values[v].as_double();
        if (k <= tau_cd) {
            v0.push_back(v);
        } else {
            p.k_pos = std::min(p.k_pos.value_or(std::numeric_limits<double>::infinity()), k);
        }
        kmin = std::min(kmin, k);
    }
    p.v0 = VertexSet(std::move(v0));
    p.k_neg = std::isfinite(kmin) ? std::max(0.0, -kmin) : 0.0;
    return p;
}

DimensionShiftReport dimension_shift_check(const WeightedGraph& g, double s, double tau_cd) {
    if (!(s > 0.0)) throw ParameterError("dimension shift: s must be > 0");
    const double deg_max = max_degree(g);
    if (!(deg_max > 0.0)) throw StructuralError("dimension shift: edgeless graph");

    DimensionShiftReport r;
    r.s = s;
    r.shifted_n = 2.0 * deg_max / s;
    r.worst_margin = std::numeric_limits<double>::infinity();
    for (VertexId x = 0; x < g.size(); ++x) {
        const auto k_inf = curvature_at(g, x, Dimension::infinite());
        const auto k_fin = curvature_at(g, x, Dimension(r.shifted_n));
        if (k_inf.is_infinite()) continue;
        const double margin = k_fin.value() - (k_inf.value() - s);
        if (margin < r.worst_margin) {
            r.worst_margin = margin;
            r.worst_vertex = x;
        }
    }
    r.holds = r.worst_margin >= -tau_cd;
    return r;
}

}  // namespace curvkit
