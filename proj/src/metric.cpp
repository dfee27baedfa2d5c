#include "curvkit/metric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <queue>

#include <json.hpp>

#include "curvkit/errors.hpp"
#include "curvkit/local_calculus.hpp"

namespace curvkit {

MetricKind parse_metric_kind(std::string_view s) {
    if (s == "huang") return MetricKind::huang;
    if (s == "scaled-combinatorial") return MetricKind::scaled_combinatorial;
    if (s == "resistance") return MetricKind::resistance;
    if (s == "custom") return MetricKind::custom;
    throw ParseError("unknown metric kind '" + std::string(s) + "'");
}

std::string_view to_string(MetricKind k) {
    switch (k) {
        case MetricKind::huang: return "huang";
        case MetricKind::scaled_combinatorial: return "scaled-combinatorial";
        case MetricKind::resistance: return "resistance";
        case MetricKind::custom: return "custom";
    }
    return "?";
}

MetricTable::MetricTable(MetricKind kind, Matrix dist) : kind_(kind), dist_(std::move(dist)) {
    if (dist_.rows() != dist_.cols()) throw ParameterError("metric table must be square");
}

double jump_size(const WeightedGraph& g, const MetricTable& t) {
    double j = 0.0;
    for (VertexId v = 0; v < g.size(); ++v)
        for (const auto& n : g.neighbors(v)) j = std::max(j, t(v, n.id));
    return j;
}

double intrinsic_check(const WeightedGraph& g, MetricTable& t) {
    if (t.size() != g.size()) throw ParameterError("metric table does not match graph size");
    double margin = 0.0;
    std::vector<double> row(g.size());
    for (VertexId x = 0; x < g.size(); ++x) {
        for (VertexId v = 0; v < g.size(); ++v) row[v] = t(x, v);
        for (VertexId z = 0; z < g.size(); ++z) margin = std::max(margin, gamma_sq_at(g, row, z));
    }
    t.set_intrinsic_margin(margin);
    t.set_jump_size(jump_size(g, t));
    return margin;
}

MetricTable huang_metric(const WeightedGraph& g) {
    require_connected(g, "huang_metric");
    const std::size_t n = g.size();
    std::vector<double> deg(n);
    for (VertexId v = 0; v < n; ++v) deg[v] = degree(g, v);

    Matrix dist(n, n, std::numeric_limits<double>::infinity());
    using Item = std::pair<double, VertexId>;
    for (VertexId s = 0; s < n; ++s) {
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist(s, s) = 0.0;
        heap.emplace(0.0, s);
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (d > dist(s, u)) continue;
            for (const auto& nb : g.neighbors(u)) {
                const double len = 1.0 / std::sqrt(std::max(deg[u], deg[nb.id]));
                if (d + len < dist(s, nb.id)) {
                    dist(s, nb.id) = d + len;
                    heap.emplace(d + len, nb.id);
                }
            }
        }
    }
    // Symmetrize away last-bit differences between the two directions.
    for (VertexId i = 0; i < n; ++i)
        for (VertexId j = i + 1; j < n; ++j) dist(i, j) = dist(j, i) = std::min(dist(i, j), dist(j, i));

    MetricTable t(MetricKind::huang, std::move(dist));
    intrinsic_check(g, t);
    return t;
}

MetricTable combinatorial_metric(const WeightedGraph& g) {
    require_connected(g, "combinatorial_metric");
    Matrix dist(g.size(), g.size());
    for (VertexId s = 0; s < g.size(); ++s) {
        const auto d = bfs_distances(g, s);
        for (VertexId v = 0; v < g.size(); ++v) dist(s, v) = static_cast<double>(d[v]);
    }
    MetricTable t(MetricKind::custom, std::move(dist));
    t.set_jump_size(jump_size(g, t));
    return t;
}

MetricTable scaled_combinatorial_metric(const WeightedGraph& g) {
    const double deg_max = max_degree(g);
    if (!(deg_max > 0.0)) throw StructuralError("scaled_combinatorial_metric: edgeless graph");
    const double scale = std::sqrt(2.0 / deg_max);
    Matrix dist = combinatorial_metric(g).matrix();
    for (VertexId i = 0; i < g.size(); ++i)
        for (VertexId j = 0; j < g.size(); ++j) dist(i, j) *= scale;
    MetricTable t(MetricKind::scaled_combinatorial, std::move(dist));
    intrinsic_check(g, t);
    return t;
}

double diameter_under(const MetricTable& t) {
    double d = 0.0;
    for (VertexId i = 0; i < t.size(); ++i)
        for (VertexId j = 0; j < t.size(); ++j) d = std::max(d, t(i, j));
    return d;
}

double rho_distance_to_set(const MetricTable& t, VertexId x, const VertexSet& set) {
    if (set.empty()) throw ParameterError("distance to an empty set");
    double d = std::numeric_limits<double>::infinity();
    for (VertexId v : set.ids()) d = std::min(d, t(x, v));
    return d;
}

VertexSet ball(const MetricTable& t, VertexId x, double r) { return tube(t, VertexSet({x}), r); }

VertexSet tube(const MetricTable& t, const VertexSet& centers, double r) {
    if (centers.empty()) throw ParameterError("tube: empty center set");
    if (r < 0.0) throw ParameterError("tube: negative radius");
    std::vector<VertexId> out;
    for (VertexId v = 0; v < t.size(); ++v)
        if (rho_distance_to_set(t, v, centers) <= r) out.push_back(v);
    return VertexSet(std::move(out));
}

// --- resistance metric ------------------------------------------------------
//
// Log-barrier path following on the gauge f(x) = 0:
//   maximize  t f(y) + sum_v log(1 - Gamma f(v)),
// with Newton centering. At each center the multipliers
// lambda_v = 1 / (t (1 - Gamma f(v))) give the dual bound
//   sum_v lambda_v + 1/4 e_y^T (sum_v lambda_v A_v)^{-1} e_y,
// where Gamma f(v) = f^T A_v f. Iteration stops once the dual bound and the
// best feasible objective are within tol. The bound holds for any positive
// multipliers, so an inexact center only loosens it.

namespace {

class BarrierProblem {
public:
    BarrierProblem(const WeightedGraph& g, VertexId x, VertexId y) : g_(g), x_(x), y_(y) {
        slot_.assign(g.size(), kNone);
        std::size_t k = 0;
        for (VertexId v = 0; v < g.size(); ++v)
            if (v != x) slot_[v] = k++;
        dim_ = k;
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }

    VertexFunction expand(std::span<const double> z) const {
        VertexFunction f(g_.size(), 0.0);
        for (VertexId v = 0; v < g_.size(); ++v)
            if (slot_[v] != kNone) f[v] = z[slot_[v]];
        return f;
    }

    [[nodiscard]] double objective(std::span<const double> z) const { return z[slot_[y_]]; }

    /// Barrier value, or -inf outside the strict interior.
    [[nodiscard]] double barrier(std::span<const double> z, double t) const {
        const auto f = expand(z);
        double s = t * objective(z);
        for (VertexId v = 0; v < g_.size(); ++v) {
            const double q = gamma_sq_at(g_, f, v);
            if (!(q < 1.0)) return -std::numeric_limits<double>::infinity();
            s += std::log1p(-q);
        }
        return s;
    }

    /// Gradient and negated Hessian of the barrier objective.
    void derivatives(std::span<const double> z, double t, std::vector<double>& grad, Matrix& neg_hess) const {
        const auto f = expand(z);
        grad.assign(dim_, 0.0);
        neg_hess = Matrix(dim_, dim_);
        grad[slot_[y_]] += t;
        std::vector<std::pair<std::size_t, double>> dq;  // sparse gradient of Gamma f(v)
        for (VertexId v = 0; v < g_.size(); ++v) {
            const double q = gamma_sq_at(g_, f, v);
            const double slack = 1.0 - q;
            const double mv = g_.measure(v);
            dq.clear();
            double dq_v = 0.0;
            for (const auto& nb : g_.neighbors(v)) {
                const double c = nb.weight / mv;
                const double diff = f[v] - f[nb.id];
                dq_v += c * diff;
                if (slot_[nb.id] != kNone) dq.emplace_back(slot_[nb.id], -c * diff);
                // Hessian of Gamma f(v): c (e_v - e_u)(e_v - e_u)^T.
                const std::size_t a = slot_[v], b = slot_[nb.id];
                if (a != kNone) neg_hess(a, a) += c / slack;
                if (b != kNone) neg_hess(b, b) += c / slack;
                if (a != kNone && b != kNone) {
                    neg_hess(a, b) -= c / slack;
                    neg_hess(b, a) -= c / slack;
                }
            }
            if (slot_[v] != kNone) dq.emplace_back(slot_[v], dq_v);
            for (const auto& [i, gi] : dq) {
                grad[i] -= gi / slack;
                for (const auto& [j, gj] : dq) neg_hess(i, j) += gi * gj / (slack * slack);
            }
        }
    }

    /// Dual objective for multipliers lambda_v = 1 / (t (1 - Gamma f(v))).
    [[nodiscard]] double dual_bound(std::span<const double> z, double t) const {
        const auto f = expand(z);
        Matrix l(dim_, dim_);
        double sum_lambda = 0.0;
        for (VertexId v = 0; v < g_.size(); ++v) {
            const double lambda = 1.0 / (t * (1.0 - gamma_sq_at(g_, f, v)));
            sum_lambda += lambda;
            const double mv = g_.measure(v);
            for (const auto& nb : g_.neighbors(v)) {
                const double c = lambda * nb.weight / (2.0 * mv);
                const std::size_t a = slot_[v], b = slot_[nb.id];
                if (a != kNone) l(a, a) += c;
                if (b != kNone) l(b, b) += c;
                if (a != kNone && b != kNone) {
                    l(a, b) -= c;
                    l(b, a) -= c;
                }
            }
        }
        std::vector<double> ey(dim_, 0.0);
        ey[slot_[y_]] = 1.0;
        const auto sol = cholesky_solve(l, ey);
        return sum_lambda + 0.25 * sol[slot_[y_]];
    }

private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    const WeightedGraph& g_;
    VertexId x_;
    VertexId y_;
    std::vector<std::size_t> slot_;
    std::size_t dim_ = 0;
};

}  // namespace

ResistanceResult resistance_metric(const WeightedGraph& g, VertexId x, VertexId y, const ResistanceOptions& opts) {
    g.check_vertex(x);
    g.check_vertex(y);
    if (!(opts.tol > 0.0)) throw ParameterError("resistance: tol must be > 0");
    require_connected(g, "resistance_metric");

    ResistanceResult res;
    res.potential.assign(g.size(), 0.0);
    if (x == y) {
        res.trace.push_back(0.0);
        return res;
    }

    BarrierProblem prob(g, x, y);
    // Warm start: half the Huang distance from x, strictly feasible since
    // that metric is intrinsic.
    const auto huang = huang_metric(g);
    std::vector<double> z;
    z.reserve(prob.dim());
    for (VertexId v = 0; v < g.size(); ++v)
        if (v != x) z.push_back(0.5 * huang(x, v));

    double best = prob.objective(z);
    VertexFunction best_f = prob.expand(z);
    res.trace.push_back(best);

    const double constraints = static_cast<double>(g.size());
    double t = 1.0;
    std::vector<double> grad;
    Matrix neg_hess;
    for (;;) {
        // Newton centering for the current t.
        for (;;) {
            if (++res.iterations > opts.max_iterations)
                throw ConvergenceError("resistance solver: iteration cap reached (best " + std::to_string(best) + ")");
            prob.derivatives(z, t, grad, neg_hess);
            const auto step = cholesky_solve(neg_hess, grad);
            double decrement = 0.0;
            for (std::size_t i = 0; i < step.size(); ++i) decrement += grad[i] * step[i];
            if (decrement < 1e-14) break;

            const double current = prob.barrier(z, t);
            double s = 1.0;
            bool accepted = false;
            std::vector<double> trial(z.size());
            for (int k = 0; k < 60 && !accepted; ++k, s *= 0.5) {
                for (std::size_t i = 0; i < z.size(); ++i) trial[i] = z[i] + s * step[i];
                const double b = prob.barrier(trial, t);
                accepted = b > current && b >= current + 0.25 * s * decrement;
            }
            // No sufficient increase: rounding dominates at this t. The dual
            // bound below is valid for any positive multipliers, so stop here.
            if (!accepted) break;
            z = trial;
            if (prob.objective(z) > best) {
                best = prob.objective(z);
                best_f = prob.expand(z);
            }
            res.trace.push_back(best);
            if (decrement < 1e-10) break;
        }

        const double upper = prob.dual_bound(z, t);
        if (upper - best <= 0.1 * opts.tol * (1.0 + std::abs(best)) || constraints / t < 1e-3 * opts.tol * (1.0 + std::abs(best))) {
            res.value = best;
            res.upper_bound = std::max(upper, best);
            res.potential = std::move(best_f);
            return res;
        }
        t *= 8.0;
    }
}

// --- JSON tables --------------------------------------------------------------

MetricTable load_metric_table(const WeightedGraph& g, std::istream& in) {
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid metric JSON: ") + e.what());
    }
    const std::size_t n = g.size();
    Matrix dist(n, n, std::numeric_limits<double>::quiet_NaN());
    for (VertexId v = 0; v < n; ++v) dist(v, v) = 0.0;
    try {
        for (const auto& e : doc.at("entries")) {
            auto name = [](const nlohmann::json& j) {
                return j.is_string() ? j.get<std::string>() : std::to_string(j.get<long long>());
            };
            const std::string us = name(e.at("u"));
            const std::string vs = name(e.at("v"));
            if (!g.contains(us) || !g.contains(vs)) throw ParseError("metric entry names unknown vertex");
            const VertexId u = g.id(us);
            const VertexId v = g.id(vs);
            const double d = e.at("d").get<double>();
            if (!(d >= 0.0) || !std::isfinite(d)) throw ParseError("metric entries must be finite and nonnegative");
            if (u == v && d != 0.0) throw ParseError("metric diagonal must be zero");
            if (!std::isnan(dist(u, v)) && dist(u, v) != d) throw ParseError("asymmetric metric entry " + us + " " + vs);
            dist(u, v) = dist(v, u) = d;
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed metric JSON: ") + e.what());
    }
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = 0; v < n; ++v)
            if (std::isnan(dist(u, v)))
                throw ParseError("metric table misses pair " + g.name(u) + " " + g.name(v));
    MetricTable t(MetricKind::custom, std::move(dist));
    t.set_jump_size(jump_size(g, t));
    return t;
}

MetricTable load_metric_table_file(const WeightedGraph& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open metric table '" + path + "'");
    return load_metric_table(g, in);
}

}  // namespace curvkit
