#include "curvkit/local_calculus.hpp"

#include <algorithm>
#include <unordered_map>

#include "curvkit/errors.hpp"

namespace curvkit {

double laplacian_at(const WeightedGraph& g, std::span<const double> f, VertexId x) {
    g.check_vertex(x);
    double s = 0.0;
    for (const auto& n : g.neighbors(x)) s += n.weight * (f[n.id] - f[x]);
    return s / g.measure(x);
}

VertexFunction laplacian(const WeightedGraph& g, std::span<const double> f) {
    VertexFunction out(g.size());
    for (VertexId v = 0; v < g.size(); ++v) out[v] = laplacian_at(g, f, v);
    return out;
}

double gamma_at(const WeightedGraph& g, std::span<const double> f, std::span<const double> h, VertexId x) {
    g.check_vertex(x);
    double s = 0.0;
    for (const auto& n : g.neighbors(x)) s += n.weight * (f[n.id] - f[x]) * (h[n.id] - h[x]);
    return s / (2.0 * g.measure(x));
}

double gamma_sq_at(const WeightedGraph& g, std::span<const double> f, VertexId x) {
    return gamma_at(g, f, f, x);
}

VertexFunction gamma_sq(const WeightedGraph& g, std::span<const double> f) {
    VertexFunction out(g.size());
    for (VertexId v = 0; v < g.size(); ++v) out[v] = gamma_sq_at(g, f, v);
    return out;
}

double gamma2_at(const WeightedGraph& g, std::span<const double> f, VertexId x) {
    g.check_vertex(x);
    // Gamma(f) and Delta f are needed on B_1(x) only.
    const double gamma_x = gamma_sq_at(g, f, x);
    const double lap_x = laplacian_at(g, f, x);
    double lap_gamma = 0.0;
    double cross = 0.0;
    for (const auto& n : g.neighbors(x)) {
        lap_gamma += n.weight * (gamma_sq_at(g, f, n.id) - gamma_x);
        cross += n.weight * (f[n.id] - f[x]) * (laplacian_at(g, f, n.id) - lap_x);
    }
    lap_gamma /= g.measure(x);
    cross /= 2.0 * g.measure(x);
    return 0.5 * lap_gamma - cross;
}

// --- local forms -------------------------------------------------------------

Matrix LocalForms::q11() const {
    Matrix m(inner(), inner());
    for (std::size_t i = 0; i < inner(); ++i)
        for (std::size_t j = 0; j < inner(); ++j) m(i, j) = q(i, j);
    return m;
}

Matrix LocalForms::q12() const {
    Matrix m(inner(), outer());
    for (std::size_t i = 0; i < inner(); ++i)
        for (std::size_t j = 0; j < outer(); ++j) m(i, j) = q(i, inner() + j);
    return m;
}

Matrix LocalForms::q22() const {
    Matrix m(outer(), outer());
    for (std::size_t i = 0; i < outer(); ++i)
        for (std::size_t j = 0; j < outer(); ++j) m(i, j) = q(inner() + i, inner() + j);
    return m;
}

VertexFunction LocalForms::embed(std::span<const double> local, std::size_t graph_size) const {
    VertexFunction f(graph_size, 0.0);
    for (std::size_t i = 0; i < s1.size(); ++i) f[s1[i]] = local[i];
    for (std::size_t i = 0; i < s2.size(); ++i) f[s2[i]] = local[s1.size() + i];
    return f;
}

std::vector<double> LocalForms::restrict(std::span<const double> f) const {
    std::vector<double> local;
    local.reserve(dim());
    for (VertexId v : s1) local.push_back(f[v] - f[center]);
    for (VertexId v : s2) local.push_back(f[v] - f[center]);
    return local;
}

LocalForms local_forms(const WeightedGraph& g, VertexId x, Dimension n) {
    g.check_vertex(x);
    LocalForms lf;
    lf.center = x;
    lf.n = n;

    for (const auto& nb : g.neighbors(x)) lf.s1.push_back(nb.id);
    std::unordered_map<VertexId, std::size_t> slot;
    for (std::size_t i = 0; i < lf.s1.size(); ++i) slot.emplace(lf.s1[i], i);
    for (VertexId y : lf.s1)
        for (const auto& nb : g.neighbors(y))
            if (nb.id != x && !slot.contains(nb.id) &&
                std::find(lf.s2.begin(), lf.s2.end(), nb.id) == lf.s2.end())
                lf.s2.push_back(nb.id);
    std::sort(lf.s2.begin(), lf.s2.end());
    for (std::size_t i = 0; i < lf.s2.size(); ++i) slot.emplace(lf.s2[i], lf.s1.size() + i);

    const double mx = g.measure(x);
    const double deg_x = degree(g, x);
    const std::size_t n1 = lf.s1.size();
    lf.q = Matrix(lf.dim(), lf.dim());
    Matrix& q = lf.q;

    for (std::size_t i = 0; i < n1; ++i) {
        const double wxy = g.weight(x, lf.s1[i]);
        lf.b_diag.push_back(wxy / (2.0 * mx));
        lf.delta_row.push_back(wxy / mx);
    }

    for (std::size_t i = 0; i < n1; ++i) {
        const VertexId y = lf.s1[i];
        const double wxy = g.weight(x, y);
        const double my = g.measure(y);

        // 1/2 Delta Gamma(f)(x): -1/2 Deg(x) Gamma(f)(x) part.
        q(i, i) -= deg_x * wxy / (4.0 * mx);

        for (const auto& nb : g.neighbors(y)) {
            const double wyz = nb.weight;
            // 1/2 Delta Gamma(f)(x): (w_xy w_yz / 4 m_x m_y) (f(z) - f(y))^2.
            const double c = wxy * wyz / (4.0 * mx * my);
            // -Gamma(f, Delta f)(x): -(w_xy w_yz / 2 m_x m_y) f(y) (f(z) - f(y)).
            const double a = wxy * wyz / (2.0 * mx * my);
            q(i, i) += c + a;
            if (nb.id == x) continue;
            const std::size_t k = slot.at(nb.id);
            q(k, k) += c;
            q(i, k) -= c + 0.5 * a;
            q(k, i) -= c + 0.5 * a;
        }
    }

    // +1/2 (Delta f(x))^2 from Gamma(f, Delta f(x)), minus the dimension term.
    const double rank_one = 0.5 - n.inverse();
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j) q(i, j) += rank_one * lf.delta_row[i] * lf.delta_row[j];

    return lf;
}

}  // namespace curvkit
