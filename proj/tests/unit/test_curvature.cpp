#include <doctest.h>

#include <cmath>
#include <random>

#include "curvkit/curvature.hpp"
#include "curvkit/graph.hpp"
#include "oracles/curvature_oracle.hpp"
#include "oracles/random_graphs.hpp"

using namespace curvkit;

namespace {

WeightedGraph e2() { return load_graph_string("a b 1\n", GraphFormat::edge_list, MeasureMode::counting); }

WeightedGraph rescaled(const WeightedGraph& g, double cw, double cm) {
    WeightedGraph::Builder b;
    for (const auto& name : g.names()) b.add_vertex(name);
    for (VertexId x = 0; x < g.size(); ++x) {
        for (const auto& nb : g.neighbors(x))
            if (x < nb.id) b.add_edge(g.name(x), g.name(nb.id), cw * nb.weight);
        b.set_measure(g.name(x), cm * g.measure(x));
    }
    return std::move(b).build(MeasureMode::explicit_);
}

const Dimension kDims[] = {Dimension(1), Dimension(2), Dimension(5), Dimension::infinite()};

}  // namespace

TEST_CASE("E2 closed form") {
    const auto g = e2();
    CHECK(curvature_at(g, 0, Dimension::infinite()).value() == doctest::Approx(2.0).epsilon(1e-12));
    for (double n : {1.0, 2.0, 5.0, 7.5})
        CHECK(std::abs(curvature_at(g, 0, Dimension(n)).value() - 2.0 * (1.0 - 1.0 / n)) <= 1e-9);
}

TEST_CASE("isolated vertex has infinite curvature") {
    WeightedGraph::Builder b;
    b.add_vertex("x");
    const auto g = std::move(b).build(MeasureMode::counting);
    CHECK(curvature_at(g, 0, Dimension(2)).is_infinite());
    CHECK(curvature_at(g, 0, Dimension::infinite()).is_infinite());
}

TEST_CASE("hypercube normalized gives 2/d") {
    for (int d = 1; d <= 5; ++d) {
        const auto g = generate({Family::hypercube, d, 0}, MeasureMode::normalized);
        const double k = curvature_at(g, 0, Dimension::infinite()).value();
        CHECK(k == doctest::Approx(2.0 / d).epsilon(1e-10));
        if (d <= 3) CHECK(oracle::brute_force_curvature(g, 0, Dimension::infinite()).value() ==
                          doctest::Approx(2.0 / d).epsilon(1e-7));
    }
}

TEST_CASE("cd_holds") {
    const auto g = e2();
    CHECK(cd_holds(g, 0, 2.0, Dimension::infinite()));
    CHECK_FALSE(cd_holds(g, 0, 2.1, Dimension::infinite()));
    const auto c = generate(parse_generator("cycle:7"), MeasureMode::counting);
    for (VertexId x = 0; x < c.size(); ++x) CHECK(cd_holds(c, x, -1e6, Dimension::infinite()));
}

TEST_CASE("profiles") {
    const auto g = e2();
    const auto p = curvature_profile(g, Dimension::infinite());
    CHECK(p.values[0].value() == doctest::Approx(2.0));
    CHECK(p.values[1].value() == doctest::Approx(2.0));
    CHECK(p.v0.empty());
    REQUIRE(p.k_pos);
    CHECK(*p.k_pos == doctest::Approx(2.0));
    CHECK(p.k_neg == 0.0);

    const auto p1 = curvature_profile(g, Dimension(1));
    CHECK(std::abs(p1.values[0].value()) < 1e-12);
    CHECK(p1.v0 == VertexSet({0, 1}));
    CHECK(p1.all_nonpositive());
    CHECK_FALSE(p1.k_pos);

    const auto q2 = generate(parse_generator("hypercube:2"), MeasureMode::normalized);
    const auto pq = curvature_profile(q2, Dimension::infinite());
    for (const auto& v : pq.values) CHECK(v.value() == doctest::Approx(pq.values[0].value()).epsilon(1e-12));
    CHECK(pq.v0.empty());

    WeightedGraph::Builder b;
    b.add_vertex("x");
    b.add_vertex("y");
    CHECK_THROWS_AS(curvature_profile(std::move(b).build(MeasureMode::counting), Dimension(2)), StructuralError);
}

TEST_CASE("bridge profile has nonpositively curved vertices") {
    for (int l = 1; l <= 4; ++l) {
        const auto g = generate({Family::bridge, 2, l}, MeasureMode::counting);
        const auto p = curvature_profile(g, Dimension::infinite());
        CHECK_FALSE(p.v0.empty());
        CHECK(p.k_pos);
        CHECK(p.k_neg > 0.0);
        CHECK(p.v0.contains(g.id("L00")));
    }
}

TEST_CASE("dimension shift") {
    const auto r = dimension_shift_check(e2(), 1.0);
    CHECK(r.shifted_n == doctest::Approx(2.0));
    CHECK(r.worst_margin == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.holds);

    const auto q2 = generate(parse_generator("hypercube:2"), MeasureMode::normalized);
    // equality case up to rounding
    CHECK(dimension_shift_check(q2, 0.5).worst_margin >= -1e-12);
    CHECK_THROWS_AS(dimension_shift_check(q2, 0.0), ParameterError);

    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 5; ++rep) {
        const auto g = testing::random_connected_graph(rng, 10, 0.3);
        for (double s : {0.25, 0.5, 1.0, 3.0}) CHECK(dimension_shift_check(g, s).worst_margin >= -kDefaultTauCd);
    }
}

TEST_CASE("curvature is monotone in N") {
    std::vector<WeightedGraph> graphs;
    for (const char* s : {"path:4", "cycle:5", "complete:4", "hypercube:3", "bridge:2,2"})
        for (auto mode : {MeasureMode::counting, MeasureMode::normalized})
            graphs.push_back(generate(parse_generator(s), mode));
    std::mt19937_64 rng(43);
    graphs.push_back(testing::random_connected_graph(rng, 10, 0.3));
    for (const auto& g : graphs)
        for (VertexId x = 0; x < g.size(); ++x)
            for (std::size_t i = 1; i < std::size(kDims); ++i)
                CHECK(curvature_at(g, x, kDims[i - 1]).value() <= curvature_at(g, x, kDims[i]).value() + 1e-12);
}

TEST_CASE("scaling covariance") {
    std::mt19937_64 rng(47);
    for (int rep = 0; rep < 5; ++rep) {
        const auto g = testing::random_connected_graph(rng, 9, 0.3);
        const double c = 0.5 + rep;
        const auto gw = rescaled(g, c, 1.0);
        const auto gwm = rescaled(g, c, c);
        for (VertexId x = 0; x < g.size(); ++x)
            for (const auto& n : kDims) {
                const double k = curvature_at(g, x, n).value();
                CHECK(std::abs(curvature_at(gw, x, n).value() - c * k) <= 1e-9 * (1.0 + std::abs(c * k)));
                CHECK(std::abs(curvature_at(gwm, x, n).value() - k) <= 1e-9 * (1.0 + std::abs(k)));
            }
    }
}

TEST_CASE("oracle equivalence on random weighted graphs") {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 4; ++rep) {
        const auto g = testing::random_connected_graph(rng, 7, 0.35);
        for (VertexId x = 0; x < g.size(); ++x)
            for (const auto& n : kDims) {
                const double fast = curvature_at(g, x, n).value();
                const double slow = oracle::brute_force_curvature(g, x, n).value();
                CHECK(std::abs(fast - slow) <= 1e-7 * (1.0 + std::abs(slow)));
            }
    }
}

TEST_CASE("worker threads respect the environment cap") {
    CHECK(worker_threads() >= 1u);
}
