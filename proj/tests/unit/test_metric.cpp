#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "curvkit/errors.hpp"
#include "curvkit/metric.hpp"
#include "oracles/random_graphs.hpp"

using namespace curvkit;

namespace {

WeightedGraph e2() { return load_graph_string("a b 1\n", GraphFormat::edge_list, MeasureMode::counting); }
WeightedGraph p3() { return load_graph_string("a b 1\nb c 1\n", GraphFormat::edge_list, MeasureMode::counting); }

}  // namespace

TEST_CASE("huang metric") {
    const auto g = p3();
    auto t = huang_metric(g);
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(t(g.id("a"), g.id("b")) == doctest::Approx(h));
    CHECK(t(g.id("a"), g.id("c")) == doctest::Approx(2 * h));
    CHECK(t(0, 0) == 0.0);
    CHECK(intrinsic_check(g, t) <= 1.0 + kIntrinsicSlack);
    CHECK(t.is_intrinsic());
    CHECK(diameter_under(t) == doctest::Approx(std::sqrt(2.0)));
    CHECK(t.jump_size() == doctest::Approx(h));
}

TEST_CASE("scaled combinatorial metric") {
    const auto g = e2();
    auto t = scaled_combinatorial_metric(g);
    CHECK(t(0, 1) == doctest::Approx(std::sqrt(2.0)));
    CHECK(intrinsic_check(g, t) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(diameter_under(t) == doctest::Approx(std::sqrt(2.0)));
    CHECK(rho_distance_to_set(t, 0, VertexSet({0})) == 0.0);
    CHECK(rho_distance_to_set(t, 0, VertexSet({1})) == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(rho_distance_to_set(t, 0, VertexSet()), ParameterError);

    const auto q = generate(parse_generator("hypercube:3"), MeasureMode::counting);
    CHECK(jump_size(q, scaled_combinatorial_metric(q)) == std::sqrt(2.0 / max_degree(q)));

    WeightedGraph::Builder b;
    b.add_vertex("x");
    CHECK_THROWS_AS(scaled_combinatorial_metric(std::move(b).build(MeasureMode::counting)), StructuralError);
}

TEST_CASE("zero table has margin zero") {
    const auto g = p3();
    MetricTable t(MetricKind::custom, Matrix(3, 3, 0.0));
    CHECK(intrinsic_check(g, t) == 0.0);
}

TEST_CASE("intrinsic tables on varied graphs") {
    std::mt19937_64 rng(59);
    std::vector<WeightedGraph> graphs;
    for (const char* s : {"path:7", "cycle:8", "complete:5", "hypercube:4", "bridge:2,3"})
        for (auto mode : {MeasureMode::counting, MeasureMode::normalized})
            graphs.push_back(generate(parse_generator(s), mode));
    for (int rep = 0; rep < 4; ++rep) graphs.push_back(testing::random_connected_graph(rng, 20, 0.15));
    for (const auto& g : graphs) {
        auto h = huang_metric(g);
        auto s = scaled_combinatorial_metric(g);
        CHECK(intrinsic_check(g, h) <= 1.0 + kIntrinsicSlack);
        CHECK(intrinsic_check(g, s) <= 1.0 + kIntrinsicSlack);
    }
}

TEST_CASE("resistance metric examples") {
    const auto g = e2();
    const auto r = resistance_metric(g, 0, 1);
    CHECK(std::abs(r.value - std::sqrt(2.0)) <= 1e-6);
    CHECK(r.value <= std::sqrt(2.0) + 1e-12);
    CHECK(r.upper_bound >= std::sqrt(2.0) - 1e-12);

    const auto p = p3();
    const auto rp = resistance_metric(p, p.id("a"), p.id("c"));
    CHECK(std::abs(rp.value - 2.0) <= 1e-6);
    CHECK(resistance_metric(p, 1, 1).value == 0.0);

    // long path: the barrier parameter gets large enough for rounding to stall Newton
    const auto p8 = generate(parse_generator("path:8"), MeasureMode::counting);
    const auto r8 = resistance_metric(p8, 0, 7);
    CHECK(r8.value <= std::sqrt(50.0) + 1e-12);
    CHECK(r8.upper_bound >= std::sqrt(50.0) - 1e-12);
    CHECK(r8.upper_bound - r8.value <= 1e-6);
}

TEST_CASE("resistance dominates intrinsic tables and ascends") {
    std::mt19937_64 rng(61);
    std::vector<WeightedGraph> graphs{generate(parse_generator("cycle:5"), MeasureMode::counting),
                                      generate(parse_generator("hypercube:2"), MeasureMode::normalized),
                                      testing::random_connected_graph(rng, 6, 0.4)};
    for (const auto& g : graphs) {
        const auto h = huang_metric(g);
        const auto s = scaled_combinatorial_metric(g);
        for (VertexId x = 0; x < g.size(); ++x)
            for (VertexId y = x + 1; y < g.size(); ++y) {
                const auto r = resistance_metric(g, x, y);
                CHECK(r.value >= h(x, y) - 1e-6);
                CHECK(r.value >= s(x, y) - 1e-6);
                CHECK(r.upper_bound - r.value <= 1e-6 * (1.0 + r.value));
                for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] >= r.trace[i - 1]);
                // the potential is feasible
                double worst = 0.0;
                for (VertexId z = 0; z < g.size(); ++z) {
                    double gz = 0.0;
                    for (const auto& nb : g.neighbors(z)) {
                        const double d = r.potential[nb.id] - r.potential[z];
                        gz += nb.weight * d * d;
                    }
                    worst = std::max(worst, gz / (2.0 * g.measure(z)));
                }
                CHECK(worst <= 1.0 + 1e-12);
            }
    }
}

TEST_CASE("custom metric tables") {
    const auto g = e2();
    std::istringstream ok(R"({"entries":[{"u":"a","v":"b","d":0.5}]})");
    auto t = load_metric_table(g, ok);
    CHECK(t(0, 1) == 0.5);
    CHECK(t(1, 0) == 0.5);
    CHECK(intrinsic_check(g, t) == doctest::Approx(0.125));

    const auto p = p3();
    std::istringstream missing(R"({"entries":[{"u":"a","v":"b","d":1}]})");
    CHECK_THROWS_AS(load_metric_table(p, missing), ParseError);
    std::istringstream negative(R"({"entries":[{"u":"a","v":"b","d":-1}]})");
    CHECK_THROWS_AS(load_metric_table(g, negative), ParseError);
    std::istringstream unknown(R"({"entries":[{"u":"a","v":"z","d":1}]})");
    CHECK_THROWS_AS(load_metric_table(g, unknown), ParseError);
    std::istringstream asym(R"({"entries":[{"u":"a","v":"b","d":1},{"u":"b","v":"a","d":2}]})");
    CHECK_THROWS_AS(load_metric_table(g, asym), ParseError);
    CHECK_THROWS_AS(parse_metric_kind("euclid"), ParseError);
}
