#include <doctest.h>

#include <cmath>
#include <random>

#include "curvkit/errors.hpp"
#include "curvkit/graph.hpp"
#include "oracles/random_graphs.hpp"

using namespace curvkit;

namespace {

WeightedGraph e2(MeasureMode mode = MeasureMode::counting) {
    return load_graph_string("a b 1\n", GraphFormat::edge_list, mode);
}

WeightedGraph p3() { return load_graph_string("a b 1\nb c 1\n", GraphFormat::edge_list, MeasureMode::counting); }

}  // namespace

TEST_CASE("load edge list") {
    const auto g = e2();
    REQUIRE(g.size() == 2);
    CHECK(g.weight(g.id("a"), g.id("b")) == 1.0);
    CHECK(g.measure(0) == 1.0);
    CHECK(g.measure(1) == 1.0);

    const auto n = load_graph_string("a b 3\n", GraphFormat::edge_list, MeasureMode::normalized);
    CHECK(n.measure(n.id("a")) == 3.0);
    CHECK(degree(n, 0) == doctest::Approx(1.0));

    CHECK_THROWS_AS(load_graph_string("a b -1\n", GraphFormat::edge_list, MeasureMode::counting), ParseError);
    CHECK_THROWS_AS(load_graph_string("a a 1\n", GraphFormat::edge_list, MeasureMode::counting), ParseError);
    CHECK_THROWS_AS(load_graph_string("a b 1\nb a 2\n", GraphFormat::edge_list, MeasureMode::counting),
                    ParseError);
    CHECK_THROWS_AS(load_graph_string("a\n", GraphFormat::edge_list, MeasureMode::counting), ParseError);
}

TEST_CASE("load with explicit measures") {
    const auto g = load_graph_string("a b 2\n# measures\na 2\nb 0.5\n", GraphFormat::edge_list,
                                     MeasureMode::explicit_);
    CHECK(g.measure(g.id("a")) == 2.0);
    CHECK(degree(g, g.id("b")) == doctest::Approx(4.0));
    CHECK_THROWS(load_graph_string("a b 1\n# measures\na 1\n", GraphFormat::edge_list, MeasureMode::explicit_));
    CHECK_THROWS(load_graph_string("a b 1\n# measures\na 0\nb 1\n", GraphFormat::edge_list,
                                   MeasureMode::explicit_));
}

TEST_CASE("load json") {
    const auto g = load_graph_string(
        R"({"vertices":[{"id":"a","m":2},{"id":"b","m":1},{"id":"c","m":1}],)"
        R"("edges":[{"u":"a","v":"b","w":2},{"u":"b","v":"c"}]})",
        GraphFormat::json, MeasureMode::explicit_);
    CHECK(g.size() == 3);
    CHECK(g.weight(g.id("b"), g.id("c")) == 1.0);
    CHECK(degree(g, g.id("a")) == doctest::Approx(1.0));
    CHECK_THROWS_AS(load_graph_string("{not json", GraphFormat::json, MeasureMode::counting), ParseError);
}

TEST_CASE("degree and max degree") {
    CHECK(degree(e2(), 0) == 1.0);
    CHECK(degree(e2(MeasureMode::normalized), 0) == 1.0);
    const auto g = p3();
    CHECK(degree(g, g.id("b")) == 2.0);
    CHECK(max_degree(g) == 2.0);
    CHECK(max_degree(e2(MeasureMode::normalized)) == 1.0);
    WeightedGraph::Builder b;
    b.add_vertex("x");
    CHECK(max_degree(std::move(b).build(MeasureMode::counting)) == 0.0);
}

TEST_CASE("graph distance") {
    const auto g = e2();
    CHECK(graph_distance(g, 0, 1) == 1u);
    CHECK(graph_distance(g, 1, 1) == 0u);
    WeightedGraph::Builder b;
    b.add_vertex("x");
    b.add_vertex("y");
    const auto two = std::move(b).build(MeasureMode::counting);
    CHECK_FALSE(graph_distance(two, 0, 1).has_value());
    CHECK_FALSE(is_connected(two));
    CHECK_THROWS_AS(require_connected(two, "test"), StructuralError);
}

TEST_CASE("graph distance is a metric") {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 5; ++rep) {
        const auto g = testing::random_connected_graph(rng, 20, 0.1);
        const std::size_t n = g.size();
        std::vector<std::vector<std::size_t>> d(n);
        for (std::size_t x = 0; x < n; ++x) d[x] = bfs_distances(g, x);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                REQUIRE(d[x][y] == d[y][x]);
                REQUIRE((d[x][y] == 0) == (x == y));
                for (std::size_t z = 0; z < n; ++z) REQUIRE(d[x][z] <= d[x][y] + d[y][z]);
            }
    }
}

TEST_CASE("balls and tubes") {
    const auto g = e2();
    CHECK(ball(g, 0, 0) == VertexSet({0}));
    CHECK(tube(g, VertexSet({0}), 1) == VertexSet({0, 1}));
    const auto p = p3();
    CHECK(ball(p, p.id("a"), 1) == VertexSet({p.id("a"), p.id("b")}));

    const auto c = generate(parse_generator("cycle:9"), MeasureMode::counting);
    const VertexSet centers({0, 4});
    CHECK(tube(c, centers, 0) == centers);
    VertexSet prev = tube(c, centers, 0);
    for (double r : {0.5, 1.0, 2.0, 3.0, 5.0}) {
        const auto t = tube(c, centers, r);
        for (auto v : prev.ids()) CHECK(t.contains(v));
        prev = t;
    }
    CHECK(prev.size() == 9);
}

TEST_CASE("generators") {
    const auto e = generate(parse_generator("path:2"), MeasureMode::counting);
    CHECK(e.size() == 2);
    CHECK(e.edge_count() == 1);
    CHECK(e.names() == std::vector<std::string>{"a", "b"});

    const auto q2 = generate(parse_generator("hypercube:2"), MeasureMode::counting);
    CHECK(q2.size() == 4);
    CHECK(q2.edge_count() == 4);
    for (VertexId v = 0; v < 4; ++v) CHECK(q2.neighbors(v).size() == 2);

    const auto k3 = generate(parse_generator("complete:3"), MeasureMode::counting);
    CHECK(k3.edge_count() == 3);
    for (VertexId v = 0; v < 3; ++v) CHECK(degree(k3, v) == 2.0);

    const auto br = generate(parse_generator("bridge:2,3"), MeasureMode::counting);
    CHECK(br.size() == 10);
    CHECK(br.edge_count() == 11);
    CHECK(graph_distance(br, br.id("L00"), br.id("R00")) == 3u);
    CHECK(is_connected(br));

    const auto p30 = generate(parse_generator("path:30"), MeasureMode::counting);
    CHECK(p30.name(26) == "aa");

    CHECK(to_string(parse_generator("bridge:2,3")) == "bridge:2,3");
    CHECK_THROWS_AS(generate(parse_generator("path:0"), MeasureMode::counting), ParameterError);
    CHECK_THROWS_AS(parse_generator("torus:3"), ParseError);
    CHECK_THROWS_AS(parse_generator("bridge:2"), ParseError);
}

TEST_CASE("symmetry and positivity of generated graphs") {
    std::mt19937_64 rng(5);
    std::vector<WeightedGraph> graphs;
    for (const char* s : {"path:5", "cycle:6", "complete:5", "hypercube:3", "bridge:2,2"})
        for (auto mode : {MeasureMode::counting, MeasureMode::normalized})
            graphs.push_back(generate(parse_generator(s), mode));
    graphs.push_back(testing::random_connected_graph(rng, 15, 0.3));
    for (const auto& g : graphs)
        for (VertexId x = 0; x < g.size(); ++x) {
            CHECK(g.measure(x) > 0.0);
            for (const auto& nb : g.neighbors(x)) CHECK(g.weight(nb.id, x) == nb.weight);
        }
}
