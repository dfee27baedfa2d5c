#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "curvkit/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = curvkit::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli curvature") {
    const auto r = run({"curvature", "--gen", "path:2", "--measure", "counting", "--N", "inf"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    for (const auto& v : j["values"]) CHECK(v["K"].get<double>() == doctest::Approx(2.0));
    CHECK(j["v0"].empty());

    const auto r1 = run({"curvature", "--gen", "path:2", "--N", "1"});
    REQUIRE(r1.code == 0);
    const auto j1 = json::parse(r1.out);
    CHECK(j1["v0"].size() == 2);
    for (const auto& v : j1["values"]) CHECK(std::abs(v["K"].get<double>()) < 1e-12);

    CHECK(run({"curvature"}).code == 2);
    CHECK(run({"curvature", "--gen", "path:2", "--N", "-3"}).code == 2);
    CHECK(run({"curvature", "--gen", "nonsense"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("cli structural errors") {
    const std::string path = "cli_two_components.txt";
    {
        std::ofstream f(path);
        f << "a b 1\nc d 1\n";
    }
    CHECK(run({"curvature", "--input", path}).code == 3);
    std::remove(path.c_str());
}

TEST_CASE("cli metrics") {
    const auto r = run({"metrics", "--gen", "path:3", "--kind", "huang"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["diameter"].get<double>() == doctest::Approx(std::sqrt(2.0)));

    const auto s = run({"metrics", "--gen", "path:2", "--kind", "resistance", "--pairs", "a,b"});
    REQUIRE(s.code == 0);
    const auto js = json::parse(s.out);
    CHECK(std::abs(js["entries"][0]["d"].get<double>() - std::sqrt(2.0)) <= 1e-6);

    const std::string table = "cli_table.json";
    {
        std::ofstream f(table);
        f << R"({"entries":[{"u":"a","v":"b","d":0.5}]})";
    }
    const auto c = run({"metrics", "--gen", "path:2", "--kind", "custom", "--table", table, "--check-intrinsic"});
    CHECK(c.code == 0);
    CHECK(json::parse(c.out)["intrinsic_margin"].get<double>() == doctest::Approx(0.125));
    {
        std::ofstream f(table);
        f << R"({"entries":[{"u":"a","v":"b","d":3}]})";
    }
    CHECK(run({"metrics", "--gen", "path:2", "--kind", "custom", "--table", table, "--check-intrinsic"}).code == 1);
    std::remove(table.c_str());
}

TEST_CASE("cli verify") {
    const auto l = run({"verify", "--gen", "hypercube:3", "--check", "lmp16", "--samples", "50"});
    REQUIRE(l.code == 0);
    const auto jl = json::parse(l.out);
    CHECK(jl["pass"].get<bool>());
    CHECK(jl["rows"].size() == 50);

    const auto s = run({"verify", "--gen", "bridge:2,3", "--check", "sgc", "--T", "0.5", "--samples", "20"});
    REQUIRE(s.code == 0);
    CHECK(json::parse(s.out)["pass"].get<bool>());

    CHECK(run({"verify", "--gen", "path:6", "--N", "2", "--check", "pt1", "--samples", "10"}).code == 0);
    CHECK(run({"verify", "--gen", "path:6", "--N", "2", "--check", "pt1", "--x", "a", "--W", "f", "--R", "100"})
              .code == 4);
    CHECK(run({"verify", "--gen", "path:6", "--check", "pt1"}).code == 2);
}

TEST_CASE("cli bounds") {
    const auto q = run({"bounds", "--gen", "hypercube:3", "--measure", "normalized", "--N", "inf"});
    REQUIRE(q.code == 0);
    const auto jq = json::parse(q.out);
    CHECK(jq["case"] == "i");
    CHECK(jq["pass"].get<bool>());
    CHECK(std::abs(jq["slack"].get<double>()) <= 1e-7);

    const auto b = run({"bounds", "--gen", "bridge:2,4", "--N", "inf"});
    REQUIRE(b.code == 0);
    CHECK(json::parse(b.out)["case"] == "iii");

    const auto e = run({"bounds", "--gen", "path:2", "--N", "inf"});
    REQUIRE(e.code == 0);
    CHECK(json::parse(e.out)["case"] == "i");
}

TEST_CASE("cli output is deterministic") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"verify", "--gen", "cycle:5", "--check", "lmp16", "--samples", "10", "--seed", "9"},
             {"bounds", "--gen", "bridge:2,2", "--N", "5", "--metric", "huang"},
             {"curvature", "--gen", "complete:4", "--measure", "normalized", "--N", "2"}}) {
        const auto a = run(args);
        const auto b = run(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
}
