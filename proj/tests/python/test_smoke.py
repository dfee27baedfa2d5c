import math

import pytest

import curvkit


def test_edge_curvature():
    g = curvkit.load_graph("a b 1\n")
    assert len(g) == 2
    assert curvkit.curvature(g, 0) == pytest.approx(2.0)
    assert curvkit.curvature(g, 0, N=2) == pytest.approx(1.0)


def test_isolated_vertex_is_infinite():
    g = curvkit.generate("path:1")
    assert math.isinf(curvkit.curvature(g, 0))


def test_profile_of_bridge():
    g = curvkit.generate("bridge:2,3")
    p = curvkit.curvature_profile(g)
    assert p["v0"]
    assert p["K_pos"] > 0


def test_metrics():
    g = curvkit.generate("path:3")
    table, margin = curvkit.metric_table(g, "huang")
    assert margin <= 1 + 1e-12
    assert table[0][2] == pytest.approx(math.sqrt(2))
    value, upper = curvkit.resistance(g, 0, 2)
    assert value <= 2 + 1e-12 <= upper + 2e-12
    assert value == pytest.approx(2, abs=1e-6)


def test_heat_semigroup():
    g = curvkit.load_graph("a b 1\n")
    pf = curvkit.heat_semigroup(g, 0.5, [0.0, 1.0])
    assert pf[0] == pytest.approx((1 - math.exp(-1)) / 2)


def test_h_function_limit():
    assert curvkit.h_function(1.0, 0.0, 50.0) == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-8)


def test_certificate():
    g = curvkit.generate("hypercube:3", "normalized")
    c = curvkit.certificate(g)
    assert c["case"] == "i"
    assert c["pass"]
    assert abs(c["slack"]) < 1e-7


def test_errors():
    with pytest.raises(curvkit.ParseError):
        curvkit.load_graph("a b -1\n")
    with pytest.raises(curvkit.StructuralError):
        curvkit.curvature_profile(curvkit.load_graph("a b 1\nc d 1\n"))


def test_cli():
    code, out, _ = curvkit.run_cli(["curvature", "--gen", "path:2", "--N", "1"])
    assert code == 0
    assert '"v0"' in out
    code, _, _ = curvkit.run_cli(["curvature"])
    assert code == 2
