"""Bakry-Emery curvature, intrinsic metrics and heat semigroup on weighted graphs."""

import json

from ._curvkit import (
    ConvergenceError,
    Graph,
    HypothesisError,
    ParameterError,
    ParseError,
    StructuralError,
    curvature,
    generate,
    h_function,
    heat_semigroup,
    load_graph,
    metric_table,
    resistance,
    run_cli,
)
from . import _curvkit

__all__ = [
    "ConvergenceError",
    "Graph",
    "HypothesisError",
    "ParameterError",
    "ParseError",
    "StructuralError",
    "certificate",
    "curvature",
    "curvature_profile",
    "generate",
    "h_function",
    "heat_semigroup",
    "load_graph",
    "metric_table",
    "resistance",
    "run_cli",
]


def curvature_profile(graph, N=float("inf"), tau_cd=1e-8):
    """Curvature at every vertex, with V0 and the constants K_pos / K_neg."""
    return json.loads(_curvkit.curvature_profile_json(graph, N, tau_cd))


def certificate(graph, N=float("inf"), metric="scaled-combinatorial"):
    """Distance/diameter certificate as a dict."""
    return json.loads(_curvkit.certificate_json(graph, N, metric))
