import math
import os
import subprocess

import numpy as np
import pytest

import grover_zeta as gz


def k4_ihara(u):
    return (1 - u * u) ** 2 * (1 - u) * (1 - 2 * u) * (1 + u + 2 * u * u) ** 3


def test_graph_roundtrip():
    g = gz.generate("petersen")
    assert (g.n, g.m, g.regular_degree, g.girth()) == (10, 15, 3, 5)
    assert gz.parse(g.serialize()).serialize() == g.serialize()


def test_determinant_identity_against_numpy():
    g = gz.orient_random(gz.generate("complete:5"), 0.6, seed=3)
    U = gz.matrix(g, "U")
    H = gz.matrix(g, "Htilde")
    u = 0.3 + 0.2j
    direct = np.linalg.det(np.eye(U.shape[0]) - u * U)
    n, m = g.n, g.m
    reduced = (1 - u * u) ** (m - n) * np.linalg.det((1 + u * u) * np.eye(n) - 2 * u * H)
    assert abs(direct - reduced) < 1e-10
    assert abs(gz.zeta_reciprocal(g, u) - direct) < 1e-10


def test_series_routes_agree():
    g = gz.orient_random(gz.generate("cycle:5"), 1.0, seed=1)
    trace = gz.series(g, 6)
    euler = gz.euler_series(g, 6)
    walks = [gz.walk_count(g, k) for k in range(1, 7)]
    assert np.allclose(trace, euler, atol=1e-10)
    assert np.allclose(trace, walks, atol=1e-10)


def test_ihara_and_trace_formula():
    k4 = gz.generate("complete:4")
    edge, vertex, product = gz.ihara(k4, 0.2)
    assert abs(edge - k4_ihara(0.2)) < 1e-12
    r = gz.trace_check(k4, "twisted", [1.0])
    assert abs(r["lhs"] - 4) < 1e-12
    assert abs(r["identity_term"] - 3) < 1e-12
    a = gz.trace_check(k4, "ahumada", [0, 0, 0, 1])
    assert abs(a["cycle_term"] - 3 * math.sqrt(2)) < 1e-8


def test_poles_and_errors():
    k4 = gz.generate("complete:4")
    assert sum(mult for _, mult in gz.poles(k4)) == 12
    with pytest.raises(ValueError):
        gz.parse("mixedgraph 2 1\n0 0 undirected\n")
    with pytest.raises(gz.InputError):
        gz.poles(gz.generate("path:4"))


def test_fuzz_and_density():
    s = gz.fuzz(10, 0)
    assert s["passed"] == 10
    d = gz.density_experiment(2, [30], 0.25, 1)
    assert abs(sum(d["samples"][0]["histogram"]) - 1) < 1e-12


def test_cli_binary():
    cli = os.environ.get("GZETA_CLI")
    if not cli:
        pytest.skip("GZETA_CLI not set")
    out = subprocess.run([cli, "info", "--generate", "complete:4"], capture_output=True, text=True)
    assert out.returncode == 0
    assert '"girth": 3' in out.stdout
