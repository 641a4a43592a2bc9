import numpy as np

from qcloak.bench import gen_qft
from qcloak.circuit import Circuit, cx, rz, sx
from qcloak.dag import to_dag
from qcloak.netlsd import (
    default_grid,
    netlsd_divergence,
    netlsd_signature,
    signature_to_csv,
)


def test_default_grid_shape():
    g = default_grid()
    assert len(g) == 250
    assert np.isclose(g[0], 1e-2) and np.isclose(g[-1], 1e2)
    assert np.all(np.diff(np.log(g)) > 0)


def test_empty_circuit_closed_form():
    # each wire is a source-sink edge: normalized Laplacian eigenvalues {0, 2}
    sig = netlsd_signature(to_dag(Circuit(3)))
    want = 3 * (1 + np.exp(-2 * sig.timescales))
    assert np.allclose(sig.traces, want, atol=1e-10)


def test_single_gate_wire_is_path_graph():
    # source - gate - sink: path on 3 nodes, eigenvalues {0, 1, 2}
    sig = netlsd_signature(to_dag(Circuit(1, (sx(0),))))
    t = sig.timescales
    want = 1 + np.exp(-t) + np.exp(-2 * t)
    assert np.allclose(sig.traces, want, atol=1e-10)


def test_gate_chain_matches_path_eigenvalues():
    m = 6
    c = Circuit(1, tuple(rz(0.1 * (i + 1), 0) for i in range(m)))
    sig = netlsd_signature(to_dag(c))
    n_nodes = m + 2
    lam = 1 - np.cos(np.pi * np.arange(n_nodes) / (n_nodes - 1))
    want = np.exp(-np.outer(sig.timescales, lam)).sum(axis=1)
    assert np.allclose(sig.traces, want, atol=1e-10)


def test_traces_decrease_to_component_count():
    c = Circuit(2, (cx(0, 1), sx(0)))
    sig = netlsd_signature(to_dag(c))
    assert np.all(np.diff(sig.traces) <= 1e-12)
    assert sig.traces[0] <= to_dag(c).num_nodes
    # connected graph: h(t) -> 1
    assert abs(sig.traces[-1] - 1) < 0.2


def test_estimated_matches_dense():
    dag = to_dag(gen_qft(4))
    dense = netlsd_signature(dag)
    est = netlsd_signature(dag, force_estimate=True)
    rel = np.abs(est.traces - dense.traces) / dense.traces
    assert rel.max() < 0.05
    assert np.linalg.norm(est.traces - dense.traces) < 0.01 * np.linalg.norm(dense.traces)


def test_estimated_component_count_exact_at_large_t():
    # three disconnected wires; the zero eigenspace is deflated exactly
    est = netlsd_signature(to_dag(Circuit(3)), force_estimate=True)
    assert abs(est.traces[-1] - 3) < 1e-3


def test_estimation_deterministic():
    dag = to_dag(gen_qft(3))
    a = netlsd_signature(dag, force_estimate=True)
    b = netlsd_signature(dag, force_estimate=True)
    assert np.array_equal(a.traces, b.traces)


def test_divergence_zero_on_self_and_symmetric():
    a = gen_qft(3)
    b = Circuit(3, (cx(0, 1), cx(1, 2), sx(0)))
    assert netlsd_divergence(a, a) == 0.0
    assert np.isclose(netlsd_divergence(a, b), netlsd_divergence(b, a))
    assert netlsd_divergence(a, b) > 0


def test_signature_csv_format():
    sig = netlsd_signature(to_dag(Circuit(1, (sx(0),))), grid=np.array([1.0, 10.0]))
    lines = signature_to_csv(sig).strip().split("\n")
    assert lines[0] == "t,h"
    assert len(lines) == 3
    t0, h0 = lines[1].split(",")
    assert float(t0) == 1.0 and abs(float(h0) - (1 + np.e**-1 + np.e**-2)) < 1e-9
