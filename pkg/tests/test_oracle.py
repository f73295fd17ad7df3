import threading

import pytest

from graphrecon.datagen import worked_example_graph
from graphrecon.errors import DegenerateDirection, DimensionMismatch
from graphrecon.geometry import EmbeddedGraph, normalize
from graphrecon.oracle import DiagramOracle
from graphrecon.persistence import compute_apd


def test_counts_every_request():
    o = DiagramOracle(worked_example_graph())
    s = normalize((1.0, 0.3))
    assert o.query(s) == compute_apd(worked_example_graph(), s)
    o.query(s)
    o.query_restricted(s, 0)
    assert o.query_count == 3
    assert o.log == [s, s, s]
    o.reset()
    assert o.query_count == 0


def test_restricted_query():
    o = DiagramOracle(worked_example_graph())
    d0 = o.query_restricted((0.0, 1.0), 0)
    d1 = o.query_restricted((0.0, 1.0), 1)
    assert {p.dim for p in d0} == {0} and len(d0) == 4
    assert {p.dim for p in d1} == {1} and len(d1) == 1
    assert o.query_count == 2


def test_cache_still_counts():
    o = DiagramOracle(worked_example_graph(), cache=True)
    for _ in range(3):
        o.query((0.0, 1.0))
    assert o.query_count == 3
    assert o.cache_hits == 2


def test_rejects_bad_directions():
    o = DiagramOracle(worked_example_graph())
    with pytest.raises(ValueError):
        o.query((1.0, 1.0))
    with pytest.raises(DimensionMismatch):
        o.query((1.0, 0.0, 0.0))
    tie = DiagramOracle(EmbeddedGraph([(0.0, 0.0), (1.0, 0.0)]))
    with pytest.raises(DegenerateDirection):
        tie.query((0.0, 1.0))
    assert o.query_count == 0 and tie.query_count == 0


def test_thread_safe_counting():
    o = DiagramOracle(worked_example_graph())
    dirs = [normalize((1.0, 0.0123 + k / 7)) for k in range(50)]

    def work():
        for s in dirs:
            o.query(s)

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert o.query_count == 400


def test_graph_not_exposed():
    o = DiagramOracle(worked_example_graph())
    public = [a for a in dir(o) if not a.startswith("_")]
    assert set(public) == {"cache_hits", "diagram_cpu_ns", "diagram_time_ns", "log",
                           "query", "query_count", "query_restricted", "reset"}


def test_timing_instrumentation():
    o = DiagramOracle(worked_example_graph())
    o.query((0.0, 1.0))
    assert o.diagram_time_ns > 0
    assert o.diagram_cpu_ns >= 0
