import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hgreg.errors import DomainError, StepLimitError
from hgreg.resolver import (
    Chart,
    blow_up,
    classify,
    corrected_measure,
    initial_charts,
    resolve,
    spec_measure,
)


@pytest.mark.parametrize("chart,cls", [
    (Chart(1, (3, 2), 0), "c"),
    (Chart(3, (), 0), "d"),
    (Chart(2, (1,), 0), "b"),
    (Chart(2, (1, 1), 0), "a"),
    (Chart(2, (2,), 0), "non-standard"),
    (Chart(2, (2, 1), 0), "non-standard"),
])
def test_classify(chart, cls):
    assert classify(chart) == cls


def test_chart_validation():
    with pytest.raises(DomainError):
        Chart(1, (0,), 0)
    assert Chart(1, (1, 3, 2), 0).m == (3, 2, 1)


def test_blow_up_examples():
    u1, u2 = blow_up(Chart(2, (1, 1), 0))
    assert u1 == Chart(1, (1, 1), 1) and classify(u1) == "c"
    assert u2 == Chart(2, (1,), 1) and classify(u2) == "b"
    u1, u2 = blow_up(Chart(2, (2,), 0))
    assert classify(u1) == "c" and u1.r == 1
    assert u2 == Chart(2, (1,), 0) and classify(u2) == "b"


def test_blow_up_rejects_terminal_and_bad_centers():
    with pytest.raises(DomainError):
        blow_up(Chart(1, (2,), 0))
    with pytest.raises(DomainError):
        blow_up(Chart(2, (2,), 0), (0, 1))


@settings(max_examples=60)
@given(st.integers(2, 5), st.lists(st.integers(1, 5), min_size=1, max_size=4), st.integers(0, 2))
def test_blow_up_invariants(r, m, l):
    chart = Chart(r, tuple(m), l)
    if classify(chart) in ("b", "c", "d"):
        return
    for child in blow_up(chart):
        assert child.dim == chart.dim
        assert corrected_measure(child) < corrected_measure(chart)


def test_initial_charts():
    charts = initial_charts((2, 2))
    assert Chart(1, (2,), 0) in charts
    charts3 = initial_charts((2, 2, 2))
    assert Chart(2, (2,), 0) in charts3 and Chart(1, (2, 2), 0) in charts3
    assert all(c.dim == 3 for c in charts3)
    with pytest.raises(DomainError):
        initial_charts((2, 0))


@pytest.mark.parametrize("n", [(2, 2), (2, 2, 2), (2, 3, 4), (3, 3, 3, 3), (1, 2, 3), (5, 1)])
def test_resolution_terminates_with_standard_charts(n):
    fifo, lifo = resolve(n), resolve(n, order="lifo")
    assert fifo.all_terminal_standard
    assert fifo.terminal == lifo.terminal
    assert not fifo.corrected_violations


def test_resolution_counts():
    assert dict(resolve((2, 2)).terminal_classes) == {"c": 4}
    res = resolve((2, 2, 2))
    assert res.steps == 1 and dict(res.terminal_classes) == {"c": 30, "b": 12}


def test_stated_measure_counterexamples():
    # (2,{4}) -> U1 = (1,{4,3}) keeps r + sum(m - 1) at 5; (2,{1,1}) -> U2 = (2,{1}) keeps it at 2
    assert not spec_measure(Chart(1, (4, 3), 0)) < spec_measure(Chart(2, (4,), 0))
    assert not spec_measure(Chart(2, (1,), 1)) < spec_measure(Chart(2, (1, 1), 0))
    assert len(resolve((2, 3, 4)).spec_violations) == 1
    assert len(resolve((3, 3, 3, 3)).spec_violations) == 3


def test_trace_json_lines():
    res = resolve((2, 3, 4))
    buf = io.StringIO()
    res.write_trace(buf)
    lines = buf.getvalue().splitlines()
    assert len(lines) == res.steps
    rec = json.loads(lines[0])
    assert {"chart_before", "center", "charts_after", "measure_before", "measure_after"} <= set(rec)


def test_step_limit():
    with pytest.raises(StepLimitError):
        resolve((3, 3, 3, 3), max_steps=2)
    with pytest.raises(DomainError):
        resolve((2, 2), order="random")
