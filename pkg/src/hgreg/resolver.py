"""Blow-up resolution of the boundary of the hypergeometric scheme, on chart shapes.

A chart ``(r, m, l)`` stands for ``z_1...z_r = u * prod w_j^m_j`` inside
``{prod w_j * prod v_c = 0}`` with ``r + len(m) + l = d + 1``.  Blowing up
along ``z_a = w_b = 0`` gives two charts:

* U1: ``r - 1``; ``m_b`` stays and ``m_b - 1`` joins as a new exponent, or a new
  ``v``-variable appears when ``m_b = 1``;
* U2: ``m_b`` drops to ``m_b - 1``, becoming a ``v``-variable at 0.

Multisets are kept sorted in decreasing order, so the tie-break "lowest index
among maximal m_b" is always ``b = 0``.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter, deque
from dataclasses import dataclass, field

from .errors import DomainError, StepLimitError

TERMINAL = ("b", "c", "d")


@dataclass(frozen=True, order=True)
class Chart:
    r: int
    m: tuple
    l: int

    def __post_init__(self):
        m = tuple(sorted((int(x) for x in self.m), reverse=True))
        object.__setattr__(self, "m", m)
        if self.r < 0 or self.l < 0 or any(x < 1 for x in m):
            raise DomainError(f"invalid chart {self}")

    @property
    def s(self):
        return len(self.m)

    @property
    def dim(self):
        return self.r + self.s + self.l

    def to_json(self):
        return {"r": self.r, "m": list(self.m), "l": self.l}


def classify(chart):
    """One of ``a, b, c, d`` or ``non-standard``."""
    if chart.s == 0:
        return "d"
    if chart.r == 1:
        return "c"
    if chart.s == 1 and chart.m == (1,):
        return "b"
    if chart.r >= 2 and chart.s >= 2 and all(x == 1 for x in chart.m):
        return "a"
    return "non-standard"


def spec_measure(chart):
    """``(r + sum(m_j - 1), r, max m_j)``, compared lexicographically."""
    return (chart.r + sum(x - 1 for x in chart.m), chart.r, max(chart.m, default=0))


def corrected_measure(chart):
    """``(r, sum m_j)``: U1 lowers r, U2 keeps r and lowers sum m by one."""
    return (chart.r, sum(chart.m))


def initial_charts(n):
    """Boundary chart shapes with multiplicities ``prod_(k in roots) n_k``.

    Each splitting of ``{0..d}`` into root directions R, pole directions S
    (both non-empty) and the rest gives ``(|R|, {n_j : j in S}, d+1-|R|-|S|)``.
    Returns a Counter of charts.
    """
    n = tuple(int(v) for v in n)
    if not n or any(v < 1 for v in n):
        raise DomainError("all n_k must be >= 1")
    idx = range(len(n))
    out = Counter()
    for r in range(1, len(n)):
        for R in itertools.combinations(idx, r):
            rest = [k for k in idx if k not in R]
            for s in range(1, len(rest) + 1):
                for S in itertools.combinations(rest, s):
                    chart = Chart(r, tuple(n[k] for k in S), len(n) - r - s)
                    out[chart] += math.prod(n[k] for k in R)
    return out


def blow_up(chart, center=(0, 0)):
    """Charts ``(U1, U2)`` of the blow-up along ``z_a = w_b = 0`` (0-based indices)."""
    a, b = center
    if classify(chart) in TERMINAL:
        raise DomainError(f"chart {chart} is terminal")
    if not (0 <= a < chart.r and 0 <= b < chart.s):
        raise DomainError(f"invalid center {center} for {chart}")
    mb = chart.m[b]
    rest = chart.m[:b] + chart.m[b + 1:]
    if mb > 1:
        u1 = Chart(chart.r - 1, rest + (mb, mb - 1), chart.l)
        u2 = Chart(chart.r, rest + (mb - 1,), chart.l)
    else:
        u1 = Chart(chart.r - 1, rest + (mb,), chart.l + 1)
        u2 = Chart(chart.r, rest, chart.l + 1)
    return u1, u2


def choose_center(chart):
    top = max(chart.m)
    return 0, chart.m.index(top)


@dataclass
class Resolution:
    n: tuple
    steps: int = 0
    trace: list = field(default_factory=list)
    terminal: Counter = field(default_factory=Counter)
    spec_violations: list = field(default_factory=list)
    corrected_violations: list = field(default_factory=list)

    @property
    def terminal_classes(self):
        return Counter(classify(c) for c in self.terminal.elements())

    @property
    def all_terminal_standard(self):
        return all(classify(c) in TERMINAL for c in self.terminal)

    def write_trace(self, fh):
        for rec in self.trace:
            fh.write(json.dumps(rec) + "\n")


def resolve(n, order="fifo", max_steps=10**6):
    """Run the rewriting system to exhaustion.

    Every step records both measures before and after; decreases are
    checked per produced chart and violations are collected (not raised).
    ``order`` is ``"fifo"`` or ``"lifo"``.
    """
    if order not in ("fifo", "lifo"):
        raise DomainError("order must be 'fifo' or 'lifo'")
    n = tuple(int(v) for v in n)
    res = Resolution(n)
    work = deque()
    for chart, mult in sorted(initial_charts(n).items()):
        work.append((chart, mult))
    d1 = len(n)
    while work:
        chart, mult = work.popleft() if order == "fifo" else work.pop()
        if chart.dim != d1:
            raise DomainError(f"dimension drift at {chart}")
        cls = classify(chart)
        if cls in TERMINAL:
            res.terminal[chart] += mult
            continue
        if res.steps >= max_steps:
            raise StepLimitError(f"more than {max_steps} blow-ups")
        res.steps += 1
        center = choose_center(chart)
        after = blow_up(chart, center)
        before_spec, before_corr = spec_measure(chart), corrected_measure(chart)
        for child in after:
            if not spec_measure(child) < before_spec:
                res.spec_violations.append((chart, child))
            if not corrected_measure(child) < before_corr:
                res.corrected_violations.append((chart, child))
            work.append((child, mult))
        res.trace.append({
            "chart_before": chart.to_json(),
            "class_before": cls,
            "center": list(center),
            "charts_after": [c.to_json() for c in after],
            "measure_before": list(before_spec),
            "measure_after": [list(spec_measure(c)) for c in after],
            "corrected_before": list(before_corr),
            "corrected_after": [list(corrected_measure(c)) for c in after],
            "multiplicity": mult,
        })
    return res
