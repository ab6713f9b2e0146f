"""Hypergeometric series, the regulator function and its continuation."""

from .calf import (
    HGParams,
    calF_connection,
    calF_half_half_closed_form,
    calF_series,
    connection_terms,
)
from .monodromy import MonodromyMatrix, loop_path, monodromy_report
from .ode import Arc, Line, PathSpec, calF_ode, canonical_path, hg_transport, straight_path
from .series import EvalResult, pfq_series, pfq_series_d


def calF(params, t, dps=None, method="auto"):
    """Evaluate F_a(t) by the cheapest applicable method.

    ``auto`` uses the series for |t| < 0.95 and otherwise the ODE along the
    canonical path (the series also covers t = 1 when it converges there).
    """
    from mpmath import mpf

    from ..numerics import to_mp

    tm = to_mp(t)
    if method == "auto":
        method = "series" if abs(tm) < mpf("0.95") or tm == 1 else "ode"
    if method == "series":
        return calF_series(params, t, dps=dps)
    if method == "connection":
        return calF_connection(params, t, dps=dps)
    if method == "ode":
        return calF_ode(params, t, dps=dps)
    raise ValueError(f"unknown method {method!r}")


__all__ = [
    "Arc",
    "EvalResult",
    "HGParams",
    "Line",
    "MonodromyMatrix",
    "PathSpec",
    "calF",
    "calF_connection",
    "calF_half_half_closed_form",
    "calF_ode",
    "calF_series",
    "canonical_path",
    "connection_terms",
    "hg_transport",
    "loop_path",
    "monodromy_report",
    "pfq_series",
    "pfq_series_d",
    "straight_path",
]
