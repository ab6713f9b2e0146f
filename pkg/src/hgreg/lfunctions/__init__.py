"""Eta products, point counts and completed L-functions."""

from .curves import QuarticCurve, cubic_ap, ec_ap, surface_trace, twist_relation_check
from .eta import NAMED_FORMS, EtaProductSpec, eta_coeffs, hecke_check, twist
from .lseries import LSeries, eta_lseries, lambda_completed, lprime_at_0, quartic_lprime

__all__ = [
    "NAMED_FORMS", "EtaProductSpec", "LSeries", "QuarticCurve", "cubic_ap", "ec_ap",
    "eta_coeffs", "eta_lseries", "hecke_check", "lambda_completed", "lprime_at_0",
    "quartic_lprime", "surface_trace", "twist", "twist_relation_check",
]
