"""High-precision regulators of Ross symbols on hypergeometric schemes.

Subpackages: :mod:`hgreg.hypergeom` (the function F and its continuation),
:mod:`hgreg.lfunctions` (eta products and L-values); modules
:mod:`hgreg.periods`, :mod:`hgreg.symbols`, :mod:`hgreg.resolver`.
"""

from .errors import HGRegError
from .hypergeom import HGParams, calF
from .recognize import recognize_rational

__version__ = "0.1.0"
__all__ = ["HGParams", "HGRegError", "__version__", "calF", "recognize_rational"]
