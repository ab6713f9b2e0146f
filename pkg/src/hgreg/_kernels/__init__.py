"""Hot loops: compiled when the extension is built, numpy otherwise.

Set ``HGREG_PURE=1`` to force the numpy versions.
"""

import os

BACKEND = "pure"
if os.environ.get("HGREG_PURE", "") != "1":
    try:
        from ._core import legendre_table, poly_char_sum, sparse_convolve, surface_count

        BACKEND = "cython"
    except ImportError:
        pass
if BACKEND == "pure":
    from ._pure import legendre_table, poly_char_sum, sparse_convolve, surface_count

__all__ = ["BACKEND", "legendre_table", "poly_char_sum", "sparse_convolve", "surface_count"]
