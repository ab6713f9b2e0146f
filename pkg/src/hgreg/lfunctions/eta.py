"""q-expansions of eta products and the Hecke relations they satisfy."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from sympy import factorint, primerange

from .._kernels import sparse_convolve
from ..errors import DomainError

CACHE_VERSION = "hgreg-coeffs-v1"


@dataclass(frozen=True)
class EtaProductSpec:
    """``prod eta(m z)^e`` over ``factors = ((m, e), ...)``."""

    factors: tuple
    level: int | None = None

    def __post_init__(self):
        f = tuple((int(m), int(e)) for m, e in self.factors)
        object.__setattr__(self, "factors", f)
        if not f or any(m < 1 or e < 1 for m, e in f):
            raise DomainError("eta factors need m >= 1 and e >= 1")
        if sum(m * e for m, e in f) % 24:
            raise DomainError("sum of m*e must be divisible by 24 for an integral q-expansion")
        if self.weight not in (2, 3):
            raise DomainError("only weights 2 and 3 are supported")

    @property
    def weight(self):
        return sum(e for _, e in self.factors) // 2

    @property
    def offset(self):
        return sum(m * e for m, e in self.factors) // 24

    @classmethod
    def parse(cls, text, level=None):
        """``"4:6"`` or ``"2:3,6:3"``."""
        pairs = [tuple(int(v) for v in item.split(":")) for item in text.split(",")]
        return cls(tuple(pairs), level)

    def to_json(self):
        return {"type": "eta", "factors": [list(p) for p in self.factors],
                "weight": self.weight, "level": self.level}


NAMED_FORMS = {
    "A": EtaProductSpec(((4, 6),), 16),
    "B": EtaProductSpec(((1, 2), (2, 1), (4, 1), (8, 2)), 8),
    "C": EtaProductSpec(((2, 3), (6, 3)), 12),
    "D": EtaProductSpec(((1, 3), (7, 3)), 7),
}


def _eta_terms(m, limit):
    """Sparse prod(1 - q^(mn)): exponents m j(3j+1)/2 with signs (-1)^j."""
    exps, vals = [], []
    j = 0
    while True:
        hit = False
        for jj in ((j, -j) if j else (0,)):
            e = m * jj * (3 * jj + 1) // 2
            if e <= limit:
                exps.append(e)
                vals.append(-1 if jj % 2 else 1)
                hit = True
        if not hit and j:
            break
        j += 1
    return exps, vals


def _eta3_terms(m, limit):
    """Sparse prod(1 - q^(mn))^3 = sum (-1)^j (2j+1) q^(m j(j+1)/2)."""
    exps, vals = [], []
    j = 0
    while m * j * (j + 1) // 2 <= limit:
        exps.append(m * j * (j + 1) // 2)
        vals.append((-1) ** j * (2 * j + 1))
        j += 1
    return exps, vals


def _pieces(spec, limit):
    for m, e in spec.factors:
        for _ in range(e // 3):
            yield _eta3_terms(m, limit)
        for _ in range(e % 3):
            yield _eta_terms(m, limit)


def eta_coeffs(spec, n_max):
    """Integer coefficients ``[a_0, a_1, ..., a_n_max]`` of the eta product."""
    if n_max > 10**7:
        raise DomainError("n_max above 10^7")
    limit = n_max - spec.offset
    if limit < 0:
        return [0] * (n_max + 1)
    pieces = list(_pieces(spec, limit))
    # int64 is safe while the l1-norm bound stays below 2^62
    bound = math.prod(sum(abs(v) for v in vals) for _, vals in pieces)
    dense = np.zeros(limit + 1, dtype=np.int64 if bound < 2**62 else object)
    dense[0] = 1
    for exps, vals in pieces:
        if dense.dtype == object:
            out = [0] * (limit + 1)
            for e, v in zip(exps, vals):
                for k in range(limit + 1 - e):
                    out[e + k] += v * dense[k]
            dense = np.array(out, dtype=object)
        else:
            dense = sparse_convolve(dense, exps, vals, limit)
    return [0] * spec.offset + [int(v) for v in dense]


def save_coeffs(path, coeffs, meta):
    """CSV with a version header line, then ``n,a_n`` rows."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        fh.write(f"# {CACHE_VERSION} {meta}\n")
        w = csv.writer(fh)
        w.writerow(["n", "a_n"])
        for n, a in enumerate(coeffs):
            w.writerow([n, a])


def load_coeffs(path, meta=None):
    path = Path(path)
    with path.open() as fh:
        head = fh.readline().strip()
        tag = head[2:].split(" ", 1)
        if not head.startswith("# ") or tag[0] != CACHE_VERSION:
            raise DomainError(f"{path}: unknown cache version {head!r}")
        if meta is not None and (len(tag) < 2 or tag[1] != meta):
            raise DomainError(f"{path}: cache is for {tag[1:]}, wanted {meta}")
        rows = list(csv.reader(fh))[1:]
    return [int(a) for _, a in rows]


def _kronecker(d, n):
    from sympy import kronecker_symbol

    return int(kronecker_symbol(d, n))


def twist(coeffs, d):
    """``a_n -> chi_d(n) a_n`` with chi_d the Kronecker symbol (d / n)."""
    return [0] + [_kronecker(d, n) * a for n, a in enumerate(coeffs[1:], start=1)]


def infer_character(coeffs, level, weight):
    """chi(p) from ``a_(p^2) = a_p^2 - chi(p) p^(k-1)`` at primes p not dividing the level."""
    out = {}
    for p in primerange(2, math.isqrt(len(coeffs) - 1) + 1):
        if level % p == 0:
            continue
        pk = p ** (weight - 1)
        diff = coeffs[p] ** 2 - coeffs[p * p]
        if diff % pk or abs(diff // pk) > 1:
            out[p] = None
        else:
            out[p] = diff // pk
    return out


def hecke_check(coeffs, level, weight, chi=None):
    """Exact Hecke relations up to ``len(coeffs) - 1``.

    Returns a dict with the failing multiplicativity pairs, the failing prime
    power recursions and the character values used.  ``chi`` maps primes to
    +-1/0; it defaults to the values inferred from ``a_(p^2)``.
    """
    n_max = len(coeffs) - 1
    chi = infer_character(coeffs, level, weight) if chi is None else chi
    mult_fail = []
    for n in range(2, n_max + 1):
        f = factorint(n)
        if len(f) < 2:
            continue
        p, e = next(iter(f.items()))
        q = p**e
        if coeffs[n] != coeffs[q] * coeffs[n // q]:
            mult_fail.append(n)
    power_fail = []
    for p in primerange(2, n_max + 1):
        if level % p == 0:
            continue
        c = chi.get(p)
        if c is None:
            if p * p <= n_max:
                power_fail.append((p, "character"))
            continue
        pk = p ** (weight - 1)
        prev, cur, q = 1, coeffs[p], p
        while q * p <= n_max:
            nxt = coeffs[p] * cur - c * pk * prev
            if coeffs[q * p] != nxt:
                power_fail.append((p, q * p))
            prev, cur, q = cur, coeffs[q * p], q * p
    return {"multiplicativity": mult_fail, "prime_powers": power_fail, "chi": chi,
            "ok": not mult_fail and not power_fail}
