"""Reference implementations of the finite-field and q-series kernels (numpy only)."""

import numpy as np


def legendre_table(p):
    """chi[x] = Legendre symbol (x / p) for x in 0..p-1, p an odd prime."""
    chi = -np.ones(p, dtype=np.int8)
    chi[(np.arange(1, p, dtype=np.int64) ** 2) % p] = 1
    chi[0] = 0
    return chi


def poly_char_sum(coeffs, p, chi):
    """Sum over x in F_p of chi(f(x)); ``coeffs`` highest degree first."""
    x = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in coeffs:
        acc = (acc * x + int(c) % p) % p
    return int(chi[acc].sum(dtype=np.int64))


def surface_count(alpha, p, chi):
    """Affine F_p-points of (1 - x0^2)(1 - x1^2)(1 - x2^2) = alpha."""
    alpha %= p
    x = np.arange(p, dtype=np.int64)
    q = (1 - x * x) % p
    c = np.outer(q, q) % p
    nz = c != 0
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(int(v), -1, p) for v in range(1, p)]
    rhs = (1 - alpha * inv[c[nz]]) % p
    total = int((1 + chi[rhs]).sum(dtype=np.int64))
    if alpha == 0:
        total += p * int((~nz).sum())
    return total


def sparse_convolve(dense, exps, vals, n_max):
    """Coefficients 0..n_max of dense(q) * sum_j vals[j] q^exps[j]."""
    dense = np.asarray(dense)
    out = np.zeros(n_max + 1, dtype=dense.dtype)
    for e, v in zip(exps, vals):
        e = int(e)
        if e > n_max:
            continue
        out[e:] += int(v) * dense[: n_max + 1 - e]
    return out
