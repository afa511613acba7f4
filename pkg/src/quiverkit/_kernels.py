"""Compiled elimination kernels for prime fields with int64 residues.

Reduction of ``a - f*b`` goes through a lookup table of size ``p*p`` when it
fits (``p <= TABLE_PRIME_LIMIT``); that avoids an integer division in the
inner loop.  Larger primes fall back to ``%``.
"""

from __future__ import annotations

import numba
import numpy as np

TABLE_PRIME_LIMIT = 1024

_tables: dict[int, np.ndarray] = {}


def mod_table(p: int) -> np.ndarray:
    if p > TABLE_PRIME_LIMIT:
        return np.zeros(0, dtype=np.int64)
    t = _tables.get(p)
    if t is None:
        t = np.arange(p * p, dtype=np.int64) % p
        _tables[p] = t
    return t


@numba.njit(cache=True)
def _inverse(b, p):
    inv = 1
    e = p - 2
    b = b % p
    while e:
        if e & 1:
            inv = inv * b % p
        b = b * b % p
        e >>= 1
    return inv


@numba.njit(cache=True)
def _eliminate_row(a, i, r, c, n, p, table):
    f = a[i, c]
    g = p - f
    if table.shape[0] > 0:
        for j in range(c, n):
            a[i, j] = table[a[i, j] + g * a[r, j]]
    else:
        for j in range(c, n):
            a[i, j] = (a[i, j] + g * a[r, j]) % p


@numba.njit(cache=True)
def _find_pivot(a, r, c, m):
    for i in range(r, m):
        if a[i, c] != 0:
            return i
    return -1


@numba.njit(cache=True)
def _swap_normalize(a, r, k, c, n, p):
    if k != r:
        for j in range(n):
            t = a[r, j]
            a[r, j] = a[k, j]
            a[k, j] = t
    inv = _inverse(a[r, c], p)
    for j in range(c, n):
        a[r, j] = a[r, j] * inv % p


@numba.njit(cache=True)
def rank_inplace(a, p, table):
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        k = _find_pivot(a, r, c, m)
        if k < 0:
            continue
        _swap_normalize(a, r, k, c, n, p)
        for i in range(r + 1, m):
            if a[i, c] != 0:
                _eliminate_row(a, i, r, c, n, p, table)
        r += 1
    return r


@numba.njit(cache=True)
def rref_inplace(a, p, table, pivots):
    """Reduce ``a`` to reduced row echelon form; returns the rank."""
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        k = _find_pivot(a, r, c, m)
        if k < 0:
            continue
        _swap_normalize(a, r, k, c, n, p)
        for i in range(m):
            if i != r and a[i, c] != 0:
                _eliminate_row(a, i, r, c, n, p, table)
        pivots[r] = c
        r += 1
    return r
