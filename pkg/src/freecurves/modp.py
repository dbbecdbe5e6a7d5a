"""Modular linear algebra fast path.

Ranks over a random large prime bound the rational rank from below (a
nonzero pivot minor mod p is nonzero over Q).  Callers combine such lower
bounds with exact upper bounds coming from exhibited kernel or span members
to certify rational values; a modular number is never reported on its own.

Matrices are int64 numpy arrays reduced mod a prime p < 2**31, so all
intermediate products fit in int64.
"""

from __future__ import annotations

import random

import numpy as np

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 2**64."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, lo: int = 1 << 30, hi: int = (1 << 31) - 1) -> int:
    while True:
        n = rng.randrange(lo | 1, hi, 2)
        if is_prime(n):
            return n


def to_modp(rows, ncols: int, p: int) -> np.ndarray:
    """Reduce integer rows mod p into an int64 array."""
    if not rows:
        return np.zeros((0, ncols), dtype=np.int64)
    flat = [v % p for r in rows for v in r]
    return np.array(flat, dtype=np.int64).reshape(len(rows), ncols)


def eliminate(a: np.ndarray, p: int):
    """In-place Gauss elimination mod p; returns (rank, pivot_cols).

    Rows end up in reduced echelon on the pivot columns.
    """
    m, n = a.shape
    r = 0
    piv_cols = []
    for c in range(n):
        if r == m:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - col[mask, None] * a[r]) % p
        piv_cols.append(c)
        r += 1
    return r, piv_cols


def rank_mod(rows, ncols: int, p: int) -> int:
    a = to_modp(rows, ncols, p)
    r, _ = eliminate(a, p)
    return r


def rref_mod(rows, ncols: int, p: int):
    """Reduced row echelon mod p; returns (matrix, pivot_cols)."""
    a = to_modp(rows, ncols, p)
    _, piv = eliminate(a, p)
    return a, piv


def kernel_mod_p(rows, ncols: int, p: int) -> np.ndarray:
    """Basis of the right kernel mod p, one row per free column."""
    a = to_modp(rows, ncols, p)
    _, piv = eliminate(a, p)
    pivset = set(piv)
    free = [c for c in range(ncols) if c not in pivset]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for idx, cf in enumerate(free):
        out[idx, cf] = 1
        for t in range(len(piv) - 1, -1, -1):
            c = piv[t]
            s = int(np.dot(a[t, c + 1 :] % p, out[idx, c + 1 :] % p) % p)
            out[idx, c] = (-s) % p
    return out


def compress_rows(rows, ncols: int, target: int, p: int, rng: random.Random) -> np.ndarray:
    """Random sparse row compression preserving rank with high probability.

    Only used for rank *lower* bounds: rank(compressed) <= rank mod p
    <= rational rank, so a sufficiently large compressed rank still
    certifies.
    """
    a = to_modp(rows, ncols, p)
    m = a.shape[0]
    if m <= target:
        return a
    keep = target // 2
    out = a[sorted(rng.sample(range(m), keep))]
    # random +/-1 combinations of all rows cover the rest; +/-1 times entries
    # below p summed in int64-safe blocks
    extra = target - keep
    signs = np.array(
        [[rng.choice((1, -1)) for _ in range(m)] for _ in range(extra)], dtype=np.int64
    )
    acc = np.zeros((extra, ncols), dtype=np.int64)
    step = 128
    for s in range(0, m, step):
        acc = (acc + signs[:, s : s + step] @ a[s : s + step]) % p
    return np.vstack([out, acc]) % p
