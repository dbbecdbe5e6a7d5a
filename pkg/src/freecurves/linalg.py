"""Exact linear algebra over the rationals.

Every computation here is fraction-free: rational input rows are cleared to
integers (row scaling does not change rank, kernel or span), and elimination
is Bareiss-style, so all intermediate entries are minors of the integer
input and every division is exact.  Results are exact by construction.

A modular fast path lives in :mod:`freecurves.modp`; it is only ever used
behind certificates, never to report a value on its own.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

try:  # pragma: no cover - plain ints are a complete fallback
    from gmpy2 import mpz
except ImportError:  # pragma: no cover
    mpz = int

Rat = Fraction


@dataclass(frozen=True)
class DenseMatrix:
    """Row-major dense matrix with exact rational entries."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @staticmethod
    def from_rows(rows) -> "DenseMatrix":
        rows = [list(r) for r in rows]
        n = len(rows[0]) if rows else 0
        if any(len(r) != n for r in rows):
            raise ValueError("ragged rows")
        ents = tuple(Fraction(x) for r in rows for x in r)
        return DenseMatrix(len(rows), n, ents)

    @staticmethod
    def identity(n: int) -> "DenseMatrix":
        ents = tuple(Fraction(1 if i == j else 0) for i in range(n) for j in range(n))
        return DenseMatrix(n, n, ents)

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def row_lists(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "DenseMatrix":
        ents = tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows))
        return DenseMatrix(self.cols, self.rows, ents)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace given by an independent list of coordinate vectors."""

    ambient_dim: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)


def _clear_row(row) -> list:
    """Scale a rational row to a primitive integer row (content 1)."""
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) if isinstance(x, Fraction) else int(x) * den for x in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def int_rows(m: DenseMatrix) -> list:
    """Integer-cleared copy of the matrix rows."""
    return [_clear_row(m.row(i)) for i in range(m.rows)]


class Echelon:
    """Fraction-free row echelon form of an integer matrix.

    Stores the eliminated integer rows together with their pivot columns;
    supports exact rank, kernel extraction and membership reduction.
    """

    __slots__ = ("ncols", "rows", "pivot_cols")

    def __init__(self, rows, ncols: int):
        self.ncols = ncols
        work = [[mpz(v) for v in r] for r in rows if any(r)]
        piv_cols = []
        m = len(work)
        prev = mpz(1)
        r = 0
        for c in range(ncols):
            # deterministic partial pivoting: largest magnitude, lowest index
            best = -1
            bi = -1
            for i in range(r, m):
                v = abs(work[i][c])
                if v > best:
                    best, bi = v, i
            if bi < 0 or best == 0:
                continue
            if bi != r:
                work[r], work[bi] = work[bi], work[r]
            piv = work[r][c]
            for i in range(r + 1, m):
                wi = work[i]
                wic = wi[c]
                wr = work[r]
                if wic:
                    for x in range(c, ncols):
                        wi[x] = (wi[x] * piv - wic * wr[x]) // prev
                else:
                    for x in range(c, ncols):
                        wi[x] = (wi[x] * piv) // prev
            prev = piv
            piv_cols.append(c)
            r += 1
            if r == m:
                break
        self.rows = [[int(v) for v in row] for row in work[:r]]
        self.pivot_cols = piv_cols

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)

    def reduce(self, vec) -> list:
        """Exact normal form of ``vec`` against the echelon rows.

        Returns a rational vector that is zero iff ``vec`` lies in the row
        span.
        """
        v = [Fraction(x) for x in vec]
        for row, c in zip(self.rows, self.pivot_cols):
            if v[c]:
                t = v[c] / row[c]
                for x in range(c, self.ncols):
                    if row[x]:
                        v[x] -= t * row[x]
        return v

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def kernel(self) -> list:
        """Primitive integer basis of the right kernel of the original rows.

        One vector per non-pivot column, in ascending column order; each is
        normalized to content one with its first nonzero entry positive.
        """
        piv = self.pivot_cols
        pivset = set(piv)
        free = [c for c in range(self.ncols) if c not in pivset]
        out = []
        for cf in free:
            x = [Fraction(0)] * self.ncols
            x[cf] = Fraction(1)
            for t in range(len(piv) - 1, -1, -1):
                row, c = self.rows[t], piv[t]
                s = Fraction(0)
                for j in range(c + 1, self.ncols):
                    if row[j] and x[j]:
                        s += row[j] * x[j]
                if s:
                    x[c] = -s / row[c]
            out.append(normalize_primitive(x))
        return out


def normalize_primitive(vec) -> list:
    """Clear denominators and content; make first nonzero entry positive."""
    den = 1
    for v in vec:
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) if isinstance(v, Fraction) else int(v) * den for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v:
            if v < 0:
                ints = [-u for u in ints]
            break
    return ints


def echelon_of(m: DenseMatrix) -> Echelon:
    return Echelon(int_rows(m), m.cols)


def rank(m: DenseMatrix) -> int:
    """Rank of ``m`` over the rationals, exact."""
    return echelon_of(m).rank


def kernel_basis(m: DenseMatrix) -> Subspace:
    """Exact basis of the right kernel of ``m``."""
    vecs = echelon_of(m).kernel()
    basis = tuple(tuple(Fraction(v) for v in vec) for vec in vecs)
    return Subspace(m.cols, basis)


def in_span(vec, w: Subspace) -> bool:
    """True iff ``vec`` lies in the span of ``w.basis``."""
    if len(vec) != w.ambient_dim:
        raise ValueError("vector length does not match ambient dimension")
    if not w.basis:
        return not any(Fraction(x) for x in vec)
    ech = Echelon([_clear_row(list(b)) for b in w.basis], w.ambient_dim)
    return ech.contains(vec)


# ---------------------------------------------------------------------------
# integer-level helpers used by the graded computations


def int_rank(rows, ncols: int) -> int:
    return Echelon(rows, ncols).rank


def int_kernel(rows, ncols: int) -> list:
    return Echelon(rows, ncols).kernel()


class SpanBuilder:
    """Incrementally built echelon over the rationals for span tracking.

    Rows are added one by one; each is reduced against the current echelon
    and kept (integer-cleared) if independent.  Deterministic given the
    insertion order.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows = []       # primitive integer rows
        self.pivots = []     # pivot column of each stored row

    @property
    def dim(self) -> int:
        return len(self.rows)

    def residue(self, vec) -> list:
        v = [Fraction(x) for x in vec]
        for row, c in zip(self.rows, self.pivots):
            if v[c]:
                t = v[c] / row[c]
                for x in range(self.ncols):
                    if row[x]:
                        v[x] -= t * row[x]
        return v

    def contains(self, vec) -> bool:
        return not any(self.residue(vec))

    def add(self, vec) -> bool:
        """Add ``vec`` to the span; returns True if it was independent."""
        res = self.residue(vec)
        for c, x in enumerate(res):
            if x:
                self.rows.append(normalize_primitive(res))
                self.pivots.append(c)
                return True
        return False
