"""Homogeneous trivariate polynomials over exact rationals.

Monomials are exponent triples (a, b, c) for x^a y^b z^c, ordered graded
lexicographically with x > y > z; for a fixed degree that is plain
descending lex, and every basis listing here uses it, so matrices built
from these bases are reproducible byte for byte.

Also provides binary forms (restrictions to lines and z-expansions),
univariate polynomials over Q with exact gcd machinery, and bivariate
(s, t) polynomials with an exact resultant used by the pencil criteria.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

Mono = tuple  # (a, b, c)

VARS = ("x", "y", "z")


@lru_cache(maxsize=None)
def monomials(k: int) -> tuple:
    """All monomials of degree k, graded-lex order with x > y > z."""
    if k < 0:
        return ()
    return tuple((a, b, k - a - b) for a in range(k, -1, -1) for b in range(k - a, -1, -1))


@lru_cache(maxsize=None)
def mono_index(k: int):
    return {m: i for i, m in enumerate(monomials(k))}


def dim_graded(k: int) -> int:
    """dim of the degree-k graded piece, binom(k+2, 2); zero for k < 0."""
    return comb(k + 2, 2) if k >= 0 else 0


class HomogeneousPoly:
    """Immutable homogeneous polynomial in x, y, z with Fraction coefficients."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: dict):
        clean = {}
        for m, c in coeffs.items():
            c = Fraction(c)
            if not c:
                continue
            if sum(m) != degree:
                raise ValueError(f"monomial {m} is not of degree {degree}")
            clean[m] = c
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *a):
        raise AttributeError("HomogeneousPoly is immutable")

    @staticmethod
    def zero(degree: int) -> "HomogeneousPoly":
        return HomogeneousPoly(degree, {})

    @staticmethod
    def variable(i: int) -> "HomogeneousPoly":
        m = [0, 0, 0]
        m[i] = 1
        return HomogeneousPoly(1, {tuple(m): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, HomogeneousPoly)
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.coeffs.items()))))

    def __add__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return HomogeneousPoly(self.degree, out)

    def __sub__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        return self + (-other)

    def __neg__(self) -> "HomogeneousPoly":
        return HomogeneousPoly(self.degree, {m: -c for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, HomogeneousPoly):
            out = {}
            for m1, c1 in self.coeffs.items():
                for m2, c2 in other.coeffs.items():
                    m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                    v = out.get(m, 0) + c1 * c2
                    if v:
                        out[m] = v
                    else:
                        del out[m]
            return HomogeneousPoly(self.degree + other.degree, out)
        c = Fraction(other)
        return HomogeneousPoly(self.degree, {m: c * v for m, v in self.coeffs.items()})

    __rmul__ = __mul__

    def coeff(self, mono: Mono) -> Fraction:
        return self.coeffs.get(tuple(mono), Fraction(0))

    def partial(self, i: int) -> "HomogeneousPoly":
        out = {}
        for m, c in self.coeffs.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return HomogeneousPoly(self.degree - 1, out)

    def evaluate(self, pt) -> Fraction:
        x, y, z = (Fraction(v) for v in pt)
        total = Fraction(0)
        for (a, b, c), co in self.coeffs.items():
            total += co * x**a * y**b * z**c
        return total

    def substitute(self, images) -> "HomogeneousPoly":
        """Compose with a linear change of variables x_i -> images[i] (degree-1 polys)."""
        if len(images) != 3 or any(g.degree != 1 for g in images):
            raise ValueError("need three linear forms")
        pow_cache = [{0: HomogeneousPoly(0, {(0, 0, 0): 1})} for _ in range(3)]

        def power(i, e):
            cache = pow_cache[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        out = HomogeneousPoly.zero(self.degree)
        for (a, b, c), co in self.coeffs.items():
            out = out + co * (power(0, a) * power(1, b) * power(2, c))
        return out

    def coeff_vector(self, ints: bool = False) -> list:
        """Coefficients against the graded basis of the polynomial's degree."""
        basis = monomials(self.degree)
        if ints:
            den = 1
            for c in self.coeffs.values():
                den = den * c.denominator // gcd(den, c.denominator)
            return [int(self.coeffs.get(m, 0) * den) if m in self.coeffs else 0 for m in basis]
        return [self.coeffs.get(m, Fraction(0)) for m in basis]

    def primitive_int(self) -> "HomogeneousPoly":
        """Rescale by a positive rational so coefficients are coprime integers."""
        if not self.coeffs:
            return self
        den = 1
        for c in self.coeffs.values():
            den = den * c.denominator // gcd(den, c.denominator)
        ints = {m: int(c * den) for m, c in self.coeffs.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        return HomogeneousPoly(self.degree, {m: v // g for m, v in ints.items()})

    def z_layers(self) -> list:
        """Binary forms f_i with f = sum_i f_i(x, y) z^(d-i); index = degree in (x, y)."""
        layers = [dict() for _ in range(self.degree + 1)]
        for (a, b, c), co in self.coeffs.items():
            layers[a + b][(a, b)] = co
        out = []
        for i, data in enumerate(layers):
            coeffs = [data.get((i - j, j), Fraction(0)) for j in range(i + 1)]
            out.append(BinaryForm(i, tuple(coeffs)))
        return out

    def multiplicity_at_origin_chart(self) -> int:
        """Least i with the z-expansion layer f_i nonzero; degree+1 if f = 0."""
        layers = self.z_layers()
        for i, b in enumerate(layers):
            if not b.is_zero():
                return i
        return self.degree + 1

    def __repr__(self):
        return f"HomogeneousPoly({poly_to_text(self)!r})"


def poly_from_int_dict(degree: int, coeffs: dict) -> HomogeneousPoly:
    return HomogeneousPoly(degree, {m: Fraction(c) for m, c in coeffs.items()})


def from_coeff_vector(degree: int, vec) -> HomogeneousPoly:
    basis = monomials(degree)
    return HomogeneousPoly(degree, {m: Fraction(v) for m, v in zip(basis, vec) if v})


def partials(f: HomogeneousPoly):
    """The three partial derivatives (f_x, f_y, f_z).  Degree >= 1 required."""
    if f.degree < 1:
        raise ValueError("partials need degree >= 1")
    return f.partial(0), f.partial(1), f.partial(2)


def euler_check(f: HomogeneousPoly) -> bool:
    """x f_x + y f_y + z f_z = d f, exactly."""
    fx, fy, fz = partials(f)
    x, y, z = (HomogeneousPoly.variable(i) for i in range(3))
    return (x * fx + y * fy + z * fz) == f * f.degree


def graded_basis(k: int) -> tuple:
    """The fixed graded-lex monomial basis of degree k."""
    if k < 0:
        raise ValueError("negative degree")
    return monomials(k)


def mult_matrix(g: HomogeneousPoly, k: int):
    """Integer column vectors of h -> g*h from degree k into degree k + deg g.

    Columns follow the degree-k basis; each column is the coefficient vector
    of g * monomial in the degree-(k + deg g) basis.  g is primitivized, so
    entries are integers.
    """
    gi = g.primitive_int()
    rows_ix = mono_index(k + g.degree)
    n_rows = dim_graded(k + g.degree)
    cols = []
    for m in monomials(k):
        col = [0] * n_rows
        for mm, c in gi.coeffs.items():
            col[rows_ix[(mm[0] + m[0], mm[1] + m[1], mm[2] + m[2])]] = int(c)
        cols.append(col)
    return cols


def mult_matrix_dense(g: HomogeneousPoly, k: int):
    """Same map as :func:`mult_matrix` but as a DenseMatrix (rows x cols)."""
    from .linalg import DenseMatrix

    cols = mult_matrix(g, k)
    n_rows = dim_graded(k + g.degree)
    ents = tuple(Fraction(cols[j][i]) for i in range(n_rows) for j in range(len(cols)))
    return DenseMatrix(n_rows, len(cols), ents)


# ---------------------------------------------------------------------------
# binary forms in (x, y)


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form of fixed degree in two variables.

    coeffs[i] is the coefficient of x^(degree-i) y^i; an identically zero
    form keeps its nominal degree.
    """

    degree: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count mismatch")

    @staticmethod
    def from_univariate(u: "UnivariatePoly", degree: int) -> "BinaryForm":
        """Homogenize u(t) with t = y/x to the given degree: x^degree * u(y/x)."""
        if u.degree() > degree:
            raise ValueError("degree too small")
        cs = [Fraction(0)] * (degree + 1)
        for i, c in enumerate(u.coeffs):
            cs[i] = Fraction(c)
        return BinaryForm(degree, tuple(cs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def evaluate(self, x, y) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        return sum(
            (c * x ** (self.degree - i) * y**i for i, c in enumerate(self.coeffs)),
            Fraction(0),
        )

    def to_univariate(self) -> "UnivariatePoly":
        """Restriction to x = 1, i.e. sum coeffs[i] t^i."""
        return UnivariatePoly(self.coeffs)

    def mul(self, other: "BinaryForm") -> "BinaryForm":
        cs = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        cs[i + j] += a * b
        return BinaryForm(self.degree + other.degree, tuple(cs))

    def strip_xy(self):
        """Write the form as x^a y^b * core with core divisible by neither."""
        if self.is_zero():
            raise ValueError("zero form")
        cs = list(self.coeffs)
        b = 0
        while not cs[0]:
            cs.pop(0)
            b += 1
        a = 0
        while not cs[-1]:
            cs.pop()
            a += 1
        return a, b, BinaryForm(len(cs) - 1, tuple(cs))

    def gcd(self, other: "BinaryForm") -> "BinaryForm":
        if self.is_zero():
            return other.monic()
        if other.is_zero():
            return self.monic()
        a1, b1, c1 = self.strip_xy()
        a2, b2, c2 = other.strip_xy()
        g = c1.to_univariate().gcd(c2.to_univariate())
        core = BinaryForm.from_univariate(g, g.degree())
        x_part = BinaryForm(min(a1, a2), (Fraction(1),) + (Fraction(0),) * min(a1, a2))
        y_part = BinaryForm(min(b1, b2), (Fraction(0),) * min(b1, b2) + (Fraction(1),))
        return x_part.mul(y_part).mul(core).monic()

    def monic(self) -> "BinaryForm":
        for c in self.coeffs:
            if c:
                return BinaryForm(self.degree, tuple(v / c for v in self.coeffs))
        return self

    def squarefree_part(self) -> "BinaryForm":
        """Product of the distinct linear factors over C, monic, exact over Q."""
        a, b, core = self.strip_xy()
        u = core.to_univariate().squarefree_part()
        parts = BinaryForm.from_univariate(u, u.degree())
        if a:
            parts = parts.mul(BinaryForm(1, (Fraction(1), Fraction(0))))
        if b:
            parts = parts.mul(BinaryForm(1, (Fraction(0), Fraction(1))))
        return parts.monic()

    def divides(self, other: "BinaryForm") -> bool:
        if self.is_zero():
            return other.is_zero()
        if other.is_zero():
            return True
        g = self.gcd(other)
        return g.degree == self.monic().degree

    def num_distinct_roots(self) -> int:
        """Number of distinct points of P^1 where the form vanishes."""
        return self.squarefree_part().degree

    def to_trivariate(self) -> HomogeneousPoly:
        return HomogeneousPoly(
            self.degree,
            {(self.degree - i, i, 0): c for i, c in enumerate(self.coeffs) if c},
        )


# ---------------------------------------------------------------------------
# univariate polynomials over Q


class UnivariatePoly:
    """Dense univariate polynomial over Q, coefficients low to high."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("UnivariatePoly is immutable")

    @staticmethod
    def zero() -> "UnivariatePoly":
        return UnivariatePoly(())

    @staticmethod
    def monomial(n: int, c=1) -> "UnivariatePoly":
        return UnivariatePoly((0,) * n + (c,))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        return isinstance(other, UnivariatePoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UnivariatePoly(
            [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
        )

    def __neg__(self):
        return UnivariatePoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UnivariatePoly):
            if self.is_zero() or other.is_zero():
                return UnivariatePoly.zero()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        if b:
                            out[i + j] += a * b
            return UnivariatePoly(out)
        return UnivariatePoly([Fraction(other) * c for c in self.coeffs])

    __rmul__ = __mul__

    def divmod(self, other: "UnivariatePoly"):
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        dlc = other.lc()
        dd = other.degree()
        for i in range(len(rem) - 1, dd - 1, -1):
            if rem[i]:
                f = rem[i] / dlc
                q[i - dd] = f
                for j, c in enumerate(other.coeffs):
                    rem[i - dd + j] -= f * c
        return UnivariatePoly(q), UnivariatePoly(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def derivative(self) -> "UnivariatePoly":
        return UnivariatePoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UnivariatePoly":
        if self.is_zero():
            return self
        inv = 1 / self.lc()
        return UnivariatePoly([c * inv for c in self.coeffs])

    def evaluate(self, v) -> Fraction:
        v = Fraction(v)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def primitive_int(self) -> list:
        """Integer coefficient list with content one (empty for zero)."""
        if self.is_zero():
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return [v // g for v in ints]

    def gcd(self, other: "UnivariatePoly") -> "UnivariatePoly":
        """Monic gcd over Q via a primitive PRS over Z."""
        a, b = self.primitive_int(), other.primitive_int()
        if not a:
            return other.monic()
        if not b:
            return self.monic()
        g = _int_poly_gcd(a, b)
        return UnivariatePoly(g).monic()

    def squarefree_part(self) -> "UnivariatePoly":
        """q / gcd(q, q'), monic.  Rejects the zero polynomial."""
        if self.is_zero():
            raise ValueError("squarefree part of the zero polynomial")
        g = self.gcd(self.derivative())
        q, r = self.divmod(g)
        assert r.is_zero()
        return q.monic()

    def __repr__(self):
        return f"UnivariatePoly({list(self.coeffs)!r})"


def _int_poly_prem(a, b):
    """Pseudo-remainder of primitive integer polys, as integer list."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        while a and not a[-1]:
            a.pop()
        if len(a) - 1 < db:
            break
        la = a[-1]
        shift = len(a) - 1 - db
        g = gcd(la, lb)
        ma, mb = lb // g, la // g
        a = [c * ma for c in a]
        for j, c in enumerate(b):
            a[shift + j] -= mb * c
        a.pop()
    while a and not a[-1]:
        a.pop()
    return a


def _int_poly_gcd(a, b):
    while b:
        a, b = b, _int_poly_prem(a, b)
        if b:
            g = 0
            for v in b:
                g = gcd(g, v)
            b = [v // g for v in b]
    return a


# ---------------------------------------------------------------------------
# bivariate polynomials in (s, t)


class BiPoly:
    """Polynomial in two variables s and t over Q, dict (i, j) -> coeff."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict):
        clean = {}
        for k, c in coeffs.items():
            c = Fraction(c)
            if c:
                clean[(int(k[0]), int(k[1]))] = c
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, *a):
        raise AttributeError("BiPoly is immutable")

    def is_zero(self) -> bool:
        return not self.coeffs

    def deg_s(self) -> int:
        return max((i for i, _ in self.coeffs), default=-1)

    def deg_t(self) -> int:
        return max((j for _, j in self.coeffs), default=-1)

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    def t_derivative(self) -> "BiPoly":
        return BiPoly({(i, j - 1): j * c for (i, j), c in self.coeffs.items() if j})

    def eval_s(self, v) -> UnivariatePoly:
        """Specialize s = v, returning a polynomial in t."""
        v = Fraction(v)
        out = {}
        for (i, j), c in self.coeffs.items():
            out[j] = out.get(j, Fraction(0)) + c * v**i
        n = max(out, default=-1)
        return UnivariatePoly([out.get(j, Fraction(0)) for j in range(n + 1)])

    def eval_t(self, v) -> UnivariatePoly:
        v = Fraction(v)
        out = {}
        for (i, j), c in self.coeffs.items():
            out[i] = out.get(i, Fraction(0)) + c * v**j
        n = max(out, default=-1)
        return UnivariatePoly([out.get(i, Fraction(0)) for i in range(n + 1)])

    def t_coefficient(self, j: int) -> UnivariatePoly:
        out = {}
        for (i, jj), c in self.coeffs.items():
            if jj == j:
                out[i] = c
        n = max(out, default=-1)
        return UnivariatePoly([out.get(i, Fraction(0)) for i in range(n + 1)])

    def s_content(self) -> UnivariatePoly:
        """gcd over Q[s] of the t-coefficients."""
        g = UnivariatePoly.zero()
        for j in range(self.deg_t() + 1):
            cj = self.t_coefficient(j)
            if not cj.is_zero():
                g = cj.monic() if g.is_zero() else g.gcd(cj)
        return g

    def __repr__(self):
        return f"BiPoly({self.coeffs!r})"


def _sylvester_det_int(fc, gc):
    """Determinant of the Sylvester matrix of integer coefficient lists.

    fc, gc are highest-degree-first integer lists; F-rows come first.
    """
    m, n = len(fc) - 1, len(gc) - 1
    size = m + n
    if size == 0:
        return 1
    rows = []
    for i in range(n):
        rows.append([0] * i + list(fc) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(gc) + [0] * (size - n - 1 - i))
    # fraction-free determinant (Bareiss)
    prev = 1
    sign = 1
    a = rows
    for k in range(size - 1):
        if not a[k][k]:
            for i in range(k + 1, size):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, size):
            aik = a[i][k]
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * piv - aik * a[k][j]) // prev
            a[i][k] = 0
        prev = piv
    return sign * a[size - 1][size - 1]


def resultant_t(f: BiPoly, g: BiPoly) -> UnivariatePoly:
    """Resultant of f and g with respect to t, exact in Q[s].

    Convention: Sylvester determinant with the f-coefficient rows first,
    both polynomials taken at their true t-degrees.  Computed by evaluation
    at integer values of s and exact Lagrange interpolation.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of zero polynomial")
    m, n = f.deg_t(), g.deg_t()
    if m <= 0 and n <= 0:
        raise ValueError("both inputs are constant in t")
    if m == 0:
        u = f.eval_t(0)
        out = UnivariatePoly((1,))
        for _ in range(n):
            out = out * u
        return out
    if n == 0:
        u = g.eval_t(0)
        out = UnivariatePoly((1,))
        for _ in range(m):
            out = out * u
        return out
    bound = n * f.deg_s() + m * g.deg_s()
    lc_f = f.t_coefficient(m)
    lc_g = g.t_coefficient(n)
    pts = []
    vals = []
    v = 0
    while len(pts) <= bound:
        # skip evaluation points where a leading coefficient drops degree
        if lc_f.evaluate(v) and lc_g.evaluate(v):
            fv = f.eval_s(v)
            gv = g.eval_s(v)
            den = 1
            for c in list(fv.coeffs) + list(gv.coeffs):
                den = den * c.denominator // gcd(den, c.denominator)
            fi = [int(c * den) for c in reversed(fv.coeffs)]
            gi = [int(c * den) for c in reversed(gv.coeffs)]
            det = Fraction(_sylvester_det_int(fi, gi), den ** (m + n))
            pts.append(Fraction(v))
            vals.append(det)
        v = -v + 1 if v <= 0 else -v
    return _lagrange(pts, vals)


def _lagrange(pts, vals) -> UnivariatePoly:
    out = UnivariatePoly.zero()
    for i, (xi, yi) in enumerate(zip(pts, vals)):
        if not yi:
            continue
        num = UnivariatePoly((1,))
        den = Fraction(1)
        for j, xj in enumerate(pts):
            if j != i:
                num = num * UnivariatePoly((-xj, 1))
                den *= xi - xj
        out = out + num * (yi / den)
    return out


# ---------------------------------------------------------------------------
# homogenization and pencils


def homogenize(affine_coeffs: dict, d: int) -> HomogeneousPoly:
    """Projective closure at degree d of an affine bivariate polynomial.

    ``affine_coeffs`` maps (i, j) to the coefficient of x^i y^j; the result
    is sum c_ij x^i y^j z^(d-i-j).
    """
    out = {}
    for (i, j), c in affine_coeffs.items():
        if i + j > d:
            raise ValueError("degree d too small for the given polynomial")
        out[(i, j, d - i - j)] = Fraction(c)
    return HomogeneousPoly(d, out)


def dehomogenize(f: HomogeneousPoly) -> dict:
    """Set z = 1; returns the affine coefficient dict (i, j) -> coeff."""
    out = {}
    for (a, b, c), co in f.coeffs.items():
        out[(a, b)] = out.get((a, b), Fraction(0)) + co
    return {k: v for k, v in out.items() if v}


def primitive_point(pt) -> tuple:
    """Normalize integer homogeneous coordinates: primitive, sign-fixed."""
    p = [int(v) for v in pt]
    if not any(p):
        raise ValueError("zero point")
    g = 0
    for v in p:
        g = gcd(g, v)
    p = [v // g for v in p]
    for v in p:
        if v:
            if v < 0:
                p = [-u for u in p]
            break
    return tuple(p)


def rational_point(pt) -> tuple:
    """Clear rational homogeneous coordinates to a primitive integer point."""
    fr = [Fraction(v) for v in pt]
    den = 1
    for v in fr:
        den = den * v.denominator // gcd(den, v.denominator)
    return primitive_point([int(v * den) for v in fr])


def unimodular_to_origin(pt) -> tuple:
    """Integer unimodular matrix (row tuples) whose third column is the point.

    Substituting x_i -> sum_j U[i][j] x'_j moves the point to (0:0:1).
    Deterministic, built from extended gcds of the primitive coordinates.
    """
    p0, p1, p2 = primitive_point(pt)
    if p0 == 0 and p1 == 0:
        u = ((1, 0, 0), (0, 1, 0), (0, 0, p2))
        return u
    g, alpha, beta = _xgcd(p0, p1)
    a, b = p0 // g, p1 // g
    one, gamma, delta = _xgcd(g, p2)
    assert one == 1, "point coordinates not primitive"
    c1 = (-beta, alpha, 0)
    c2 = (-delta * a, -delta * b, gamma)
    c3 = (p0, p1, p2)
    return tuple(tuple(col[i] for col in (c1, c2, c3)) for i in range(3))


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def apply_matrix(f: HomogeneousPoly, u) -> HomogeneousPoly:
    """Substitute x_i -> sum_j u[i][j] x'_j."""
    images = []
    for i in range(3):
        images.append(
            HomogeneousPoly(
                1,
                {
                    (1, 0, 0): u[i][0],
                    (0, 1, 0): u[i][1],
                    (0, 0, 1): u[i][2],
                },
            )
        )
    return f.substitute(images)


@dataclass(frozen=True)
class PencilRestriction:
    """Restriction of a curve to the pencil of lines through a point.

    After the unimodular move of the base point to (0:0:1), the affine
    chart of line directions (s:1) gives family(s, t) = f'(s, 1, t); the
    direction (1:0) is stored separately as extra_direction(t) = f'(1, 0, t).
    layers[i] is the binary form f'_i in f' = sum_i f'_i(x, y) z^(d-i).
    """

    point: tuple
    transform: tuple
    family: BiPoly
    extra_direction: UnivariatePoly
    layers: tuple
    multiplicity: int


def restrict_to_pencil(f: HomogeneousPoly, pt) -> PencilRestriction:
    """Pencil restriction of f at a rational point."""
    p = rational_point(pt)
    u = unimodular_to_origin(p)
    g = apply_matrix(f, u)
    layers = tuple(g.z_layers())
    fam = {}
    for (a, b, c), co in g.coeffs.items():
        # x -> s, y -> 1, z -> t
        fam[(a, c)] = fam.get((a, c), Fraction(0)) + co
    family = BiPoly(fam)
    extra = {}
    for (a, b, c), co in g.coeffs.items():
        if b == 0:
            extra[c] = extra.get(c, Fraction(0)) + co
    n = max(extra, default=-1)
    extra_u = UnivariatePoly([extra.get(i, Fraction(0)) for i in range(n + 1)])
    mult = g.multiplicity_at_origin_chart()
    return PencilRestriction(p, u, family, extra_u, layers, mult)


# ---------------------------------------------------------------------------
# text form


def poly_to_text(f: HomogeneousPoly) -> str:
    if not f.coeffs:
        return "0"
    parts = []
    for m in monomials(f.degree):
        c = f.coeffs.get(m)
        if not c:
            continue
        factors = []
        for v, e in zip(VARS, m):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        mono = "*".join(factors) if factors else ""
        if abs(c) == 1 and mono:
            coeff = "" if c > 0 else "-"
        else:
            coeff = str(c) if c > 0 else f"-{-c}"
            if mono:
                coeff += "*"
        term = coeff + mono if mono else str(c)
        if parts and not term.startswith("-"):
            parts.append("+" + term)
        else:
            parts.append(term)
    return " ".join(parts).replace("+", "+ ").replace("-", "- ").replace("+  ", "+ ").strip()
