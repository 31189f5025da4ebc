"""Exact Laurent-polynomial arithmetic over Z[t, 1/t] and matrix algebra on top.

Coefficients are Python ints, so nothing ever overflows; all operations are
exact ring arithmetic.  A LaurentPoly is stored sparsely as a tuple of
(degree, coefficient) pairs with strictly increasing degrees and no zero
coefficients.  Values are immutable and hashable, hence safe to share across
threads and to use as dict keys.

The text form used everywhere in the package lists terms in increasing
degree, e.g. ``1 - 3*t^3 + t^6`` or ``t^-2 + t``, and round-trips bit-exactly
through parse_poly / str.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Optional

from .intmat import Mat, int_det


class ExactnessError(RuntimeError):
    """An internal exact-arithmetic guarantee failed; indicates a bug."""


class LaurentPoly:
    """An integer Laurent polynomial in one variable t.

    >>> f = parse_poly("1 - t")
    >>> g = parse_poly("1 + t + t^2")
    >>> str(f * g)
    '1 - t^3'
    >>> str(parse_poly("t^-1 + 1") * parse_poly("-1 + t"))
    '-t^-1 + t'
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        for deg, coef in terms:
            if coef:
                acc[deg] = acc.get(deg, 0) + coef
        self._terms = tuple(sorted((d, c) for d, c in acc.items() if c))

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly([(0, 1)])

    @staticmethod
    def const(c: int) -> "LaurentPoly":
        return LaurentPoly([(0, c)])

    @staticmethod
    def term(coef: int, deg: int) -> "LaurentPoly":
        return LaurentPoly([(deg, coef)])

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return self._terms[-1][0]

    def low_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return self._terms[0][0]

    def coeff(self, deg: int) -> int:
        for d, c in self._terms:
            if d == deg:
                return c
        return 0

    def num_terms(self) -> int:
        return len(self._terms)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(self._terms + other._terms)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(self._terms + tuple((d, -c) for d, c in other._terms))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((d, -c) for d, c in self._terms))

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(tuple((d, c * other) for d, c in self._terms))
        acc: dict[int, int] = {}
        for d1, c1 in self._terms:
            for d2, c2 in other._terms:
                d = d1 + d2
                acc[d] = acc.get(d, 0) + c1 * c2
        return LaurentPoly(acc.items())

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "LaurentPoly":
        if e < 0:
            raise ValueError("negative powers of polynomials are not defined")
        result = LaurentPoly.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly(tuple((d + k, c) for d, c in self._terms))

    def reversed(self) -> "LaurentPoly":
        """Substitute t -> 1/t."""
        return LaurentPoly(tuple((-d, c) for d, c in self._terms))

    def subst_power(self, n: int) -> "LaurentPoly":
        """Substitute t -> t^n."""
        return LaurentPoly(tuple((d * n, c) for d, c in self._terms))

    def evaluate(self, x: int) -> int:
        """Evaluate at an integer point; requires no negative degrees."""
        if self._terms and self._terms[0][0] < 0:
            raise ValueError("cannot evaluate a proper Laurent polynomial at an int")
        return sum(c * x**d for d, c in self._terms)

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- printing -----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (d, c) in enumerate(self._terms):
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                var = "t" if d == 1 else f"t^{d}"
                body = var if mag == 1 else f"{mag}*{var}"
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly('{self}')"


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
T = LaurentPoly.term(1, 1)

_TERM_RE = re.compile(r"^(?:(\d+)\*?)?(t(?:\^(-?\d+))?)?$")


def parse_poly(text: str) -> LaurentPoly:
    """Parse the canonical text form; inverse of str().

    >>> parse_poly("1 - 3*t^3 + t^6").terms
    ((0, 1), (3, -3), (6, 1))
    >>> str(parse_poly(str(parse_poly("-t^-2 + 4"))))
    '-t^-2 + 4'
    """
    s = text.strip()
    if s == "0":
        return ZERO
    if not s:
        raise ValueError("empty polynomial string")
    # Normalize into signed chunks: split on +/- that separate terms.
    compact = s.replace(" ", "").replace("t^-", "t^~")
    chunks = re.findall(r"[+-]?[^+-]+", compact)
    if "".join(chunks) != compact:
        raise ValueError(f"dangling sign in {text!r}")
    terms = []
    for chunk in chunks:
        sign = 1
        if chunk[0] == "+":
            chunk = chunk[1:]
        elif chunk[0] == "-":
            sign = -1
            chunk = chunk[1:]
        chunk = chunk.replace("t^~", "t^-")
        m = _TERM_RE.match(chunk)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"bad polynomial term: {chunk!r}")
        coef = int(m.group(1)) if m.group(1) else 1
        if m.group(2) is None:
            deg = 0
        elif m.group(3) is None:
            deg = 1
        else:
            deg = int(m.group(3))
        terms.append((deg, sign * coef))
    return LaurentPoly(terms)


def normalize(f: LaurentPoly) -> tuple[LaurentPoly, int, int]:
    """Unit-normalize: return (canonical, sign, shift) with f = sign * t^shift * canonical.

    The canonical representative has lowest degree 0 and a positive lowest
    coefficient; it is the single equality convention for values defined only
    up to +-t^k.

    >>> normalize(parse_poly("-t^2 + t^5"))
    (LaurentPoly('1 - t^3'), -1, 2)
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no canonical form")
    shift = f.low_degree()
    sign = 1 if f.terms[0][1] > 0 else -1
    canonical = LaurentPoly(tuple((d - shift, sign * c) for d, c in f.terms))
    return canonical, sign, shift


def canonical(f: LaurentPoly) -> LaurentPoly:
    """The unit-normalized representative of f (f must be nonzero)."""
    return normalize(f)[0]


def equal_up_to_unit(f: LaurentPoly, g: LaurentPoly) -> bool:
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    return canonical(f) == canonical(g)


def exact_div(num: LaurentPoly, den: LaurentPoly) -> Optional[LaurentPoly]:
    """Exact quotient num/den in Z[t, 1/t], or None if den does not divide num.

    >>> exact_div(parse_poly("1 - t^3"), parse_poly("1 - t"))
    LaurentPoly('1 + t + t^2')
    >>> exact_div(parse_poly("1 - t^3"), parse_poly("1 - t^2")) is None
    True
    """
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return ZERO
    ncan, nsign, nshift = normalize(num)
    dcan, dsign, dshift = normalize(den)
    # Long division of ordinary polynomials, descending degree.
    cur = dict(ncan.terms)
    dlead_deg = dcan.degree()
    dlead_coef = dcan.terms[-1][1]
    qterms: dict[int, int] = {}
    while cur:
        deg = max(cur)
        if deg < dlead_deg:
            return None
        lead = cur[deg]
        q, r = divmod(lead, dlead_coef)
        if r:
            return None
        qdeg = deg - dlead_deg
        qterms[qdeg] = q
        for d, c in dcan.terms:
            nd = d + qdeg
            val = cur.get(nd, 0) - q * c
            if val:
                cur[nd] = val
            else:
                cur.pop(nd, None)
    quot = LaurentPoly(qterms.items())
    return (nsign * dsign) * quot.shifted(nshift - dshift)


def supported_on_multiples(f: LaurentPoly, n: int) -> bool:
    """True iff every nonzero term of f has degree divisible by n.

    Callers interested in "equal to a polynomial in t^n up to +-t^k" should
    pass the canonical form of f.
    """
    if n <= 0:
        raise ValueError("modulus must be positive")
    return all(d % n == 0 for d, _ in f.terms)


def poly_from_coeffs(coeffs: Iterable[int], low: int = 0) -> LaurentPoly:
    """Build a polynomial from dense coefficients starting at degree `low`."""
    return LaurentPoly((low + i, c) for i, c in enumerate(coeffs))


# ---------------------------------------------------------------------------
# Matrices over Z[t, 1/t]
# ---------------------------------------------------------------------------


class PolyMatrix:
    """A square matrix of LaurentPoly entries."""

    __slots__ = ("dim", "rows")

    def __init__(self, rows):
        self.rows = tuple(tuple(row) for row in rows)
        self.dim = len(self.rows)
        if self.dim < 1 or any(len(row) != self.dim for row in self.rows):
            raise ValueError("PolyMatrix must be square with dim >= 1")

    @staticmethod
    def identity(dim: int) -> "PolyMatrix":
        return PolyMatrix(
            [[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)]
        )

    @staticmethod
    def from_int_matrix(m: Mat, scale: LaurentPoly = ONE) -> "PolyMatrix":
        return PolyMatrix([[scale * int(x) for x in row] for row in m])

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new_row = []
            for col in cols:
                acc = ZERO
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                new_row.append(acc)
            out.append(new_row)
        return PolyMatrix(out)

    def scale(self, f: LaurentPoly) -> "PolyMatrix":
        return PolyMatrix([[f * e for e in row] for row in self.rows])

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.rows)
        return f"PolyMatrix[{body}]"

    # -- determinants -----------------------------------------------------

    def det(self) -> LaurentPoly:
        """Exact determinant; picks an algorithm suited to the dimension."""
        if self.dim <= 4:
            return self.det_cofactor()
        return self.det_interpolate()

    def det_cofactor(self) -> LaurentPoly:
        return _det_cofactor(self.rows)

    def det_bareiss(self) -> LaurentPoly:
        """Fraction-free elimination directly over Z[t, 1/t]."""
        n = self.dim
        m = [list(row) for row in self.rows]
        sign = 1
        prev = ONE
        for k in range(n - 1):
            if m[k][k].is_zero():
                pivot = next(
                    (i for i in range(k + 1, n) if not m[i][k].is_zero()), None
                )
                if pivot is None:
                    return ZERO
                m[k], m[pivot] = m[pivot], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                    if num.is_zero():
                        m[i][j] = ZERO
                        continue
                    q = exact_div(num, prev)
                    if q is None:
                        raise ExactnessError("Bareiss division was not exact")
                    m[i][j] = q
                m[i][k] = ZERO
            prev = m[k][k]
        result = m[n - 1][n - 1]
        return -result if sign < 0 else result

    def det_interpolate(self) -> LaurentPoly:
        """Evaluate at enough integer points and interpolate exactly.

        Row units t^min are cleared first so all entries are ordinary
        polynomials; the degree bound is derived per-matrix from the entries,
        never guessed.
        """
        n = self.dim
        total_shift = 0
        cleared: list[list[LaurentPoly]] = []
        bound = 0
        for row in self.rows:
            nonzero = [e for e in row if not e.is_zero()]
            if not nonzero:
                return ZERO
            low = min(e.low_degree() for e in nonzero)
            total_shift += low
            shifted = [e.shifted(-low) if not e.is_zero() else e for e in row]
            cleared.append(shifted)
            bound += max(e.degree() for e in shifted if not e.is_zero())
        points = _interpolation_points(bound + 1)
        values = []
        for x in points:
            evaluated = tuple(
                tuple(e.evaluate(x) for e in row) for row in cleared
            )
            values.append(int_det(evaluated))
        coeffs = _newton_interpolate(points, values)
        return poly_from_coeffs(coeffs, low=total_shift)

    def charpoly(self) -> LaurentPoly:
        """det(t*I - M); here the matrix must have constant entries."""
        shifted = PolyMatrix.identity(self.dim).scale(T) - self
        return shifted.det()


def _det_cofactor(rows) -> LaurentPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = ZERO
    rest = [row[1:] for row in rows]
    for i in range(n):
        lead = rows[i][0]
        if lead.is_zero():
            continue
        minor = [rest[r] for r in range(n) if r != i]
        term = lead * _det_cofactor(minor)
        total = total + term if i % 2 == 0 else total - term
    return total


def _interpolation_points(count: int) -> list[int]:
    pts = [0]
    k = 1
    while len(pts) < count:
        pts.append(k)
        if len(pts) < count:
            pts.append(-k)
        k += 1
    return pts[:count]


def _newton_interpolate(points: list[int], values: list[int]) -> list[int]:
    """Coefficients (constant first) of the poly through the given points."""
    n = len(points)
    divided = [Fraction(v) for v in values]
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (
                points[i] - points[i - level]
            )
    # Expand the Newton form into monomial coefficients.
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)] + [Fraction(0)] * (n - 1)  # running product poly
    basis_deg = 0
    for k in range(n):
        ck = divided[k]
        if ck:
            for i in range(basis_deg + 1):
                coeffs[i] += ck * basis[i]
        if k + 1 < n:
            xk = points[k]
            for i in range(basis_deg + 1, 0, -1):
                basis[i] = basis[i - 1] - xk * basis[i]
            basis[0] = -xk * basis[0]
            basis_deg += 1
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ExactnessError("interpolated determinant was not integral")
        out.append(int(c))
    return out


def int_charpoly(m: Mat) -> LaurentPoly:
    """Characteristic polynomial det(t*I - m) of an integer matrix."""
    return PolyMatrix.from_int_matrix(m).charpoly()


def resultant(f: LaurentPoly, g: LaurentPoly) -> int:
    """Resultant of two nonzero integer polynomials (nonnegative degrees)."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined here")
    if f.low_degree() < 0 or g.low_degree() < 0:
        raise ValueError("resultant expects ordinary polynomials")
    m, n = f.degree(), g.degree()
    if m == 0:
        return f.coeff(0) ** n
    if n == 0:
        return g.coeff(0) ** m
    size = m + n
    fc = [f.coeff(d) for d in range(m, -1, -1)]
    gc = [g.coeff(d) for d in range(n, -1, -1)]
    rows = []
    for i in range(n):
        rows.append(tuple([0] * i + fc + [0] * (size - m - 1 - i)))
    for i in range(m):
        rows.append(tuple([0] * i + gc + [0] * (size - n - 1 - i)))
    return int_det(tuple(rows))
