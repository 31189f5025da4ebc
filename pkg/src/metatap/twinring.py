"""The 3x3-matrix quotient algebra of Z[A4] and the recursion path.

Writing X, Y for the two generating matrices of the irreducible
3-dimensional representation of A4, the group algebra Z[A4] maps onto a ring
of 3x3 integer matrices; that image is faithful for everything we need, so
algebra elements are stored simply as their matrices.  On top of it live
Laurent polynomials with matrix coefficients (APoly).

A matrix Laurent polynomial is *twin* when its coefficient at t^j lies in
span{I, XYX} for j = 0 mod 3, in span{X+Y} for j = 1 mod 3, and in
span{Xinv+Yinv} for j = 2 mod 3, with the extra pairing that the
coefficients a at t^(3j+1) and b at t^(3j+2) agree for every j.  Twin
polynomials form a subring, their 3x3 determinants are supported on degrees
divisible by 3, and the determinant collapses to a closed form in the four
integer coefficient series.

For a 2-bridge fraction with continued-fraction shape
[3k1, 2m1, ..., 2m_{q-1}, 3kq] the series computed by `recursion_series`
has, after multiplying by y^-1 t^-1, exactly this twin structure, and

    twisted = det(recursion_series(form)) * (1 - t^3)

recovers the 3-dimensional twisted polynomial of the knot, giving a second
computation path fully independent of Fox calculus.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .exactalg import LaurentPoly, PolyMatrix, canonical
from .intmat import (
    Mat,
    identity,
    is_zero,
    mat_add,
    mat_inverse,
    mat_mul,
    mat_neg,
    mat_pow,
    mat_scale,
    zeros,
)
from .metabelian import XI0_X as X
from .metabelian import XI0_Y as Y
from .twobridge import FractionR, H3Form, h3_expand

XINV: Mat = mat_inverse(X)
YINV: Mat = mat_inverse(Y)
XYX: Mat = mat_mul(mat_mul(X, Y), X)
YX: Mat = mat_mul(Y, X)
XINV_YINV: Mat = mat_mul(XINV, YINV)
X_PLUS_Y: Mat = mat_add(X, Y)
XINV_PLUS_YINV: Mat = mat_add(XINV, YINV)

I3: Mat = identity(3)
Z3: Mat = zeros(3)


class APoly:
    """Laurent polynomial in t with 3x3 integer-matrix coefficients.

    Multiplication respects the noncommutativity of the coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[tuple[int, Mat]] = ()):
        acc: dict[int, Mat] = {}
        for deg, m in coeffs:
            acc[deg] = mat_add(acc[deg], m) if deg in acc else m
        self.coeffs = {d: m for d, m in acc.items() if not is_zero(m)}

    @staticmethod
    def zero() -> "APoly":
        return APoly()

    @staticmethod
    def one() -> "APoly":
        return APoly([(0, I3)])

    @staticmethod
    def monomial(m: Mat, deg: int = 0) -> "APoly":
        return APoly([(deg, m)])

    def __add__(self, other: "APoly") -> "APoly":
        return APoly(list(self.coeffs.items()) + list(other.coeffs.items()))

    def __sub__(self, other: "APoly") -> "APoly":
        return APoly(
            list(self.coeffs.items())
            + [(d, mat_neg(m)) for d, m in other.coeffs.items()]
        )

    def __neg__(self) -> "APoly":
        return APoly([(d, mat_neg(m)) for d, m in self.coeffs.items()])

    def __mul__(self, other):
        if isinstance(other, int):
            return APoly([(d, mat_scale(other, m)) for d, m in self.coeffs.items()])
        acc: dict[int, Mat] = {}
        for d1, m1 in self.coeffs.items():
            for d2, m2 in other.coeffs.items():
                d = d1 + d2
                prod = mat_mul(m1, m2)
                acc[d] = mat_add(acc[d], prod) if d in acc else prod
        return APoly(acc.items())

    __rmul__ = __mul__

    def shifted(self, k: int) -> "APoly":
        return APoly([(d + k, m) for d, m in self.coeffs.items()])

    def __eq__(self, other) -> bool:
        return isinstance(other, APoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, deg: int) -> Mat:
        return self.coeffs.get(deg, Z3)

    def to_matrix(self) -> PolyMatrix:
        """The 3x3 matrix of LaurentPoly entries."""
        rows = []
        for i in range(3):
            row = []
            for j in range(3):
                row.append(LaurentPoly((d, m[i][j]) for d, m in self.coeffs.items()))
            rows.append(row)
        return PolyMatrix(rows)

    def det(self) -> LaurentPoly:
        return self.to_matrix().det()

    def dump(self) -> str:
        """Diagnostic form: one line per degree, 't^d: [[...],[...],[...]]'."""
        lines = []
        for d in sorted(self.coeffs):
            m = self.coeffs[d]
            body = "[" + ",".join("[" + ",".join(str(x) for x in row) + "]" for row in m) + "]"
            lines.append(f"t^{d}: {body}")
        return "\n".join(lines)

    def __repr__(self):
        return f"APoly<{len(self.coeffs)} degrees>"


ONE_A = APoly.one()
# Graded letters: a group element w contributes its matrix at degree
# (exponent sum of w), so x sits at t, y at t, and inverses at t^-1.
XT = APoly.monomial(X, 1)
YT = APoly.monomial(Y, 1)
XINV_T = APoly.monomial(XINV, -1)
YINV_T = APoly.monomial(YINV, -1)


def yx_geometric(m: int) -> APoly:
    """Truncated geometric series in (yx) t^2.

    Nonnegative m gives 1 + (yx)t^2 + ... + (yx)^m t^(2m); negative m gives
    (x^-1 y^-1)t^-2 + ... + (x^-1 y^-1)^|m| t^(-2|m|).
    """
    if m >= 0:
        return APoly((2 * j, mat_pow(YX, j)) for j in range(m + 1))
    return APoly((-2 * j, mat_pow(XINV_YINV, j)) for j in range(1, -m + 1))


def _power_term(base: Mat, exp: int, deg_per: int, tail: Mat = None,
                tail_deg: int = 0) -> APoly:
    m = mat_pow(base, exp)
    deg = deg_per * exp
    if tail is not None:
        m = mat_mul(m, tail)
        deg += tail_deg
    return APoly.monomial(m, deg)


def recursion_series(form: H3Form) -> APoly:
    """The graded algebra series of a continued-fraction form, built by
    structural recursion over its prefixes.

    Each group-element factor carries t to its exponent sum, e.g. (yx)^j
    sits at degree 2j and (yx)^j y at degree 2j + 1.  The determinant of the
    result, times (1 - t^3), is the twisted polynomial of the knot.

    Convention note: the recursion weights come from the negative
    continued-fraction convention 1/(a1 - 1/(a2 - ...)), so the weight of a
    prefix is the *negated* even-position coefficient -m_j of our
    plus-convention entry list.  This calibration, and the j = 1..s range of
    the final sum in the odd-negative branch, are locked in by the
    cross-path equality tests against Fox calculus.
    """
    lam = APoly.zero()          # series of the empty prefix
    history: list[APoly] = []   # series of r_1 .. r_{j}
    for q in range(1, form.q + 1):
        k = form.ks[q - 1]
        # weighted sum over shorter prefixes: sum_j -m_j (x t - 1) y^-1 t^-1 lam_j
        mix = APoly.zero()
        for j in range(q - 1):
            contrib = (XT - ONE_A) * YINV_T * history[j]
            mix = mix + (-form.ms[j]) * contrib
        if k > 0 and k % 2 == 0:          # k = 2s
            s = k // 2
            lam_next = (ONE_A - YT) * yx_geometric(3 * s - 1) * YT * mix
            lam_next = lam_next + _power_term(YX, 3 * s, 2) * lam
            for j in range(1, s + 1):
                lam_next = lam_next - _power_term(YX, 3 * s - 3 * j + 2, 2)
                lam_next = lam_next + _power_term(YX, 3 * s - 3 * j, 2, Y, 1)
        elif k > 0:                        # k = 2s - 1
            s = (k + 1) // 2
            head = (ONE_A - YT) * yx_geometric(3 * s - 2) * YT \
                + _power_term(YX, 3 * s - 1, 2)
            lam_next = head * mix
            lam_next = lam_next - _power_term(YX, 3 * s - 1, 2) * YINV_T * lam
            for j in range(1, s + 1):
                lam_next = lam_next + _power_term(YX, 3 * s - 3 * j, 2, Y, 1)
            for j in range(1, s):
                lam_next = lam_next - _power_term(YX, 3 * s - 3 * j - 1, 2)
        elif k % 2 == 0:                   # k = -2s
            s = -k // 2
            lam_next = (YT - ONE_A) * yx_geometric(-3 * s) * YT * mix
            lam_next = lam_next + _power_term(XINV_YINV, 3 * s, -2) * lam
            for j in range(1, s + 1):
                lam_next = lam_next - _power_term(
                    XINV_YINV, 3 * s - 3 * j + 2, -2, XINV, -1)
                lam_next = lam_next + _power_term(XINV_YINV, 3 * s - 3 * j + 1, -2)
        else:                              # k = -(2s + 1)
            s = (-k - 1) // 2
            head = (YT - ONE_A) * yx_geometric(-(3 * s + 1)) * YT \
                + _power_term(XINV_YINV, 3 * s + 1, -2)
            lam_next = head * mix
            lam_next = lam_next - _power_term(XINV_YINV, 3 * s + 1, -2) * YINV_T * lam
            for j in range(0, s + 1):
                lam_next = lam_next + _power_term(XINV_YINV, 3 * s - 3 * j + 1, -2)
            for j in range(1, s + 1):
                lam_next = lam_next - _power_term(
                    XINV_YINV, 3 * s - 3 * j + 2, -2, XINV, -1)
        lam = lam_next
        history.append(lam)
    return lam


# ---------------------------------------------------------------------------
# Twin decomposition
# ---------------------------------------------------------------------------


class NotTwinError(ValueError):
    """Some coefficient is outside the prescribed span; names the degree."""

    def __init__(self, degree: int, reason: str):
        super().__init__(f"degree {degree}: {reason}")
        self.degree = degree


@dataclass(frozen=True)
class TwinDecomp:
    """Integer coefficient series of a twin polynomial.

    c[j], cprime[j] are the coefficients of I and XYX at t^(3j); a[j] is the
    coefficient of (X+Y) at t^(3j+1); b[j] of (Xinv+Yinv) at t^(3j+2).
    The twin pairing requires a[j] == b[j] for all j.
    """

    c: dict[int, int]
    cprime: dict[int, int]
    a: dict[int, int]
    b: dict[int, int]

    def to_apoly(self) -> APoly:
        terms = []
        for j, v in self.c.items():
            terms.append((3 * j, mat_scale(v, I3)))
        for j, v in self.cprime.items():
            terms.append((3 * j, mat_scale(v, XYX)))
        for j, v in self.a.items():
            terms.append((3 * j + 1, mat_scale(v, X_PLUS_Y)))
        for j, v in self.b.items():
            terms.append((3 * j + 2, mat_scale(v, XINV_PLUS_YINV)))
        return APoly(terms)


def twin_decompose(f: APoly) -> TwinDecomp:
    """Solve every coefficient against its prescribed basis; raises
    NotTwinError at the first offending degree."""
    c: dict[int, int] = {}
    cprime: dict[int, int] = {}
    a: dict[int, int] = {}
    b: dict[int, int] = {}
    for deg in sorted(f.coeffs):
        m = f.coeffs[deg]
        j, res = divmod(deg, 3)
        if res == 0:
            # m = u*I + v*XYX; XYX has entry -1 at (1,0) and I has 0 there.
            v = -m[1][0]
            u = m[0][0] + v  # (0,0) entry is u - v
            if mat_add(mat_scale(u, I3), mat_scale(v, XYX)) != m:
                raise NotTwinError(deg, "coefficient not in span{I, XYX}")
            if u:
                c[j] = u
            if v:
                cprime[j] = v
        elif res == 1:
            u = -m[0][0]
            if mat_scale(u, X_PLUS_Y) != m:
                raise NotTwinError(deg, "coefficient not in span{X+Y}")
            if u:
                a[j] = u
        else:
            u = -m[0][0]
            if mat_scale(u, XINV_PLUS_YINV) != m:
                raise NotTwinError(deg, "coefficient not in span{Xinv+Yinv}")
            if u:
                b[j] = u
    for j in set(a) | set(b):
        if a.get(j, 0) != b.get(j, 0):
            raise NotTwinError(
                3 * j + 1, f"pairing a={a.get(j, 0)} vs b={b.get(j, 0)} differs")
    return TwinDecomp(c, cprime, a, b)


def twin_check(f: APoly) -> Optional[TwinDecomp]:
    try:
        return twin_decompose(f)
    except NotTwinError:
        return None


def twin_determinant(d: TwinDecomp) -> LaurentPoly:
    """Closed-form determinant of the matrix form of a twin polynomial.

    With C = sum c_j t^(3j), C' = sum c'_j t^(3j), A = sum a_j t^(3j):

        det = (C + C') * ((C - C')^2 - 4 t^3 A^2)

    This equals the direct 3x3 determinant exactly (not just up to units),
    and is visibly supported on degrees divisible by 3.
    """
    cpoly = LaurentPoly((3 * j, v) for j, v in d.c.items())
    cppoly = LaurentPoly((3 * j, v) for j, v in d.cprime.items())
    apoly = LaurentPoly((3 * j, v) for j, v in d.a.items())
    t3 = LaurentPoly.term(1, 3)
    diff = cpoly - cppoly
    return (cpoly + cppoly) * (diff * diff - 4 * t3 * apoly * apoly)


# ---------------------------------------------------------------------------
# The full recursion path
# ---------------------------------------------------------------------------

_BASE_INVARIANT = LaurentPoly([(0, 1), (3, -1)])  # value for the trefoil 1/3


class NotInH3Error(ValueError):
    """No continued-fraction certificate was found within search bounds."""


def normalized_series(form: H3Form) -> APoly:
    """y^-1 t^-1 times the recursion series; this is the twin object."""
    return APoly.monomial(YINV, -1) * recursion_series(form)


def twisted_via_recursion(r: FractionR) -> LaurentPoly:
    """Twisted polynomial of K(r) through the continued-fraction recursion:
    det of the series times (1 - t^3), unit-normalized.  Raises NotInH3Error
    when no certificate is found; use the Fox-calculus path then."""
    form = h3_expand(r)
    if form is None:
        raise NotInH3Error(
            f"{r} not recognized in H(3) within search bounds; "
            "compute via the direct Fox-calculus path instead")
    return twisted_from_form(form)


def twisted_from_form(form: H3Form) -> LaurentPoly:
    det = recursion_series(form).det()
    return canonical(det * _BASE_INVARIANT)
