"""Twisted Alexander polynomials and verdicts on their factorized form.

The invariant of a deficiency-one presentation P and a representation rho
is computed as a determinant ratio: map each Fox derivative dR_i/dx_j
through Phi(w) = rho(w) * t^(exponent sum of w), assemble the block matrix,
delete the column of one generator g whose denominator det Phi(g - 1) is
nonzero, and divide:

    invariant = det(remaining blocks) / det(Phi(g - 1))

The ratio is well defined up to +-t^k and is independent of the deleted
column; both facts are exercised by the test suite rather than assumed.
For representations of dimension > 1 the division is exact in Z[t, 1/t];
for the trivial 1-dimensional representation the ratio Delta(t)/(1 - t) is
kept as a numerator/denominator pair and `invariant` is None.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exactalg import (
    ExactnessError,
    LaurentPoly,
    PolyMatrix,
    ZERO,
    canonical,
    equal_up_to_unit,
    exact_div,
    supported_on_multiples,
)
from .groupcalc import GroupRingElem, Presentation, Word
from .intmat import Mat, identity, mat_mul
from .metabelian import (
    MetaElem,
    Representation,
    a4_group,
    a4_irreducible_rep,
    find_homs,
    perm_rep,
)
from .twobridge import FractionR, two_bridge_alexander, wirtinger_presentation


def phi_map(e: GroupRingElem, rho: Representation) -> PolyMatrix:
    """Sum of coeff * rho(word) * t^(exponent sum) over the element's terms."""
    series: dict[int, list[list[int]]] = {}
    for word, coef in e.terms.items():
        deg = word.exponent_sum()
        m = rho.word_image(word)
        acc = series.setdefault(deg, [[0] * rho.dim for _ in range(rho.dim)])
        for i in range(rho.dim):
            row = m[i]
            arow = acc[i]
            for j in range(rho.dim):
                arow[j] += coef * row[j]
    return _series_to_matrix(series, rho.dim)


def _series_to_matrix(series: dict[int, list[list[int]]], dim: int) -> PolyMatrix:
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            row.append(LaurentPoly((deg, m[i][j]) for deg, m in series.items()))
        rows.append(row)
    return PolyMatrix(rows)


def _fox_images(rel: Word, rho: Representation) -> dict[int, dict[int, list[list[int]]]]:
    """Phi(dR/dg) for every generator g at once, one pass over the relator.

    Returns generator -> (degree -> integer matrix) tables; equals
    phi_map(fox_derivative(rel, g), rho) entrywise.
    """
    dim = rho.dim
    out: dict[int, dict[int, list[list[int]]]] = {}
    prefix: Mat = identity(dim)
    deg = 0

    def add(gen: int, sign: int, m: Mat, d: int) -> None:
        series = out.setdefault(gen, {})
        acc = series.setdefault(d, [[0] * dim for _ in range(dim)])
        for i in range(dim):
            arow = acc[i]
            mrow = m[i]
            for j in range(dim):
                arow[j] += sign * mrow[j]

    for letter in rel:
        gen = abs(letter)
        if letter > 0:
            add(gen, 1, prefix, deg)
            prefix = mat_mul(prefix, rho.images[gen])
            deg += 1
        else:
            prefix = mat_mul(prefix, rho.inv_images[gen])
            deg -= 1
            add(gen, -1, prefix, deg)
    return out


def _phi_generator_minus_one(gen: int, rho: Representation) -> PolyMatrix:
    e = GroupRingElem([(Word((gen,)), 1), (Word(), -1)])
    return phi_map(e, rho)


@dataclass(frozen=True)
class TwistedResult:
    """Determinant ratio for (presentation, representation).

    numerator and denominator are unit-normalized; `invariant` is the exact
    quotient when the division lands in Z[t, 1/t] (always the case for the
    integral representations this package constructs with dim > 1), else
    None and the value is the fraction numerator/denominator.
    """

    numerator: LaurentPoly
    denominator: LaurentPoly
    invariant: Optional[LaurentPoly]
    deleted_generator: str

    def ratio_equals(self, other: "TwistedResult") -> bool:
        """Equality of the two ratios up to +-t^k (cross-multiplied)."""
        return equal_up_to_unit(
            self.numerator * other.denominator, other.numerator * self.denominator
        )

    def times_poly(self, f: LaurentPoly) -> LaurentPoly:
        """Canonical value of (ratio * f); requires the product to be exact."""
        q = exact_div(self.numerator * f, self.denominator)
        if q is None:
            raise ExactnessError("ratio times polynomial was not polynomial")
        return canonical(q)


class NoUsableColumnError(RuntimeError):
    """Every candidate denominator det Phi(g - 1) vanished."""


def twisted_alexander(p: Presentation, rho: Representation,
                      delete: Optional[str] = None) -> TwistedResult:
    """Wada-style determinant ratio; deletes `delete` (default: the last
    generator, falling back to any generator with nonzero denominator)."""
    if not p.deficiency_one():
        raise ValueError("presentation must have one fewer relator than generators")
    if delete is not None:
        order = [p.gen_index(delete)]
    else:
        order = list(range(p.num_generators, 0, -1))
    fox_tables = [_fox_images(rel, rho) for rel in p.relators]
    for gen in order:
        den = _phi_generator_minus_one(gen, rho).det()
        if den.is_zero():
            continue
        num = _numerator_det(p, rho, fox_tables, gen)
        invariant = None
        if not num.is_zero():
            q = exact_div(num, den)
            if q is not None:
                invariant = canonical(q)
        elif rho.dim > 1:
            invariant = ZERO
        name = p.generators[gen - 1]
        return TwistedResult(
            numerator=canonical(num) if not num.is_zero() else ZERO,
            denominator=canonical(den),
            invariant=invariant,
            deleted_generator=name,
        )
    raise NoUsableColumnError("no generator has nonzero det Phi(g - 1)")


def _numerator_det(p: Presentation, rho: Representation,
                   fox_tables, delete_gen: int) -> LaurentPoly:
    kept = [g for g in range(1, p.num_generators + 1) if g != delete_gen]
    dim = rho.dim
    zero_block_row = (ZERO,) * dim
    rows = []
    for table in fox_tables:
        blocks = []
        for g in kept:
            series = table.get(g, {})
            blocks.append(_series_to_matrix(series, dim) if series else None)
        for i in range(dim):
            row = []
            for blk in blocks:
                row.extend(blk.rows[i] if blk is not None else zero_block_row)
            rows.append(row)
    return PolyMatrix(rows).det()


# ---------------------------------------------------------------------------
# Verdicts on the factorized form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Outcome of testing twisted = [Delta/(1-t)] * (polynomial in t^n)."""

    holds: bool
    phi: Optional[LaurentPoly]
    n: int
    details: str = ""


def check_factorization(twisted: LaurentPoly, delta: LaurentPoly, n: int) -> Verdict:
    """Extract phi = twisted * (1-t) / delta and test its t^n support.

    All equalities are up to +-t^k: phi is unit-normalized before the
    support test, so a stray unit never causes a false negative.
    """
    if delta.is_zero():
        raise ValueError("delta must be nonzero")
    if n < 2:
        raise ValueError("need n >= 2")
    one_minus_t = LaurentPoly([(0, 1), (1, -1)])
    quotient = exact_div(twisted * one_minus_t, delta)
    if quotient is None:
        return Verdict(False, None, n, "Delta/(1-t) does not divide the invariant")
    if quotient.is_zero():
        return Verdict(False, None, n, "invariant is zero")
    phi = canonical(quotient)
    if not supported_on_multiples(phi, n):
        bad = next(d for d, _ in phi.terms if d % n)
        return Verdict(False, phi, n, f"phi has a term of degree {bad} not divisible by {n}")
    return Verdict(True, phi, n, "")


def standard_a4_assignment(p: Presentation) -> dict[str, MetaElem]:
    """f(x) = s, f(y) = s b1 in M(3|2,2), i.e. the images X and Y of xi0."""
    group = a4_group()
    if p.num_generators != 2:
        raise ValueError("standard assignment applies to 2-generator presentations")
    return {p.generators[0]: group.s(),
            p.generators[1]: group.mul(group.s(), group.b(1))}


def a4_twisted(r: FractionR) -> LaurentPoly:
    """Canonical 3-dimensional twisted polynomial of K(r) for the standard
    assignment x -> s, y -> s b1; raises NotHomomorphismError when that
    assignment is not a homomorphism for this fraction."""
    p = wirtinger_presentation(r)
    rho = a4_irreducible_rep(standard_a4_assignment(p), p)
    result = twisted_alexander(p, rho)
    if result.invariant is None:
        raise ExactnessError("3-dimensional invariant was not polynomial")
    return result.invariant


def check_a4_form(r: FractionR) -> Verdict:
    """Verify, for a 2-bridge knot with an A4 representation, that the
    3-dimensional twisted polynomial is +-t^k times a polynomial in t^3,
    and that the 4-dimensional permutation invariant splits off Delta/(1-t).
    """
    p = wirtinger_presentation(r)
    group = a4_group()
    std = standard_a4_assignment(p)
    homs = find_homs(p, group)
    surjective = [h for h in homs if h.surjective]
    if not surjective:
        raise ValueError(f"G(K({r})) has no surjection onto A4")
    images = None
    for h in surjective:
        if all(h.images[g] == std[g] for g in p.generators):
            images = std
            break
    if images is None:
        images = surjective[0].images
    rho3 = a4_irreducible_rep(images, p)
    res3 = twisted_alexander(p, rho3)
    if res3.invariant is None:
        raise ExactnessError("3-dimensional invariant was not polynomial")
    value = res3.invariant
    holds = supported_on_multiples(value, 3)

    # Product identity: 4-dim permutation invariant = [Delta/(1-t)] * value.
    rho4 = perm_rep(images, group, p)
    res4 = twisted_alexander(p, rho4)
    delta = two_bridge_alexander(r)
    one_minus_t = LaurentPoly([(0, 1), (1, -1)])
    if res4.invariant is None or not equal_up_to_unit(
        res4.invariant * one_minus_t, delta * value
    ):
        raise ExactnessError(
            f"permutation invariant of K({r}) does not split off Delta/(1-t)")
    details = "" if holds else "3-dim invariant not supported on multiples of 3"
    return Verdict(holds, value if holds else None, 3, details)
