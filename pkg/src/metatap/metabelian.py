"""Metabelian target groups Z/n x| (Z/p)^k and representations of knot groups.

The group M(n|p,k) is the semidirect product of Z/n = <s> acting on the
elementary abelian group (Z/p)^k through the companion matrix T of the n-th
cyclotomic polynomial mod p: conjugation satisfies s a s^-1 = a' where the
coefficient vector of a' is vec(a) * T (row vector times matrix).  Every
element has the normal form s^ell * b1^v1 ... bk^vk.

Right multiplication on the right cosets of <s> gives a permutation
representation on p^k points and hence an integral matrix representation of
dimension p^k.  For M(3|2,2), which is the alternating group A4, there is
additionally the faithful irreducible 3-dimensional integral representation
generated by

    xi0(s) = [[-1,1,0],[-1,0,0],[-1,0,1]]   (the image of the 3-cycle x)
    xi0(s b1) = [[0,0,-1],[0,1,-1],[1,0,-1]]  (the image of y)

which drives the whole t^3-support story for 2-bridge knots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterator, Optional

from .exactalg import LaurentPoly, canonical, poly_from_coeffs, exact_div, resultant
from .groupcalc import Presentation, Word
from .intmat import Mat, identity, mat, mat_inverse, mat_mul


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def euler_phi(n: int) -> int:
    result = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, constant first."""
    if n == 1:
        return (-1, 1)
    f = poly_from_coeffs([-1] + [0] * (n - 1) + [1])  # z^n - 1
    for d in range(1, n):
        if n % d == 0:
            q = exact_div(f, poly_from_coeffs(cyclotomic_coeffs(d)))
            assert q is not None
            f = q
    return tuple(f.coeff(i) for i in range(f.degree() + 1))


def multiplicative_order(a: int, n: int) -> int:
    a %= n
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    power, order = a, 1
    while power != 1:
        power = power * a % n
        order += 1
    return order


def _companion_mod(coeffs: tuple[int, ...], p: int) -> Mat:
    """Companion matrix with subdiagonal ones and last column -coefficients.

    This is the form for which row vectors transform correctly under the
    conjugation convention vec(s a s^-1) = vec(a) * T.
    """
    k = len(coeffs) - 1
    rows = []
    for i in range(k):
        row = [0] * k
        if i >= 1:
            row[i - 1] = 1
        row[k - 1] = (row[k - 1] - coeffs[i]) % p
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class MetaElem:
    """Normal form s^ell * b^vec inside a fixed MetaGroup."""

    group: "MetaGroup"
    ell: int
    vec: tuple[int, ...]

    def __str__(self) -> str:
        parts = []
        if self.ell == 1:
            parts.append("s")
        elif self.ell:
            parts.append(f"s^{self.ell}")
        for i, v in enumerate(self.vec, start=1):
            if v == 1:
                parts.append(f"b{i}")
            elif v:
                parts.append(f"b{i}^{v}")
        return " ".join(parts) or "1"

    def __repr__(self) -> str:
        return f"<{self} in {self.group.name()}>"


class MixedGroupError(ValueError):
    pass


class MetaGroup:
    """The metabelian group M(n|p,k) with its companion-matrix action."""

    def __init__(self, n: int, p: int):
        if n < 2:
            raise ValueError("need n >= 2")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if n % p == 0:
            raise ValueError(f"need gcd(n, p) = 1, got n={n}, p={p}")
        self.n = n
        self.p = p
        coeffs = cyclotomic_coeffs(n)
        self.k = len(coeffs) - 1
        self.T = _companion_mod(coeffs, p)
        self.irreducible = multiplicative_order(p, n) == self.k
        # T^n = I, so negative powers fold into 0..n-1.
        self._T_pow = [identity(self.k)]
        for _ in range(n - 1):
            self._T_pow.append(self._mat_mod(mat_mul(self._T_pow[-1], self.T)))

    def _mat_mod(self, m: Mat) -> Mat:
        return tuple(tuple(x % self.p for x in row) for row in m)

    def T_power(self, e: int) -> Mat:
        return self._T_pow[e % self.n]

    # -- construction of elements ------------------------------------------

    def name(self) -> str:
        return f"M({self.n}|{self.p},{self.k})"

    def __eq__(self, other) -> bool:
        return isinstance(other, MetaGroup) and (self.n, self.p) == (other.n, other.p)

    def __hash__(self):
        return hash((self.n, self.p))

    def __repr__(self):
        return f"MetaGroup({self.n}, {self.p})"

    def order(self) -> int:
        return self.n * self.p**self.k

    def elem(self, ell: int, vec) -> MetaElem:
        v = tuple(int(x) % self.p for x in vec)
        if len(v) != self.k:
            raise ValueError(f"vector must have length {self.k}")
        return MetaElem(self, ell % self.n, v)

    def identity_elem(self) -> MetaElem:
        return self.elem(0, (0,) * self.k)

    def s(self) -> MetaElem:
        return self.elem(1, (0,) * self.k)

    def b(self, i: int) -> MetaElem:
        if not 1 <= i <= self.k:
            raise ValueError(f"b index out of range: {i}")
        return self.elem(0, tuple(1 if j == i - 1 else 0 for j in range(self.k)))

    def elements(self) -> Iterator[MetaElem]:
        for ell in range(self.n):
            for idx in range(self.p**self.k):
                yield self.elem(ell, self.vec_of_index(idx))

    # -- group law ----------------------------------------------------------

    def _vec_act(self, vec: tuple[int, ...], t_exp: int) -> tuple[int, ...]:
        m = self.T_power(t_exp)
        return tuple(
            sum(vec[i] * m[i][j] for i in range(self.k)) % self.p
            for j in range(self.k)
        )

    def mul(self, g: MetaElem, h: MetaElem) -> MetaElem:
        if g.group != self or h.group != self:
            raise MixedGroupError("operands belong to different groups")
        # s^a u s^b v = s^(a+b) (s^-b u s^b) v, and s^-1 u s has vector
        # vec(u) * T^-1 by the defining conjugation rule.
        moved = self._vec_act(g.vec, -h.ell)
        vec = tuple((x + y) % self.p for x, y in zip(moved, h.vec))
        return self.elem(g.ell + h.ell, vec)

    def inv(self, g: MetaElem) -> MetaElem:
        if g.group != self:
            raise MixedGroupError("element belongs to a different group")
        moved = self._vec_act(g.vec, g.ell)
        return self.elem(-g.ell, tuple(-x % self.p for x in moved))

    def conj_by_s(self, g: MetaElem) -> MetaElem:
        return self.mul(self.mul(self.s(), g), self.inv(self.s()))

    def word_image(self, word: Word, images: dict[int, MetaElem]) -> MetaElem:
        out = self.identity_elem()
        for letter in word:
            g = images[abs(letter)]
            out = self.mul(out, g if letter > 0 else self.inv(g))
        return out

    def parse_elem(self, text: str) -> MetaElem:
        """Parse 's b1 b4', 's^2', 'b2^3', '1' into an element."""
        out = self.identity_elem()
        for tok in text.split():
            if tok == "1":
                continue
            base, _, exp_text = tok.partition("^")
            exp = int(exp_text) if exp_text else 1
            if base == "s":
                part = self.elem(exp, (0,) * self.k)
            elif base.startswith("b"):
                part = self.b(int(base[1:]))
                part = self.elem(0, tuple(v * exp % self.p for v in part.vec))
            else:
                raise ValueError(f"bad element token {tok!r}")
            out = self.mul(out, part)
        return out

    # -- coset permutation action -------------------------------------------

    def coset_index(self, vec: tuple[int, ...]) -> int:
        idx = 0
        for v in vec:
            idx = idx * self.p + v
        return idx

    def vec_of_index(self, idx: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(idx % self.p)
            idx //= self.p
        return tuple(reversed(out))

    def coset_permutation(self, g: MetaElem) -> tuple[int, ...]:
        """Right multiplication on right cosets <s> a, indexed by vectors
        in lexicographic order: <s> a  ->  <s> (a T^-ell(g) + vec(g))."""
        if g.group != self:
            raise MixedGroupError("element belongs to a different group")
        size = self.p**self.k
        perm = []
        for idx in range(size):
            vec = self.vec_of_index(idx)
            moved = self._vec_act(vec, -g.ell)
            image = tuple((x + y) % self.p for x, y in zip(moved, g.vec))
            perm.append(self.coset_index(image))
        return tuple(perm)

    def perm_matrix(self, g: MetaElem) -> Mat:
        """Permutation matrix with rows indexed by source coset: P[i][pi(i)] = 1.

        With this convention g -> P(g) is a homomorphism for the right action.
        """
        perm = self.coset_permutation(g)
        size = len(perm)
        return tuple(
            tuple(1 if perm[i] == j else 0 for j in range(size)) for i in range(size)
        )


def cycle_type(perm: tuple[int, ...]) -> tuple[int, ...]:
    """Sorted cycle lengths of a permutation given as an image table."""
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


def build_group(n: int, p: int) -> MetaGroup:
    return MetaGroup(n, p)


def a4_group() -> MetaGroup:
    return build_group(3, 2)


def group_from_name(text: str) -> MetaGroup:
    """Parse 'A4' or 'M(n|p,k)' (k is validated against deg Phi_n)."""
    s = text.strip()
    if s.upper() == "A4":
        return a4_group()
    import re

    m = re.fullmatch(r"M\((\d+)\|(\d+),(\d+)\)", s)
    if not m:
        raise ValueError(f"bad group name {text!r}; expected A4 or M(n|p,k)")
    n, p, k = int(m.group(1)), int(m.group(2)), int(m.group(3))
    group = build_group(n, p)
    if group.k != k:
        raise ValueError(
            f"k = {k} does not match deg Phi_{n} = {group.k} in {text!r}")
    return group


# ---------------------------------------------------------------------------
# Integral representations
# ---------------------------------------------------------------------------


class NotHomomorphismError(ValueError):
    """A generator assignment fails to kill some relator."""


@dataclass
class Representation:
    """Generator images in GL(dim, Z), checked against the presentation."""

    presentation: Presentation
    dim: int
    images: dict[int, Mat]
    inv_images: dict[int, Mat] = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        from .intmat import int_det

        for g, m in self.images.items():
            if int_det(m) not in (1, -1):
                raise ValueError(f"image of generator {g} is not in GL(dim, Z)")
            if g not in self.inv_images:
                self.inv_images[g] = mat_inverse(m)
        ident = identity(self.dim)
        for i, rel in enumerate(self.presentation.relators):
            if self.word_image(rel) != ident:
                name = rel.spell(self.presentation.generators)
                raise NotHomomorphismError(
                    f"relator {i + 1} ({name}) does not map to the identity")

    def word_image(self, word: Word) -> Mat:
        out = identity(self.dim)
        for letter in word:
            m = self.images[letter] if letter > 0 else self.inv_images[-letter]
            out = mat_mul(out, m)
        return out


def trivial_rep(p: Presentation) -> Representation:
    return Representation(p, 1, {g: ((1,),) for g in range(1, p.num_generators + 1)})


def perm_rep(assignment: dict[str, MetaElem], group: MetaGroup,
             p: Presentation) -> Representation:
    """The p^k-dimensional permutation-matrix representation of an assignment."""
    images = {}
    for name in p.generators:
        if name not in assignment:
            raise ValueError(f"assignment missing generator {name!r}")
        images[p.gen_index(name)] = group.perm_matrix(assignment[name])
    label = ", ".join(f"f({g}) = {assignment[g]}" for g in p.generators)
    return Representation(p, group.p**group.k, images, label=label)


# The two generating matrices of the 3-dimensional irreducible integral
# representation of A4 = M(3|2,2); X is the image of s, Y the image of s*b1.
XI0_X: Mat = mat([[-1, 1, 0], [-1, 0, 0], [-1, 0, 1]])
XI0_Y: Mat = mat([[0, 0, -1], [0, 1, -1], [1, 0, -1]])

_XI0_B1 = mat_mul(mat_inverse(XI0_X), XI0_Y)            # image of b1
_XI0_B2 = mat_mul(mat_mul(XI0_X, _XI0_B1), mat_inverse(XI0_X))  # image of b2 = s b1 s^-1


def xi0(e: MetaElem) -> Mat:
    """The 3-dimensional irreducible image of an element of M(3|2,2)."""
    if (e.group.n, e.group.p) != (3, 2):
        raise ValueError("xi0 is defined on M(3|2,2) only")
    out = identity(3)
    for _ in range(e.ell):
        out = mat_mul(out, XI0_X)
    if e.vec[0]:
        out = mat_mul(out, _XI0_B1)
    if e.vec[1]:
        out = mat_mul(out, _XI0_B2)
    return out


def a4_irreducible_rep(assignment: dict[str, MetaElem],
                       p: Presentation) -> Representation:
    """3-dimensional representation through xi0; requires a generating image."""
    group = a4_group()
    elems = []
    images = {}
    for name in p.generators:
        if name not in assignment:
            raise ValueError(f"assignment missing generator {name!r}")
        e = assignment[name]
        if e.group != group:
            raise MixedGroupError("assignment must land in M(3|2,2)")
        elems.append(e)
        images[p.gen_index(name)] = xi0(e)
    if _closure_size(group, elems) != group.order():
        raise ValueError("assigned elements do not generate the full group")
    label = ", ".join(f"f({g}) = {assignment[g]}" for g in p.generators)
    return Representation(p, 3, images, label=label)


# ---------------------------------------------------------------------------
# Homomorphism search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomAssignment:
    """A homomorphism onto (or into) a MetaGroup, as generator images."""

    images: dict[str, MetaElem]
    surjective: bool

    def describe(self) -> str:
        body = ", ".join(f"f({g}) = {e}" for g, e in self.images.items())
        flag = "onto" if self.surjective else "not onto"
        return f"{body}  [{flag}]"


def _closure_size(group: MetaGroup, elems) -> int:
    seen = {(e.ell, e.vec) for e in elems}
    frontier = list(elems)
    gens = list(elems)
    while frontier:
        e = frontier.pop()
        for g in gens:
            for prod in (group.mul(e, g), group.mul(e, group.inv(g))):
                key = (prod.ell, prod.vec)
                if key not in seen:
                    seen.add(key)
                    frontier.append(prod)
    return len(seen)


def find_homs(p: Presentation, group: MetaGroup,
              fix: Optional[str] = None) -> list[HomAssignment]:
    """All assignments sending `fix` (default: the first generator) to s and
    every other generator into the coset s * (Z/p)^k, that kill all relators.

    Meridian generators of a knot group are all conjugate, so they must land
    in a single conjugacy class; fixing one of them to s is the standard
    normalization.  Results are tagged with a surjectivity flag.
    """
    fixed_name = fix if fix is not None else p.generators[0]
    if fixed_name not in p.generators:
        raise KeyError(f"no generator named {fixed_name!r}")
    others = [g for g in p.generators if g != fixed_name]
    size = group.p**group.k
    results = []
    counters = [0] * len(others)
    while True:
        images = {fixed_name: group.s()}
        for name, idx in zip(others, counters):
            images[name] = group.elem(1, group.vec_of_index(idx))
        by_index = {p.gen_index(name): images[name] for name in p.generators}
        if all(
            group.word_image(rel, by_index) == group.identity_elem()
            for rel in p.relators
        ):
            surjective = _closure_size(group, list(images.values())) == group.order()
            results.append(HomAssignment(images, surjective))
        # odometer over the vector indices of the non-fixed generators
        pos = len(counters) - 1
        while pos >= 0:
            counters[pos] += 1
            if counters[pos] < size:
                break
            counters[pos] = 0
            pos -= 1
        if pos < 0:
            break
    return results


def obstruction_passes(delta: LaurentPoly, n: int, p: int) -> bool:
    """Necessary condition for a surjection onto M(n|p,k): p divides the
    resultant of the Alexander polynomial with the n-th cyclotomic polynomial
    (equivalently the product of Delta at the primitive n-th roots of unity).
    """
    if delta.is_zero():
        raise ValueError("delta must be nonzero")
    phi_n = poly_from_coeffs(cyclotomic_coeffs(n))
    return resultant(canonical(delta), phi_n) % p == 0
