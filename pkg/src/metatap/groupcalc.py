"""Free-group words, integral group-ring elements, and Fox free derivatives.

A word is a tuple of nonzero signed ints: letter +k is the k-th generator
(1-based), -k its inverse, following the usual convention that an uppercase
letter denotes the inverse of the lowercase generator.  Words are stored
freely reduced, so equality of words is equality in the free group.

The Fox derivative follows the left-to-right product rule
d(uv)/dg = du/dg + u * dv/dg  with  d(g)/dg = 1  and  d(g^-1)/dg = -g^-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator


Letter = int
WordTuple = tuple[int, ...]


def reduce_letters(letters: Iterable[int]) -> WordTuple:
    """Freely reduce: cancel adjacent inverse pairs until none remain."""
    stack: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a valid letter")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


class Word:
    """A freely reduced word in a free group on numbered generators."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int] = ()):
        self.letters = reduce_letters(letters)

    @staticmethod
    def identity() -> "Word":
        return Word()

    @staticmethod
    def gen(index: int, power: int = 1) -> "Word":
        if index < 1:
            raise ValueError("generator indices are 1-based")
        sign = 1 if power > 0 else -1
        return Word([sign * index] * abs(power))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def __pow__(self, e: int) -> "Word":
        if e == 0:
            return Word()
        base = self if e > 0 else self.inverse()
        return Word(base.letters * abs(e))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def exponent_sum(self) -> int:
        """Total signed exponent over all generators (the t-grading)."""
        return sum(1 if x > 0 else -1 for x in self.letters)

    def max_generator(self) -> int:
        return max((abs(x) for x in self.letters), default=0)

    def spell(self, names: list[str] | tuple[str, ...]) -> str:
        return " ".join(
            names[abs(x) - 1] if x > 0 else names[abs(x) - 1].upper()
            for x in self.letters
        ) or "1"

    def __repr__(self) -> str:
        return f"Word({self.letters})"


IDENTITY = Word()


class GroupRingElem:
    """A finite Z-linear combination of freely reduced words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[Word, int]] = ()):
        acc: dict[Word, int] = {}
        for w, c in terms:
            if c:
                acc[w] = acc.get(w, 0) + c
        self.terms = {w: c for w, c in acc.items() if c}

    @staticmethod
    def zero() -> "GroupRingElem":
        return GroupRingElem()

    @staticmethod
    def of(word: Word, coef: int = 1) -> "GroupRingElem":
        return GroupRingElem([(word, coef)])

    @staticmethod
    def one() -> "GroupRingElem":
        return GroupRingElem([(IDENTITY, 1)])

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        return GroupRingElem(
            list(self.terms.items()) + list(other.terms.items())
        )

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        return GroupRingElem(
            list(self.terms.items()) + [(w, -c) for w, c in other.terms.items()]
        )

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem([(w, -c) for w, c in self.terms.items()])

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElem([(w, c * other) for w, c in self.terms.items()])
        acc: list[tuple[Word, int]] = []
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                acc.append((w1 * w2, c1 * c2))
        return GroupRingElem(acc)

    __rmul__ = __mul__

    def left_mul_word(self, w: Word) -> "GroupRingElem":
        return GroupRingElem([(w * v, c) for v, c in self.terms.items()])

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupRingElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "GroupRingElem(0)"
        parts = [f"{c}*{w.letters}" for w, c in sorted(
            self.terms.items(), key=lambda item: item[0].letters)]
        return "GroupRingElem(" + " + ".join(parts) + ")"


def fox_derivative(w: Word, gen: int) -> GroupRingElem:
    """Fox free derivative of w with respect to generator `gen` (1-based).

    Single left-to-right pass: the letter at position i contributes
    prefix * d(letter)/dg.
    """
    acc: list[tuple[Word, int]] = []
    prefix: list[int] = []
    for x in w:
        if x == gen:
            acc.append((Word(tuple(prefix)), 1))
            prefix.append(x)
        elif x == -gen:
            prefix.append(x)
            acc.append((Word(tuple(prefix)), -1))
        else:
            prefix.append(x)
    return GroupRingElem(acc)


def fox_derivative_recursive(w: Word, gen: int) -> GroupRingElem:
    """Brute-force oracle: peel off one letter and apply the product rule."""
    letters = w.letters
    if not letters:
        return GroupRingElem.zero()
    head, rest = letters[0], Word(letters[1:])
    if head == gen:
        d_head = GroupRingElem.one()
    elif head == -gen:
        d_head = GroupRingElem.of(Word((head,)), -1)
    else:
        d_head = GroupRingElem.zero()
    return d_head + fox_derivative_recursive(rest, gen).left_mul_word(Word((head,)))


# ---------------------------------------------------------------------------
# Finitely presented groups
# ---------------------------------------------------------------------------


class PresentationError(ValueError):
    """Malformed presentation text; carries 1-based line/column info."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Presentation:
    """A finite presentation with named generators and relator words."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.generators:
            raise ValueError("presentation needs at least one generator")
        seen = set()
        for g in self.generators:
            if not (len(g) == 1 and g.isalpha() and g.islower()):
                raise ValueError(f"generator names must be single lowercase letters: {g!r}")
            if g in seen:
                raise ValueError(f"duplicate generator {g!r}")
            seen.add(g)
        ngen = len(self.generators)
        for rel in self.relators:
            if rel.max_generator() > ngen:
                raise ValueError("relator uses an undeclared generator")

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def deficiency_one(self) -> bool:
        return len(self.relators) == self.num_generators - 1

    def gen_index(self, name: str) -> int:
        """1-based index of a generator name."""
        try:
            return self.generators.index(name) + 1
        except ValueError:
            raise KeyError(f"no generator named {name!r}") from None


def parse_presentation(text: str, name: str = "") -> Presentation:
    """Parse the presentation file format.

    One ``gens:`` line followed by one ``rel:`` line per relator.  Letters
    are whitespace separated; an uppercase letter is the inverse of the
    lowercase generator, and ``x^-1`` / ``x^3`` token forms are accepted.
    ``#`` starts a comment.
    """
    generators: list[str] = []
    relators: list[Word] = []
    saw_gens = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("gens:"):
            if saw_gens:
                raise PresentationError("duplicate gens: line", lineno, 1)
            saw_gens = True
            for tok in stripped[len("gens:"):].split():
                col = raw.index(tok) + 1
                if not (len(tok) == 1 and tok.isalpha() and tok.islower()):
                    raise PresentationError(
                        f"generator must be a single lowercase letter, got {tok!r}",
                        lineno, col)
                if tok in generators:
                    raise PresentationError(f"duplicate generator {tok!r}", lineno, col)
                generators.append(tok)
        elif stripped.startswith("rel:"):
            if not saw_gens:
                raise PresentationError("rel: before gens:", lineno, 1)
            letters: list[int] = []
            for tok in stripped[len("rel:"):].split():
                col = raw.index(tok) + 1
                letters.extend(_parse_letter_token(tok, generators, lineno, col))
            if not letters:
                raise PresentationError("empty relator", lineno, 1)
            relators.append(Word(letters))
        else:
            raise PresentationError(f"unrecognized line {stripped!r}", lineno, 1)
    if not saw_gens:
        raise PresentationError("missing gens: line", 1, 1)
    if not relators:
        raise PresentationError("no relators", 1, 1)
    return Presentation(tuple(generators), tuple(relators), name=name)


def _parse_letter_token(tok: str, generators: list[str],
                        lineno: int, col: int) -> list[int]:
    base, caret, exp_text = tok.partition("^")
    if len(base) != 1 or not base.isalpha():
        raise PresentationError(f"bad letter {tok!r}", lineno, col)
    lower = base.lower()
    if lower not in generators:
        raise PresentationError(f"unknown generator {base!r}", lineno, col)
    index = generators.index(lower) + 1
    sign = 1 if base.islower() else -1
    if not caret:
        return [sign * index]
    try:
        exp = int(exp_text)
    except ValueError:
        raise PresentationError(f"malformed exponent in {tok!r}", lineno, col) from None
    if exp == 0:
        raise PresentationError(f"zero exponent in {tok!r}", lineno, col)
    total = sign * exp
    letter = index if total > 0 else -index
    return [letter] * abs(total)


def print_presentation(p: Presentation) -> str:
    """Canonical text form (uppercase-as-inverse style); parses back bit-exactly."""
    lines = ["gens: " + " ".join(p.generators)]
    for rel in p.relators:
        lines.append("rel: " + rel.spell(p.generators))
    return "\n".join(lines) + "\n"


def word_from_string(s: str, generators: tuple[str, ...] | list[str]) -> Word:
    """Convenience for tests: 'x y X' or 'xyX' with single-letter generators."""
    tokens = s.split() if " " in s else list(s)
    letters = []
    for ch in tokens:
        lower = ch.lower()
        if lower not in generators:
            raise KeyError(f"unknown generator {ch!r}")
        idx = list(generators).index(lower) + 1
        letters.append(idx if ch.islower() else -idx)
    return Word(letters)
