"""Free groups, their integral group rings, and the Fox free differential.

Words are freely reduced sequences of (generator index, sign).  Group
ring elements are sparse maps word -> Fraction.  The Fox derivative
follows the product rule d(pq) = dp + p*dq with dx_j/dx_i = delta_ij,
which forces d(x^-1)/dx = -x^-1.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .laurent import LaurentPoly, PolyMatrix


@dataclass(frozen=True)
class Generator:
    index: int
    display_name: str


def reduce_letters(letters):
    """Freely reduce a letter sequence with a stack."""
    out = []
    for g, s in letters:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, int(s)))
    return tuple(out)


class Word:
    """Freely reduced word in a free group."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        object.__setattr__(self, "letters", reduce_letters(letters))

    @staticmethod
    def identity() -> "Word":
        return Word()

    @staticmethod
    def gen(i: int, sign: int = 1) -> "Word":
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return Word(((i, sign),))

    @staticmethod
    def from_reduced(letters) -> "Word":
        w = Word.__new__(Word)
        object.__setattr__(w, "letters", tuple(letters))
        return w

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inv(self) -> "Word":
        return Word.from_reduced(tuple((g, -s) for g, s in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inv()
        out = Word.identity()
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def generators(self):
        return {g for g, _ in self.letters}

    def exponent_sum(self, i: int = None):
        """Total exponent, of one generator or of all letters."""
        return sum(s for g, s in self.letters if i is None or g == i)

    def occurrences(self, i: int):
        """Positions of letters with generator i, either sign."""
        return [p for p, (g, _) in enumerate(self.letters) if g == i]

    def display(self, names) -> str:
        if not self.letters:
            return "1"
        return " ".join(
            names[g] if s == 1 else "%s^-1" % names[g] for g, s in self.letters
        )

    def __repr__(self):
        if not self.letters:
            return "Word(1)"
        return "Word(%s)" % " ".join(
            "x%d" % g if s == 1 else "x%d^-1" % g for g, s in self.letters
        )


_WORD_TOKEN = re.compile(r"^(?P<name>[A-Za-z_][A-Za-z_0-9]*)(?:\^(?P<exp>[+-]?\d+))?$")


def parse_word(text: str, name_to_index) -> Word:
    """Parse `x1 x3^-1 x2` (optional `*` separators) against a name map."""
    text = text.strip()
    if text in ("", "1"):
        return Word.identity()
    letters = []
    for tok in re.split(r"[\s*]+", text):
        if not tok:
            continue
        m = _WORD_TOKEN.match(tok)
        if not m:
            raise ValueError("bad word token %r" % tok)
        name = m.group("name")
        if name not in name_to_index:
            raise ValueError("unknown generator %r" % name)
        e = int(m.group("exp")) if m.group("exp") else 1
        sign = 1 if e > 0 else -1
        letters.extend([(name_to_index[name], sign)] * abs(e))
    return Word(letters)


class GroupRingElt:
    """Element of the group ring Q[F_n], a sparse map Word -> Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[w] = c
        object.__setattr__(self, "terms", clean)

    @staticmethod
    def zero() -> "GroupRingElt":
        return GroupRingElt()

    @staticmethod
    def one() -> "GroupRingElt":
        return GroupRingElt({Word.identity(): 1})

    @staticmethod
    def from_word(w: Word, c=1) -> "GroupRingElt":
        return GroupRingElt({w: Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "GroupRingElt") -> "GroupRingElt":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return GroupRingElt(out)

    def __sub__(self, other: "GroupRingElt") -> "GroupRingElt":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) - c
        return GroupRingElt(out)

    def __neg__(self) -> "GroupRingElt":
        return GroupRingElt({w: -c for w, c in self.terms.items()})

    def __mul__(self, other: "GroupRingElt") -> "GroupRingElt":
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                out[w] = out.get(w, Fraction(0)) + c1 * c2
        return GroupRingElt(out)

    def scale(self, c) -> "GroupRingElt":
        c = Fraction(c)
        return GroupRingElt({w: v * c for w, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, GroupRingElt) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def augmentation(self) -> Fraction:
        """Sum of coefficients (the map sending every generator to 1)."""
        return sum(self.terms.values(), Fraction(0))

    def generators(self):
        out = set()
        for w in self.terms:
            out |= w.generators()
        return out

    def display(self, names) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w.letters)):
            c = self.terms[w]
            body = w.display(names)
            if body == "1":
                body = str(abs(c))
            elif abs(c) != 1:
                body = "%s*%s" % (abs(c), body)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return "GroupRingElt(%s)" % {w: str(c) for w, c in self.terms.items()}


def word_ops(a: Word, b: Word = None, op: str = "mul") -> Word:
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    if op == "reduce":
        return Word(a.letters)
    raise ValueError("unknown op %r" % op)


def ring_ops(a: GroupRingElt, b, op: str = "add") -> GroupRingElt:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scalar":
        return a.scale(b)
    raise ValueError("unknown op %r" % op)


def fox_derivative(w, i: int) -> GroupRingElt:
    """The Fox derivative d(w)/dx_i, linearly extended to ring elements."""
    if isinstance(w, GroupRingElt):
        acc = GroupRingElt.zero()
        for word, c in w.terms.items():
            acc = acc + fox_derivative(word, i).scale(c)
        return acc
    out = {}
    prefix = ()
    for g, s in w.letters:
        if g == i:
            if s == 1:
                key = Word.from_reduced(prefix)
                out[key] = out.get(key, Fraction(0)) + 1
            else:
                key = Word(prefix + ((g, -1),))
                out[key] = out.get(key, Fraction(0)) - 1
        prefix = prefix + ((g, s),)
    return GroupRingElt(out)


def apply_phi(e: GroupRingElt, rep) -> PolyMatrix:
    """Phi = (rho tensor alpha): w -> rho(w) * t^alpha(w), extended linearly.

    `rep` supplies constant rational matrices rho(x_i) (with precomputed
    inverses) and integer exponents alpha(x_i).
    """
    k = rep.dim
    acc = PolyMatrix.zeros(k, k)
    for w, c in e.terms.items():
        mat, exp = rep.image_of_word(w)
        acc = acc + PolyMatrix(
            k, k, [LaurentPoly.monomial(x * c, exp) if x else LaurentPoly.zero() for x in mat]
        )
    return acc
