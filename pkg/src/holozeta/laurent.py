"""Exact Laurent polynomial arithmetic over Q.

Everything downstream (graph zeta functions, Fox matrices, quandle
weights) is built on the ring Q[t, t^-1].  Polynomials are sparse maps
exponent -> Fraction with no zero coefficients stored; all arithmetic
is exact, no floating point anywhere.
"""
from __future__ import annotations

import re
from fractions import Fraction


class LaurentPoly:
    """A Laurent polynomial c_e * t^e + ... with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    clean[int(e)] = c
        object.__setattr__(self, "terms", clean)

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    @staticmethod
    def const(c) -> "LaurentPoly":
        return LaurentPoly({0: Fraction(c)})

    @staticmethod
    def t(k: int = 1) -> "LaurentPoly":
        return LaurentPoly({k: 1})

    @staticmethod
    def monomial(c, k: int) -> "LaurentPoly":
        return LaurentPoly({k: Fraction(c)})

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        """Units of Q[t,t^-1] are the single-term polynomials q*t^k."""
        return len(self.terms) == 1

    def is_one(self) -> bool:
        return self.terms == {0: Fraction(1)}

    def min_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no minimal exponent")
        return min(self.terms)

    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no maximal exponent")
        return max(self.terms)

    def coeff(self, e: int) -> Fraction:
        return self.terms.get(e, Fraction(0))

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return LaurentPoly(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) - c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.terms or not other.terms:
            return LaurentPoly()
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(out)

    def scale(self, c) -> "LaurentPoly":
        c = Fraction(c)
        return LaurentPoly({e: v * c for e, v in self.terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            return self.unit_inverse() ** (-n)
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def unit_inverse(self) -> "LaurentPoly":
        if not self.is_unit():
            raise ValueError("not a unit of the Laurent ring: %s" % self)
        ((e, c),) = self.terms.items()
        return LaurentPoly({-e: Fraction(1) / c})

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- unit normal form ---------------------------------------------

    def unit_normalize(self) -> "LaurentPoly":
        """The associate with minimal exponent 0 and lowest coefficient 1."""
        if not self.terms:
            raise ValueError("zero has no unit normal form")
        k = self.min_exp()
        c = self.terms[k]
        return LaurentPoly({e - k: v / c for e, v in self.terms.items()})

    def eq_up_to_units(self, other: "LaurentPoly") -> bool:
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.unit_normalize() == other.unit_normalize()

    def unit_quotient(self, other: "LaurentPoly") -> "LaurentPoly":
        """Return the unit u with self = u * other, or raise."""
        if not self.eq_up_to_units(other) or self.is_zero():
            raise ValueError("not associates")
        ks, ko = self.min_exp(), other.min_exp()
        return LaurentPoly({ks - ko: self.terms[ks] / other.terms[ko]})

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises if other does not divide self."""
        if other.is_zero():
            raise ZeroDivisionError("Laurent division by zero")
        if self.is_zero():
            return LaurentPoly()
        # strip the t-power content so both operands are honest polynomials
        a, b = self.min_exp(), other.min_exp()
        num = {e - a: c for e, c in self.terms.items()}
        den = {e - b: c for e, c in other.terms.items()}
        dden = max(den)
        lead = den[dden]
        quot = {}
        while num:
            dnum = max(num)
            if dnum < dden:
                raise ValueError("inexact Laurent division")
            q = num[dnum] / lead
            quot[dnum - dden] = q
            for e, c in den.items():
                k = e + dnum - dden
                v = num.get(k, Fraction(0)) - q * c
                if v == 0:
                    num.pop(k, None)
                else:
                    num[k] = v
        return LaurentPoly({e + a - b: c for e, c in quot.items()})

    # -- text form ----------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                body = str(c)
            else:
                tpow = "t" if e == 1 else "t^%d" % e
                if c == 1:
                    body = tpow
                elif c == -1:
                    body = "-" + tpow
                else:
                    body = "%s*%s" % (c, tpow)
            if not parts:
                parts.append(body)
            elif body.startswith("-"):
                parts.append("- " + body[1:])
            else:
                parts.append("+ " + body)
        return " ".join(parts)

    def __repr__(self):
        return "LaurentPoly(%s)" % self


_TERM_RE = re.compile(
    r"^(?P<coeff>[+-]?\d+(?:/\d+)?)?\s*\*?\s*"
    r"(?P<t>t(?:\^\{?(?P<exp>[+-]?\d+)\}?)?)?$"
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse sparse text like `2*t^-1 + 1 - 3/2*t^{2}`."""
    s = text.strip().replace("−", "-")
    if s in ("0", ""):
        return LaurentPoly.zero()
    # split into signed terms; +/- inside exponents or leading a term stay put
    pieces = []
    cur = []
    prev = ""  # last non-space character seen
    for ch in s:
        if ch in "+-" and prev not in ("", "^", "{", "+", "-", "*", "/"):
            pieces.append("".join(cur))
            cur = [ch]
        else:
            cur.append(ch)
        if not ch.isspace():
            prev = ch
    pieces.append("".join(cur))
    terms = {}
    for piece in pieces:
        body = piece.strip()
        sign = "+"
        if body and body[0] in "+-":
            sign = body[0]
            body = body[1:].strip()
        if not body:
            raise ValueError("empty term in %r" % text)
        m = _TERM_RE.match(body)
        if not m or (m.group("coeff") is None and m.group("t") is None):
            raise ValueError("bad Laurent term %r in %r" % (body, text))
        c = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        if sign == "-":
            c = -c
        if m.group("t"):
            e = int(m.group("exp")) if m.group("exp") is not None else 1
        else:
            e = 0
        terms[e] = terms.get(e, Fraction(0)) + c
    return LaurentPoly(terms)


# functional-style aliases ---------------------------------------------

def lp_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("unknown op %r" % op)


def lp_normalize_up_to_units(p: LaurentPoly) -> LaurentPoly:
    return p.unit_normalize()


def lp_eq_up_to_units(p: LaurentPoly, q: LaurentPoly) -> bool:
    return p.eq_up_to_units(q)


class PolyMatrix:
    """Dense matrix over the Laurent ring, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError("entry count %d != %d x %d" % (len(entries), rows, cols))
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @staticmethod
    def from_rows(rows_list) -> "PolyMatrix":
        r = len(rows_list)
        c = len(rows_list[0]) if r else 0
        flat = []
        for row in rows_list:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(row)
        return PolyMatrix(r, c, flat)

    @staticmethod
    def from_scalar_rows(rows_list) -> "PolyMatrix":
        """Build from numbers / Fractions (constant matrix)."""
        return PolyMatrix.from_rows(
            [[LaurentPoly.const(x) for x in row] for row in rows_list]
        )

    @staticmethod
    def identity(n: int) -> "PolyMatrix":
        one, zero = LaurentPoly.one(), LaurentPoly.zero()
        return PolyMatrix(n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @staticmethod
    def zeros(r: int, c: int) -> "PolyMatrix":
        return PolyMatrix(r, c, [LaurentPoly.zero()] * (r * c))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix add")
        return PolyMatrix(
            self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)]
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix sub")
        return PolyMatrix(
            self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)]
        )

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, [-a for a in self.entries])

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix mul")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = LaurentPoly.zero()
                for k in range(self.cols):
                    a = ri[k]
                    if a.terms:
                        b = other.entries[k * other.cols + j]
                        if b.terms:
                            acc = acc + a * b
                out.append(acc)
        return PolyMatrix(self.rows, other.cols, out)

    def scale(self, p: LaurentPoly) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, [p * a for a in self.entries])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            self.cols,
            self.rows,
            [self[i, j] for j in range(self.cols) for i in range(self.rows)],
        )

    def trace(self) -> LaurentPoly:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        acc = LaurentPoly.zero()
        for i in range(self.rows):
            acc = acc + self[i, i]
        return acc

    # -- determinants -------------------------------------------------

    def det_cofactor(self) -> LaurentPoly:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return LaurentPoly.one()
        if n == 1:
            return self[0, 0]
        acc = LaurentPoly.zero()
        for j in range(n):
            a = self[0, j]
            if a.is_zero():
                continue
            minor = PolyMatrix(
                n - 1,
                n - 1,
                [
                    self[i, jj]
                    for i in range(1, n)
                    for jj in range(n)
                    if jj != j
                ],
            )
            term = a * minor.det_cofactor()
            acc = acc + term if j % 2 == 0 else acc - term
        return acc

    def det_bareiss(self) -> LaurentPoly:
        """Fraction-free elimination; divisions are exact by construction."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return LaurentPoly.one()
        m = [list(self.row(i)) for i in range(n)]
        sign = 1
        prev = LaurentPoly.one()
        for k in range(n - 1):
            if m[k][k].is_zero():
                for i in range(k + 1, n):
                    if not m[i][k].is_zero():
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return LaurentPoly.zero()
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                    m[i][j] = num.divexact(prev)
                m[i][k] = LaurentPoly.zero()
            prev = m[k][k]
        d = m[n - 1][n - 1]
        return d if sign == 1 else -d

    def det(self) -> LaurentPoly:
        return self.det_cofactor() if self.rows <= 4 else self.det_bareiss()

    def inverse_unit_det(self) -> "PolyMatrix":
        """Inverse via adjugate; requires det to be a Laurent unit."""
        d = self.det()
        if not d.is_unit():
            raise ValueError("matrix not invertible over the Laurent ring")
        n = self.rows
        dinv = d.unit_inverse()
        cof = []
        for i in range(n):
            for j in range(n):
                minor = PolyMatrix(
                    n - 1,
                    n - 1,
                    [
                        self[ii, jj]
                        for ii in range(n)
                        if ii != i
                        for jj in range(n)
                        if jj != j
                    ],
                )
                c = minor.det_cofactor() if n - 1 <= 4 else minor.det_bareiss()
                cof.append(c if (i + j) % 2 == 0 else -c)
        adj = PolyMatrix(n, n, cof).transpose()
        return adj.scale(dinv)

    def __str__(self):
        return "[%s]" % ", ".join(
            "[%s]" % ", ".join(str(e) for e in self.row(i)) for i in range(self.rows)
        )

    __repr__ = __str__


def mat_det(m: PolyMatrix) -> LaurentPoly:
    return m.det()


class TruncatedSeries:
    """Formal power series in a counting variable u, truncated at u^L.

    Coefficients are Laurent polynomials in t.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != order + 1:
            raise ValueError("need %d coefficients" % (order + 1))
        self.order = order
        self.coeffs = coeffs

    @staticmethod
    def zero(order: int) -> "TruncatedSeries":
        return TruncatedSeries(order, [LaurentPoly.zero()] * (order + 1))

    @staticmethod
    def one(order: int) -> "TruncatedSeries":
        return TruncatedSeries(
            order, [LaurentPoly.one()] + [LaurentPoly.zero()] * order
        )

    @staticmethod
    def from_coeffs(order: int, coeffs) -> "TruncatedSeries":
        coeffs = list(coeffs)[: order + 1]
        coeffs += [LaurentPoly.zero()] * (order + 1 - len(coeffs))
        return TruncatedSeries(order, coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(
            self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        L = self.order
        out = [LaurentPoly.zero()] * (L + 1)
        for i, a in enumerate(self.coeffs):
            if not a.terms:
                continue
            for j in range(L + 1 - i):
                b = other.coeffs[j]
                if b.terms:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(L, out)

    def scale(self, p: LaurentPoly) -> "TruncatedSeries":
        return TruncatedSeries(self.order, [p * c for c in self.coeffs])

    def _check(self, other):
        if self.order != other.order:
            raise ValueError("series order mismatch")

    def inverse(self) -> "TruncatedSeries":
        b0 = self.coeffs[0]
        if not b0.is_unit():
            raise ValueError("constant coefficient not invertible")
        inv0 = b0.unit_inverse()
        out = [inv0]
        for n in range(1, self.order + 1):
            acc = LaurentPoly.zero()
            for k in range(1, n + 1):
                acc = acc + self.coeffs[k] * out[n - k]
            out.append(-(inv0 * acc))
        return TruncatedSeries(self.order, out)

    def exp(self) -> "TruncatedSeries":
        if not self.coeffs[0].is_zero():
            raise ValueError("exp needs zero constant term")
        L = self.order
        out = TruncatedSeries.one(L)
        term = TruncatedSeries.one(L)
        for m in range(1, L + 1):
            term = term * self
            term = term.scale(LaurentPoly.const(Fraction(1, m)))
            out = out + term
        return out

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero() and i > 0:
                continue
            parts.append("(%s)*u^%d" % (c, i))
        return " + ".join(parts)

    __repr__ = __str__


def series_det_inverse(m: PolyMatrix, order: int) -> TruncatedSeries:
    """det(I - u*M)^-1 truncated at u^order, via exp of the trace series."""
    if m.rows != m.cols:
        raise ValueError("square matrix required")
    log_coeffs = [LaurentPoly.zero()]
    power = PolyMatrix.identity(m.rows)
    for k in range(1, order + 1):
        power = power * m
        log_coeffs.append(power.trace().scale(Fraction(1, k)))
    return TruncatedSeries(order, log_coeffs).exp()
