"""Knot diagrams, Wirtinger presentations, and twisted Alexander polynomials.

Diagrams are stored arc-first: arcs in traversal order (an arc ends by
passing under a crossing and continues as the next arc) plus one
crossing record (sign, under_in, under_out, over) per crossing.  The
twisted Alexander polynomial is computed both through the weighted
graph zeta function and through the Fox matrix minor directly.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .laurent import LaurentPoly, PolyMatrix
from .freegroup import Generator, GroupRingElt, Word, fox_derivative, apply_phi
from .presentation import BasedPresentation, check_assumption, build_group_weighted_graph
from .wgraph import zeta_reciprocal


# -- constant rational matrices (flat tuples, row-major) ----------------

def _rmat_id(k: int):
    return tuple(Fraction(1) if i == j else Fraction(0) for i in range(k) for j in range(k))


def _rmat_mul(a, b, k: int):
    out = []
    for i in range(k):
        for j in range(k):
            out.append(sum(a[i * k + x] * b[x * k + j] for x in range(k)))
    return tuple(out)


def _rmat_inv(a, k: int):
    """Gauss-Jordan inverse over Q; raises on singular input."""
    m = [[a[i * k + j] for j in range(k)] + [Fraction(1) if i == j else Fraction(0) for j in range(k)] for i in range(k)]
    for col in range(k):
        piv = next((r for r in range(col, k) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = Fraction(1) / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(k):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(m[i][k + j] for i in range(k) for j in range(k))


class Representation:
    """Phi = rho tensor alpha: constant invertible rational matrices
    rho(x_i) twisted by integer abelianization exponents alpha(x_i)."""

    def __init__(self, dim: int, mats: dict, exps: dict):
        self.dim = dim
        self.mats = {i: tuple(Fraction(x) for x in m) for i, m in mats.items()}
        self.exps = dict(exps)
        self.invs = {}
        for i, m in self.mats.items():
            if len(m) != dim * dim:
                raise ValueError("matrix for generator %d is not %dx%d" % (i, dim, dim))
            self.invs[i] = _rmat_inv(m, dim)  # also proves invertibility

    @staticmethod
    def trivial(gen_indices, dim: int = 1) -> "Representation":
        ident = _rmat_id(dim)
        return Representation(
            dim, {i: ident for i in gen_indices}, {i: 1 for i in gen_indices}
        )

    @staticmethod
    def abelianization(p: BasedPresentation) -> "Representation":
        return Representation.trivial([g.index for g in p.generators], 1)

    def image_of_word(self, w: Word):
        """(rho(w) as flat Fractions, alpha(w))."""
        mat = _rmat_id(self.dim)
        exp = 0
        for g, s in w.letters:
            if g not in self.mats:
                raise KeyError("generator %d not defined in representation" % g)
            mat = _rmat_mul(mat, self.mats[g] if s == 1 else self.invs[g], self.dim)
            exp += s * self.exps[g]
        return mat, exp

    def phi_of_word(self, w: Word) -> PolyMatrix:
        mat, exp = self.image_of_word(w)
        return PolyMatrix(
            self.dim,
            self.dim,
            [LaurentPoly.monomial(x, exp) if x else LaurentPoly.zero() for x in mat],
        )


def rep_direct_sum(r1: Representation, r2: Representation) -> Representation:
    if set(r1.mats) != set(r2.mats):
        raise ValueError("representations have different generator sets")
    if r1.exps != r2.exps:
        raise ValueError("abelianization exponents disagree")
    k1, k2 = r1.dim, r2.dim
    k = k1 + k2
    mats = {}
    for i in r1.mats:
        m = [Fraction(0)] * (k * k)
        for a in range(k1):
            for b in range(k1):
                m[a * k + b] = r1.mats[i][a * k1 + b]
        for a in range(k2):
            for b in range(k2):
                m[(k1 + a) * k + (k1 + b)] = r2.mats[i][a * k2 + b]
        mats[i] = tuple(m)
    return Representation(k, mats, r1.exps)


def rep_conjugate(r: Representation, p) -> Representation:
    """Conjugate every rho(x_i) by a constant invertible matrix P."""
    k = r.dim
    if isinstance(p, PolyMatrix):
        flat = []
        for entry in p.entries:
            if entry.is_zero():
                flat.append(Fraction(0))
            elif set(entry.terms) <= {0}:
                flat.append(entry.coeff(0))
            else:
                raise ValueError("conjugating matrix must be constant")
        if (p.rows, p.cols) != (k, k):
            raise ValueError("conjugating matrix must be %dx%d" % (k, k))
        flat = tuple(flat)
    else:
        flat = tuple(Fraction(x) for row in p for x in row)
    pinv = _rmat_inv(flat, k)
    mats = {i: _rmat_mul(_rmat_mul(flat, m, k), pinv, k) for i, m in r.mats.items()}
    return Representation(k, mats, r.exps)


def parse_rep(text: str, name_to_index: dict) -> Representation:
    """Parse lines `x1: [[0,1],[1,0]] exp=1`; `all:` applies to every
    generator not otherwise listed."""
    entries = {}
    default = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.match(r"(\S+)\s*:\s*(\[\[.*\]\])\s*(?:exp=([+-]?\d+))?$", line)
        if not m:
            raise ValueError("bad representation line %r" % raw)
        name, mattext, exptext = m.groups()
        rows = re.split(r"\]\s*,\s*\[", mattext.strip()[2:-2])
        flat = []
        for row in rows:
            flat.extend(Fraction(cell.strip()) for cell in row.split(","))
        exp = int(exptext) if exptext else 1
        if name == "all":
            default = (flat, exp)
        else:
            if name not in name_to_index:
                raise ValueError("unknown generator %r in representation" % name)
            entries[name_to_index[name]] = (flat, exp)
    if default is not None:
        for i in name_to_index.values():
            entries.setdefault(i, default)
    if not entries:
        raise ValueError("empty representation file")
    dims = {int(len(flat) ** 0.5) for flat, _ in entries.values()}
    if len(dims) != 1:
        raise ValueError("inconsistent matrix sizes")
    k = dims.pop()
    missing = set(name_to_index.values()) - set(entries)
    if missing:
        raise ValueError("representation missing generators %s" % sorted(missing))
    return Representation(
        k, {i: m for i, (m, _) in entries.items()}, {i: e for i, (_, e) in entries.items()}
    )


# -- diagrams -----------------------------------------------------------

@dataclass(frozen=True)
class Crossing:
    sign: int
    under_in: str
    under_out: str
    over: str

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("crossing sign must be +1 or -1")


@dataclass(frozen=True)
class KnotDiagram:
    arcs: tuple
    crossings: tuple

    def __post_init__(self):
        if len(set(self.arcs)) != len(self.arcs):
            raise ValueError("duplicate arc ids")
        if not self.crossings:
            if len(self.arcs) != 1:
                raise ValueError("a crossingless diagram is a single closed arc")
            return
        if len(self.arcs) != len(self.crossings):
            raise ValueError("closed knot diagrams have one arc per crossing")
        under_in = [c.under_in for c in self.crossings]
        under_out = [c.under_out for c in self.crossings]
        if sorted(under_in) != sorted(self.arcs) or sorted(under_out) != sorted(self.arcs):
            raise ValueError("each arc must pass under exactly once")
        for c in self.crossings:
            if c.over not in self.arcs:
                raise ValueError("over arc %r missing" % (c.over,))
            if c.under_out != self.next_arc(c.under_in):
                raise ValueError(
                    "arc %r must continue as %r after its undercrossing"
                    % (c.under_in, self.next_arc(c.under_in))
                )

    def next_arc(self, a: str) -> str:
        i = self.arcs.index(a)
        return self.arcs[(i + 1) % len(self.arcs)]

    def crossing_under(self, a: str) -> Crossing:
        for c in self.crossings:
            if c.under_in == a:
                return c
        raise KeyError("no crossing with under-in arc %r" % a)


@dataclass(frozen=True)
class ReidemeisterMove:
    kind: str  # R1_1 | R1_2 | R2 | R3
    forward: bool = True
    arc: Optional[str] = None  # R1/R2 forward site
    over_arc: Optional[str] = None  # R2 forward over strand
    sign: int = 1
    crossing: Optional[int] = None  # R1 backward site (crossing index)
    crossings: Optional[tuple] = None  # R2 backward pair / R3 triple
    new_ids: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in ("R1_1", "R1_2", "R2", "R3"):
            raise ValueError("unknown Reidemeister move %r" % self.kind)


class MoveMismatch(ValueError):
    pass


def _build_from_crossing_edges(n: int, data):
    """Assemble a KnotDiagram from per-crossing (sign, under-in edge,
    over-in edge) with edges numbered 1..2n along the strand."""
    total = 2 * n
    under_edges = [u for _, u, _ in data]
    if len(set(under_edges)) != n:
        raise ValueError("under-in edges must be distinct")
    for s, u, o in data:
        if not (1 <= u <= total and 1 <= o <= total):
            raise ValueError("edge number out of range")
        if o in under_edges:
            raise ValueError("edge %d cannot both end under and over a crossing" % o)
    starts = sorted(u % total + 1 for u in under_edges)
    arc_of = {}
    runs = []
    for st in starts:
        run = []
        e = st
        while True:
            run.append(e)
            if e in under_edges:
                break
            e = e % total + 1
            if len(run) > total:
                raise ValueError("strand does not close up")
        runs.append(run)
    if sorted(x for run in runs for x in run) != list(range(1, total + 1)):
        raise ValueError("arcs do not partition the strand")
    names = ["a%d" % (k + 1) for k in range(n)]
    for name, run in zip(names, runs):
        for e in run:
            arc_of[e] = name
    crossings = []
    for s, u, o in data:
        crossings.append(
            Crossing(s, arc_of[u], arc_of[u % total + 1], arc_of[o])
        )
    return KnotDiagram(tuple(names), tuple(crossings))


def parse_pd(text: str) -> KnotDiagram:
    """Parse PD code `X[a,b,c,d] ...` (or the `unknot` token).

    a is the incoming under edge, c the outgoing under edge, and the
    over strand runs b -> d (positive crossing) or d -> b (negative),
    decided by which pair is consecutive in the edge numbering.
    """
    body = text.strip()
    if not body:
        raise ValueError("empty PD input")
    if body.lower() == "unknot":
        return KnotDiagram(("a1",), ())
    tuples = re.findall(r"[Xx]\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]", body)
    leftover = re.sub(r"[Xx]\[\s*\d+\s*,\s*\d+\s*,\s*\d+\s*,\s*\d+\s*\]", "", body)
    if leftover.strip(" ,;\n\t"):
        raise ValueError("unrecognized PD content %r" % leftover.strip())
    if not tuples:
        raise ValueError("no crossings in PD input")
    n = len(tuples)
    total = 2 * n
    counts = {}
    data = []
    for a, b, c, d in ((int(a), int(b), int(c), int(d)) for a, b, c, d in tuples):
        for e in (a, b, c, d):
            counts[e] = counts.get(e, 0) + 1
        if c != a % total + 1:
            raise ValueError("under strand at X[%d,%d,%d,%d] is not oriented a -> c" % (a, b, c, d))
        if d == b % total + 1:
            sign, over_in = 1, b
        elif b == d % total + 1:
            sign, over_in = -1, d
        else:
            raise ValueError("ambiguous over-strand orientation at X[%d,%d,%d,%d]" % (a, b, c, d))
        data.append((sign, a, over_in))
    bad = [e for e in range(1, total + 1) if counts.get(e, 0) != 2]
    if bad:
        raise ValueError("open strands at edges %s" % bad)
    return _build_from_crossing_edges(n, data)


def parse_gauss(text: str) -> KnotDiagram:
    """Parse a signed Gauss code like `O1+ U2+ O3+ U1+ O2+ U3+`."""
    body = text.strip()
    if not body:
        raise ValueError("empty Gauss code")
    if body.lower() == "unknot":
        return KnotDiagram(("a1",), ())
    toks = re.findall(r"([OUou])(\d+)([+-])", body)
    if 2 * len(re.findall(r"\d+", body)) != 2 * len(toks) or not toks:
        raise ValueError("bad Gauss code %r" % text)
    total = len(toks)
    if total % 2:
        raise ValueError("odd number of passes")
    n = total // 2
    seen = {}
    for pos, (kind, label, sign) in enumerate(toks):
        label = int(label)
        sign = 1 if sign == "+" else -1
        seen.setdefault(label, {})[kind.upper()] = (pos, sign)
    data = []
    for label in sorted(seen):
        rec = seen[label]
        if set(rec) != {"O", "U"}:
            raise ValueError("crossing %d needs one O and one U pass" % label)
        (pu, su), (po, so) = rec["U"], rec["O"]
        if su != so:
            raise ValueError("crossing %d has inconsistent signs" % label)
        # pass k sits between edge k and edge k+1 (1-based edges)
        data.append((su, pu + 1, po + 1))
    return _build_from_crossing_edges(n, data)


# -- Wirtinger presentation --------------------------------------------

def wirtinger_presentation(d: KnotDiagram) -> BasedPresentation:
    """One meridian generator per arc; per crossing the relation
    x_{i+1} u^{-s} x_i^{-1} u^{s} based at x_i (solved x_i = u^s x_{i+1} u^{-s});
    the relation at the last arc's crossing is omitted."""
    n = len(d.arcs)
    generators = tuple(Generator(i, "x%d" % (i + 1)) for i in range(n))
    idx = {a: i for i, a in enumerate(d.arcs)}
    relations = []
    base = {}
    for i in range(n - 1):
        c = d.crossing_under(d.arcs[i])
        j = idx[c.over]
        nxt = (i + 1) % n
        s = c.sign
        r = Word(((nxt, 1), (j, -s), (i, -1), (j, s)))
        if r.is_identity():
            raise ValueError("degenerate crossing relation at arc %r" % d.arcs[i])
        relations.append(r)
        occ = next(
            k for k, pos in enumerate(r.occurrences(i)) if r.letters[pos] == (i, -1)
        )
        base[len(relations) - 1] = (i, occ)
    return BasedPresentation(generators, tuple(relations), base)


# -- twisted Alexander polynomial ---------------------------------------

@dataclass
class TwistedAlexander:
    numerator: LaurentPoly  # unit-normalized (zero stays zero)
    denominator: LaurentPoly  # unit-normalized (zero stays zero)
    route: str
    raw_numerator: LaurentPoly = field(default=None)
    raw_denominator: LaurentPoly = field(default=None)

    @property
    def denominator_vanishes(self) -> bool:
        return self.denominator.is_zero()


def _norm(p: LaurentPoly) -> LaurentPoly:
    return p if p.is_zero() else p.unit_normalize()


def fox_matrix(p: BasedPresentation, rep: Representation) -> PolyMatrix:
    """The (relations x generators) block matrix Phi(dr_i/dx_l)."""
    k = rep.dim
    nrel, ngen = len(p.relations), len(p.generators)
    blocks = []
    for i in range(nrel):
        row = []
        for g in sorted(p.generators, key=lambda g: g.index):
            row.append(apply_phi(fox_derivative(p.relations[i], g.index), rep))
        blocks.append(row)
    rows = []
    for i in range(nrel):
        for a in range(k):
            row = []
            for l in range(ngen):
                row.extend(blocks[i][l].row(a))
            rows.append(row)
    return PolyMatrix.from_rows(rows) if rows else PolyMatrix(0, ngen * k, [LaurentPoly.zero()] * 0)


def twisted_alexander(d: KnotDiagram, rep: Representation, route: str = "graph") -> TwistedAlexander:
    if route not in ("graph", "direct"):
        raise ValueError("route must be graph or direct")
    p = wirtinger_presentation(d)
    report = check_assumption(p, rep)
    if not report.all_certified:
        raise ValueError("presentation not certified: %s" % report.entries)
    k = rep.dim
    denom_raw = (PolyMatrix.identity(k) - rep.phi_of_word(Word.gen(0))).det()
    if route == "graph":
        graph = build_group_weighted_graph(p)
        num_raw = zeta_reciprocal(graph, rep)
    else:
        m = fox_matrix(p, rep)
        # drop the block column of the first generator (denominator convention)
        nrel = len(p.relations)
        if nrel == 0:
            num_raw = LaurentPoly.one()
        else:
            minor = PolyMatrix.from_rows(
                [list(m.row(r)[k:]) for r in range(m.rows)]
            )
            num_raw = minor.det()
    return TwistedAlexander(
        numerator=_norm(num_raw),
        denominator=_norm(denom_raw),
        route=route,
        raw_numerator=num_raw,
        raw_denominator=denom_raw,
    )


# -- Reidemeister rewrites ----------------------------------------------

def _fresh_arcs(existing, count: int):
    out = []
    k = 1
    taken = set(existing)
    while len(out) < count:
        name = "b%d" % k
        if name not in taken:
            out.append(name)
            taken.add(name)
        k += 1
    return tuple(out)


def _retarget_under_in(crossings, old: str, new: str):
    return [
        Crossing(c.sign, new if c.under_in == old else c.under_in, c.under_out, c.over)
        for c in crossings
    ]


def _substitute_arc(crossings, old: str, new: str):
    def sub(a):
        return new if a == old else a

    return [Crossing(c.sign, sub(c.under_in), sub(c.under_out), sub(c.over)) for c in crossings]


def reidemeister_apply(d: KnotDiagram, m: ReidemeisterMove) -> KnotDiagram:
    if m.kind in ("R1_1", "R1_2"):
        return _apply_r1(d, m) if m.forward else _undo_r1(d, m)
    if m.kind == "R2":
        return _apply_r2(d, m) if m.forward else _undo_r2(d, m)
    if m.kind == "R3":
        return _apply_r3(d, m)
    raise MoveMismatch("unsupported move %r" % m.kind)


def _apply_r1(d: KnotDiagram, m: ReidemeisterMove) -> KnotDiagram:
    a = m.arc
    if a not in d.arcs:
        raise MoveMismatch("no arc %r" % a)
    if not d.crossings:
        # a kink on the bare unknot crosses the single arc with itself
        return KnotDiagram(d.arcs, (Crossing(m.sign, a, a, a),))
    (b,) = m.new_ids or _fresh_arcs(d.arcs, 1)
    crossings = _retarget_under_in(list(d.crossings), a, b)
    over = b if m.kind == "R1_1" else a
    crossings.append(Crossing(m.sign, a, b, over))
    i = d.arcs.index(a)
    arcs = d.arcs[: i + 1] + (b,) + d.arcs[i + 1 :]
    return KnotDiagram(arcs, tuple(crossings))


def _undo_r1(d: KnotDiagram, m: ReidemeisterMove) -> KnotDiagram:
    if m.crossing is None or not (0 <= m.crossing < len(d.crossings)):
        raise MoveMismatch("R1 removal needs a crossing index")
    c = d.crossings[m.crossing]
    expect_over = c.under_out if m.kind == "R1_1" else c.under_in
    if c.over != expect_over:
        raise MoveMismatch("crossing is not an %s kink" % m.kind)
    a, b = c.under_in, c.under_out
    rest = [x for k, x in enumerate(d.crossings) if k != m.crossing]
    if a == b:
        if rest:
            raise MoveMismatch("self-kink removal leaves an inconsistent diagram")
        return KnotDiagram((a,), ())
    rest = _substitute_arc(rest, b, a)
    arcs = tuple(x for x in d.arcs if x != b)
    return KnotDiagram(arcs, tuple(rest))


def _apply_r2(d: KnotDiagram, m: ReidemeisterMove) -> KnotDiagram:
    a, c = m.arc, m.over_arc
    if a not in d.arcs or c not in d.arcs:
        raise MoveMismatch("R2 needs two existing arcs")
    if a == c:
        raise MoveMismatch("R2 strands must be distinct arcs")
    mid, b = m.new_ids or _fresh_arcs(d.arcs, 2)
    crossings = _retarget_under_in(list(d.crossings), a, b)
    crossings.append(Crossing(m.sign, a, mid, c))
    crossings.append(Crossing(-m.sign, mid, b, c))
    i = d.arcs.index(a)
    arcs = d.arcs[: i + 1] + (mid, b) + d.arcs[i + 1 :]
    return KnotDiagram(arcs, tuple(crossings))


def _undo_r2(d: KnotDiagram, m: ReidemeisterMove) -> KnotDiagram:
    if not m.crossings or len(m.crossings) != 2:
        raise MoveMismatch("R2 removal needs two crossing indices")
    k1, k2 = m.crossings
    c1, c2 = d.crossings[k1], d.crossings[k2]
    if c1.under_out != c2.under_in or c1.over != c2.over or c1.sign != -c2.sign:
        raise MoveMismatch("crossings do not form an R2 pair")
    a, mid, b = c1.under_in, c1.under_out, c2.under_out
    if c1.over in (a, mid, b):
        raise MoveMismatch("over strand entangled with the R2 site")
    for k, c in enumerate(d.crossings):
        if k in (k1, k2):
            continue
        if mid in (c.under_in, c.under_out, c.over):
            raise MoveMismatch("middle arc is not free")
    rest = [c for k, c in enumerate(d.crossings) if k not in (k1, k2)]
    if b == a:
        # the whole diagram was just this clasp
        if rest:
            raise MoveMismatch("clasp removal leaves an inconsistent diagram")
        return KnotDiagram((a,), ())
    rest = _substitute_arc(rest, mid, a)
    rest = _substitute_arc(rest, b, a)
    arcs = tuple(x for x in d.arcs if x not in (mid, b))
    return KnotDiagram(arcs, tuple(rest))


def _apply_r3(d: KnotDiagram, m: ReidemeisterMove) -> KnotDiagram:
    """Slide the under strand across the crossing of the two over strands.

    Site pattern (all positive): c1 = (A -> A2 over J), c2 = (A2 -> A3
    over K), c3 = (J -> J2 over K); the move swaps c1's over strand to K
    and c2's to J2 (and back again when reversed)."""
    if not m.crossings or len(m.crossings) != 3:
        raise MoveMismatch("R3 needs three crossing indices")
    k1, k2, k3 = m.crossings
    c1, c2, c3 = (d.crossings[k] for k in (k1, k2, k3))
    if not (c1.sign == c2.sign == c3.sign == 1):
        raise MoveMismatch("only the all-positive R3 pattern is implemented")
    if c1.under_out != c2.under_in:
        raise MoveMismatch("under strand must pass c1 then c2")
    jay, kay = c3.under_in, c3.over
    j2 = c3.under_out
    if m.forward:
        if c1.over != jay or c2.over != kay:
            raise MoveMismatch("site does not match the R3 before-pattern")
        new1 = Crossing(1, c1.under_in, c1.under_out, kay)
        new2 = Crossing(1, c2.under_in, c2.under_out, j2)
    else:
        if c1.over != kay or c2.over != j2:
            raise MoveMismatch("site does not match the R3 after-pattern")
        new1 = Crossing(1, c1.under_in, c1.under_out, jay)
        new2 = Crossing(1, c2.under_in, c2.under_out, kay)
    crossings = list(d.crossings)
    crossings[k1] = new1
    crossings[k2] = new2
    return KnotDiagram(d.arcs, tuple(crossings))
