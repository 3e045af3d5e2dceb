"""Weighted directed multigraphs and their zeta functions.

Weights are either PolyMatrix blocks (matrix-weighted) or free group
ring elements (group-weighted, all vertex dimensions 1).  The zeta
reciprocal is det(I - A); the Euler product over prime cycle classes
is kept as an independent oracle.  apply_transform implements the
elementary rewrite rules that leave the zeta function fixed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .laurent import LaurentPoly, PolyMatrix, TruncatedSeries, parse_laurent
from .freegroup import GroupRingElt, Word, fox_derivative, apply_phi


class InvalidStep(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    tgt: str
    weight: object  # PolyMatrix or GroupRingElt


@dataclass(frozen=True)
class WeightedDigraph:
    kind: str  # "matrix" | "group"
    vertices: tuple  # of (id, dim)
    edges: tuple  # of Edge

    def __post_init__(self):
        if self.kind not in ("matrix", "group"):
            raise ValueError("kind must be matrix or group")
        dims = dict(self.vertices)
        if len(dims) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        ids = set()
        for e in self.edges:
            if e.id in ids:
                raise ValueError("duplicate edge id %r" % e.id)
            ids.add(e.id)
            if e.src not in dims or e.tgt not in dims:
                raise ValueError("edge %r touches a missing vertex" % e.id)
            if self.kind == "matrix":
                w = e.weight
                if not isinstance(w, PolyMatrix):
                    raise ValueError("matrix graph needs PolyMatrix weights")
                if (w.rows, w.cols) != (dims[e.src], dims[e.tgt]):
                    raise ValueError(
                        "edge %r weight shape %dx%d != %dx%d"
                        % (e.id, w.rows, w.cols, dims[e.src], dims[e.tgt])
                    )
            else:
                if not isinstance(e.weight, GroupRingElt):
                    raise ValueError("group graph needs GroupRingElt weights")
        if self.kind == "group" and any(d != 1 for _, d in self.vertices):
            raise ValueError("group-weighted graphs have all dimensions 1")

    def dims(self) -> dict:
        return dict(self.vertices)

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError("no edge %r" % eid)

    def out_edges(self, v: str):
        return [e for e in self.edges if e.src == v]

    def in_edges(self, v: str):
        return [e for e in self.edges if e.tgt == v]

    def has_vertex(self, v: str) -> bool:
        return any(vid == v for vid, _ in self.vertices)


@dataclass(frozen=True)
class CycleClass:
    edges: tuple  # edge ids, canonical rotation
    length: int
    prime: bool


@dataclass(frozen=True)
class TransformStep:
    kind: str
    vertex: Optional[str] = None
    edge: Optional[str] = None
    src: Optional[str] = None
    tgt: Optional[str] = None
    matrix: Optional[PolyMatrix] = None  # change_basis
    summands: Optional[tuple] = None  # split
    new_ids: Optional[tuple] = None
    dim: Optional[int] = None  # insert
    edges: Optional[tuple] = None  # insert: ((id, src, tgt, weight), ...)
    pairs: Optional[tuple] = None  # hub_unresolve: ((removed id, hub-out id), ...)
    weight: Optional[object] = None  # hub_unresolve hub weight
    witness: Optional[Word] = None  # group source elimination / insertion
    gen_map: Optional[dict] = None  # vertex id -> generator index for the witness

    KINDS = (
        "change_basis",
        "null_add",
        "null_remove",
        "merge",
        "split",
        "eliminate",
        "insert",
        "hub_resolve",
        "hub_unresolve",
        "reverse_all",
    )

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError("unknown transform kind %r" % self.kind)


# -- weight arithmetic shared between the two weight rings -------------

def _zero_weight(g: WeightedDigraph, src: str, tgt: str):
    if g.kind == "matrix":
        dims = g.dims()
        return PolyMatrix.zeros(dims[src], dims[tgt])
    return GroupRingElt.zero()


def _wadd(a, b):
    return a + b


def _wmul(a, b):
    return a * b


def _wzero(w) -> bool:
    return w.is_zero()


# -- adjacency matrix and zeta -----------------------------------------

def adjacency_matrix(g: WeightedDigraph, rep=None) -> PolyMatrix:
    """Block matrix whose (i,j) block sums the weights of edges v_i -> v_j."""
    if g.kind == "group":
        if rep is None:
            raise ValueError("group-weighted graphs need a representation")
        dims = {vid: rep.dim for vid, _ in g.vertices}
        weight_of = lambda e: apply_phi(e.weight, rep)
    else:
        dims = g.dims()
        weight_of = lambda e: e.weight
    order = [vid for vid, _ in g.vertices]
    offsets = {}
    total = 0
    for vid in order:
        offsets[vid] = total
        total += dims[vid]
    rows = [[LaurentPoly.zero()] * total for _ in range(total)]
    for e in g.edges:
        w = weight_of(e)
        r0, c0 = offsets[e.src], offsets[e.tgt]
        for i in range(w.rows):
            for j in range(w.cols):
                rows[r0 + i][c0 + j] = rows[r0 + i][c0 + j] + w[i, j]
    return PolyMatrix.from_rows(rows) if total else PolyMatrix(0, 0, [])


def zeta_reciprocal(g: WeightedDigraph, rep=None) -> LaurentPoly:
    """det(I - A(G,w)): the reciprocal of the weighted zeta function."""
    a = adjacency_matrix(g, rep)
    return (PolyMatrix.identity(a.rows) - a).det()


# -- prime cycles and the Euler product oracle --------------------------

def _canonical_rotation(seq: tuple) -> tuple:
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def _is_prime(seq: tuple) -> bool:
    n = len(seq)
    for d in range(1, n):
        if n % d == 0 and seq == seq[d:] + seq[:d]:
            return False
    return True


def cycle_classes(g: WeightedDigraph, max_len: int):
    """All cycle classes (rotation orbits of closed edge walks) up to max_len."""
    index = {e.id: i for i, e in enumerate(g.edges)}
    out = {}
    for e in g.edges:
        out.setdefault(e.src, []).append(e)
    found = set()

    def dfs(first_idx, here, start, path):
        if len(path) > max_len:
            return
        if path and here == start:
            found.add(_canonical_rotation(tuple(path)))
            # a longer walk may close again later, keep going
        if len(path) == max_len:
            return
        for e in out.get(here, ()):
            if index[e.id] < first_idx:
                continue  # rotation classes are found from their minimal edge
            path.append(e.id)
            dfs(first_idx, e.tgt, start, path)
            path.pop()

    for e in g.edges:
        dfs(index[e.id], e.tgt, e.src, [e.id])
    return [CycleClass(seq, len(seq), _is_prime(seq)) for seq in sorted(found)]


def prime_cycle_classes(g: WeightedDigraph, max_len: int):
    return [c for c in cycle_classes(g, max_len) if c.prime]


def cycle_weight(g: WeightedDigraph, edge_ids, rep=None) -> PolyMatrix:
    """w(C): the ordered product of edge weights along the cycle."""
    mats = []
    for eid in edge_ids:
        e = g.edge(eid)
        mats.append(apply_phi(e.weight, rep) if g.kind == "group" else e.weight)
    w = mats[0]
    for m in mats[1:]:
        w = w * m
    return w


def euler_product_oracle(g: WeightedDigraph, rep=None, max_len: int = 8) -> TruncatedSeries:
    """Product over prime cycle classes of det(I - u^|C| w(C))^-1,
    truncated at u^max_len.  Each factor is exp(sum_k tr(w(C)^k) u^{|C|k}/k)."""
    from fractions import Fraction

    result = TruncatedSeries.one(max_len)
    for c in prime_cycle_classes(g, max_len):
        w = cycle_weight(g, c.edges, rep)
        coeffs = [LaurentPoly.zero()] * (max_len + 1)
        power = PolyMatrix.identity(w.rows)
        k = 1
        while c.length * k <= max_len:
            power = power * w
            coeffs[c.length * k] = power.trace().scale(Fraction(1, k))
            k += 1
        result = result * TruncatedSeries(max_len, coeffs).exp()
    return result


# -- transform engine ----------------------------------------------------

def _replace_edges(g: WeightedDigraph, edges) -> WeightedDigraph:
    return WeightedDigraph(g.kind, g.vertices, tuple(edges))


def apply_transform(g: WeightedDigraph, s: TransformStep) -> WeightedDigraph:
    """Apply one matrix-level elementary transformation."""
    if g.kind != "matrix":
        raise InvalidStep("apply_transform expects a matrix-weighted graph")
    if s.kind == "change_basis":
        return _change_basis(g, s)
    if s.kind == "null_add":
        return _null_add(g, s)
    if s.kind == "null_remove":
        return _null_remove(g, s)
    if s.kind == "merge":
        return _merge(g, s)
    if s.kind == "split":
        return _split(g, s)
    if s.kind == "eliminate":
        return _eliminate(g, s)
    if s.kind == "insert":
        return _insert(g, s)
    if s.kind == "hub_resolve":
        return _hub_resolve(g, s)
    if s.kind == "hub_unresolve":
        return _hub_unresolve(g, s)
    if s.kind == "reverse_all":
        return _reverse_all(g)
    raise InvalidStep("unsupported step %r" % s.kind)


def apply_group_transform(g: WeightedDigraph, s: TransformStep) -> WeightedDigraph:
    """Apply one group-level elementary transformation (G1)-(G4)."""
    if g.kind != "group":
        raise InvalidStep("apply_group_transform expects a group-weighted graph")
    # (G1) side condition: the origin of the null edge must not be a sink
    # once the null edge is disregarded
    if s.kind == "null_add":
        h = _null_add(g, s)
        if not [x for x in g.out_edges(s.src)]:
            raise InvalidStep("null-edge origin %r is a sink" % s.src)
        return h
    if s.kind == "null_remove":
        origin = g.edge(s.edge).src
        h = _null_remove(g, s)
        if not h.out_edges(origin):
            raise InvalidStep("null-edge origin %r would become a sink" % origin)
        return h
    if s.kind == "merge":
        return _merge(g, s)
    if s.kind == "split":
        return _split(g, s)
    if s.kind == "eliminate":
        return _g3_eliminate(g, s)
    if s.kind == "insert":
        return _g3_insert(g, s)
    if s.kind == "hub_resolve":
        return _hub_resolve(g, s)
    if s.kind == "hub_unresolve":
        return _hub_unresolve(g, s)
    raise InvalidStep("unsupported group-level step %r" % s.kind)


def apply_step(g: WeightedDigraph, s: TransformStep) -> WeightedDigraph:
    return apply_transform(g, s) if g.kind == "matrix" else apply_group_transform(g, s)


def _null_id(s: TransformStep) -> str:
    if s.new_ids:
        return s.new_ids[0]
    if s.edge:
        return s.edge
    raise InvalidStep("null_add needs an edge id (edge= or new_ids=)")


def _change_basis(g: WeightedDigraph, s: TransformStep) -> WeightedDigraph:
    v = s.vertex
    if not g.has_vertex(v):
        raise InvalidStep("no vertex %r" % v)
    a = g.dims()[v]
    p = s.matrix
    if p is None or (p.rows, p.cols) != (a, a):
        raise InvalidStep("basis matrix must be %dx%d" % (a, a))
    try:
        pinv = p.inverse_unit_det()
    except ValueError as exc:
        raise InvalidStep(str(exc))
    edges = []
    for e in g.edges:
        w = e.weight
        if e.tgt == v:
            w = w * pinv
        if e.src == v:
            w = p * w
        edges.append(Edge(e.id, e.src, e.tgt, w))
    return _replace_edges(g, edges)


def _null_add(g: WeightedDigraph, s: TransformStep) -> WeightedDigraph:
    if not (g.has_vertex(s.src) and g.has_vertex(s.tgt)):
        raise InvalidStep("null edge endpoints missing")
    eid = _null_id(s)
    w = _zero_weight(g, s.src, s.tgt)
    return _replace_edges(g, g.edges + (Edge(eid, s.src, s.tgt, w),))


def _null_remove(g: WeightedDigraph, s: TransformStep) -> WeightedDigraph:
    e = g.edge(s.edge)
    if not _wzero(e.weight):
        raise InvalidStep("edge %r has nonzero weight" % s.edge)
    return _replace_edges(g, [x for x in g.edges if x.id != s.edge])


def _merge(g: WeightedDigraph, s: TransformStep) -> WeightedDigraph:
    group = [e for e in g.edges if e.src == s.src and e.tgt == s.tgt]
    if len(group) < 2:
        raise InvalidStep("need at least two parallel edges %r -> %r" % (s.src, s.tgt))
    w = group[0].weight
    for e in group[1:]:
        w = _wadd(w, e.weight)
    eid = s.new_ids[0] if s.new_ids else group[0].id
    edges = [e for e in g.edges if e not in group]
    return _replace_edges(g, edges + [Edge(eid, s.src, s.tgt, w)])


def _split(g: WeightedDigraph, s: TransformStep) -> WeightedDigraph:
    e = g.edge(s.edge)
    if not s.summands or len(s.summands) < 2:
        raise InvalidStep("split needs at least two summands")
    total = s.summands[0]
    for w in s.summands[1:]:
        total = _wadd(total, w)
    if total != e.weight:
        raise InvalidStep("summands do not add up to the weight of %r" % s.edge)
    ids = s.new_ids or tuple("%s.%d" % (e.id, k) for k in range(len(s.summands)))
    if len(ids) != len(s.summands):
        raise InvalidStep("need one id per summand")
    edges = [x for x in g.edges if x.id != s.edge]
    edges += [Edge(i, e.src, e.tgt, w) for i, w in zip(ids, s.summands)]
    return _replace_edges(g, edges)


def _eliminate(g: WeightedDigraph, s: TransformStep) -> WeightedDigraph:
    v = s.vertex
    if not g.has_vertex(v):
        raise InvalidStep("no vertex %r" % v)
    if g.in_edges(v) and g.out_edges(v):
        raise InvalidStep("vertex %r is neither a source nor a sink" % v)
    vertices = tuple(x for x in g.vertices if x[0] != v)
    edges = tuple(e for e in g.edges if v not in (e.src, e.tgt))
    return WeightedDigraph(g.kind, vertices, edges)


def _insert(g: WeightedDigraph, s: TransformStep) -> WeightedDigraph:
    v = s.vertex
    if g.has_vertex(v):
        raise InvalidStep("vertex %r already exists" % v)
    dim = s.dim or 1
    vertices = g.vertices + ((v, dim),)
    new_edges = tuple(Edge(i, a, b, w) for (i, a, b, w) in (s.edges or ()))
    incoming = [e for e in new_edges if e.tgt == v]
    outgoing = [e for e in new_edges if e.src == v]
    if incoming and outgoing:
        raise InvalidStep("inserted vertex must be a source or a sink")
    for e in new_edges:
        if v not in (e.src, e.tgt):
            raise InvalidStep("inserted edge %r must touch the new vertex" % e.id)
    return WeightedDigraph(g.kind, vertices, g.edges + new_edges)


def _hub_resolve(g: WeightedDigraph, s: TransformStep) -> WeightedDigraph:
    e = g.edge(s.edge)
    if e.src == e.tgt:
        raise InvalidStep("hub resolution requires distinct endpoints")
    u = e.weight
    edges = [x for x in g.edges if x.id != e.id]
    added = []
    for f in g.out_edges(e.tgt):
        if f.id == e.id:
            continue
        added.append(Edge("%s*%s" % (e.id, f.id), e.src, f.tgt, _wmul(u, f.weight)))
    return _replace_edges(g, edges + added)


def _hub_unresolve(g: WeightedDigraph, s: TransformStep) -> WeightedDigraph:
    """Inverse of hub resolution: the caller names the hub edge to restore
    (src -> tgt, weight) and pairs each edge to delete with the tgt
    out-edge it came from."""
    v1, v2, u = s.src, s.tgt, s.weight
    if v1 == v2:
        raise InvalidStep("hub edge endpoints must differ")
    if u is None:
        raise InvalidStep("hub_unresolve needs the hub edge weight")
    out = {f.id: f for f in g.out_edges(v2)}
    pairs = s.pairs or ()
    if sorted(out) != sorted(fid for _, fid in pairs):
        raise InvalidStep("pairs must cover the out-edges of %r exactly" % v2)
    removed = set()
    for rid, fid in pairs:
        r = g.edge(rid)
        f = out[fid]
        if r.src != v1 or r.tgt != f.tgt:
            raise InvalidStep("edge %r does not run %r -> %r" % (rid, v1, f.tgt))
        if r.weight != _wmul(u, f.weight):
            raise InvalidStep("edge %r is not the hub product for %r" % (rid, fid))
        removed.add(rid)
    eid = s.edge or (s.new_ids[0] if s.new_ids else "hub_%s_%s" % (v1, v2))
    edges = [x for x in g.edges if x.id not in removed]
    return _replace_edges(g, edges + [Edge(eid, v1, v2, u)])


def _reverse_all(g: WeightedDigraph) -> WeightedDigraph:
    """Reverse every edge; matrix weights are transposed so that the
    determinant of every cycle weight is preserved."""
    edges = [Edge(e.id, e.tgt, e.src, e.weight.transpose()) for e in g.edges]
    return _replace_edges(g, edges)


def _witness_map(g: WeightedDigraph, s: TransformStep) -> dict:
    if s.gen_map is not None:
        return dict(s.gen_map)
    return {vid: i for i, (vid, _) in enumerate(g.vertices)}


def _g3_eliminate(g: WeightedDigraph, s: TransformStep) -> WeightedDigraph:
    """(G3) remove a source vertex whose out-weights are the Fox
    derivatives of a witness word f: df = sum_j w_j dx_j."""
    v = s.vertex
    if not g.has_vertex(v):
        raise InvalidStep("no vertex %r" % v)
    if g.in_edges(v):
        raise InvalidStep("vertex %r is not a source" % v)
    if s.witness is None:
        raise InvalidStep("source elimination needs a witness word")
    _verify_witness(g, v, s)
    vertices = tuple(x for x in g.vertices if x[0] != v)
    edges = tuple(e for e in g.edges if v not in (e.src, e.tgt))
    return WeightedDigraph(g.kind, vertices, edges)


def _g3_insert(g: WeightedDigraph, s: TransformStep) -> WeightedDigraph:
    h = _insert(g, s)
    if h.in_edges(s.vertex):
        raise InvalidStep("inserted group vertex must be a source")
    if s.witness is None:
        raise InvalidStep("source insertion needs a witness word")
    _verify_witness(h, s.vertex, s)
    return h


def _verify_witness(g: WeightedDigraph, v: str, s: TransformStep):
    gen_of = _witness_map(g, s)
    f = s.witness
    sums = {}
    for e in g.out_edges(v):
        j = gen_of.get(e.tgt)
        if j is None:
            raise InvalidStep("no generator for vertex %r" % e.tgt)
        sums[j] = sums.get(j, GroupRingElt.zero()) + e.weight
    touched = set(sums) | f.generators()
    for j in sorted(touched):
        expect = fox_derivative(f, j)
        got = sums.get(j, GroupRingElt.zero())
        if expect != got:
            raise InvalidStep(
                "witness fails at generator %d: df/dx = %r but edges sum to %r"
                % (j, expect, got)
            )


# -- script verification -------------------------------------------------

@dataclass
class VerificationReport:
    ok: bool
    structural_match: bool
    zeta_match: bool
    failing_step: Optional[int]
    message: str
    zeta_left: Optional[LaurentPoly] = None
    zeta_right: Optional[LaurentPoly] = None


def _edge_signature(g: WeightedDigraph, rep):
    """Multiset of (src, tgt, weight), with group weights taken through
    the representation when one is supplied."""
    sig = []
    for e in g.edges:
        w = e.weight
        if g.kind == "group" and rep is not None:
            w = apply_phi(w, rep)
        sig.append((e.src, e.tgt, w))
    return sorted(sig, key=lambda x: (x[0], x[1], str(x[2])))


def verify_equivalence(
    g: WeightedDigraph,
    script,
    h: WeightedDigraph,
    rep=None,
    mode: str = "exact",
) -> VerificationReport:
    if mode not in ("exact", "up_to_units"):
        raise ValueError("mode must be exact or up_to_units")
    cur = g
    for idx, step in enumerate(script):
        try:
            cur = apply_step(cur, step)
        except InvalidStep as exc:
            return VerificationReport(
                False, False, False, idx, "step %d rejected: %s" % (idx, exc)
            )
    structural = sorted(cur.vertices) == sorted(h.vertices) and _edge_signature(
        cur, rep
    ) == _edge_signature(h, rep)
    if g.kind == "group" and rep is None:
        # group-ring weights only become comparable polynomials through a rep
        zl = zr = None
        zmatch = True
    else:
        zl = zeta_reciprocal(g, rep)
        zr = zeta_reciprocal(h, rep)
        zmatch = zl == zr if mode == "exact" else zl.eq_up_to_units(zr)
    ok = structural and zmatch
    msg = "verified" if ok else (
        "graphs differ structurally" if not structural else "zeta mismatch"
    )
    return VerificationReport(ok, structural, zmatch, None, msg, zl, zr)


# -- text formats ---------------------------------------------------------

def parse_matrix_literal(text: str) -> PolyMatrix:
    text = text.strip()
    if not (text.startswith("[[") and text.endswith("]]")):
        raise ValueError("matrix literal must look like [[...],[...]]")
    body = text[2:-2]
    rows = re.split(r"\]\s*,\s*\[", body)
    return PolyMatrix.from_rows(
        [[parse_laurent(cell) for cell in row.split(",")] for row in rows]
    )


def format_matrix_literal(m: PolyMatrix) -> str:
    return "[%s]" % ",".join(
        "[%s]" % ",".join(str(e) for e in m.row(i)) for i in range(m.rows)
    )


def parse_graph(text: str) -> WeightedDigraph:
    """Parse the `vertex <id> dim=<n>` / `edge <id> <src> -> <tgt> weight=...`
    matrix-weighted graph format."""
    vertices = []
    edges = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertex"):
            m = re.match(r"vertex\s+(\S+)\s+dim=(\d+)$", line)
            if not m:
                raise ValueError("bad vertex line %r" % raw)
            vertices.append((m.group(1), int(m.group(2))))
        elif line.startswith("edge"):
            m = re.match(r"edge\s+(\S+)\s+(\S+)\s*->\s*(\S+)\s+weight=(.*)$", line)
            if not m:
                raise ValueError("bad edge line %r" % raw)
            edges.append(
                Edge(m.group(1), m.group(2), m.group(3), parse_matrix_literal(m.group(4)))
            )
        else:
            raise ValueError("unrecognized line %r" % raw)
    return WeightedDigraph("matrix", tuple(vertices), tuple(edges))


def format_graph(g: WeightedDigraph) -> str:
    if g.kind != "matrix":
        raise ValueError("text format covers matrix-weighted graphs")
    lines = ["vertex %s dim=%d" % (vid, d) for vid, d in g.vertices]
    lines += [
        "edge %s %s -> %s weight=%s" % (e.id, e.src, e.tgt, format_matrix_literal(e.weight))
        for e in g.edges
    ]
    return "\n".join(lines) + "\n"


def export_dot(g: WeightedDigraph, names: Optional[dict] = None) -> str:
    """GraphViz output with weights as edge labels."""
    lines = ["digraph G {"]
    for vid, d in g.vertices:
        label = vid if d == 1 else "%s (dim %d)" % (vid, d)
        lines.append('  "%s" [label="%s"];' % (vid, label))
    for e in g.edges:
        if g.kind == "group":
            label = e.weight.display(names) if names else repr(e.weight)
        else:
            label = format_matrix_literal(e.weight)
        label = label.replace('"', r"\"")
        lines.append('  "%s" -> "%s" [label="%s"];' % (e.src, e.tgt, label))
    lines.append("}")
    return "\n".join(lines) + "\n"
