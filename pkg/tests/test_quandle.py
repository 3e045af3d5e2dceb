from fractions import Fraction

import pytest

from holozeta.laurent import LaurentPoly, parse_laurent
from holozeta.wgraph import zeta_reciprocal
from holozeta.quandle import (
    PairConditionError,
    QuandleError,
    alexander_pair_check,
    coloring_from_map,
    constant_pair,
    derived_star,
    dihedral_quandle,
    enumerate_colorings,
    f_twisted_weights,
    format_pair_file,
    format_quandle,
    format_weights_file,
    holonomy_check,
    identity_weights,
    parse_pair_file,
    parse_quandle,
    parse_weights_file,
    quandle_check,
    quandle_weighted_graph,
    random_alexander_pair,
    recover_pair,
    trivial_quandle,
)
from holozeta import fixtures

from helpers import seeded_rng


R3 = dihedral_quandle(3)
T4 = trivial_quandle(4)


def _pairs(q):
    return [
        constant_pair(q, LaurentPoly.one(), LaurentPoly.zero()),
        constant_pair(q, parse_laurent("t"), parse_laurent("1 - t")),
    ]


def test_quandle_axioms_hold_for_fixtures():
    for q in (R3, T4, dihedral_quandle(5), trivial_quandle(1)):
        quandle_check([list(row) for row in q.table])


def test_quandle_check_rejects_non_quandles():
    # not idempotent
    with pytest.raises(QuandleError):
        quandle_check([[1, 0], [0, 1]])
    # rows must be permutations of columns (right translations bijective)
    with pytest.raises(QuandleError):
        quandle_check([[0, 0], [1, 1], [2, 2]])
    # idempotent with bijective translations but not self-distributive
    with pytest.raises(QuandleError):
        quandle_check([[0, 0, 1], [2, 1, 0], [1, 2, 2]])


def test_star_inverse():
    for a in range(3):
        for b in range(3):
            assert R3.inv_star(R3.star(a, b), b) == a
            assert R3.star(R3.inv_star(a, b), b) == a


def test_alexander_pair_conditions_reject_bad_tables():
    n = R3.n
    one, zero = LaurentPoly.one(), LaurentPoly.zero()
    with pytest.raises(PairConditionError) as e:
        alexander_pair_check(
            R3, [[one] * n for _ in range(n)], [[one] * n for _ in range(n)]
        )
    assert e.value.condition == "1"
    t = parse_laurent("t")
    f1 = [[one] * n for _ in range(n)]
    f2 = [[zero] * n for _ in range(n)]
    f2[0][1] = t
    with pytest.raises(PairConditionError):
        alexander_pair_check(R3, f1, f2)


def test_derived_star_gives_a_quandle():
    rng = seeded_rng(40)
    f = constant_pair(R3, parse_laurent("t"), parse_laurent("1 - t"))
    pts = [
        (rng.randrange(3), parse_laurent(rng.choice(["1", "t", "1 - t", "t^-1"])))
        for _ in range(6)
    ]
    for p in pts:
        assert derived_star(p, p, f, R3) == p  # idempotence
    for p in pts:
        for r in pts:
            for s in pts:
                lhs = derived_star(derived_star(p, r, f, R3), s, f, R3)
                rhs = derived_star(
                    derived_star(p, s, f, R3), derived_star(r, s, f, R3), f, R3
                )
                assert lhs == rhs  # right self-distributivity


def test_f_twisted_weights_preserve_holonomy():
    for q in (R3, T4):
        for f in _pairs(q):
            assert holonomy_check(q, f_twisted_weights(f, q)).ok


def test_identity_weights_preserve_holonomy():
    assert holonomy_check(T4, identity_weights(4)).ok


def test_recover_pair_roundtrip():
    rng = seeded_rng(41)
    for q in (R3, T4):
        cands = _pairs(q) + [random_alexander_pair(q, rng) for _ in range(5)]
        for f in cands:
            g = f_twisted_weights(f, q)
            back = recover_pair(q, g)
            assert back.f1 == f.f1 and back.f2 == f.f2
            assert f_twisted_weights(back, q) == g


def test_perturbed_weights_fail_holonomy():
    rng = seeded_rng(42)
    f = constant_pair(R3, parse_laurent("t"), parse_laurent("1 - t"))
    g = f_twisted_weights(f, R3)
    names = ("g1_pos", "g2_pos", "g1_neg", "g2_neg")
    for _ in range(20):
        which = rng.choice(names)
        a, b = rng.randrange(3), rng.randrange(3)
        bad = g.perturbed(which, a, b, LaurentPoly.one())
        assert not holonomy_check(R3, bad).ok


def test_trefoil_coloring_count():
    assert len(enumerate_colorings(R3, fixtures.trefoil())) == 9
    assert len(enumerate_colorings(T4, fixtures.trefoil())) == 4
    assert len(enumerate_colorings(R3, fixtures.unknot())) == 3


def test_coloring_from_map_validates():
    d = fixtures.trefoil()
    coloring_from_map(R3, d, {"a1": 0, "a2": 1, "a3": 2})
    with pytest.raises(ValueError):
        coloring_from_map(R3, d, {"a1": 0, "a2": 1, "a3": 1})
    with pytest.raises(ValueError):
        coloring_from_map(R3, d, {"a1": 0})


def test_coloring_count_reidemeister_invariant():
    for label, before, after in fixtures.reidemeister_fixture_pairs():
        nb = len(enumerate_colorings(R3, before))
        na = len(enumerate_colorings(R3, after))
        assert nb == na, label


def test_quandle_graph_reproduces_alexander_numerator():
    d = fixtures.trefoil()
    f = constant_pair(R3, parse_laurent("t"), parse_laurent("1 - t"))
    g = f_twisted_weights(f, R3)
    c = coloring_from_map(R3, d, {a: 0 for a in d.arcs})
    graph = quandle_weighted_graph(d, c, g, R3)
    z = zeta_reciprocal(graph)
    assert z.eq_up_to_units(parse_laurent("1 - t + t^2"))


def test_quandle_graph_unknot():
    d = fixtures.unknot()
    f = constant_pair(R3, parse_laurent("t"), parse_laurent("1 - t"))
    g = f_twisted_weights(f, R3)
    c = coloring_from_map(R3, d, {"a1": 0})
    graph = quandle_weighted_graph(d, c, g)
    assert len(graph.vertices) == 1 and not graph.edges
    assert zeta_reciprocal(graph).is_one()


def test_quandle_graph_r1_kink_unit_factor():
    from holozeta.knot import ReidemeisterMove, reidemeister_apply

    d = fixtures.trefoil()
    e = reidemeister_apply(d, ReidemeisterMove("R1_2", arc="a1", sign=-1))
    f = constant_pair(R3, parse_laurent("t"), parse_laurent("1 - t"))
    g = f_twisted_weights(f, R3)
    cd = coloring_from_map(R3, d, {a: 0 for a in d.arcs})
    ce = coloring_from_map(R3, e, {a: 0 for a in e.arcs})
    zd = zeta_reciprocal(quandle_weighted_graph(d, cd, g, R3))
    ze = zeta_reciprocal(quandle_weighted_graph(e, ce, g, R3))
    assert zd.eq_up_to_units(ze)
    assert ze.unit_quotient(zd).is_unit()


def test_quandle_graph_zeta_reidemeister_up_to_units():
    f = constant_pair(R3, parse_laurent("t"), parse_laurent("1 - t"))
    g = f_twisted_weights(f, R3)
    for label, before, after in fixtures.reidemeister_fixture_pairs():
        cb = coloring_from_map(R3, before, {a: 0 for a in before.arcs})
        ca = coloring_from_map(R3, after, {a: 0 for a in after.arcs})
        zb = zeta_reciprocal(quandle_weighted_graph(before, cb, g, R3))
        za = zeta_reciprocal(quandle_weighted_graph(after, ca, g, R3))
        assert zb.eq_up_to_units(za), label


def test_text_roundtrips():
    rng = seeded_rng(43)
    assert parse_quandle(format_quandle(R3)).table == R3.table
    f = random_alexander_pair(R3, rng)
    back = parse_pair_file(format_pair_file(f), R3)
    assert back.f1 == f.f1 and back.f2 == f.f2
    g = f_twisted_weights(f, R3)
    assert parse_weights_file(format_weights_file(g)) == g
