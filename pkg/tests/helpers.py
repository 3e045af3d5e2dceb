"""Shared randomized generators and independent oracles for the tests."""
import itertools
import os
import random
from fractions import Fraction

from holozeta.laurent import LaurentPoly, PolyMatrix
from holozeta.freegroup import Word
from holozeta.wgraph import Edge, WeightedDigraph


def seeded_rng(salt: int = 0) -> random.Random:
    base = int(os.environ.get("HOLOZETA_SEED", "20240901"))
    return random.Random(base + salt)


def random_laurent(rng, max_deg: int = 1, min_exp: int = 0) -> LaurentPoly:
    terms = {}
    for e in range(min_exp, max_deg + 1):
        c = rng.randint(-2, 2)
        if c:
            terms[e] = Fraction(c)
    return LaurentPoly(terms)


def random_unit(rng) -> LaurentPoly:
    q = Fraction(rng.choice([1, -1, 2, 3]), rng.choice([1, 2]))
    return LaurentPoly.monomial(q, rng.randint(-2, 2))


def random_matrix(rng, r: int, c: int, max_deg: int = 1) -> PolyMatrix:
    return PolyMatrix.from_rows(
        [[random_laurent(rng, max_deg) for _ in range(c)] for _ in range(r)]
    )


def random_matrix_graph(rng, max_vertices: int = 5, max_dim: int = 2,
                        extra_edges: int = 2) -> WeightedDigraph:
    nv = rng.randint(1, max_vertices)
    vertices = tuple(("v%d" % i, rng.randint(1, max_dim)) for i in range(nv))
    dims = dict(vertices)
    edges = []
    n_edges = rng.randint(1, nv + extra_edges)
    for k in range(n_edges):
        a = rng.choice(vertices)[0]
        b = rng.choice(vertices)[0]
        edges.append(Edge("e%d" % k, a, b, random_matrix(rng, dims[a], dims[b])))
    return WeightedDigraph("matrix", vertices, tuple(edges))


def random_word(rng, n_gens: int, max_len: int = 12) -> Word:
    letters = tuple(
        (rng.randrange(n_gens), rng.choice((1, -1)))
        for _ in range(rng.randint(0, max_len))
    )
    return Word(letters)


def det_by_permutations(m: PolyMatrix) -> LaurentPoly:
    """Leibniz-formula determinant, an oracle independent of the library's
    Bareiss and cofactor routines."""
    n = m.rows
    total = LaurentPoly.zero()
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if seen[i]:
                continue
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = LaurentPoly.const(sign)
        for i in range(n):
            term = term * m[i, perm[i]]
        total = total + term
    return total
