"""Shared cones, orthogonal pairs and random germ generators for the tests."""
from __future__ import annotations

import random
from fractions import Fraction

from conelab.cones import LatticeCone, make_cone, zero_cone
from conelab.germs import MeromorphicGerm
from conelab.linalg import STANDARD, InnerProductForm

Z2 = [(1, 0), (0, 1)]
Z3 = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]


def corpus() -> dict[str, LatticeCone]:
    """Simplicial lattice cones of dimension <= 3, smooth and non-smooth."""
    return {
        "e1": make_cone([(1,)]),
        "e1,e2": make_cone([(1, 0), (0, 1)]),
        "e1,e1+e2": make_cone([(1, 0), (1, 1)]),
        "(1,0),(1,2)": make_cone([(1, 0), (1, 2)], Z2),
        "(1,0),(1,3)": make_cone([(1, 0), (1, 3)], Z2),
        "(1,2),(2,1)": make_cone([(1, 2), (2, 1)], Z2),
        "(1,1) in 2d": make_cone([(1, 1)]),
        "e1 with 2Z": make_cone([(1,)], [(2,)]),
        "e1,e2 with (1/2,1/2)": make_cone([(1, 0), (0, 1)], [(1, 0), ("1/2", "1/2")]),
        "e1,e2,e3": make_cone(Z3),
        "staircase 3d": make_cone([(1, 0, 0), (1, 1, 0), (1, 1, 1)]),
        "index-2 3d": make_cone([(1, 0, 0), (0, 1, 0), (1, 1, 2)], Z3),
        "(1,0,1),(0,1,1)": make_cone([(1, 0, 1), (0, 1, 1)]),
    }


def orthogonal_pairs() -> list[tuple[str, LatticeCone, LatticeCone]]:
    """Pairs of Q-orthogonal cones (standard Q) whose Minkowski product is simplicial."""
    e = lambda *v: make_cone([v])  # noqa: E731
    return [
        ("e1|e2", e(1, 0), e(0, 1)),
        ("e1|e2,e3", e(1, 0, 0), make_cone([(0, 1, 0), (0, 0, 1)])),
        ("e1,e2|e3", make_cone([(1, 0, 0), (0, 1, 0)]), e(0, 0, 1)),
        ("(1,1)|(1,-1)", e(1, 1), e(1, -1)),
        ("(1,1,0)|e3", e(1, 1, 0), e(0, 0, 1)),
        ("(1,0),(1,2)|e3", make_cone([(1, 0, 0), (1, 2, 0)], [(1, 0, 0), (0, 1, 0)]), e(0, 0, 1)),
        ("(1,0),(1,3)|e3", make_cone([(1, 0, 0), (1, 3, 0)], [(1, 0, 0), (0, 1, 0)]), e(0, 0, 1)),
        ("2Z e1|e2", make_cone([(1, 0)], [(2, 0)]), e(0, 1)),
        ("(1,2,0)|(2,-1,0),e3", e(1, 2, 0), make_cone([(2, -1, 0), (0, 0, 1)])),
        ("(1,1,1)|(1,-1,0)", e(1, 1, 1), e(1, -1, 0)),
        ("(1,1)|(1,-1) with Z2", make_cone([(1, 1)], [(1, 1)]), make_cone([(1, -1)], [(1, -1)])),
        ("J|e1,e2", zero_cone(2), make_cone([(1, 0), (0, 1)])),
    ]


SKEW_Q = InnerProductForm.from_matrix([[2, 1], [1, 2]])


def skew_pairs() -> list[tuple[str, LatticeCone, LatticeCone]]:
    """Pairs orthogonal for the Gram matrix [[2,1],[1,2]] but not for the dot product."""
    return [
        ("e1|(-1,2)", make_cone([(1, 0)]), make_cone([(-1, 2)])),
        ("e2|(2,-1)", make_cone([(0, 1)]), make_cone([(2, -1)])),
    ]


# ---------------------------------------------------------------------------
# random germs supported on a prescribed subspace of linear forms


def _combo(rng: random.Random, basis: list[tuple[int, ...]], k: int) -> tuple[int, ...]:
    while True:
        coeffs = [rng.randint(-2, 2) for _ in basis]
        v = tuple(sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(k))
        if any(v):
            return v


def _linear_poly(v: tuple[int, ...]) -> MeromorphicGerm:
    k = len(v)
    return MeromorphicGerm.polynomial({tuple(1 if t == j else 0 for t in range(k)): c for j, c in enumerate(v) if c}, k)


def random_germ(
    rng: random.Random, basis: list[tuple[int, ...]], k: int, valid: int = 3, polar: bool = True
) -> MeromorphicGerm:
    """A random germ whose numerators and poles only involve forms in span(basis)."""
    total = MeromorphicGerm.zero(k, valid)
    for _ in range(rng.randint(1, 3)):
        num = MeromorphicGerm.constant(Fraction(rng.randint(-5, 5), rng.randint(1, 4)), k)
        for _ in range(rng.randint(0, 2)):
            num = num * _linear_poly(_combo(rng, basis, k))
        term = num
        if polar:
            den = [(_combo(rng, basis, k), rng.randint(1, 2)) for _ in range(rng.randint(0, min(2, len(basis))))]
            if den:
                term = term * MeromorphicGerm.from_term({(0,) * k: 1}, den, k)
        total = total + term.truncate(valid)
    return total


def random_splitting(rng: random.Random) -> tuple[int, list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Ambient dimension and bases of two mutually orthogonal subspaces (standard Q)."""
    choices = [
        (2, [(1, 0)], [(0, 1)]),
        (2, [(1, 1)], [(1, -1)]),
        (3, [(1, 0, 0)], [(0, 1, 0), (0, 0, 1)]),
        (3, [(1, 1, 0)], [(1, -1, 0), (0, 0, 1)]),
        (3, [(1, 2, 0), (0, 0, 1)], [(2, -1, 0)]),
        (3, [(1, 1, 1)], [(1, -1, 0), (1, 1, -2)]),
    ]
    k, a, b = rng.choice(choices)
    if rng.random() < 0.5:
        a, b = b, a
    return k, a, b


def independent_pair(rng: random.Random, valid: int = 3) -> tuple[MeromorphicGerm, MeromorphicGerm]:
    k, a, b = random_splitting(rng)
    return random_germ(rng, a, k, valid), random_germ(rng, b, k, valid)


def dual_point(rng: random.Random, C: LatticeCone) -> list[float]:
    """A point with ``<v, z>`` in [-1, -1/4] for every ray vector ``v`` of ``C``."""
    from conelab.cones import ray_vectors
    from conelab.linalg import solve

    rays = [[float(x) for x in v] for v in ray_vectors(C)]
    n, k = len(rays), C.ambient_dim
    targets = [-rng.uniform(0.25, 1.0) for _ in rays]
    # least-norm solution z = V^T (V V^T)^{-1} t
    G = [[Fraction(sum(a * b for a, b in zip(u, v))) for v in rays] for u in rays]
    y = solve(G, [Fraction(t) for t in targets])
    return [sum(float(y[i]) * rays[i][j] for i in range(n)) for j in range(k)]


__all__ = [
    "STANDARD",
    "SKEW_Q",
    "corpus",
    "orthogonal_pairs",
    "skew_pairs",
    "random_germ",
    "random_splitting",
    "independent_pair",
    "dual_point",
]
