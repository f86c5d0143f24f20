"""Floating-point lattice-point sums over open cones, used to cross-check germs.

Points of ``C° ∩ Λ_C`` are written uniquely as ``p + Σ k_i v_i`` with ``v_i`` the
ray vectors and ``p`` a lattice point of the half-open parallelepiped they
span.  The parallelepiped points are found by brute-force enumeration of
lattice coordinates, independently of the subdivision code.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .cones import LatticeCone, ray_vectors
from .linalg import solve


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    value: float
    last_shell: float
    tail_bound: float
    radius: int

    @property
    def truncation_estimate(self) -> float:
        return self.tail_bound


def parallelepiped_points(C: LatticeCone) -> list[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]]:
    """``(point, coefficients)`` for every point of Λ_C in ``{Σ λ_i v_i : 0 <= λ_i < 1}``."""
    rays = ray_vectors(C)
    n = len(rays)
    if n == 0:
        return [((), ())]
    basis = list(C.lattice.basis)
    k = C.ambient_dim
    # coordinates of the rays in the lattice basis, via a square subsystem of full rank
    cols = _independent_columns(basis, k)
    Bsq = [[b[j] for j in cols] for b in basis]
    BT = [list(r) for r in zip(*Bsq)]
    ray_coords = [solve(BT, [v[j] for j in cols]) for v in rays]
    bound = [sum(abs(rc[i]) for rc in ray_coords) for i in range(n)]
    RT = [[ray_coords[i][j] for i in range(n)] for j in range(n)]
    out = []
    for m in product(*(range(-math.ceil(b), math.ceil(b) + 1) for b in bound)):
        lam = solve(RT, list(m))
        if all(0 <= l < 1 for l in lam):
            point = tuple(sum((mi * b[j] for mi, b in zip(m, basis)), Fraction(0)) for j in range(k))
            out.append((point, tuple(lam)))
    return out


def _independent_columns(rows: Sequence[Sequence[Fraction]], k: int) -> list[int]:
    from .linalg import rref

    _, pivots = rref([list(r) for r in rows], k)
    return pivots


def _dot(u: Sequence, z: Sequence[float]) -> float:
    return sum(float(a) * b for a, b in zip(u, z))


def oracle_sum(C: LatticeCone, z: Sequence[float], radius: int | None = None, tol: float = 1e-12) -> OracleResult:
    """``Σ e^{<n,z>}`` over lattice points ``n`` of the open cone, each ``k_i <= radius``.

    With ``radius=None`` the radius grows until the rigorous tail bound drops
    below ``tol``.
    """
    z = [float(x) for x in z] + [0.0] * max(0, C.ambient_dim - len(z))
    rays = ray_vectors(C)
    ts = [_dot(v, z) for v in rays]
    for g in C.generators:
        if _dot(g, z) >= 0:
            raise OracleError(f"point is not in the dual open cone: <{g}, z> >= 0")
    if not rays:
        return OracleResult(1.0, 0.0, 0.0, 0)
    if radius is None:
        tmax = max(ts)
        radius = max(10, math.ceil(math.log(tol * (1 - math.exp(tmax)) ** len(ts) / len(ts)) / tmax))
    box = parallelepiped_points(C)
    total = 0.0
    shell = 0.0
    tail = 0.0
    for p, lam in box:
        base = math.exp(_dot(p, z))
        prod_full = base
        prod_inner = base
        for t, l in zip(ts, lam):
            start = 1 if l == 0 else 0
            prod_full *= math.fsum(math.exp(k * t) for k in range(start, radius + 1))
            prod_inner *= math.fsum(math.exp(k * t) for k in range(start, radius))
        total += prod_full
        shell += prod_full - prod_inner
        tail += base * sum(
            math.exp((radius + 1) * t) / (1 - math.exp(t)) * math.prod(1 / (1 - math.exp(s)) for j, s in enumerate(ts) if j != i)
            for i, t in enumerate(ts)
        )
    return OracleResult(total, shell, tail, radius)
