"""The connected locality Hopf algebra of lattice cones and the characters
``S`` (exponential sum over the open cone), ``I`` (exponential integral) and
``mu = pi_+ S``, with the Euler-Maclaurin factorisation ``S = mu * I``.

Germs are in the variables ``z`` with linear forms ``<v, z> = sum v_i z_i``;
the inner product ``Q`` acts on coefficient vectors, the same vectors that
generate cones, so orthogonal cones give independent germs.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cones import (
    ConeElement,
    LatticeCone,
    are_orthogonal,
    faces,
    interior_cells,
    make_cone,
    minkowski_product,
    polyhedral_cells,
    ray_vectors,
    smooth_subdivision,
    transverse_cone,
    zero_cone,
)
from .germs import (
    MeromorphicGerm,
    are_independent_germs,
    exp_ratio_germ,
    germ_mul,
    is_holomorphic,
    is_polar,
    project_minus,
    project_plus,
)
from .linalg import STANDARD, InnerProductForm, lattice_canonical, lattice_intersect_span, max_dim
from .locality import (
    Birkhoff,
    ConnectedCoalgebra,
    LinearCharacter,
    TargetAlgebra,
    antipode,
    birkhoff_factorize,
    birkhoff_via_projection,
    convolution,
)
from .rational import RationalLike

J = zero_cone(0)


# ---------------------------------------------------------------------------
# coalgebra


def coproduct(C: LatticeCone, Q: InnerProductForm = STANDARD) -> list[tuple[Fraction, LatticeCone, LatticeCone]]:
    """``Δ(C) = Σ_F t(C, F) ⊗ F`` over all faces ``F``."""
    return _coproduct(C, Q)


@lru_cache(maxsize=None)
def _coproduct(C: LatticeCone, Q: InnerProductForm) -> list[tuple[Fraction, LatticeCone, LatticeCone]]:
    return [(Fraction(1), transverse_cone(C, F, Q), F) for F in faces(C)]


def reduced_coproduct(C: LatticeCone, Q: InnerProductForm = STANDARD) -> list[tuple[Fraction, LatticeCone, LatticeCone]]:
    return cone_coalgebra(Q).reduced_coproduct(C)


def cone_counit(C: LatticeCone) -> Fraction:
    return Fraction(1 if C.is_zero_cone else 0)


@lru_cache(maxsize=None)
def cone_coalgebra(Q: InnerProductForm = STANDARD) -> ConnectedCoalgebra[LatticeCone]:
    return ConnectedCoalgebra(
        unit=J,
        degree=lambda C: C.dim,
        coproduct=lambda C: coproduct(C, Q),
        counit=cone_counit,
        relation=lambda a, b: are_orthogonal(Q, a, b),
        product=minkowski_product,
    )


def cone_antipode(C: LatticeCone, Q: InnerProductForm = STANDARD) -> ConeElement:
    return ConeElement(antipode(cone_coalgebra(Q), C))


# ---------------------------------------------------------------------------
# exponential sums and integrals


def _smooth_open_sum(rays: Sequence[Sequence[Fraction]], order: int, k: int) -> MeromorphicGerm:
    """``prod e^{<v,z>}/(1-e^{<v,z>})`` through degree ``order``."""
    m = len(rays)
    out = MeromorphicGerm.constant(1, k)
    for v in rays:
        out = germ_mul(out, exp_ratio_germ(v, order + m - 1, k))
    return out.truncate(order)


@lru_cache(maxsize=None)
def exp_sum(C: LatticeCone, order: int, strategy: str = "shortest") -> MeromorphicGerm:
    """Exponential sum over the lattice points of the open cone, through degree ``order``."""
    k = C.ambient_dim
    if C.is_zero_cone:
        return MeromorphicGerm.constant(1, k)
    total = MeromorphicGerm.zero(k, order)
    for cell in interior_cells(C, strategy):
        total = total + _smooth_open_sum(cell, order, k)
    return total


def exp_sum_polyhedral(
    generators: Sequence[Sequence[RationalLike]],
    order: int,
    lattice: Sequence[Sequence[RationalLike]] | None = None,
) -> MeromorphicGerm:
    """Open-cone sum for a pointed cone that need not be simplicial.

    The interior is the disjoint union of the relative interiors of the interior
    cells of a placing triangulation.
    """
    k = max_dim(generators)
    _, interior = polyhedral_cells(generators)
    lat = lattice_canonical(lattice if lattice is not None else [c for c in generators], k)
    total = MeromorphicGerm.zero(k, order)
    for cell in interior:
        total = total + exp_sum(make_cone(cell, lattice_intersect_span(lat, cell), k), order)
    return total


@lru_cache(maxsize=None)
def exp_integral(C: LatticeCone, order: int | None = None) -> MeromorphicGerm:
    """Exponential integral ``∫_C e^{<x,z>} dx`` for the Lebesgue measure normalised by Λ_C.

    Smooth cones give ``prod(-1/<v_i, z>)``; other cones are summed over the
    maximal cones of a smooth subdivision.  Exact unless ``order`` is given.
    """
    k = C.ambient_dim
    if C.is_zero_cone:
        return MeromorphicGerm.constant(1, k)
    total = MeromorphicGerm.zero(k)
    for piece in smooth_subdivision(C):
        sign = -1 if piece.dim % 2 else 1
        total = total + MeromorphicGerm.from_term({(0,) * k: sign}, [(v, 1) for v in ray_vectors(piece)], k)
    return total if order is None else total.truncate(order)


def exp_integral_polyhedral(
    generators: Sequence[Sequence[RationalLike]],
    lattice: Sequence[Sequence[RationalLike]] | None = None,
) -> MeromorphicGerm:
    k = max_dim(generators)
    all_cells, _ = polyhedral_cells(generators)
    top = max(len(c) for c in all_cells)
    lat = lattice_canonical(lattice if lattice is not None else list(generators), k)
    total = MeromorphicGerm.zero(k)
    for cell in all_cells:
        if len(cell) == top:
            total = total + exp_integral(make_cone(cell, lattice_intersect_span(lat, cell), k))
    return total


def renormalized_mu(C: LatticeCone, order: int, Q: InnerProductForm = STANDARD) -> MeromorphicGerm:
    """``mu(C) = pi_+ S(C)``."""
    return project_plus(exp_sum(C, order), Q)


# ---------------------------------------------------------------------------
# characters into germs


@lru_cache(maxsize=None)
def germ_target(Q: InnerProductForm = STANDARD) -> TargetAlgebra[MeromorphicGerm]:
    return TargetAlgebra(
        one=MeromorphicGerm.constant(1),
        zero=MeromorphicGerm.zero(),
        mul=germ_mul,
        pi1=lambda f: project_plus(f, Q),
        pi2=lambda f: project_minus(f, Q),
        independent=lambda f, g: are_independent_germs(Q, f, g),
        in_pi1=lambda f: is_holomorphic(f, Q),
        in_pi2=lambda f: is_polar(f, Q),
        pi1_subalgebra=True,
        pi2_ideal=True,
    )


def working_order(C: LatticeCone, order: int) -> int:
    """Order at which characters are evaluated so products over Δ(C) stay exact through ``order``."""
    return order + C.dim


def sum_character(order: int, Q: InnerProductForm = STANDARD, strategy: str = "shortest") -> LinearCharacter:
    return LinearCharacter(lambda C: exp_sum(C, order, strategy), cone_coalgebra(Q), germ_target(Q), "S")


def integral_character(Q: InnerProductForm = STANDARD) -> LinearCharacter:
    return LinearCharacter(exp_integral, cone_coalgebra(Q), germ_target(Q), "I")


def mu_character(order: int, Q: InnerProductForm = STANDARD) -> LinearCharacter:
    return LinearCharacter(lambda C: renormalized_mu(C, order, Q), cone_coalgebra(Q), germ_target(Q), "mu")


def euler_maclaurin_verify(
    C: LatticeCone, order: int, Q: InnerProductForm = STANDARD
) -> tuple[bool, MeromorphicGerm]:
    """Compare ``(mu * I)(C)`` with ``S(C)`` through degree ``order``; returns the flag and the difference."""
    W = working_order(C, order)
    lhs = convolution(mu_character(W, Q), integral_character(Q))(C).truncate(order)
    diff = lhs - exp_sum(C, order)
    return diff.is_zero(), diff


def birkhoff_of_sum(
    C: LatticeCone, order: int, Q: InnerProductForm = STANDARD, via_projection: bool = False
) -> tuple[MeromorphicGerm, MeromorphicGerm]:
    """``(S_1^{*-1}(C), S_2(C))`` through degree ``order``."""
    W = working_order(C, order)
    phi = sum_character(W, Q)
    fac: Birkhoff = birkhoff_via_projection(phi) if via_projection else birkhoff_factorize(phi)
    return fac.phi1_inv(C).truncate(order), fac.phi2(C).truncate(order)
