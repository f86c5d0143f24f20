"""Simplicial lattice cones: faces, transverse cones, Minkowski products,
orthogonality, smooth subdivision and placing triangulation.

A cone is stored with primitive integer generators in lexicographic order and a
canonical lattice, so structurally equal cones compare (and hash) equal and can
be used as basis keys of :class:`ConeElement`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import floor, gcd
from typing import Iterable, Iterator, Mapping, Sequence

from .linalg import (
    STANDARD,
    InnerProductForm,
    IntLattice,
    coordinates,
    hermite_normal_form,
    independent,
    inner_product,
    is_zero,
    lattice_canonical,
    lattice_coordinates,
    lattice_index,
    lattice_intersect_span,
    max_dim,
    pad,
    project_orthogonal,
    rank,
    solve,
    trim,
    vec,
)
from .rational import RationalLike, as_rational, format_rational, primitive_integer

IntVector = tuple[int, ...]


class ConeError(ValueError):
    pass


class LocalityError(ValueError):
    """A product was requested on a pair outside the locality relation."""

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class LatticeCone:
    ambient_dim: int
    generators: tuple[IntVector, ...]
    lattice: IntLattice
    _key: tuple = field(init=False, repr=False)

    def __post_init__(self) -> None:
        gens = tuple(sorted(trim(g) for g in self.generators))
        object.__setattr__(self, "_key", (gens, self.lattice))

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def is_zero_cone(self) -> bool:
        return not self.generators

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LatticeCone):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __lt__(self, other: "LatticeCone") -> bool:
        return (self.dim, self._key[0], self.lattice._key) < (other.dim, other._key[0], other.lattice._key)

    def __repr__(self) -> str:
        if not self.generators:
            return "J"
        gens = ", ".join("(" + ",".join(map(str, g)) + ")" for g in self.generators)
        lat = ", ".join("(" + ",".join(format_rational(x) for x in b) + ")" for b in self.lattice.basis)
        return f"<{gens}; {lat}>"

    def embed(self, k: int) -> "LatticeCone":
        if k == self.ambient_dim:
            return self
        gens = tuple(tuple(int(x) for x in pad(g, k)) for g in self.generators)
        return LatticeCone(k, gens, self.lattice.embed(k))


def zero_cone(k: int = 0) -> LatticeCone:
    """The trivial lattice cone ({0}, {0}), the coaugmentation element J."""
    return LatticeCone(k, (), lattice_canonical([], k))


J = zero_cone()


def _primitive_rays(generators: Iterable[Sequence[RationalLike]], k: int) -> list[IntVector]:
    rays: list[IntVector] = []
    for g in generators:
        v = pad(vec(g), k)
        u, c = primitive_integer(v)
        if c == 0:
            raise ConeError("zero generator")
        if u not in rays:
            rays.append(u)
    return sorted(rays)


def make_cone(
    generators: Sequence[Sequence[RationalLike]],
    lattice: Sequence[Sequence[RationalLike]] | IntLattice | None = None,
    ambient_dim: int | None = None,
) -> LatticeCone:
    """Build a simplicial lattice cone; the default lattice is generated by the primitive generators."""
    k = max(max_dim(generators), ambient_dim or 0)
    if isinstance(lattice, IntLattice):
        k = max(k, lattice.ambient_dim)
    elif lattice is not None:
        k = max(k, max_dim(lattice))
    rays = _primitive_rays(generators, k)
    if not independent(rays):
        raise ConeError("non-simplicial input; triangulate first")
    if lattice is None:
        lat = lattice_canonical(rays, k)
    else:
        lat = lattice if isinstance(lattice, IntLattice) else lattice_canonical(lattice, k)
        lat = lat.embed(k)
        if lat.rank != len(rays) or rank(list(rays) + list(lat.basis)) != len(rays):
            raise ConeError("lattice does not span the linear span of the generators")
    return LatticeCone(k, tuple(rays), lat)


# ---------------------------------------------------------------------------
# faces and transverse cones


def face(C: LatticeCone, generators: Iterable[IntVector]) -> LatticeCone:
    gens = tuple(sorted(generators))
    lat = lattice_intersect_span(C.lattice, gens).embed(C.ambient_dim)
    return LatticeCone(C.ambient_dim, gens, lat)


def faces(C: LatticeCone) -> list[LatticeCone]:
    """All 2^n faces, with the saturated face lattice Λ_C ∩ span(F)."""
    out = []
    for r in range(C.dim + 1):
        for sub in combinations(C.generators, r):
            out.append(face(C, sub))
    return out


def is_face(F: LatticeCone, C: LatticeCone) -> bool:
    gens = set(pad_int(g, C.ambient_dim) for g in C.generators)
    if not all(pad_int(g, C.ambient_dim) in gens for g in F.generators):
        return False
    return F == face(C, [pad_int(g, C.ambient_dim) for g in F.generators])


def pad_int(g: Sequence[int], k: int) -> IntVector:
    g = tuple(int(x) for x in g)
    return g + (0,) * (k - len(g))


def transverse_cone(C: LatticeCone, F: LatticeCone, Q: InnerProductForm = STANDARD) -> LatticeCone:
    """Q-orthogonal projection of (C, Λ_C) onto span(F)^⊥."""
    k = max(C.ambient_dim, F.ambient_dim)
    C, F = C.embed(k), F.embed(k)
    if not is_face(F, C):
        raise ConeError(f"{F!r} is not a face of {C!r}")
    fgens = [vec(g) for g in F.generators]
    proj = [project_orthogonal(Q, vec(g), fgens) for g in C.generators if g not in F.generators]
    rays = _primitive_rays([p for p in proj if not is_zero(p)], k)
    lat = lattice_canonical([project_orthogonal(Q, b, fgens) for b in C.lattice.basis], k)
    return LatticeCone(k, tuple(rays), lat)


def minkowski_product(a: LatticeCone, b: LatticeCone) -> LatticeCone:
    k = max(a.ambient_dim, b.ambient_dim)
    a, b = a.embed(k), b.embed(k)
    rays = sorted(set(a.generators) | set(b.generators))
    if not independent(rays):
        raise ConeError("product leaves the simplicial class")
    lat = lattice_canonical(list(a.lattice.basis) + list(b.lattice.basis), k)
    return LatticeCone(k, tuple(rays), lat)


def are_orthogonal(Q: InnerProductForm, a: LatticeCone, b: LatticeCone) -> bool:
    return all(inner_product(Q, u, v) == 0 for u in a.lattice.basis for v in b.lattice.basis)


# ---------------------------------------------------------------------------
# smoothness


def ray_vectors(C: LatticeCone) -> list[tuple[Fraction, ...]]:
    """The shortest vector of Λ_C on each ray, in generator order."""
    out = []
    for g in C.generators:
        (b,) = lattice_intersect_span(C.lattice, [g]).basis
        c = coordinates([g], b)[0]
        out.append(b if c > 0 else tuple(-x for x in b))
    return out


def cone_index(C: LatticeCone) -> int:
    if C.is_zero_cone:
        return 1
    return lattice_index(lattice_canonical(ray_vectors(C), C.ambient_dim), C.lattice)


def is_smooth(C: LatticeCone) -> bool:
    return cone_index(C) == 1


def _lattice_frame(C: LatticeCone) -> tuple[list[tuple[Fraction, ...]], list[IntVector]]:
    """Basis of Λ_C and the ray vectors in those integer coordinates."""
    B = list(C.lattice.basis)
    rays = [lattice_coordinates(C.lattice, v) for v in ray_vectors(C)]
    return B, rays


def _box_points(rays: Sequence[IntVector]) -> list[tuple[IntVector, tuple[Fraction, ...]]]:
    """Nonzero points of Z^n in the half-open parallelepiped spanned by ``rays``,
    with their coefficients in [0, 1)."""
    n = len(rays)
    H = hermite_normal_form(rays, n)
    diag = [H[i][i] for i in range(n)]
    cols = [[Fraction(rays[i][j]) for i in range(n)] for j in range(n)]
    out = []

    def reps(prefix: list[int]) -> Iterator[list[int]]:
        if len(prefix) == n:
            yield prefix
            return
        for x in range(diag[len(prefix)]):
            yield from reps(prefix + [x])

    for x in reps([]):
        if not any(x):
            continue
        lam = solve(cols, x)
        frac = tuple(l - floor(l) for l in lam)
        p = tuple(int(sum(f * rays[i][j] for i, f in enumerate(frac))) for j in range(n))
        if any(p):
            out.append((p, frac))
    return out


def _primitive_int(v: Sequence[int]) -> IntVector:
    g = 0
    for a in v:
        g = gcd(g, a)
    return tuple(a // g for a in v)


def _abs_det(rays: Sequence[IntVector]) -> int:
    from .linalg import det

    return abs(int(det(rays)))


SUBDIVISION_STRATEGIES = ("shortest", "interior-first")


def unimodular_fan(rays: Sequence[IntVector], strategy: str = "shortest") -> list[tuple[IntVector, ...]]:
    """Maximal cones of a unimodular fan refining the full-dimensional simplicial cone on ``rays`` in Z^n.

    Global stellar subdivisions at box points of a cone of maximal index; with
    ``"interior-first"`` the first pivot is the primitive vector on the sum of
    the rays instead.
    """
    if strategy not in SUBDIVISION_STRATEGIES:
        raise ConeError(f"unknown subdivision strategy {strategy!r}")
    fan: list[tuple[IntVector, ...]] = [tuple(sorted(rays))]
    if not rays:
        return fan
    first = strategy == "interior-first"
    while True:
        indexed = [(_abs_det(s), s) for s in fan]
        worst = max((m for m, _ in indexed), default=1)
        if worst == 1:
            return sorted(fan)
        sigma = min(s for m, s in indexed if m == worst)
        if first:
            first = False
            total = [sum(col) for col in zip(*sigma)]
            p = _primitive_int(total)
            tau = set(sigma)
        else:
            p, lam = min(_box_points(sigma), key=lambda t: (sum(t[1]), t[0]))
            tau = {v for v, l in zip(sigma, lam) if l > 0}
        new_fan = []
        for s in fan:
            if tau <= set(s):
                for v in tau:
                    new_fan.append(tuple(sorted((set(s) - {v}) | {p})))
            else:
                new_fan.append(s)
        fan = new_fan


def _to_ambient(B: Sequence[Sequence[Fraction]], x: Sequence[int], k: int) -> tuple[Fraction, ...]:
    return tuple(sum((xi * b[j] for xi, b in zip(x, B)), Fraction(0)) for j in range(k))


def smooth_subdivision(C: LatticeCone, strategy: str = "shortest") -> list[LatticeCone]:
    """Maximal cones of a smooth subdivision of C; all pieces carry Λ_C."""
    if is_smooth(C):
        return [C]
    B, rays = _lattice_frame(C)
    pieces = []
    for sigma in unimodular_fan(rays, strategy):
        gens = [_to_ambient(B, v, C.ambient_dim) for v in sigma]
        pieces.append(make_cone(gens, C.lattice, C.ambient_dim))
    return pieces


def interior_cells(C: LatticeCone, strategy: str = "shortest") -> list[list[tuple[Fraction, ...]]]:
    """Cells of a smooth fan refining C whose relative interiors tile the interior C°.

    Each cell is returned as its list of ray vectors (a basis of Λ_C ∩ span of the cell).
    """
    if C.is_zero_cone:
        return [[]]
    B, rays = _lattice_frame(C)
    n = len(rays)
    cols = [[Fraction(rays[i][j]) for i in range(n)] for j in range(n)]
    cells: set[tuple[IntVector, ...]] = set()
    for sigma in unimodular_fan(rays, strategy):
        for r in range(1, n + 1):
            cells.update(combinations(sigma, r))
    out = []
    for cell in sorted(cells):
        sample = [sum(col) for col in zip(*cell)]
        lam = solve(cols, sample)
        if all(l > 0 for l in lam):
            out.append([_to_ambient(B, v, C.ambient_dim) for v in cell])
    return out


# ---------------------------------------------------------------------------
# formal combinations


class ConeElement:
    """A finite formal Q-linear combination of lattice cones."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[LatticeCone, RationalLike] | Iterable[tuple[LatticeCone, RationalLike]] = ()):
        acc: dict[LatticeCone, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for cone, c in items:
            c = as_rational(c)
            acc[cone] = acc.get(cone, Fraction(0)) + c
        self.terms = {cone: c for cone, c in acc.items() if c}

    @classmethod
    def basis(cls, cone: LatticeCone) -> "ConeElement":
        return cls({cone: 1})

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: t[0]))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LatticeCone):
            other = ConeElement.basis(other)
        if not isinstance(other, ConeElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "ConeElement") -> "ConeElement":
        return ConeElement(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "ConeElement":
        return ConeElement({c: -x for c, x in self.terms.items()})

    def __sub__(self, other: "ConeElement") -> "ConeElement":
        return self + (-other)

    def __rmul__(self, c: RationalLike) -> "ConeElement":
        c = as_rational(c)
        return ConeElement({k: c * x for k, x in self.terms.items()})

    def degree_components(self) -> dict[int, "ConeElement"]:
        out: dict[int, dict] = {}
        for cone, c in self.terms.items():
            out.setdefault(cone.dim, {})[cone] = c
        return {d: ConeElement(t) for d, t in out.items()}

    def multiply(self, other: "ConeElement", Q: InnerProductForm = STANDARD) -> "ConeElement":
        """Minkowski product extended bilinearly; every pair of terms must be Q-orthogonal."""
        acc = []
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                if not are_orthogonal(Q, a, b):
                    raise LocalityError(f"product of non-orthogonal cones {a!r} and {b!r}", (a, b))
                acc.append((minkowski_product(a, b), x * y))
        return ConeElement(acc)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{format_rational(c)}*{cone!r}" for cone, c in self)


# ---------------------------------------------------------------------------
# triangulation of non-simplicial input


def _in_cone(x: Sequence[Fraction], cells: Sequence[Sequence[IntVector]]) -> bool:
    for cell in cells:
        c = coordinates([vec(v) for v in cell], x)
        if c is not None and all(ci >= 0 for ci in c):
            return True
    return False


def placing_triangulation(generators: Sequence[Sequence[RationalLike]]) -> list[tuple[IntVector, ...]]:
    """Placing triangulation of the cone spanned by ``generators``.

    Rays are primitivised and placed in decreasing lexicographic order; a ray
    already inside the current cone is skipped.
    """
    k = max_dim(generators)
    rays = sorted(_primitive_rays(generators, k), reverse=True)
    cells: list[tuple[IntVector, ...]] = []
    placed: list[IntVector] = []
    for r in rays:
        rv = vec(r)
        if not placed:
            placed.append(r)
            cells = [(r,)]
            continue
        if rank(placed + [r]) > rank(placed):
            cells = [c + (r,) for c in cells]
            placed.append(r)
            continue
        if _in_cone(rv, cells):
            continue
        if _in_cone(tuple(-x for x in rv), cells):
            raise ConeError("not strongly convex")
        count: dict[frozenset, int] = {}
        for c in cells:
            for v in c:
                f = frozenset(c) - {v}
                count[f] = count.get(f, 0) + 1
        new = []
        for c in cells:
            coeffs = coordinates([vec(v) for v in c], rv)
            for v, a in zip(c, coeffs):
                f = frozenset(c) - {v}
                if a < 0 and count[f] == 1:
                    new.append(tuple(sorted(f | {r})))
        cells = cells + new
        placed.append(r)
    return sorted(tuple(sorted(c)) for c in cells)


def triangulate(
    generators: Sequence[Sequence[RationalLike]],
    lattice: Sequence[Sequence[RationalLike]] | IntLattice | None = None,
) -> ConeElement:
    """Split a pointed polyhedral cone into simplicial lattice cones (coefficient 1 each)."""
    k = max_dim(generators)
    if lattice is None:
        lat = lattice_canonical(_primitive_rays(generators, k), k)
    elif isinstance(lattice, IntLattice):
        lat = lattice
    else:
        lat = lattice_canonical(lattice, k)
    cells = placing_triangulation(generators)
    return ConeElement({make_cone(c, lattice_intersect_span(lat, c), k): 1 for c in cells})


def polyhedral_cells(generators: Sequence[Sequence[RationalLike]]) -> tuple[list[tuple[IntVector, ...]], list[tuple[IntVector, ...]]]:
    """(all cells, interior cells) of the placing triangulation's fan.

    A cell is on the boundary iff it lies in a codimension-one cell used by a
    single maximal cone.
    """
    maximal = placing_triangulation(generators)
    cells: set[tuple[IntVector, ...]] = set()
    facet_count: dict[tuple[IntVector, ...], int] = {}
    for m in maximal:
        for r in range(len(m) + 1):
            cells.update(combinations(m, r))
        for f in combinations(m, len(m) - 1):
            facet_count[f] = facet_count.get(f, 0) + 1
    boundary = [set(f) for f, n in facet_count.items() if n == 1]
    interior = [c for c in cells if not any(set(c) <= b for b in boundary)]
    return sorted(cells), sorted(interior)
