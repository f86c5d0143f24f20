"""Exact rational linear algebra on the filtered space Q^oo, plus integer lattices.

Vectors are plain tuples of :class:`~fractions.Fraction`.  A vector of length
``k`` is identified with its zero-padded copies in higher dimension, so every
binary operation pads its arguments to a common length first.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .rational import RationalLike, as_rational, common_denominator, primitive_integer

Vector = tuple[Fraction, ...]


class LinalgError(ValueError):
    pass


# ---------------------------------------------------------------------------
# vectors


def vec(xs: Iterable[RationalLike]) -> Vector:
    return tuple(as_rational(x) for x in xs)


def pad(v: Sequence, k: int) -> Vector:
    v = tuple(v)
    if len(v) > k:
        if any(v[k:]):
            raise LinalgError(f"vector {v} does not fit in dimension {k}")
        return v[:k]
    return v + (Fraction(0),) * (k - len(v))


def trim(v: Sequence) -> tuple:
    """Drop trailing zeros (canonical representative under the filtration)."""
    v = tuple(v)
    n = len(v)
    while n and not v[n - 1]:
        n -= 1
    return v[:n]


def max_dim(*groups: Iterable[Sequence]) -> int:
    k = 0
    for g in groups:
        for v in g:
            k = max(k, len(v))
    return k


def add(u: Sequence, v: Sequence) -> Vector:
    k = max(len(u), len(v))
    u, v = pad(u, k), pad(v, k)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    k = max(len(u), len(v))
    u, v = pad(u, k), pad(v, k)
    return tuple(a - b for a, b in zip(u, v))


def scale(c: RationalLike, v: Sequence) -> Vector:
    c = as_rational(c)
    return tuple(c * a for a in v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def is_zero(v: Sequence) -> bool:
    return not any(v)


# ---------------------------------------------------------------------------
# matrices over Q


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    if ncols is None:
        ncols = max_dim(rows)
    A = [[Fraction(x) for x in pad(r, ncols)] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[0])


def independent(rows: Sequence[Sequence]) -> bool:
    return rank(rows) == len(rows)


def span_basis(rows: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """An RREF basis of the span of ``rows``."""
    if not rows:
        return []
    return [tuple(r) for r in rref(rows, ncols)[0]]


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of ``{x : r . x = 0 for all rows r}``, as primitive sign-canonical integer vectors."""
    R, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        out.append(sign_canonical(x))
    return out


def sign_canonical(v: Sequence) -> Vector:
    ints, _ = primitive_integer(v)
    first = next((a for a in ints if a), 0)
    if first < 0:
        ints = tuple(-a for a in ints)
    return tuple(Fraction(a) for a in ints)


def solve(A: Sequence[Sequence], b: Sequence) -> Vector:
    """Solve the square system ``A x = b`` exactly."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            raise LinalgError("singular system")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return tuple(M[i][n] for i in range(n))


def coordinates(basis: Sequence[Sequence], v: Sequence) -> Vector | None:
    """Coefficients ``c`` with ``sum c_i basis_i == v``; ``None`` if ``v`` is outside the span."""
    k = max(max_dim(basis), len(v))
    if not basis:
        return () if is_zero(v) else None
    B = [pad(b, k) for b in basis]
    v = pad(v, k)
    # normal equations on the standard dot product; basis is independent
    G = [[dot(bi, bj) for bj in B] for bi in B]
    rhs = [dot(bi, v) for bi in B]
    c = solve(G, rhs)
    recon = [sum((ci * bi[j] for ci, bi in zip(c, B)), Fraction(0)) for j in range(k)]
    if tuple(recon) != v:
        return None
    return c


def det(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    A = [list(map(Fraction, row)) for row in M]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    if is_zero(v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [v]) == rank(basis)


# ---------------------------------------------------------------------------
# inner product family


def _as_matrix(m: Sequence[Sequence[RationalLike]]) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(as_rational(x) for x in row) for row in m)


@dataclass(frozen=True)
class InnerProductForm:
    """A compatible family of positive-definite Gram matrices ``Q_k``.

    ``gram`` holds the largest specified matrix; ``Q_k`` for smaller ``k`` is its
    leading block, and beyond its size the family continues as an orthogonal sum
    with the standard dot product.  The empty family is the standard form.
    """

    gram: tuple[tuple[Fraction, ...], ...] = ()

    @classmethod
    def standard(cls) -> "InnerProductForm":
        return cls()

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence[RationalLike]]) -> "InnerProductForm":
        return cls.from_family({len(m): m})

    @classmethod
    def from_family(cls, family: Mapping[int, Sequence[Sequence[RationalLike]]]) -> "InnerProductForm":
        if not family:
            return cls()
        mats = {int(k): _as_matrix(m) for k, m in family.items()}
        for k, m in mats.items():
            if len(m) != k or any(len(row) != k for row in m):
                raise LinalgError(f"gram[{k}] is not a {k}x{k} matrix")
            for i in range(k):
                for j in range(i):
                    if m[i][j] != m[j][i]:
                        raise LinalgError(f"gram[{k}] is not symmetric at ({i},{j})")
            for j in range(1, k + 1):
                if det([row[:j] for row in m[:j]]) <= 0:
                    raise LinalgError(f"gram[{k}] is not positive definite (leading minor {j})")
        dims = sorted(mats)
        for a, b in zip(dims, dims[1:]):
            block = tuple(row[:a] for row in mats[b][:a])
            if block != mats[a]:
                raise LinalgError(f"gram[{b}] does not restrict to gram[{a}]")
        return cls(mats[dims[-1]])

    @property
    def is_standard(self) -> bool:
        n = len(self.gram)
        return all(self.gram[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    def entry(self, i: int, j: int) -> Fraction:
        n = len(self.gram)
        if i < n and j < n:
            return self.gram[i][j]
        return Fraction(1 if i == j else 0)

    def matrix(self, k: int) -> list[list[Fraction]]:
        return [[self.entry(i, j) for j in range(k)] for i in range(k)]

    def apply(self, v: Sequence, k: int | None = None) -> Vector:
        """``Q_k v`` as a vector (so that ``Q(u, v) = u . Q_k v``)."""
        k = len(v) if k is None else k
        v = pad(v, k)
        n = min(len(self.gram), k)
        out = list(v)
        for i in range(n):
            out[i] = sum((self.gram[i][j] * v[j] for j in range(n)), Fraction(0))
        return tuple(out)

    def __call__(self, u: Sequence, v: Sequence) -> Fraction:
        return inner_product(self, u, v)


STANDARD = InnerProductForm()


def inner_product(Q: InnerProductForm, u: Sequence, v: Sequence) -> Fraction:
    k = max(len(u), len(v))
    u, v = pad(u, k), pad(v, k)
    n = min(len(Q.gram), k)
    total = Fraction(0)
    for i in range(n):
        if u[i]:
            total += u[i] * sum((Q.gram[i][j] * v[j] for j in range(n)), Fraction(0))
    for i in range(n, k):
        total += u[i] * v[i]
    return total


def orthogonal_complement(Q: InnerProductForm, V: Sequence[Sequence], k: int) -> list[Vector]:
    if max_dim(V) > k:
        raise LinalgError("vectors exceed the ambient dimension")
    rows = [Q.apply(pad(v, k), k) for v in V if not is_zero(v)]
    return nullspace(rows, k)


def project_orthogonal(Q: InnerProductForm, v: Sequence, V: Sequence[Sequence]) -> Vector:
    """Q-orthogonal projection of ``v`` onto ``span(V)^perp``."""
    k = max(len(v), max_dim(V))
    v = pad(v, k)
    basis = span_basis(V, k)
    if not basis:
        return v
    G = [[inner_product(Q, bi, bj) for bj in basis] for bi in basis]
    rhs = [inner_product(Q, v, bi) for bi in basis]
    c = solve(G, rhs)
    w = list(v)
    for ci, b in zip(c, basis):
        if ci:
            for j in range(k):
                w[j] -= ci * b[j]
    return tuple(w)


# ---------------------------------------------------------------------------
# integer lattices


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int | None = None) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form: nonzero rows only, positive pivots,
    entries above each pivot reduced into ``[0, pivot)``."""
    if ncols is None:
        ncols = max_dim(rows)
    A = [[int(x) for x in r] + [0] * (ncols - len(r)) for r in rows]
    A = [r for r in A if any(r)]
    m = len(A)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c]]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[i_min] = A[i_min], A[r]
            clean = True
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if A[i][c]:
                        clean = False
            if clean:
                break
        if not A[r][c]:
            continue
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        p = A[r][c]
        for i in range(r):
            q = A[i][c] // p
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
        r += 1
    return [tuple(row) for row in A[:r]]


def integer_left_kernel(M: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """A Z-basis of ``{a in Z^r : a M = 0}``."""
    r = len(M)
    if r == 0:
        return []
    m = max_dim(M)
    aug = [list(pad(row, m)) + [1 if i == j else 0 for j in range(r)] for i, row in enumerate(M)]
    aug = [[int(x) for x in row] for row in aug]
    H = hermite_normal_form(aug, m + r)
    return [row[m:] for row in H if not any(row[:m])]


@dataclass(frozen=True, eq=False)
class IntLattice:
    """A lattice ``(1/denom) * rowspan_Z(rows)`` with ``rows`` in Hermite normal form."""

    ambient_dim: int
    rows: tuple[tuple[int, ...], ...]
    denom: int = 1
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        k = max((len(trim(r)) for r in self.rows), default=0)
        object.__setattr__(self, "_key", (tuple(r[:k] for r in self.rows), self.denom))

    @property
    def basis(self) -> tuple[Vector, ...]:
        return tuple(tuple(Fraction(x, self.denom) for x in r) for r in self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntLattice):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def embed(self, k: int) -> "IntLattice":
        if any(len(trim(r)) > k for r in self.rows):
            raise LinalgError("lattice does not fit")
        rows = tuple(tuple(r[:k]) + (0,) * (k - len(r)) for r in self.rows)
        return IntLattice(k, rows, self.denom)

    def contains(self, v: Sequence) -> bool:
        return lattice_coordinates(self, v) is not None


def zero_lattice(k: int) -> IntLattice:
    return IntLattice(k, (), 1)


def standard_lattice(k: int) -> IntLattice:
    return IntLattice(k, tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k)), 1)


def lattice_canonical(vectors: Sequence[Sequence[RationalLike]], ambient_dim: int | None = None) -> IntLattice:
    vs = [vec(v) for v in vectors]
    k = max(max_dim(vs), ambient_dim or 0)
    vs = [pad(v, k) for v in vs if not is_zero(v)]
    if not vs:
        return zero_lattice(k)
    d = common_denominator(x for v in vs for x in v)
    ints = [[int(x * d) for x in v] for v in vs]
    H = hermite_normal_form(ints, k)
    return IntLattice(k, tuple(H), d)


def lattice_coordinates(L: IntLattice, v: Sequence) -> tuple[int, ...] | None:
    """Integer coordinates of ``v`` in the basis of ``L``, or ``None`` if ``v`` is not in ``L``."""
    c = coordinates(L.basis, v)
    if c is None or any(x.denominator != 1 for x in c):
        return None
    return tuple(int(x) for x in c)


def lattice_intersect_span(L: IntLattice, V: Sequence[Sequence]) -> IntLattice:
    """The saturated sublattice ``L ∩ span_Q(V)``."""
    k = max(L.ambient_dim, max_dim(V))
    V = [pad(v, k) for v in V if not is_zero(v)]
    if not V or L.rank == 0:
        return zero_lattice(k)
    B = [pad(b, k) for b in L.basis]
    ann = nullspace(V, k)
    if not ann:
        return L.embed(k)
    M = [[dot(b, n) for n in ann] for b in B]
    d = common_denominator(x for row in M for x in row)
    Mi = [[int(x * d) for x in row] for row in M]
    kernel = integer_left_kernel(Mi)
    gens = [tuple(sum((a * b[j] for a, b in zip(coeffs, B)), Fraction(0)) for j in range(k)) for coeffs in kernel]
    return lattice_canonical(gens, k)


def lattice_index(sub: IntLattice, sup: IntLattice) -> int:
    """Index ``[sup : sub]``; raises if ``sub`` is not a full-rank sublattice of ``sup``."""
    if sub.rank != sup.rank:
        raise LinalgError(f"ranks differ ({sub.rank} vs {sup.rank})")
    coords = []
    for b in sub.basis:
        c = lattice_coordinates(sup, b)
        if c is None:
            raise LinalgError("sub is not contained in sup")
        coords.append(c)
    if not coords:
        return 1
    return abs(int(det(coords)))
