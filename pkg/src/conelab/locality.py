"""Generic locality structures: polar sets, axiom checkers, convolution,
antipode and Birkhoff factorisation over a connected locality coalgebra.

Basis elements of a coalgebra are arbitrary hashable values; coproducts are
lists of ``(coefficient, left, right)`` triples whose pairs lie in the locality
relation.  Target values are any objects supporting ``+``, ``-`` and scalar
``*``; their product is supplied by a :class:`TargetAlgebra`, which also holds
the independence predicate and the projections ``pi1``/``pi2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Callable, Generic, Hashable, Iterable, Sequence, TypeVar

from .cones import LocalityError

B = TypeVar("B", bound=Hashable)
A = TypeVar("A")
Relation = Callable[[Any, Any], bool]


def polar_set(X: Iterable[B], U: Iterable[B], relation: Relation) -> list[B]:
    """Elements of ``X`` related to every element of ``U``."""
    U = list(U)
    return [x for x in X if all(relation(u, x) for u in U)]


# ---------------------------------------------------------------------------
# axiom checking


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: object = None


@dataclass
class LocalityReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_violation(self) -> CheckResult | None:
        return next((c for c in self.checks if not c.passed), None)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            line = f"CHECK {c.name} {'PASS' if c.passed else 'FAIL'}"
            if not c.passed and c.witness is not None:
                line += f" {c.witness!r}"
            out.append(line)
        return out


def check_locality_axioms(
    elements: Sequence[B],
    relation: Relation,
    product_: Callable[[B, B], B],
    *,
    subsets: Iterable[Sequence[B]] | None = None,
    homomorphism: Callable[[B], Any] | None = None,
    target_relation: Relation | None = None,
    target_product: Callable[[Any, Any], Any] | None = None,
) -> LocalityReport:
    """Sample-based check of the locality semigroup axioms on ``elements``.

    Verifies symmetry, closure of polar sets under the partial product,
    associativity on pairwise related triples and, optionally, that
    ``homomorphism`` is a locality map and multiplicative on related pairs.
    Each check records its first violating witness.
    """
    report = LocalityReport()
    pairs = [(x, y) for x in elements for y in elements]

    witness = next(((x, y) for x, y in pairs if relation(x, y) != relation(y, x)), None)
    report.checks.append(CheckResult("symmetry", witness is None, witness))

    if subsets is None:
        subsets = [[u] for u in elements] + [list(p) for p in combinations(elements, 2)]
    witness = None
    for U in subsets:
        polar = polar_set(elements, U, relation)
        for x, y in product(polar, repeat=2):
            if relation(x, y) and not all(relation(u, product_(x, y)) for u in U):
                witness = {"U": list(U), "x": x, "y": y}
                break
        if witness:
            break
    report.checks.append(CheckResult("polar-closure", witness is None, witness))

    witness = None
    for x, y, z in product(elements, repeat=3):
        if not (relation(x, y) and relation(y, z) and relation(x, z)):
            continue
        xy, yz = product_(x, y), product_(y, z)
        if not (relation(xy, z) and relation(x, yz)) or product_(xy, z) != product_(x, yz):
            witness = (x, y, z)
            break
    report.checks.append(CheckResult("associativity", witness is None, witness))

    if homomorphism is not None:
        trel = target_relation or (lambda a, b: True)
        tmul = target_product or (lambda a, b: a * b)
        loc = next(((x, y) for x, y in pairs if relation(x, y) and not trel(homomorphism(x), homomorphism(y))), None)
        report.checks.append(CheckResult("locality-map", loc is None, loc))
        mult = next(
            (
                (x, y)
                for x, y in pairs
                if relation(x, y) and homomorphism(product_(x, y)) != tmul(homomorphism(x), homomorphism(y))
            ),
            None,
        )
        report.checks.append(CheckResult("multiplicative", mult is None, mult))
    return report


# ---------------------------------------------------------------------------
# coalgebra and target specifications

Coproduct = list[tuple[Fraction, Any, Any]]


@dataclass(frozen=True)
class ConnectedCoalgebra(Generic[B]):
    unit: B
    degree: Callable[[B], int]
    coproduct: Callable[[B], Coproduct]
    counit: Callable[[B], Fraction]
    relation: Relation
    product: Callable[[B, B], B] | None = None

    def reduced_coproduct(self, x: B) -> Coproduct:
        """``Δ(x) - J⊗x - x⊗J`` for ``x`` of positive degree; empty for ``J``."""
        if x == self.unit:
            return []
        out = []
        for c, left, right in self.coproduct(x):
            if (left == self.unit and right == x) or (left == x and right == self.unit):
                continue
            out.append((c, left, right))
        return out

    def iterated_reduced_coproduct(self, x: B, k: int) -> list[tuple[Fraction, tuple]]:
        """``Δ̃^{(k)}(x)`` as a list of ``(coefficient, (x_0, ..., x_k))``; ``k = 0`` is the identity."""
        if k == 0:
            return [(Fraction(1), (x,))]
        out = []
        for c, left, right in self.reduced_coproduct(x):
            for c2, rest in self.iterated_reduced_coproduct(right, k - 1):
                out.append((c * c2, (left,) + rest))
        return out


@dataclass(frozen=True)
class TargetAlgebra(Generic[A]):
    one: A
    zero: A
    mul: Callable[[A, A], A]
    pi1: Callable[[A], A]
    pi2: Callable[[A], A]
    independent: Relation | None = None
    in_pi1: Callable[[A], bool] | None = None
    in_pi2: Callable[[A], bool] | None = None
    pi1_subalgebra: bool = False
    pi2_ideal: bool = False

    def local_mul(self, a: A, b: A, witness: object = None) -> A:
        if self.independent is not None and not self.independent(a, b):
            raise LocalityError("product of non-independent target values", witness if witness is not None else (a, b))
        return self.mul(a, b)


class LinearCharacter(Generic[B, A]):
    """A linear map from a coalgebra's basis to a target algebra, memoised per basis element."""

    def __init__(self, fn: Callable[[B], A], coalgebra: ConnectedCoalgebra[B], target: TargetAlgebra[A], name: str = "phi"):
        self._fn = fn
        self.coalgebra = coalgebra
        self.target = target
        self.name = name
        self._memo: dict = {}

    def __call__(self, x: B) -> A:
        if x not in self._memo:
            self._memo[x] = self._fn(x)
        return self._memo[x]

    def on_combination(self, terms: Iterable[tuple[B, Fraction]]) -> A:
        total = self.target.zero
        for x, c in terms:
            total = total + self(x) * c
        return total

    def __repr__(self) -> str:
        return f"LinearCharacter({self.name})"


def counit_character(coalgebra: ConnectedCoalgebra[B], target: TargetAlgebra[A]) -> LinearCharacter[B, A]:
    """``u∘ε``: the unit of the convolution product."""

    def fn(x: B) -> A:
        e = coalgebra.counit(x)
        return target.one * e if e else target.zero

    return LinearCharacter(fn, coalgebra, target, "u.eps")


def _sum(target: TargetAlgebra[A], values: Iterable[A]) -> A:
    total = target.zero
    for v in values:
        total = total + v
    return total


def convolution(phi: LinearCharacter[B, A], psi: LinearCharacter[B, A]) -> LinearCharacter[B, A]:
    """``(φ⋆ψ)(c) = Σ φ(c')ψ(c'')``, enforcing target independence on every product."""
    co, target = phi.coalgebra, phi.target

    def fn(x: B) -> A:
        return _sum(
            target,
            (target.local_mul(phi(l), psi(r), (l, r)) * c for c, l, r in co.coproduct(x)),
        )

    return LinearCharacter(fn, co, target, f"({phi.name}*{psi.name})")


def convolution_inverse(phi: LinearCharacter[B, A]) -> LinearCharacter[B, A]:
    """``φ^{⋆-1}(c) = -φ(c) - Σ' φ(c')φ^{⋆-1}(c'')`` over the reduced coproduct."""
    co, target = phi.coalgebra, phi.target

    def fn(x: B) -> A:
        if x == co.unit:
            return target.one
        rest = _sum(target, (target.local_mul(phi(l), inv(r), (l, r)) * c for c, l, r in co.reduced_coproduct(x)))
        return -(phi(x) + rest)

    inv = LinearCharacter(fn, co, target, f"{phi.name}^-1")
    return inv


@dataclass
class Birkhoff(Generic[B, A]):
    phi1: LinearCharacter[B, A]
    phi2: LinearCharacter[B, A]
    phi1_inv: LinearCharacter[B, A]


def birkhoff_factorize(phi: LinearCharacter[B, A]) -> Birkhoff[B, A]:
    """Factor ``φ = φ₁^{⋆-1} ⋆ φ₂`` with ``φ₁`` in the ``pi1`` component and ``φ₂`` in the ``pi2`` component."""
    co, target = phi.coalgebra, phi.target

    def fn1(x: B) -> A:
        if x == co.unit:
            return target.one
        rest = _sum(target, (target.local_mul(phi1(l), phi(r), (l, r)) * c for c, l, r in co.reduced_coproduct(x)))
        return -target.pi1(phi(x) + rest)

    phi1 = LinearCharacter(fn1, co, target, f"{phi.name}_1")
    phi2 = convolution(phi1, phi)
    phi2.name = f"{phi.name}_2"
    return Birkhoff(phi1, phi2, convolution_inverse(phi1))


def birkhoff_via_projection(phi: LinearCharacter[B, A]) -> Birkhoff[B, A]:
    """Shortcut when the ``pi2`` component is a locality ideal: ``φ₁^{⋆-1} = π₁φ``."""
    co, target = phi.coalgebra, phi.target
    if not target.pi2_ideal:
        raise ValueError("projection shortcut requires locality ideal")

    def fn_inv(x: B) -> A:
        return target.one if x == co.unit else target.pi1(phi(x))

    phi1_inv = LinearCharacter(fn_inv, co, target, f"{phi.name}_1^-1")

    def fn2(x: B) -> A:
        if x == co.unit:
            return target.one
        rest = _sum(target, (target.local_mul(phi1_inv(l), phi2(r), (l, r)) * c for c, l, r in co.reduced_coproduct(x)))
        return target.pi2(phi(x)) - rest

    phi2 = LinearCharacter(fn2, co, target, f"{phi.name}_2")
    return Birkhoff(convolution_inverse(phi1_inv), phi2, phi1_inv)


# ---------------------------------------------------------------------------
# antipode


def _local_product(co: ConnectedCoalgebra[B], items: Sequence[B]) -> B:
    if co.product is None:
        raise ValueError("coalgebra has no product")
    for i, j in combinations(range(len(items)), 2):
        if not co.relation(items[i], items[j]):
            raise LocalityError("antipode requested a product of unrelated elements", (items[i], items[j]))
    acc = co.unit
    for x in items:
        acc = co.product(acc, x)
    return acc


def antipode(co: ConnectedCoalgebra[B], x: B) -> dict[B, Fraction]:
    """Von Neumann series ``Σ_k (uε - Id)^{⋆k}``, terminating at ``k = degree(x)``."""
    if x == co.unit:
        return {co.unit: Fraction(1)}
    out: dict[B, Fraction] = {}
    for k in range(1, co.degree(x) + 1):
        sign = -1 if k % 2 else 1
        for c, parts in co.iterated_reduced_coproduct(x, k - 1):
            y = _local_product(co, parts)
            out[y] = out.get(y, Fraction(0)) + sign * c
    return {y: c for y, c in out.items() if c}


def antipode_defect(co: ConnectedCoalgebra[B], x: B) -> dict[B, Fraction]:
    """``m(S⊗Id)Δ(x) - uε(x)``; empty when the antipode identity holds at ``x``."""
    out: dict[B, Fraction] = {}
    for c, left, right in co.coproduct(x):
        for y, a in antipode(co, left).items():
            z = _local_product(co, [y, right])
            out[z] = out.get(z, Fraction(0)) + c * a
    e = co.counit(x)
    if e:
        out[co.unit] = out.get(co.unit, Fraction(0)) - e
    return {y: c for y, c in out.items() if c}


def is_rota_baxter(P: Callable[[A], A], a: A, b: A, mul: Callable[[A, A], A], weight: Fraction | int = -1) -> bool:
    """``P(a)P(b) = P(P(a)b) + P(aP(b)) + λP(ab)``."""
    lhs = mul(P(a), P(b))
    rhs = P(mul(P(a), b)) + P(mul(a, P(b))) + P(mul(a, b)) * Fraction(weight)
    return lhs == rhs
