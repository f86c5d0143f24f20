"""Meromorphic germs at 0 with linear poles, as truncated finite objects.

A germ is a finite sum of terms ``P(z) / (L_1^{s_1} ... L_n^{s_n})`` with
``P`` a polynomial over Q and the ``L_i`` linearly independent primitive
integer linear forms.  The homogeneous degree of a monomial ``z^a`` in such a
term is ``|a| - sum(s_i)``.  ``valid_up_to = d`` means every homogeneous
component of degree ``<= d`` is exact and nothing above ``d`` is stored;
``None`` means the germ is exact in all degrees.

Equality (``==``) is equality of functions through the common valid window,
decided exactly by clearing denominators.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial, lcm
from operator import add
from typing import Iterable, Mapping, Sequence

import mpmath

from .linalg import (
    STANDARD,
    InnerProductForm,
    coordinates,
    inner_product,
    orthogonal_complement,
    rank,
    span_basis,
    sign_canonical,
    solve,
)
from .rational import RationalLike, as_rational, format_rational, primitive_integer

Exps = tuple[int, ...]
Poly = dict[Exps, Fraction]
LinearForm = tuple[int, ...]
Denominator = tuple[tuple[LinearForm, int], ...]


class GermError(ValueError):
    pass


class PoleError(GermError):
    def __init__(self, form: LinearForm):
        super().__init__(f"pole hit: linear form {form} vanishes at the evaluation point")
        self.form = form


# ---------------------------------------------------------------------------
# polynomial helpers (dicts exponent-tuple -> Fraction)


def _pad_exps(e: Exps, k: int) -> Exps:
    return e + (0,) * (k - len(e)) if len(e) < k else e


def _pad_poly(p: Mapping[Exps, Fraction], k: int) -> Poly:
    return {_pad_exps(e, k): c for e, c in p.items()}


def _add_into(acc: Poly, p: Mapping[Exps, Fraction], c: Fraction = Fraction(1)) -> None:
    for e, x in p.items():
        v = acc.get(e, 0) + c * x
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)


def _mul(p: Mapping[Exps, Fraction], q: Mapping[Exps, Fraction], maxdeg: int | None = None) -> Poly:
    out: Poly = {}
    for e1, c1 in p.items():
        d1 = sum(e1)
        for e2, c2 in q.items():
            if maxdeg is not None and d1 + sum(e2) > maxdeg:
                continue
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _linear(coeffs: Sequence[Fraction], k: int) -> Poly:
    out: Poly = {}
    for i, c in enumerate(coeffs):
        if c:
            e = [0] * k
            e[i] = 1
            out[tuple(e)] = Fraction(c)
    return out


def _substitute(p: Mapping[Exps, Fraction], lins: Sequence[Sequence[Fraction]], k: int) -> Poly:
    """Replace variable ``i`` of ``p`` by the linear polynomial with coefficient vector ``lins[i]``."""
    if not p:
        return {}
    supports = [[j for j, c in enumerate(row) if c] for row in lins]
    if all(len(s) == 1 for s in supports):
        out: Poly = {}
        targets = [(s[0], lins[i][s[0]]) for i, s in enumerate(supports)]
        for e, c in p.items():
            ne = [0] * k
            coef = c
            for i, a in enumerate(e):
                if a:
                    j, x = targets[i]
                    ne[j] += a
                    coef *= x**a
            key = tuple(ne)
            v = out.get(key, 0) + coef
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return out
    # general case in integer arithmetic: scale rows by delta, coefficients by d0
    delta = lcm(*(Fraction(x).denominator for row in lins for x in row))
    rows = [[int(Fraction(x) * delta) for x in row] for row in lins]
    d0 = lcm(*(c.denominator for c in p.values()))
    one = {(0,) * k: 1}
    lin_polys = [{tuple(1 if t == j else 0 for t in range(k)): x for j, x in enumerate(row) if x} for row in rows]
    powers: dict[tuple[int, int], dict[Exps, int]] = {}

    def power(i: int, a: int) -> dict[Exps, int]:
        if a == 0:
            return one
        key = (i, a)
        if key not in powers:
            powers[key] = _imul(power(i, a - 1), lin_polys[i])
        return powers[key]

    prefix: dict[Exps, dict[Exps, int]] = {(): one}

    def prefix_product(e: Exps) -> dict[Exps, int]:
        if e in prefix:
            return prefix[e]
        head = prefix_product(e[:-1])
        a = e[-1]
        val = head if a == 0 else _imul(head, power(len(e) - 1, a))
        prefix[e] = val
        return val

    acc: dict[Exps, int] = {}
    get = acc.get
    for e, c in p.items():
        ci = int(c * d0)
        for m, x in prefix_product(e).items():
            acc[m] = get(m, 0) + ci * x
    return {m: Fraction(c, d0 * delta ** sum(m)) for m, c in acc.items() if c}


def _imul(p: Mapping[Exps, int], q: Mapping[Exps, int]) -> dict[Exps, int]:
    out: dict[Exps, int] = {}
    get = out.get
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(map(add, e1, e2))
            out[e] = get(e, 0) + c1 * c2
    return out


def _derivative_span(p: Mapping[Exps, Fraction], k: int) -> list[tuple[Fraction, ...]]:
    """Minimal space W of linear forms such that ``p`` is a polynomial in forms from W."""
    rows: dict[Exps, list[Fraction]] = {}
    for e, c in p.items():
        for i, a in enumerate(e):
            if a:
                m = e[:i] + (a - 1,) + e[i + 1 :]
                rows.setdefault(m, [Fraction(0)] * k)[i] += a * c
    return span_basis(list(rows.values()), k) if rows else []


# ---------------------------------------------------------------------------
# denominators


def canonical_form(v: Sequence[RationalLike]) -> tuple[LinearForm, Fraction]:
    """Write ``v = c * u`` with ``u`` primitive, first nonzero entry positive; returns ``(u, c)``."""
    u, c = primitive_integer(v)
    if c == 0:
        raise GermError("zero linear form")
    first = next(a for a in u if a)
    if first < 0:
        u = tuple(-a for a in u)
        c = -c
    return u, c


def is_canonical_form(u: Sequence[int]) -> bool:
    try:
        w, c = canonical_form(u)
    except GermError:
        return False
    return c == 1 and w == tuple(u)


def _den_key(d: Mapping[LinearForm, int], k: int) -> Denominator:
    return tuple(sorted((_pad_exps(f, k), s) for f, s in d.items() if s))


def _independent_pieces(poly: Poly, den: Mapping[LinearForm, int]) -> list[tuple[Poly, dict[LinearForm, int]]]:
    """Partial fractions: rewrite ``poly / den`` with linearly independent denominator forms.

    Uses ``1 = sum a_i L_i / L_j`` for a circuit ``L_j = sum a_i L_i``; each step
    lowers the total power on the circuit's independent part until a form drops out.
    """
    stack = [(poly, dict(den))]
    out = []
    while stack:
        p, d = stack.pop()
        forms = sorted(d)
        basis: list[LinearForm] = []
        circuit = None
        for f in forms:
            if basis and rank(basis + [f]) == len(basis):
                coeffs = coordinates(basis, f)
                circuit = (f, [(b, a) for b, a in zip(basis, coeffs) if a])
                break
            basis.append(f)
        if circuit is None:
            out.append((p, d))
            continue
        lj, support = circuit
        for b, a in support:
            d2 = dict(d)
            d2[lj] += 1
            d2[b] -= 1
            if not d2[b]:
                del d2[b]
            stack.append(({e: a * c for e, c in p.items()}, d2))
    return out


# ---------------------------------------------------------------------------
# the germ type


def _min_valid(*vals: int | None) -> int | None:
    vals = [v for v in vals if v is not None]
    return min(vals) if vals else None


class MeromorphicGerm:
    __slots__ = ("dim", "terms", "valid_up_to", "_cache")

    def __init__(
        self,
        dim: int,
        terms: Iterable[tuple[Mapping[LinearForm, int] | Denominator, Mapping[Exps, RationalLike]]] = (),
        valid_up_to: int | None = None,
    ):
        self.dim = dim
        self.valid_up_to = valid_up_to
        self._cache: dict = {}
        acc: dict[Denominator, Poly] = {}
        for den, num in terms:
            d = dict(den)
            poly = {_pad_exps(tuple(e), dim): as_rational(c) for e, c in num.items()}
            if any(len(e) > dim for e in poly) or any(len(f) > dim for f in d):
                raise GermError("term exceeds the ambient dimension")
            for p, dd in _independent_pieces(poly, {_pad_exps(f, dim): s for f, s in d.items()}):
                key = _den_key(dd, dim)
                order = sum(s for _, s in key)
                if valid_up_to is not None:
                    p = {e: c for e, c in p.items() if sum(e) - order <= valid_up_to}
                bucket = acc.setdefault(key, {})
                _add_into(bucket, p)
        self.terms = {k: v for k, v in acc.items() if v}

    # -- constructors

    @classmethod
    def zero(cls, dim: int = 0, valid_up_to: int | None = None) -> "MeromorphicGerm":
        return cls(dim, (), valid_up_to)

    @classmethod
    def constant(cls, c: RationalLike, dim: int = 0) -> "MeromorphicGerm":
        return cls(dim, [((), {(0,) * dim: c})])

    @classmethod
    def polynomial(cls, poly: Mapping[Exps, RationalLike], dim: int, valid_up_to: int | None = None) -> "MeromorphicGerm":
        return cls(dim, [((), poly)], valid_up_to)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: RationalLike = 1, valid_up_to: int | None = None) -> "MeromorphicGerm":
        """Laurent monomial in the coordinates; negative exponents become coordinate poles."""
        k = len(exps)
        num = tuple(max(a, 0) for a in exps)
        den = {}
        for i, a in enumerate(exps):
            if a < 0:
                den[tuple(1 if j == i else 0 for j in range(k))] = -a
        return cls(k, [(den, {num: coeff})], valid_up_to)

    @classmethod
    def from_term(
        cls,
        numerator: Mapping[Exps, RationalLike],
        denominator: Sequence[tuple[Sequence[RationalLike], int]],
        dim: int | None = None,
        valid_up_to: int | None = None,
    ) -> "MeromorphicGerm":
        """``numerator / prod(<v_i, z>^{s_i})`` for arbitrary nonzero rational vectors ``v_i``."""
        k = dim or max([len(e) for e in numerator] + [len(v) for v, _ in denominator] + [0])
        coeff = Fraction(1)
        den: dict[LinearForm, int] = {}
        for v, s in denominator:
            if s < 0:
                raise GermError("denominator powers must be positive")
            u, c = canonical_form(v)
            coeff /= c**s
            u = _pad_exps(u, k)
            den[u] = den.get(u, 0) + s
        num = {e: coeff * as_rational(c) for e, c in numerator.items()}
        return cls(k, [(den, num)], valid_up_to)

    # -- structure

    def embed(self, k: int) -> "MeromorphicGerm":
        if k == self.dim:
            return self
        if k < self.dim:
            raise GermError("cannot embed into a smaller dimension")
        return MeromorphicGerm(k, self.terms.items(), self.valid_up_to)

    def pole_order(self, den: Denominator) -> int:
        return sum(s for _, s in den)

    def degrees(self) -> list[int]:
        out = set()
        for den, num in self.terms.items():
            p = self.pole_order(den)
            out.update(sum(e) - p for e in num)
        return sorted(out)

    def lowdeg(self) -> float:
        """Lowest homogeneous degree that may be nonzero (``inf`` for an exact zero)."""
        present = self.degrees()
        low = present[0] if present else float("inf")
        if self.valid_up_to is not None:
            low = min(low, self.valid_up_to + 1)
        return low

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_holomorphic_form(self) -> bool:
        """No stored denominators (a syntactic test; see :func:`is_holomorphic`)."""
        return all(not den for den in self.terms)

    def polynomial_part(self) -> Poly:
        return dict(self.terms.get((), {}))

    def truncate(self, d: int | None) -> "MeromorphicGerm":
        v = _min_valid(self.valid_up_to, d)
        return MeromorphicGerm(self.dim, self.terms.items(), v)

    def homogeneous_component(self, d: int) -> "MeromorphicGerm":
        if self.valid_up_to is not None and d > self.valid_up_to:
            raise GermError(f"degree {d} is beyond the valid window {self.valid_up_to}")
        terms = []
        for den, num in self.terms.items():
            p = self.pole_order(den)
            terms.append((den, {e: c for e, c in num.items() if sum(e) - p == d}))
        return MeromorphicGerm(self.dim, terms, None)

    # -- arithmetic

    def _coerce(self, other: object) -> "MeromorphicGerm":
        if isinstance(other, MeromorphicGerm):
            return other
        if isinstance(other, (int, Fraction, str)):
            return MeromorphicGerm.constant(other, self.dim)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "MeromorphicGerm":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        k = max(self.dim, other.dim)
        return MeromorphicGerm(
            k, list(self.terms.items()) + list(other.terms.items()), _min_valid(self.valid_up_to, other.valid_up_to)
        )

    __radd__ = __add__

    def __neg__(self) -> "MeromorphicGerm":
        return self.scale(-1)

    def __sub__(self, other: object) -> "MeromorphicGerm":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + other.scale(-1)

    def __rsub__(self, other: object) -> "MeromorphicGerm":
        return (-self) + other

    def scale(self, c: RationalLike) -> "MeromorphicGerm":
        c = as_rational(c)
        return MeromorphicGerm(
            self.dim, [(den, {e: c * x for e, x in num.items()}) for den, num in self.terms.items()], self.valid_up_to
        )

    def __mul__(self, other: object) -> "MeromorphicGerm":
        if isinstance(other, (int, Fraction, str)):
            return self.scale(other)
        if not isinstance(other, MeromorphicGerm):
            return NotImplemented
        return germ_mul(self, other)

    __rmul__ = __mul__

    # -- comparison

    def is_zero(self) -> bool:
        """Exact test that every homogeneous component in the valid window vanishes."""
        if not self.terms:
            return True
        by_degree: dict[int, list[tuple[Denominator, Poly]]] = {}
        for den, num in self.terms.items():
            p = self.pole_order(den)
            split: dict[int, Poly] = {}
            for e, c in num.items():
                split.setdefault(sum(e) - p, {})[e] = c
            for d, poly in split.items():
                by_degree.setdefault(d, []).append((den, poly))
        for d, parts in by_degree.items():
            if len(parts) == 1:
                return False
            lcm: dict[LinearForm, int] = {}
            for den, _ in parts:
                for f, s in den:
                    lcm[f] = max(lcm.get(f, 0), s)
            total: Poly = {}
            for den, poly in parts:
                have = dict(den)
                cofactor: Poly = {(0,) * self.dim: Fraction(1)}
                for f, s in lcm.items():
                    for _ in range(s - have.get(f, 0)):
                        cofactor = _mul(cofactor, _linear(f, self.dim))
                _add_into(total, _mul(poly, cofactor))
            if total:
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, str)):
            other = MeromorphicGerm.constant(other, self.dim)
        if not isinstance(other, MeromorphicGerm):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MeromorphicGerm({pretty(self, show_order=True)})"

    def __str__(self) -> str:
        return pretty(self)


def germ_add(f: MeromorphicGerm, g: MeromorphicGerm) -> MeromorphicGerm:
    return f + g


def germ_scale(c: RationalLike, f: MeromorphicGerm) -> MeromorphicGerm:
    return f.scale(c)


def germ_mul(f: MeromorphicGerm, g: MeromorphicGerm) -> MeromorphicGerm:
    """Pointwise product; ``valid_up_to`` follows the lowest-degree bookkeeping."""
    k = max(f.dim, g.dim)
    f, g = f.embed(k), g.embed(k)
    cands = []
    if f.valid_up_to is not None:
        cands.append(f.valid_up_to + g.lowdeg())
    if g.valid_up_to is not None:
        cands.append(g.valid_up_to + f.lowdeg())
    cands = [c for c in cands if c != float("inf")]
    valid = int(min(cands)) if cands else None
    if valid is None and (f.valid_up_to is not None or g.valid_up_to is not None):
        # a factor is an exact zero
        return MeromorphicGerm.zero(k)
    terms = []
    for d1, n1 in f.terms.items():
        p1 = sum(s for _, s in d1)
        for d2, n2 in g.terms.items():
            p2 = sum(s for _, s in d2)
            den: dict[LinearForm, int] = dict(d1)
            for form, s in d2:
                den[form] = den.get(form, 0) + s
            maxdeg = None if valid is None else valid + p1 + p2
            terms.append((den, _mul(n1, n2, maxdeg)))
    return MeromorphicGerm(k, terms, valid)


# ---------------------------------------------------------------------------
# canonical decomposition M = M_+ ⊕ M_-^Q


def _adapted_frame(forms: Sequence[LinearForm], Q: InnerProductForm, k: int):
    comp = [tuple(int(x) for x in v) for v in orthogonal_complement(Q, forms, k)]
    B = [list(map(Fraction, f)) for f in forms] + [list(map(Fraction, m)) for m in comp]
    # z = B^{-1} y: column j of B^{-1} solves B x = e_j
    cols = [solve(B, [Fraction(1 if i == j else 0) for i in range(k)]) for j in range(k)]
    Binv_rows = [[cols[j][i] for j in range(k)] for i in range(k)]
    return B, Binv_rows


def _decompose_term(
    num: Poly,
    den: Denominator,
    Q: InnerProductForm,
    k: int,
    hol: Poly,
    polar: dict[Denominator, Poly],
    frames: dict,
) -> None:
    if not den:
        _add_into(hol, num)
        return
    forms = [f for f, _ in den]
    pows = [s for _, s in den]
    n = len(forms)
    key = tuple(forms)
    if key not in frames:
        frames[key] = _adapted_frame(forms, Q, k)
    B, Binv_rows = frames[key]
    num_y = _substitute(num, Binv_rows, k)
    groups: dict[tuple[int, ...], Poly] = {}
    for e, c in num_y.items():
        rem = tuple(s - a for s, a in zip(pows, e[:n]))
        newe = tuple(max(-r, 0) for r in rem) + e[n:]
        gkey = tuple(max(r, 0) for r in rem)
        bucket = groups.setdefault(gkey, {})
        v = bucket.get(newe, 0) + c
        if v:
            bucket[newe] = v
        else:
            bucket.pop(newe, None)
    for gkey, poly_y in groups.items():
        if not poly_y:
            continue
        poly_z = _substitute(poly_y, B, k)
        if not poly_z:
            continue
        new_den = tuple((forms[i], r) for i, r in enumerate(gkey) if r > 0)
        if not new_den:
            _add_into(hol, poly_z)
        elif len(new_den) == n:
            _add_into(polar.setdefault(new_den, {}), poly_z)
        else:
            _decompose_term(poly_z, new_den, Q, k, hol, polar, frames)


def decompose(f: MeromorphicGerm, Q: InnerProductForm = STANDARD) -> tuple[MeromorphicGerm, MeromorphicGerm]:
    """Split ``f`` into its holomorphic part and a sum of canonical polar germs."""
    cache_key = ("decompose", Q)
    if cache_key in f._cache:
        return f._cache[cache_key]
    hol: Poly = {}
    polar: dict[Denominator, Poly] = {}
    frames: dict = {}
    for den, num in f.terms.items():
        _decompose_term(num, den, Q, f.dim, hol, polar, frames)
    h = MeromorphicGerm(f.dim, [((), hol)], f.valid_up_to)
    p = MeromorphicGerm(f.dim, list(polar.items()), f.valid_up_to)
    f._cache[cache_key] = (h, p)
    return h, p


def project_plus(f: MeromorphicGerm, Q: InnerProductForm = STANDARD) -> MeromorphicGerm:
    return decompose(f, Q)[0]


def project_minus(f: MeromorphicGerm, Q: InnerProductForm = STANDARD) -> MeromorphicGerm:
    return decompose(f, Q)[1]


def canonical(f: MeromorphicGerm, Q: InnerProductForm = STANDARD) -> MeromorphicGerm:
    """``f`` rewritten as its holomorphic part plus canonical polar terms."""
    hol, pol = decompose(f, Q)
    return hol + pol


def is_holomorphic(f: MeromorphicGerm, Q: InnerProductForm = STANDARD) -> bool:
    return decompose(f, Q)[1].is_zero()


def is_polar(f: MeromorphicGerm, Q: InnerProductForm = STANDARD) -> bool:
    return decompose(f, Q)[0].is_zero()


def support_span(f: MeromorphicGerm, Q: InnerProductForm = STANDARD) -> list[LinearForm]:
    """Basis of the span of the linear forms the canonical decomposition of ``f`` depends on."""
    cache_key = ("support", Q)
    if cache_key in f._cache:
        return f._cache[cache_key]
    hol, pol = decompose(f, Q)
    vectors: list[Sequence[Fraction]] = []
    for den, num in list(hol.terms.items()) + list(pol.terms.items()):
        vectors.extend(form for form, _ in den)
        vectors.extend(_derivative_span(num, f.dim))
    basis = [tuple(int(x) for x in sign_canonical(v)) for v in span_basis(vectors, f.dim)] if vectors else []
    f._cache[cache_key] = basis
    return basis


def are_independent_germs(Q: InnerProductForm, f: MeromorphicGerm, g: MeromorphicGerm) -> bool:
    sf, sg = support_span(f, Q), support_span(g, Q)
    return all(inner_product(Q, u, v) == 0 for u in sf for v in sg)


# ---------------------------------------------------------------------------
# e^t / (1 - e^t)


def exp_ratio_coefficients(order: int) -> list[Fraction]:
    """Coefficients ``c_{-1}, c_0, ..., c_order`` of ``e^t / (1 - e^t)`` by exact series division."""
    n = order + 2
    num = [Fraction(1, factorial(i)) for i in range(n)]
    den = [Fraction(-1, factorial(i + 1)) for i in range(n)]  # (1 - e^t) / t
    q: list[Fraction] = []
    for i in range(n):
        acc = num[i] - sum((den[j] * q[i - j] for j in range(1, i + 1)), Fraction(0))
        q.append(acc / den[0])
    return q


def exp_ratio_germ(v: Sequence[RationalLike], order: int, dim: int | None = None) -> MeromorphicGerm:
    """``e^{<v,z>} / (1 - e^{<v,z>})`` through homogeneous degree ``order`` for a rational vector ``v``."""
    u, c = canonical_form(v)
    k = dim or len(u)
    u = _pad_exps(u, k)
    coeffs = exp_ratio_coefficients(order)
    lin = _linear([c * x for x in u], k)
    hol: Poly = {}
    power: Poly = {(0,) * k: Fraction(1)}
    for i, a in enumerate(coeffs[1:]):
        if i:
            power = _mul(power, lin)
        if a:
            _add_into(hol, power, a)
    polar = {(0,) * k: coeffs[0] / c}
    return MeromorphicGerm(k, [({u: 1}, polar), ((), hol)], order)


def geometric_germ(u: Sequence[int], order: int, dim: int | None = None) -> MeromorphicGerm:
    """Laurent expansion of ``e^t/(1-e^t)`` at ``t = <u, z>`` for a primitive integer ``u``."""
    if any(Fraction(x).denominator != 1 for x in u):
        raise GermError("linear form must be an integer vector")
    w, c = primitive_integer(u)
    if c == 0:
        raise GermError("zero linear form")
    if c != 1:
        raise GermError(f"linear form {tuple(u)} is not primitive; primitivise and substitute")
    return exp_ratio_germ(u, order, dim)


# ---------------------------------------------------------------------------
# numerics


def _to_mp(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpmathify(x)


def evaluate_numeric(f: MeromorphicGerm, z: Sequence, dps: int = 30):
    """Evaluate the truncated germ at ``z`` (rationals, floats or complex) with ``dps`` digits."""
    with mpmath.workdps(dps):
        zz = [_to_mp(x) for x in z] + [mpmath.mpf(0)] * max(0, f.dim - len(z))
        total = mpmath.mpf(0)
        for den, num in f.terms.items():
            dval = mpmath.mpf(1)
            for form, s in den:
                L = mpmath.fsum(a * b for a, b in zip(form, zz))
                if L == 0:
                    raise PoleError(form)
                dval *= L**s
            nval = mpmath.fsum(
                _to_mp(c) * mpmath.fprod(zz[i] ** a for i, a in enumerate(e) if a) for e, c in num.items()
            )
            total += nval / dval
        return complex(total) if isinstance(total, mpmath.mpc) else float(total)


def truncation_estimate(f: MeromorphicGerm, z: Sequence) -> float:
    """Size of the two highest stored homogeneous components at ``z``; 0 for exact germs."""
    if f.valid_up_to is None:
        return 0.0
    est = 0.0
    for d in (f.valid_up_to, f.valid_up_to - 1):
        est = max(est, abs(evaluate_numeric(f.homogeneous_component(d), z)))
    return est


# ---------------------------------------------------------------------------
# printing


def _var(i: int) -> str:
    return f"z{i + 1}"


def _monomial_str(e: Sequence[int]) -> str:
    parts = []
    for i, a in enumerate(e):
        if a == 1:
            parts.append(_var(i))
        elif a:
            parts.append(f"{_var(i)}^{a}")
    return " ".join(parts)


def _form_str(u: Sequence[int]) -> str:
    out = ""
    for i, a in enumerate(u):
        if not a:
            continue
        sign = "-" if a < 0 else "+"
        mag = "" if abs(a) == 1 else f"{abs(a)} "
        if not out:
            out = ("-" if a < 0 else "") + mag + _var(i)
        else:
            out += f" {sign} {mag}{_var(i)}"
    return out


def _signed_terms(items: list[tuple[Fraction, str]]) -> str:
    out = ""
    for c, mono in items:
        mag = abs(c)
        body = mono if (mag == 1 and mono) else (format_rational(mag) + (" " + mono if mono else ""))
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out or "0"


def pretty(f: MeromorphicGerm, show_order: bool = False) -> str:
    """Human-readable Laurent output, e.g. ``-z1^-1 - 1/2 - 1/12 z1 + 1/720 z1^3``.

    With ``show_order`` a ``+ O(deg d+1)`` suffix marks the truncation.
    """
    laurent: dict[tuple[int, ...], Fraction] = {}
    general: list[str] = []
    for den, num in sorted(f.terms.items()):
        coordinate = all(sum(1 for x in form if x) == 1 and sum(form) == 1 for form, _ in den)
        if coordinate:
            shift = [0] * f.dim
            for form, s in den:
                shift[next(i for i, x in enumerate(form) if x)] += s
            for e, c in num.items():
                key = tuple(a - b for a, b in zip(e, shift))
                laurent[key] = laurent.get(key, 0) + c
        else:
            numer = _signed_terms(
                [(c, _monomial_str(e)) for e, c in sorted(num.items(), key=lambda t: (sum(t[0]), [-x for x in t[0]]))]
            )
            if len(num) > 1:
                numer = f"({numer})"
            factors = []
            for u, s in den:
                fs = _form_str(u)
                if sum(1 for x in u if x) > 1:
                    fs = f"({fs})"
                factors.append(fs + (f"^{s}" if s > 1 else ""))
            dens = factors[0] if len(factors) == 1 and "^" not in factors[0] else f"({' '.join(factors)})"
            general.append(f"{numer}/{dens}")
    items = [
        (c, _laurent_str(e))
        for e, c in sorted(laurent.items(), key=lambda t: (sum(t[0]), [-x for x in t[0]]))
        if c
    ]
    text = _signed_terms(items) if items else ""
    for g in general:
        text = g if not text else f"{text} + {g}"
    text = text or "0"
    if show_order and f.valid_up_to is not None:
        text += f" + O(deg {f.valid_up_to + 1})"
    return text


def _laurent_str(e: Sequence[int]) -> str:
    parts = []
    for i, a in enumerate(e):
        if a == 1:
            parts.append(_var(i))
        elif a:
            parts.append(f"{_var(i)}^{a}")
    return " ".join(parts)
