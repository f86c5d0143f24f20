from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conelab.linalg import (
    STANDARD,
    InnerProductForm,
    LinalgError,
    inner_product,
    lattice_canonical,
    lattice_index,
    lattice_intersect_span,
    orthogonal_complement,
    project_orthogonal,
    standard_lattice,
    zero_lattice,
)
from conelab.rational import as_rational, format_rational, primitive_integer

F = Fraction
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)
vectors = st.lists(rationals, min_size=3, max_size=3)
int_vectors = st.lists(st.integers(-6, 6), min_size=2, max_size=2)

SKEW = InnerProductForm.from_matrix([[2, 1], [1, 2]])


def generates(basis, vectors) -> bool:
    """Oracle: every vector is an integer combination of ``basis`` (sympy exact solve)."""
    if not basis:
        return all(not any(v) for v in vectors)
    B = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x for x in b] for b in basis]).T
    for v in vectors:
        sol, params = B.gauss_jordan_solve(sympy.Matrix([sympy.nsimplify(x) for x in v]))
        if params.shape[0] or any(not s.is_integer for s in sol):
            return False
    return True


class TestRational:
    def test_parsing(self):
        assert as_rational("3/6") == F(1, 2)
        assert as_rational(4) == 4
        with pytest.raises(TypeError):
            as_rational(0.5)
        with pytest.raises(ValueError):
            as_rational("1/x")

    def test_format(self):
        assert format_rational(F(-3, 4)) == "-3/4"
        assert format_rational(F(5)) == "5"

    def test_primitive(self):
        assert primitive_integer([F(2), F(4)]) == ((1, 2), F(2))
        assert primitive_integer([F(1, 2), F(-1, 3)]) == ((3, -2), F(1, 6))
        assert primitive_integer([0, 0])[1] == 0


class TestInnerProduct:
    def test_examples(self):
        assert inner_product(STANDARD, (1, 2), (2, -1)) == 0
        assert inner_product(STANDARD, (1, 0), (1, 0, 0)) == 1
        assert inner_product(SKEW, (1, 0), (0, 1)) == 1

    def test_gram_validation(self):
        with pytest.raises(LinalgError):
            InnerProductForm.from_matrix([[1, 2], [2, 1]])
        with pytest.raises(LinalgError):
            InnerProductForm.from_matrix([[1, 0], [1, 1]])
        with pytest.raises(LinalgError):
            InnerProductForm.from_family({1: [[1]], 2: [[2, 0], [0, 1]]})
        Q = InnerProductForm.from_family({1: [[2]], 2: [[2, 1], [1, 3]]})
        assert Q.entry(2, 2) == 1

    @given(vectors, vectors, vectors, rationals)
    def test_symmetric_bilinear_positive(self, u, v, w, c):
        Q = InnerProductForm.from_matrix([[2, 1, 0], [1, 2, 1], [0, 1, 2]])
        assert Q(u, v) == Q(v, u)
        uw = [a + c * b for a, b in zip(u, w)]
        assert Q(uw, v) == Q(u, v) + c * Q(w, v)
        if any(u):
            assert Q(u, u) > 0


class TestComplementProjection:
    def test_examples(self):
        assert orthogonal_complement(STANDARD, [(1, 1)], 2) == [(1, -1)]
        assert len(orthogonal_complement(STANDARD, [], 2)) == 2
        assert orthogonal_complement(STANDARD, [(1, 0), (0, 1)], 2) == []
        assert project_orthogonal(STANDARD, (1, 2), [(1, 0)]) == (0, 2)
        assert project_orthogonal(STANDARD, (1, 1), [(1, 1)]) == (0, 0)
        assert project_orthogonal(STANDARD, (1, 0), [(1, 1)]) == (F(1, 2), F(-1, 2))

    @given(vectors, st.lists(vectors, min_size=1, max_size=2))
    def test_projection_properties(self, v, V):
        Q = InnerProductForm.from_matrix([[3, 1, 0], [1, 2, 0], [0, 0, 1]])
        w = project_orthogonal(Q, v, V)
        assert all(Q(w, x) == 0 for x in V)
        diff = [a - b for a, b in zip(v, w)]
        M = sympy.Matrix([[sympy.Rational(x) for x in row] for row in V])
        assert M.rank() == sympy.Matrix.vstack(M, sympy.Matrix([[sympy.Rational(x) for x in diff]])).rank()

    @given(st.lists(vectors, max_size=3))
    def test_complement_dimension(self, V):
        comp = orthogonal_complement(SKEW, [x[:2] for x in V], 2)
        r = sympy.Matrix([[sympy.Rational(a) for a in x[:2]] for x in V]).rank() if V else 0
        assert len(comp) == 2 - r
        assert all(SKEW(c, x[:2]) == 0 for c in comp for x in V)


class TestLattices:
    def test_canonical_examples(self):
        L = lattice_canonical([(2, 0), (3, 3)])
        assert L.basis == ((1, 3), (0, 6))
        # oracle: mutual generation
        assert generates([(1, 3), (0, 6)], [(2, 0), (3, 3)])
        assert generates([(2, 0), (3, 3)], [(1, 3), (0, 6)])
        assert lattice_canonical([(1, 0)]).basis == ((1, 0),)
        assert lattice_canonical([(1, 0), (0, 1), (1, 1)]) == standard_lattice(2)

    @given(st.lists(int_vectors, min_size=1, max_size=4))
    def test_canonical_idempotent_and_order_free(self, vs):
        L = lattice_canonical(vs, 2)
        assert lattice_canonical(L.basis, 2) == L
        assert lattice_canonical(list(reversed(vs)), 2) == L
        assert generates(L.basis, vs)
        # oracle for the reverse inclusion: equal covolume (gcd of the 2x2 minors)
        g = 0
        for i, u in enumerate(vs):
            for v in vs[i + 1 :]:
                g = gcd(g, u[0] * v[1] - u[1] * v[0])
        if g:
            (a, b), (c, d) = [[int(x) for x in r] for r in L.basis]
            assert abs(a * d - b * c) == g
        elif any(any(v) for v in vs):
            content = 0
            for v in vs:
                content = gcd(content, *v)
            (u,) = L.basis
            assert gcd(*map(int, u)) == content
        else:
            assert L.rank == 0

    def test_rational_lattice(self):
        L = lattice_canonical([(1, 0), ("1/2", "1/2")])
        assert L.contains((F(1, 2), F(1, 2)))
        assert not L.contains((F(1, 2), 0))
        assert lattice_index(standard_lattice(2), L) == 2

    def test_intersect_span_examples(self):
        assert lattice_intersect_span(standard_lattice(2), [(1, 1)]) == lattice_canonical([(1, 1)])
        assert lattice_intersect_span(standard_lattice(2), []) == zero_lattice(2)
        L = lattice_canonical([(1, 3), (0, 6)])
        assert lattice_intersect_span(L, [(0, 1)]) == lattice_canonical([(0, 6)])

    def test_intersect_span_oracle(self):
        L = lattice_canonical([(2, 1), (0, 3)])
        # brute force over small coefficients: shortest nonzero point on the line y = 2x
        on_line = [
            (2 * a, a + 3 * b)
            for a in range(-10, 11)
            for b in range(-10, 11)
            if (a, b) != (0, 0) and a + 3 * b == 4 * a
        ]
        shortest = min(on_line, key=lambda p: abs(p[0]))
        (got,) = lattice_intersect_span(L, [(1, 2)]).basis
        assert tuple(abs(x) for x in got) == tuple(abs(x) for x in shortest)

    def test_index(self):
        assert lattice_index(lattice_canonical([(1, 0), (1, 2)]), standard_lattice(2)) == 2
        assert lattice_index(standard_lattice(2), standard_lattice(2)) == 1
        assert lattice_index(lattice_canonical([(2, 0), (0, 3)]), standard_lattice(2)) == 6
        with pytest.raises(LinalgError):
            lattice_index(standard_lattice(2), lattice_canonical([(1, 0), (1, 2)]))
        with pytest.raises(LinalgError):
            lattice_index(lattice_canonical([(1, 0)], 2), standard_lattice(2))

    @settings(max_examples=40)
    @given(st.integers(1, 4), st.integers(-3, 3), st.integers(1, 4), st.integers(1, 3))
    def test_index_multiplicative(self, a, b, c, m):
        sub = lattice_canonical([(m * a, m * b), (0, m * c)])
        mid = lattice_canonical([(a, b), (0, c)])
        sup = standard_lattice(2)
        assert lattice_index(sub, mid) * lattice_index(mid, sup) == lattice_index(sub, sup)
